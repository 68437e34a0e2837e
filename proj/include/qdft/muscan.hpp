#pragma once

#include <qdft/activespace.hpp>
#include <qdft/embedding.hpp>
#include <qdft/recovery.hpp>
#include <qdft/vqe.hpp>

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace qdft {

/// Range-separation scan. The engine is mu-agnostic: each grid point reads
/// its own externally generated FCIDUMP.
struct MuScanSpec {
  double mu_start = 0.5;
  double mu_end = 10.0;
  double mu_step = 0.25;
  std::map<double, std::string> inputs;  ///< mu -> FCIDUMP path

  void validate() const;
  /// {mu_start + k mu_step <= mu_end}; 39 points with the defaults.
  std::vector<double> grid() const;
  /// Input path for a grid mu (matched to 1e-9), or nullptr.
  const std::string* input_for(double mu) const;
};

/// Reads a "mu,path" manifest; relative paths resolve against its directory.
std::map<double, std::string> read_mu_manifest(const std::string& path);

struct MuPoint {
  double mu = 0.0;
  double energy = 0.0;
  double e_hf = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string error;  ///< set when the evaluation threw
};

struct MuScanResult {
  double mu_opt = 0.0;
  std::size_t optimum_index = 0;
  std::vector<MuPoint> table;  ///< grid order
};

using MuEvaluator = std::function<MuPoint(double mu)>;

/// Argmin over converged points; ties within 1e-12 go to the smaller mu.
/// Throws ScanFailed when no point converged.
std::size_t select_optimum(const std::vector<MuPoint>& table);

/// Evaluates every grid point on a bounded worker pool (0 = hardware
/// concurrency). Exceptions from a point are recorded as non-converged.
MuScanResult mu_scan(const std::vector<double>& grid, const MuEvaluator& evaluate, int workers = 0);

/// Full protocol: one embedding run per mu with identical settings. Throws
/// ConfigError listing every grid mu without an input file.
MuScanResult mu_scan(const MuScanSpec& spec, const ActiveSpaceSpec& active, const EmbeddingConfig& embedding,
                     const VqeConfig& vqe, int workers = 0);

std::vector<RunRecord> scan_records(const std::string& molecule, const ActiveSpaceSpec& active,
                                    const MuScanResult& scan);

}  // namespace qdft
