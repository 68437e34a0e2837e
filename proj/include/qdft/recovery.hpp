#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qdft {

/// R = 100 (E_qdft - E_dft) / (E_ccsd - E_dft). Throws DegenerateReference
/// when |E_ccsd - E_dft| < 1e-12.
double recovery(double e_dft, double e_qdft, double e_ccsd);

/// Per-molecule reference energies (Hartree).
struct ReferenceEnergies {
  std::string molecule;
  double e_hf = 0.0;
  double e_dft = 0.0;
  double e_ccsd = 0.0;
};

/// One embedding outcome; the energies CSV schema.
struct RunRecord {
  std::string molecule;
  std::optional<double> mu;  ///< absent for runs outside a scan
  int ne = 0;
  int no = 0;
  double e_hf = 0.0;
  double e_qdft = 0.0;
  int iterations = 0;
  bool converged = true;
};

struct RecoveryRow {
  std::string molecule;
  std::optional<double> mu_opt;
  int ne = 0;
  int no = 0;
  double e_dft = 0.0;
  double e_qdft = 0.0;
  double e_ccsd = 0.0;
  double recovery_percent = 0.0;
  bool above_60_threshold = false;
  bool max_recovery = false;  ///< best active space of the molecule (first on ties)
  bool plateau = false;       ///< within 0.05 pp of the previous active space
};

inline constexpr double kRecoveryThreshold = 60.0;
inline constexpr double kPlateauTolerance = 0.05;

/// Reads "molecule,e_hf,e_dft,e_ccsd[,...]"; extra columns are ignored.
std::map<std::string, ReferenceEnergies> read_references(std::istream& in);
std::map<std::string, ReferenceEnergies> read_references_file(const std::string& path);

/// Reads the energies schema: molecule,mu,ne,no,e_hf,e_qdft,iterations,converged.
std::vector<RunRecord> read_runs(std::istream& in);
std::vector<RunRecord> read_runs_file(const std::string& path);
void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& runs);

/// Builds the recovery table. Non-converged runs are dropped. For each
/// molecule mu_opt is the mu of the lowest converged E_qdft (smaller mu on
/// ties) and only runs at that mu are reported. Rows come out per molecule
/// in first-appearance order, sorted by (ne, no). Throws ReportError when a
/// molecule has no reference row.
std::vector<RecoveryRow> build_report(const std::vector<RunRecord>& runs,
                                      const std::map<std::string, ReferenceEnergies>& references);

/// molecule,ne,no,e_dft,e_qdft,e_ccsd,recovery_percent,above_60_threshold,mu_opt,max_recovery,plateau
void write_report_csv(std::ostream& out, const std::vector<RecoveryRow>& rows);
void write_report_json(std::ostream& out, const std::vector<RecoveryRow>& rows);

}  // namespace qdft
