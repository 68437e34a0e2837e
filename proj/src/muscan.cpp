#include <qdft/csv.hpp>
#include <qdft/errors.hpp>
#include <qdft/integrals.hpp>
#include <qdft/muscan.hpp>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <thread>

namespace qdft {

namespace {
constexpr const char* kModule = "workbench";
}

void MuScanSpec::validate() const {
  if (!(mu_step > 0)) throw ConfigError(kModule, "mu step must be positive");
  if (!(mu_end >= mu_start)) throw ConfigError(kModule, "mu end lies below mu start");
}

std::vector<double> MuScanSpec::grid() const {
  validate();
  std::vector<double> out;
  // Computed as start + k*step rather than by accumulation; the slack
  // absorbs representation error at the end point.
  for (long k = 0;; ++k) {
    const double mu = mu_start + static_cast<double>(k) * mu_step;
    if (mu > mu_end + 1e-9 * mu_step) break;
    out.push_back(mu);
  }
  return out;
}

const std::string* MuScanSpec::input_for(double mu) const {
  auto it = inputs.lower_bound(mu - 1e-9);
  if (it != inputs.end() && std::abs(it->first - mu) <= 1e-9) return &it->second;
  return nullptr;
}

std::map<double, std::string> read_mu_manifest(const std::string& path) {
  const CsvTable t = read_csv_file(path, kModule);
  if (!t.has_column("mu") || !t.has_column("path")) throw ParseError(kModule, 1, "manifest needs columns mu,path");
  const auto dir = std::filesystem::path(path).parent_path();
  std::map<double, std::string> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double mu = parse_double(t.rows[i].at("mu"), kModule, t.lines[i]);
    std::filesystem::path p = t.rows[i].at("path");
    if (p.is_relative()) p = dir / p;
    out[mu] = p.string();
  }
  return out;
}

std::size_t select_optimum(const std::vector<MuPoint>& table) {
  std::size_t best = table.size();
  for (std::size_t k = 0; k < table.size(); ++k) {
    const MuPoint& p = table[k];
    if (!p.converged || !std::isfinite(p.energy)) continue;
    if (best == table.size()) {
      best = k;
      continue;
    }
    const MuPoint& b = table[best];
    if (p.energy < b.energy - 1e-12 || (std::abs(p.energy - b.energy) <= 1e-12 && p.mu < b.mu)) best = k;
  }
  if (best == table.size()) throw ScanFailed(kModule, "no mu point converged");
  return best;
}

MuScanResult mu_scan(const std::vector<double>& grid, const MuEvaluator& evaluate, int workers) {
  MuScanResult out;
  out.table.resize(grid.size());
  std::size_t n_workers = workers > 0 ? static_cast<std::size_t>(workers) : std::thread::hardware_concurrency();
  n_workers = std::max<std::size_t>(1, std::min(n_workers, grid.size()));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < grid.size(); k = next++) {
      MuPoint p;
      try {
        p = evaluate(grid[k]);
      } catch (const std::exception& e) {
        p = MuPoint{};
        p.converged = false;
        p.energy = std::nan("");
        p.error = e.what();
      }
      p.mu = grid[k];
      out.table[k] = std::move(p);
    }
  };
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(work);
  }
  out.optimum_index = select_optimum(out.table);
  out.mu_opt = out.table[out.optimum_index].mu;
  return out;
}

MuScanResult mu_scan(const MuScanSpec& spec, const ActiveSpaceSpec& active, const EmbeddingConfig& embedding,
                     const VqeConfig& vqe, int workers) {
  const auto grid = spec.grid();
  std::string missing;
  for (double mu : grid) {
    const std::string* path = spec.input_for(mu);
    if (!path || !std::filesystem::exists(*path)) missing += (missing.empty() ? "" : ", ") + format_number(mu);
  }
  if (!missing.empty()) throw ConfigError(kModule, "no integral file for mu = " + missing);

  const MuEvaluator evaluate = [&](double mu) {
    const IntegralSet set = read_fcidump_file(*spec.input_for(mu));
    const EmbeddingResult r = run_embedding(set, active, embedding, vqe);
    MuPoint p;
    p.mu = mu;
    p.energy = r.energy;
    p.e_hf = r.rhf_energy;
    p.iterations = r.state.iteration;
    p.converged = r.state.converged;
    return p;
  };
  return mu_scan(grid, evaluate, workers);
}

std::vector<RunRecord> scan_records(const std::string& molecule, const ActiveSpaceSpec& active,
                                    const MuScanResult& scan) {
  std::vector<RunRecord> out;
  for (const auto& p : scan.table) {
    out.push_back({molecule, p.mu, active.n_active_electrons, active.n_active_orbitals, p.e_hf, p.energy, p.iterations,
                   p.converged});
  }
  return out;
}

}  // namespace qdft
