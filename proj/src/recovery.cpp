#include <qdft/csv.hpp>
#include <qdft/errors.hpp>
#include <qdft/recovery.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <tuple>

namespace qdft {

namespace {
constexpr const char* kModule = "workbench";

bool parse_flag(const std::string& s, std::size_t line) {
  if (s == "1" || s == "true" || s == "True" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "False" || s == "no") return false;
  throw ParseError(kModule, line, "'" + s + "' is not a boolean");
}

void require(const CsvTable& t, std::initializer_list<const char*> cols) {
  for (const char* c : cols) {
    if (!t.has_column(c)) throw ParseError(kModule, 1, std::string("missing column '") + c + "'");
  }
}
}  // namespace

double recovery(double e_dft, double e_qdft, double e_ccsd) {
  const double gap = e_ccsd - e_dft;
  if (std::abs(gap) < 1e-12) {
    throw DegenerateReference(kModule, "E_CCSD and E_DFT coincide; recovery is undefined");
  }
  return 100.0 * (e_qdft - e_dft) / gap;
}

std::map<std::string, ReferenceEnergies> read_references(std::istream& in) {
  const CsvTable t = parse_csv(in, kModule);
  require(t, {"molecule", "e_hf", "e_dft", "e_ccsd"});
  std::map<std::string, ReferenceEnergies> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    const std::size_t line = t.lines[i];
    ReferenceEnergies e;
    e.molecule = r.at("molecule");
    e.e_hf = parse_double(r.at("e_hf"), kModule, line);
    e.e_dft = parse_double(r.at("e_dft"), kModule, line);
    e.e_ccsd = parse_double(r.at("e_ccsd"), kModule, line);
    out[e.molecule] = e;
  }
  return out;
}

std::map<std::string, ReferenceEnergies> read_references_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(kModule, "cannot open references '" + path + "'");
  return read_references(in);
}

std::vector<RunRecord> read_runs(std::istream& in) {
  const CsvTable t = parse_csv(in, kModule);
  if (t.header.empty()) return {};
  require(t, {"molecule", "mu", "ne", "no", "e_hf", "e_qdft", "iterations", "converged"});
  std::vector<RunRecord> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    const std::size_t line = t.lines[i];
    RunRecord x;
    x.molecule = r.at("molecule");
    if (!r.at("mu").empty()) x.mu = parse_double(r.at("mu"), kModule, line);
    x.ne = parse_int(r.at("ne"), kModule, line);
    x.no = parse_int(r.at("no"), kModule, line);
    x.e_hf = r.at("e_hf").empty() ? std::nan("") : parse_double(r.at("e_hf"), kModule, line);
    x.e_qdft = parse_double(r.at("e_qdft"), kModule, line);
    x.iterations = parse_int(r.at("iterations"), kModule, line);
    x.converged = parse_flag(r.at("converged"), line);
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<RunRecord> read_runs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(kModule, "cannot open results '" + path + "'");
  return read_runs(in);
}

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& runs) {
  CsvWriter csv(out);
  csv.row({"molecule", "mu", "ne", "no", "e_hf", "e_qdft", "iterations", "converged"});
  for (const auto& r : runs) {
    csv.row({r.molecule, r.mu ? format_number(*r.mu) : "", std::to_string(r.ne), std::to_string(r.no),
             std::isnan(r.e_hf) ? "" : format_number(r.e_hf), format_number(r.e_qdft), std::to_string(r.iterations),
             r.converged ? "1" : "0"});
  }
}

std::vector<RecoveryRow> build_report(const std::vector<RunRecord>& runs,
                                      const std::map<std::string, ReferenceEnergies>& references) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const RunRecord*>> by_molecule;
  for (const auto& r : runs) {
    if (!r.converged) continue;
    if (!by_molecule.count(r.molecule)) order.push_back(r.molecule);
    by_molecule[r.molecule].push_back(&r);
  }

  std::vector<RecoveryRow> out;
  for (const auto& mol : order) {
    const auto ref = references.find(mol);
    if (ref == references.end()) throw ReportError(kModule, "no reference energies for molecule '" + mol + "'");
    auto& rows = by_molecule[mol];

    // mu_opt: lowest energy, smaller mu on ties within 1e-12.
    std::vector<const RunRecord*> sorted = rows;
    std::stable_sort(sorted.begin(), sorted.end(), [](auto a, auto b) {
      return a->mu.value_or(-INFINITY) < b->mu.value_or(-INFINITY);
    });
    const RunRecord* best = nullptr;
    for (const auto* r : sorted) {
      if (!best || r->e_qdft < best->e_qdft - 1e-12) best = r;
    }
    const std::optional<double> mu_opt = best->mu;

    std::vector<RecoveryRow> mol_rows;
    for (const auto* r : rows) {
      if (r->mu != mu_opt) continue;
      RecoveryRow row;
      row.molecule = mol;
      row.mu_opt = mu_opt;
      row.ne = r->ne;
      row.no = r->no;
      row.e_dft = ref->second.e_dft;
      row.e_qdft = r->e_qdft;
      row.e_ccsd = ref->second.e_ccsd;
      row.recovery_percent = recovery(row.e_dft, row.e_qdft, row.e_ccsd);
      row.above_60_threshold = row.recovery_percent > kRecoveryThreshold;
      mol_rows.push_back(row);
    }
    std::stable_sort(mol_rows.begin(), mol_rows.end(),
                     [](const auto& a, const auto& b) { return std::tie(a.ne, a.no) < std::tie(b.ne, b.no); });
    std::size_t best_row = 0;
    for (std::size_t k = 0; k < mol_rows.size(); ++k) {
      if (mol_rows[k].recovery_percent > mol_rows[best_row].recovery_percent + 1e-9) best_row = k;
      if (k > 0 && std::abs(mol_rows[k].recovery_percent - mol_rows[k - 1].recovery_percent) <= kPlateauTolerance + 1e-9) {
        mol_rows[k].plateau = true;
      }
    }
    if (!mol_rows.empty()) mol_rows[best_row].max_recovery = true;
    out.insert(out.end(), mol_rows.begin(), mol_rows.end());
  }
  return out;
}

void write_report_csv(std::ostream& out, const std::vector<RecoveryRow>& rows) {
  CsvWriter csv(out);
  csv.row({"molecule", "ne", "no", "e_dft", "e_qdft", "e_ccsd", "recovery_percent", "above_60_threshold", "mu_opt",
           "max_recovery", "plateau"});
  for (const auto& r : rows) {
    csv.row({r.molecule, std::to_string(r.ne), std::to_string(r.no), format_number(r.e_dft), format_number(r.e_qdft),
             format_number(r.e_ccsd), format_number(r.recovery_percent), r.above_60_threshold ? "1" : "0",
             r.mu_opt ? format_number(*r.mu_opt) : "", r.max_recovery ? "1" : "0", r.plateau ? "1" : "0"});
  }
}

void write_report_json(std::ostream& out, const std::vector<RecoveryRow>& rows) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["molecule"] = r.molecule;
    o["mu_opt"] = r.mu_opt ? nlohmann::ordered_json(*r.mu_opt) : nlohmann::ordered_json(nullptr);
    o["active_space"] = "(" + std::to_string(r.ne) + "e," + std::to_string(r.no) + "o)";
    o["ne"] = r.ne;
    o["no"] = r.no;
    o["e_dft"] = r.e_dft;
    o["e_qdft"] = r.e_qdft;
    o["e_ccsd"] = r.e_ccsd;
    o["recovery_percent"] = r.recovery_percent;
    o["above_60_threshold"] = r.above_60_threshold;
    o["max_recovery"] = r.max_recovery;
    o["plateau"] = r.plateau;
    j.push_back(std::move(o));
  }
  out << j.dump(2) << '\n';
}

}  // namespace qdft
