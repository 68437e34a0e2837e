// qdft: command-line front end for the embedding workbench.

#include <qdft/config.hpp>
#include <qdft/csv.hpp>
#include <qdft/embedding.hpp>
#include <qdft/errors.hpp>
#include <qdft/fci.hpp>
#include <qdft/integrals.hpp>
#include <qdft/meanfield.hpp>
#include <qdft/muscan.hpp>
#include <qdft/recovery.hpp>
#include <qdft/tapering.hpp>
#include <qdft/vqe.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;

namespace {

struct Globals {
  std::string fcidump;
  std::string active;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string config;
  std::string out;
  std::string format = "text";
  std::string references;
  std::string results;
  std::string manifest;
  std::string solver;
  std::string molecule;
  std::string encoding;
  std::string trace;
  bool taper = false;
  int workers = -1;
};

// Output goes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw qdft::ConfigError("cli", "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string fixed(double v, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

qdft::WorkbenchConfig resolve(const Globals& g) {
  qdft::WorkbenchConfig c;
  if (!g.config.empty()) qdft::apply_config_file(c, g.config);
  if (!g.fcidump.empty()) c.fcidump = g.fcidump;
  if (!g.active.empty()) c.active = qdft::parse_active_spec(g.active);
  if (g.seed_set) c.vqe.seed = g.seed;
  if (!g.solver.empty()) c.embedding.active_solver = qdft::parse_solver(g.solver);
  if (!g.molecule.empty()) c.molecule = g.molecule;
  if (!g.encoding.empty()) c.vqe.encoding = qdft::parse_encoding(g.encoding);
  if (!g.manifest.empty()) c.mu_manifest = g.manifest;
  if (g.workers >= 0) c.workers = g.workers;
  return c;
}

void require_fcidump(const qdft::WorkbenchConfig& c, const std::string& command) {
  if (c.fcidump.empty()) throw CLI::RequiredError("--fcidump (needed by " + command + ")");
}

qdft::ActiveSpaceSpec active_or_full(const qdft::WorkbenchConfig& c, const qdft::IntegralSet& set) {
  if (c.active) return *c.active;
  return {set.n_electrons(), set.n_orbitals()};
}

int run_hf(const Globals& g) {
  const auto c = resolve(g);
  require_fcidump(c, "hf");
  const auto set = qdft::read_fcidump_file(c.fcidump);
  const auto mf = qdft::solve_rhf(set);
  Sink sink(g.out);
  auto& out = sink.stream();
  if (g.format == "json") {
    json j;
    j["energy"] = mf.energy;
    j["converged"] = mf.converged;
    j["iterations"] = mf.iterations;
    j["orbital_energies"] = std::vector<double>(mf.orbital_energies.data(),
                                                mf.orbital_energies.data() + mf.orbital_energies.size());
    out << j.dump(2) << '\n';
  } else if (g.format == "csv") {
    qdft::CsvWriter csv(out);
    csv.row({"orbital", "energy", "occupation"});
    for (Eigen::Index k = 0; k < mf.orbital_energies.size(); ++k) {
      csv.row({std::to_string(k + 1), qdft::format_number(mf.orbital_energies[k]), k < mf.n_occupied() ? "2" : "0"});
    }
  } else {
    out << "RHF energy      " << fixed(mf.energy) << " Ha\n";
    out << "converged       " << (mf.converged ? "yes" : "no") << " after " << mf.iterations << " iterations\n";
    out << "orbital energies\n";
    for (Eigen::Index k = 0; k < mf.orbital_energies.size(); ++k) {
      out << "  " << k + 1 << "  " << fixed(mf.orbital_energies[k]) << (k < mf.n_occupied() ? "  occ" : "") << '\n';
    }
  }
  return mf.converged ? 0 : 3;
}

int run_fci(const Globals& g) {
  const auto c = resolve(g);
  require_fcidump(c, "fci");
  const auto set = qdft::read_fcidump_file(c.fcidump);
  const auto spec = active_or_full(c, set);
  const auto mf = qdft::solve_rhf(set);
  const auto h = qdft::reduce(set, mf, spec);
  const auto r = qdft::fci_solve(h, spec.n_active_electrons, 0);
  const double total = r.ground_energy + h.inactive_energy();
  const qdft::Vector occ = qdft::symmetric_eigen(r.one_rdm).values.reverse();
  Sink sink(g.out);
  auto& out = sink.stream();
  if (g.format == "json") {
    json j;
    j["active_space"] = spec.label();
    j["rhf_energy"] = mf.energy;
    j["energy"] = total;
    j["active_energy"] = r.ground_energy;
    j["inactive_energy"] = h.inactive_energy();
    j["basis_dimension"] = r.basis_dimension;
    j["natural_occupations"] = std::vector<double>(occ.data(), occ.data() + occ.size());
    out << j.dump(2) << '\n';
  } else if (g.format == "csv") {
    qdft::CsvWriter csv(out);
    csv.row({"ne", "no", "e_hf", "e_fci", "basis_dimension"});
    csv.row({std::to_string(spec.n_active_electrons), std::to_string(spec.n_active_orbitals),
             qdft::format_number(mf.energy), qdft::format_number(total), std::to_string(r.basis_dimension)});
  } else {
    out << "active space    " << spec.label() << ", " << r.basis_dimension << " determinants\n";
    out << "RHF energy      " << fixed(mf.energy) << " Ha\n";
    out << "FCI energy      " << fixed(total) << " Ha\n";
    out << "natural occupations";
    for (Eigen::Index k = 0; k < occ.size(); ++k) out << ' ' << fixed(occ[k], 6);
    out << '\n';
  }
  return 0;
}

int run_vqe(const Globals& g) {
  const auto c = resolve(g);
  require_fcidump(c, "vqe");
  const auto set = qdft::read_fcidump_file(c.fcidump);
  const auto spec = active_or_full(c, set);
  const auto mf = qdft::solve_rhf(set);
  const auto h = qdft::reduce(set, mf, spec);
  const auto r = qdft::solve_active_vqe(h, c.vqe);
  const double total = r.vqe.energy + h.inactive_energy();
  if (!g.trace.empty()) {
    std::ofstream t(g.trace);
    if (!t) throw qdft::ConfigError("cli", "cannot write '" + g.trace + "'");
    qdft::write_trace_csv(t, r.vqe.trace);
  }
  Sink sink(g.out);
  auto& out = sink.stream();
  if (g.format == "json") {
    json j;
    j["active_space"] = spec.label();
    j["energy"] = total;
    j["active_energy"] = r.vqe.energy;
    j["converged"] = r.vqe.converged;
    j["iterations"] = r.vqe.iterations;
    j["evaluations"] = r.vqe.evaluations;
    j["parameters"] = r.vqe.parameters;
    out << j.dump(2) << '\n';
  } else if (g.format == "csv") {
    qdft::write_trace_csv(out, r.vqe.trace);
  } else {
    out << "active space    " << spec.label() << ", " << r.vqe.parameters.size() << " UCCSD parameters, "
        << r.vqe.state.n_qubits << " qubits (" << qdft::to_string(c.vqe.encoding) << ")\n";
    out << "VQE energy      " << fixed(total) << " Ha\n";
    out << "optimizer       " << r.vqe.message << ", " << r.vqe.iterations << " iterations, " << r.vqe.evaluations
        << " evaluations\n";
  }
  return 0;
}

int run_embed(const Globals& g) {
  const auto c = resolve(g);
  require_fcidump(c, "embed");
  const auto set = qdft::read_fcidump_file(c.fcidump);
  const auto spec = active_or_full(c, set);
  const auto r = qdft::run_embedding(set, spec, c.embedding, c.vqe);
  Sink sink(g.out);
  auto& out = sink.stream();
  if (g.format == "json") {
    json j;
    j["molecule"] = c.molecule;
    j["active_space"] = spec.label();
    j["solver"] = qdft::to_string(c.embedding.active_solver);
    j["rhf_energy"] = r.rhf_energy;
    j["energy"] = r.energy;
    j["converged"] = r.state.converged;
    j["iterations"] = r.state.iteration;
    json log = json::array();
    for (const auto& it : r.state.log) {
      log.push_back({{"iteration", it.iteration},
                     {"alpha", it.alpha},
                     {"energy", it.energy},
                     {"delta_energy", it.delta_energy},
                     {"solver_evaluations", it.solver_evaluations}});
    }
    j["log"] = log;
    out << j.dump(2) << '\n';
  } else if (g.format == "csv") {
    qdft::write_runs_csv(out, {{c.molecule, std::nullopt, spec.n_active_electrons, spec.n_active_orbitals,
                                r.rhf_energy, r.energy, r.state.iteration, r.state.converged}});
  } else {
    out << "active space " << spec.label() << ", solver " << qdft::to_string(c.embedding.active_solver) << '\n';
    qdft::write_iteration_log(out, r.state.log);
    out << "final energy " << fixed(r.energy) << " Ha (" << (r.state.converged ? "converged" : "not converged")
        << " after " << r.state.iteration << " iterations)\n";
  }
  return r.state.converged ? 0 : 3;
}

int run_mu_scan(const Globals& g) {
  auto c = resolve(g);
  if (c.mu_manifest.empty()) throw CLI::RequiredError("--manifest (or [mu_scan] manifest in the config)");
  if (!c.active) throw CLI::RequiredError("--active");
  c.mu_scan.inputs = qdft::read_mu_manifest(c.mu_manifest);
  const auto scan = qdft::mu_scan(c.mu_scan, *c.active, c.embedding, c.vqe, c.workers);
  const auto records = qdft::scan_records(c.molecule, *c.active, scan);
  Sink sink(g.out);
  auto& out = sink.stream();
  if (g.format == "json") {
    json j;
    j["molecule"] = c.molecule;
    j["active_space"] = c.active->label();
    j["mu_opt"] = scan.mu_opt;
    json rows = json::array();
    for (const auto& p : scan.table) {
      rows.push_back({{"mu", p.mu},
                      {"e_hf", p.e_hf},
                      {"e_qdft", p.converged ? json(p.energy) : json(nullptr)},
                      {"iterations", p.iterations},
                      {"converged", p.converged}});
    }
    j["points"] = rows;
    out << j.dump(2) << '\n';
  } else {
    qdft::write_runs_csv(out, records);
    if (g.format != "csv") std::cerr << "mu_opt = " << qdft::format_number(scan.mu_opt) << '\n';
  }
  return 0;
}

int run_report(const Globals& g) {
  if (g.references.empty()) throw CLI::RequiredError("--references");
  if (g.results.empty()) throw CLI::RequiredError("--results");
  const auto refs = qdft::read_references_file(g.references);
  const auto runs = qdft::read_runs_file(g.results);
  const auto rows = qdft::build_report(runs, refs);
  Sink sink(g.out);
  if (g.format == "json") {
    qdft::write_report_json(sink.stream(), rows);
  } else {
    qdft::write_report_csv(sink.stream(), rows);
  }
  return 0;
}

int run_roundtrip(const Globals& g) {
  const auto c = resolve(g);
  require_fcidump(c, "fcidump-roundtrip");
  const auto first = qdft::read_fcidump_file(c.fcidump);
  const std::string text = qdft::write_fcidump(first);
  const auto second = qdft::parse_fcidump(text);
  Sink sink(g.out);
  if (!g.out.empty()) sink.stream() << text;
  const bool same = first == second && qdft::write_fcidump(second) == text;
  std::cerr << (same ? "round trip identical" : "round trip MISMATCH") << " (" << first.two_body_entries().size()
            << " two-body entries)\n";
  return same ? 0 : 4;
}

int run_hamiltonian(const Globals& g) {
  const auto c = resolve(g);
  require_fcidump(c, "hamiltonian");
  const auto set = qdft::read_fcidump_file(c.fcidump);
  const auto spec = active_or_full(c, set);
  const auto mf = qdft::solve_rhf(set);
  const auto h = qdft::reduce(set, mf, spec);
  qdft::PauliSum op = qdft::active_qubit_hamiltonian(h, c.vqe.encoding);
  Sink sink(g.out);
  auto& out = sink.stream();
  if (g.taper) {
    const auto t = qdft::find_z2_symmetries(op);
    double e = 0.0;
    const auto sector = qdft::lowest_energy_sector(t, t.qubit_count_after <= 14 ? &e : nullptr);
    std::cerr << t.n_generators() << " Z2 generators, " << t.qubit_count_before << " -> " << t.qubit_count_after
              << " qubits\n";
    for (int k = 0; k < t.n_generators(); ++k) {
      std::cerr << "  " << t.symmetry_generators[k].label() << "  sector " << (sector[k] > 0 ? "+1" : "-1") << '\n';
    }
    op = t.taper(sector);
  }
  qdft::write_pauli_sum(out, op);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qdft: active-space embedding workbench (RHF bath, UCCSD-VQE or FCI active solver)"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--fcidump", g.fcidump, "FCIDUMP integral file");
  app.add_option("--active", g.active, "active space as NE,NO");
  app.add_option("--seed", g.seed, "VQE initialisation seed")->each([&](const std::string&) { g.seed_set = true; });
  app.add_option("--config", g.config, "INI config file");
  app.add_option("--out", g.out, "write the result here instead of stdout");
  app.add_option("--format", g.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--solver", g.solver, "active solver: vqe or fci");
  app.add_option("--molecule", g.molecule, "label used in CSV output");
  app.add_option("--encoding", g.encoding, "jordan-wigner, parity or parity-reduced");

  auto* hf = app.add_subcommand("hf", "restricted Hartree-Fock");
  auto* fci = app.add_subcommand("fci", "exact diagonalisation in the active space");
  auto* vqe = app.add_subcommand("vqe", "UCCSD-VQE in the active space");
  vqe->add_option("--trace", g.trace, "write the energy trace CSV here");
  auto* embed = app.add_subcommand("embed", "damped embedding self-consistency");
  auto* scan = app.add_subcommand("mu-scan", "embedding over the range-separation grid");
  scan->add_option("--manifest", g.manifest, "CSV of mu,path");
  scan->add_option("--workers", g.workers, "worker threads (0 = all cores)");
  auto* report = app.add_subcommand("report", "correlation recovery table");
  report->add_option("--references", g.references, "reference energies CSV");
  report->add_option("--results", g.results, "run energies CSV");
  auto* roundtrip = app.add_subcommand("fcidump-roundtrip", "parse, write and re-parse an FCIDUMP");
  auto* ham = app.add_subcommand("hamiltonian", "print the qubit Hamiltonian of the active space");
  ham->add_flag("--taper", g.taper, "apply Z2 tapering in the lowest-energy sector");

  try {
    app.parse(argc, argv);
    if (hf->parsed()) return run_hf(g);
    if (fci->parsed()) return run_fci(g);
    if (vqe->parsed()) return run_vqe(g);
    if (embed->parsed()) return run_embed(g);
    if (scan->parsed()) return run_mu_scan(g);
    if (report->parsed()) return run_report(g);
    if (roundtrip->parsed()) return run_roundtrip(g);
    if (ham->parsed()) return run_hamiltonian(g);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code != 0) std::cerr << app.help();
    return code;
  } catch (const qdft::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
