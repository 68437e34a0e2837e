#include <qdft/config.hpp>
#include <qdft/errors.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>

namespace qdft {

namespace {

constexpr const char* kModule = "config";

std::string where(const CLI::ConfigItem& item) { return "'" + item.fullname() + "'"; }

std::string single(const CLI::ConfigItem& item) {
  if (item.inputs.size() != 1) throw ConfigError(kModule, where(item) + " takes exactly one value");
  return item.inputs.front();
}

double as_double(const CLI::ConfigItem& item) {
  const std::string s = single(item);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError(kModule, where(item) + ": '" + s + "' is not a number");
  return v;
}

long long as_integer(const CLI::ConfigItem& item) {
  const std::string s = single(item);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError(kModule, where(item) + ": '" + s + "' is not an integer");
  return v;
}

int as_int(const CLI::ConfigItem& item) { return static_cast<int>(as_integer(item)); }

std::string as_path(const CLI::ConfigItem& item, const std::filesystem::path& base) {
  std::filesystem::path p = single(item);
  if (p.is_relative()) p = base / p;
  return p.string();
}

}  // namespace

void apply_config_file(WorkbenchConfig& c, const std::string& path) {
  if (!std::filesystem::exists(path)) throw ConfigError(kModule, "config file '" + path + "' not found");
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_file(path);
  } catch (const CLI::Error& e) {
    throw ConfigError(kModule, "cannot read '" + path + "': " + e.what());
  }
  const auto base = std::filesystem::path(path).parent_path();
  ActiveSpaceSpec active = c.active.value_or(ActiveSpaceSpec{});
  bool active_set = false;

  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    const std::string section = item.parents.empty() ? "" : item.parents.front();
    const std::string& key = item.name;
    if (section == "system") {
      if (key == "fcidump") c.fcidump = as_path(item, base);
      else if (key == "molecule") c.molecule = single(item);
      else throw ConfigError(kModule, "unknown key " + where(item));
    } else if (section == "active_space") {
      if (key == "ne") active.n_active_electrons = as_int(item);
      else if (key == "no") active.n_active_orbitals = as_int(item);
      else if (key == "active") active = parse_active_spec(single(item));
      else throw ConfigError(kModule, "unknown key " + where(item));
      active_set = true;
    } else if (section == "vqe") {
      if (key == "seed") c.vqe.seed = static_cast<std::uint64_t>(as_integer(item));
      else if (key == "sigma") c.vqe.sigma = as_double(item);
      else if (key == "max_iterations") c.vqe.max_iterations = as_int(item);
      else if (key == "tolerance") c.vqe.tolerance = as_double(item);
      else if (key == "gradient_step") c.vqe.gradient_step = as_double(item);
      else if (key == "encoding") c.vqe.encoding = parse_encoding(single(item));
      else throw ConfigError(kModule, "unknown key " + where(item));
    } else if (section == "embedding") {
      if (key == "threshold") c.embedding.threshold = as_double(item);
      else if (key == "max_iterations") c.embedding.max_iterations = as_int(item);
      else if (key == "min_iterations") c.embedding.min_iterations = as_int(item);
      else if (key == "damping_floor") c.embedding.damping_floor = as_double(item);
      else if (key == "damping_scale") c.embedding.damping_scale = as_double(item);
      else if (key == "solver") c.embedding.active_solver = parse_solver(single(item));
      else throw ConfigError(kModule, "unknown key " + where(item));
    } else if (section == "mu_scan") {
      if (key == "start") c.mu_scan.mu_start = as_double(item);
      else if (key == "end") c.mu_scan.mu_end = as_double(item);
      else if (key == "step") c.mu_scan.mu_step = as_double(item);
      else if (key == "manifest") c.mu_manifest = as_path(item, base);
      else if (key == "workers") c.workers = as_int(item);
      else throw ConfigError(kModule, "unknown key " + where(item));
    } else {
      throw ConfigError(kModule, "unknown section for key " + where(item));
    }
  }
  if (active_set) {
    active.validate();
    c.active = active;
  }
  c.vqe.validate();
  c.embedding.validate();
  c.mu_scan.validate();
}

WorkbenchConfig load_config(const std::string& path) {
  WorkbenchConfig c;
  apply_config_file(c, path);
  return c;
}

}  // namespace qdft
