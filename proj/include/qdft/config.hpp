#pragma once

#include <qdft/activespace.hpp>
#include <qdft/embedding.hpp>
#include <qdft/muscan.hpp>
#include <qdft/vqe.hpp>

#include <optional>
#include <string>

namespace qdft {

/// Everything a CLI run can be configured with. Defaults follow the
/// published protocol.
struct WorkbenchConfig {
  std::string fcidump;
  std::string molecule = "molecule";
  std::optional<ActiveSpaceSpec> active;
  VqeConfig vqe;
  EmbeddingConfig embedding;
  MuScanSpec mu_scan;
  std::string mu_manifest;
  int workers = 0;
};

/// Applies an INI file with sections [system], [active_space], [vqe],
/// [embedding] and [mu_scan] on top of `config`. Relative paths are taken
/// relative to the file's directory. Unknown sections or keys and malformed
/// values raise ConfigError.
void apply_config_file(WorkbenchConfig& config, const std::string& path);
WorkbenchConfig load_config(const std::string& path);

}  // namespace qdft
