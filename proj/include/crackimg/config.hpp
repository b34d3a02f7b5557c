#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "crackimg/imaging.hpp"

namespace crackimg {

/// Invalid or ill-formed scenario configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure to read or write an artifact (CLI exit code 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One fully specified experiment: scene, sensing setup, noise, and search
/// grid. Parsed from a JSON document; unspecified knobs receive defaults.
struct ScenarioConfig {
  std::vector<Crack> cracks;
  int directionCount = 0;
  int frequencyCount = 0;
  double lambdaMin = 0.0;
  double lambdaMax = 0.0;
  double snrDb = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  ImagingGrid grid{Vec2(-1.0, -1.0), 0.02, 101, 101};
  double tau = 0.01;
  Convention convention = Convention::Symmetric;
  double discretizationSpacing = 0.0;

  friend bool operator==(const ScenarioConfig& lhs, const ScenarioConfig& rhs);
};

/// Parses and validates a JSON scenario document. Unknown keys are rejected;
/// omitted optional fields get their defaults (tau 0.1 with noise / 0.01
/// without, grid 101x101 spacing 0.02 over [-1,1]^2, symmetric convention,
/// discretization spacing lambdaMin/10).
ScenarioConfig parse_config(const std::string& text);

/// Renders a config back to its JSON document form, defaults materialized.
/// parse_config(render_config(cfg)) reproduces cfg exactly.
std::string render_config(const ScenarioConfig& cfg);

/// Reads a config file; the file being unreadable is an IoError, bad content
/// a ConfigError.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Replaces the grid spacing, rescaling the sample counts so the covered
/// extent is preserved.
ScenarioConfig with_grid_spacing(const ScenarioConfig& cfg, double spacing);

/// Runs discretize -> directions/frequencies -> per-frequency MSR assembly
/// -> noise -> map evaluation. Fully deterministic given cfg.seed.
ImagingMap run_pipeline(const ScenarioConfig& cfg);

/// run_pipeline plus artifact export under basePath.
ImagingMap run_pipeline(const ScenarioConfig& cfg, const std::filesystem::path& basePath,
                        bool writePgm = true);

/// Writes basePath.csv (row-major |E| grid, ny rows of nx values, 17
/// significant digits), basePath.meta.json (sidecar with N, K, omegas,
/// ranks, seed, and the config echo), and optionally basePath.pgm (plain P2,
/// magnitude scaled linearly to 0..255 by the map maximum).
void export_map(const ImagingMap& map, const ScenarioConfig& cfg,
                const std::filesystem::path& basePath, bool writePgm = true);

}  // namespace crackimg
