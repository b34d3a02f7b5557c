#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "crackimg/config.hpp"

namespace {

double parse_snr(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  std::size_t consumed = 0;
  const double value = std::stod(text, &consumed);
  if (consumed != text.size() || !std::isfinite(value)) {
    throw crackimg::ConfigError("--snr expects a finite number of dB or \"inf\"");
  }
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-frequency SVD imaging of conducting cracks from synthetic multistatic data"};

  std::string configPath;
  std::string outputBase;
  std::optional<std::uint64_t> seedOverride;
  std::optional<std::string> snrOverride;
  std::optional<double> gridStepOverride;
  bool noPgm = false;

  app.add_option("-c,--config", configPath, "Scenario configuration file (JSON)")->required();
  app.add_option("-o,--output", outputBase,
                 "Output base path; writes <base>.csv, <base>.meta.json, <base>.pgm "
                 "(default: config file stem)");
  app.add_option("--seed", seedOverride, "Override the noise seed");
  app.add_option("--snr", snrOverride, "Override the SNR in dB, or \"inf\" for noiseless data");
  app.add_option("--grid-step", gridStepOverride,
                 "Override the grid spacing, preserving the covered extent");
  app.add_flag("--no-pgm", noPgm, "Skip the PGM preview");

  CLI11_PARSE(app, argc, argv);

  try {
    crackimg::ScenarioConfig cfg = crackimg::load_config(configPath);
    if (seedOverride) cfg.seed = *seedOverride;
    if (snrOverride) cfg.snrDb = parse_snr(*snrOverride);
    if (gridStepOverride) cfg = crackimg::with_grid_spacing(cfg, *gridStepOverride);

    if (outputBase.empty()) {
      outputBase = std::filesystem::path(configPath).stem().string();
    }

    const crackimg::ImagingMap map = crackimg::run_pipeline(cfg, outputBase, !noPgm);

    std::printf("grid: %d x %d, spacing %g\n", map.grid.nx(), map.grid.ny(),
                map.grid.spacing());
    std::printf("ranks per frequency:");
    for (const int rank : map.meta.ranks) std::printf(" %d", rank);
    std::printf("\n");
    const auto peaks = crackimg::find_peaks(map);
    if (!peaks.empty()) {
      const auto& top = peaks.front();
      const crackimg::Vec2 at = map.grid.point(top.i, top.j);
      std::printf("strongest peak: |E| = %.6g at (%.4g, %.4g)\n", top.magnitude, at.x(),
                  at.y());
    }
    std::printf("wrote %s.csv, %s.meta.json%s\n", outputBase.c_str(), outputBase.c_str(),
                noPgm ? "" : (", " + outputBase + ".pgm").c_str());
    return 0;
  } catch (const crackimg::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const crackimg::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
