#include "crackimg/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace crackimg {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& context, const std::string& message) {
  throw ConfigError(context.empty() ? message : context + ": " + message);
}

const json& require_key(const json& obj, const char* key, const std::string& context) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(context, std::string("missing required field \"") + key + "\"");
  return *it;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& context) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) fail(context, "unknown field \"" + key + "\"");
  }
}

double as_number(const json& j, const std::string& context) {
  if (!j.is_number()) fail(context, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& context) {
  if (!j.is_number_integer()) fail(context, "expected an integer");
  return j.get<int>();
}

std::uint64_t as_seed(const json& j, const std::string& context) {
  if (!(j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0))) {
    fail(context, "expected a nonnegative integer seed");
  }
  return j.get<std::uint64_t>();
}

Vec2 as_point(const json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 2) fail(context, "expected a 2-element array [x, y]");
  return Vec2(as_number(j[0], context), as_number(j[1], context));
}

Crack parse_crack(const json& j, const std::string& context) {
  if (!j.is_object()) fail(context, "expected a crack object");
  const json& type = require_key(j, "type", context);
  if (!type.is_string()) fail(context, "\"type\" must be a string");
  const std::string kind = type.get<std::string>();
  const double rho = as_number(require_key(j, "rho", context), context + ".rho");

  try {
    if (kind == "point") {
      reject_unknown_keys(j, {"type", "center", "rho"}, context);
      return Crack(PointCrack{as_point(require_key(j, "center", context), context + ".center")},
                   rho);
    }
    if (kind == "segment") {
      reject_unknown_keys(j, {"type", "endpoints", "rho"}, context);
      const json& ends = require_key(j, "endpoints", context);
      if (!ends.is_array() || ends.size() != 2) {
        fail(context, "\"endpoints\" must be an array of two points");
      }
      return Crack(SegmentCrack{as_point(ends[0], context + ".endpoints[0]"),
                                as_point(ends[1], context + ".endpoints[1]")},
                   rho);
    }
    if (kind == "arc") {
      reject_unknown_keys(j, {"type", "center", "radius", "angleStart", "angleEnd", "rho"},
                          context);
      return Crack(ArcCrack{as_point(require_key(j, "center", context), context + ".center"),
                            as_number(require_key(j, "radius", context), context + ".radius"),
                            as_number(require_key(j, "angleStart", context), context + ".angleStart"),
                            as_number(require_key(j, "angleEnd", context), context + ".angleEnd")},
                   rho);
    }
  } catch (const std::invalid_argument& e) {
    fail(context, e.what());
  }
  fail(context, "unknown crack type \"" + kind + "\" (expected point, segment, or arc)");
}

ImagingGrid parse_grid(const json& j, const std::string& context) {
  if (!j.is_object()) fail(context, "expected a grid object");
  reject_unknown_keys(j, {"origin", "spacing", "nx", "ny"}, context);
  try {
    return ImagingGrid(as_point(require_key(j, "origin", context), context + ".origin"),
                       as_number(require_key(j, "spacing", context), context + ".spacing"),
                       as_int(require_key(j, "nx", context), context + ".nx"),
                       as_int(require_key(j, "ny", context), context + ".ny"));
  } catch (const std::invalid_argument& e) {
    fail(context, e.what());
  }
}

json point_to_json(const Vec2& p) { return json::array({p.x(), p.y()}); }

json crack_to_json(const Crack& crack) {
  json j;
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, PointCrack>) {
          j["type"] = "point";
          j["center"] = point_to_json(s.center);
        } else if constexpr (std::is_same_v<S, SegmentCrack>) {
          j["type"] = "segment";
          j["endpoints"] = json::array({point_to_json(s.a), point_to_json(s.b)});
        } else {
          j["type"] = "arc";
          j["center"] = point_to_json(s.center);
          j["radius"] = s.radius;
          j["angleStart"] = s.angleStart;
          j["angleEnd"] = s.angleEnd;
        }
      },
      crack.shape());
  j["rho"] = crack.halfLength();
  return j;
}

json grid_to_json(const ImagingGrid& grid) {
  json j;
  j["origin"] = point_to_json(grid.origin());
  j["spacing"] = grid.spacing();
  j["nx"] = grid.nx();
  j["ny"] = grid.ny();
  return j;
}

json snr_to_json(double snrDb) {
  if (std::isinf(snrDb)) return json("inf");
  return json(snrDb);
}

json config_to_json(const ScenarioConfig& cfg) {
  json j;
  j["cracks"] = json::array();
  for (const Crack& crack : cfg.cracks) j["cracks"].push_back(crack_to_json(crack));
  j["N"] = cfg.directionCount;
  j["K"] = cfg.frequencyCount;
  j["lambdaMin"] = cfg.lambdaMin;
  j["lambdaMax"] = cfg.lambdaMax;
  j["snrDb"] = snr_to_json(cfg.snrDb);
  j["seed"] = cfg.seed;
  j["grid"] = grid_to_json(cfg.grid);
  j["tau"] = cfg.tau;
  j["convention"] = std::string(to_string(cfg.convention));
  j["discretizationSpacing"] = cfg.discretizationSpacing;
  return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed while writing " + path.string());
}

}  // namespace

bool operator==(const ScenarioConfig& lhs, const ScenarioConfig& rhs) {
  return lhs.cracks == rhs.cracks && lhs.directionCount == rhs.directionCount &&
         lhs.frequencyCount == rhs.frequencyCount && lhs.lambdaMin == rhs.lambdaMin &&
         lhs.lambdaMax == rhs.lambdaMax &&
         (lhs.snrDb == rhs.snrDb || (std::isinf(lhs.snrDb) && std::isinf(rhs.snrDb))) &&
         lhs.seed == rhs.seed && lhs.grid == rhs.grid && lhs.tau == rhs.tau &&
         lhs.convention == rhs.convention &&
         lhs.discretizationSpacing == rhs.discretizationSpacing;
}

ScenarioConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown_keys(j,
                      {"cracks", "N", "K", "lambdaMin", "lambdaMax", "snrDb", "seed", "grid",
                       "tau", "convention", "discretizationSpacing"},
                      "");

  ScenarioConfig cfg;

  const json& cracks = require_key(j, "cracks", "");
  if (!cracks.is_array() || cracks.empty()) fail("cracks", "expected a nonempty array");
  for (std::size_t i = 0; i < cracks.size(); ++i) {
    cfg.cracks.push_back(parse_crack(cracks[i], "cracks[" + std::to_string(i) + "]"));
  }

  cfg.directionCount = as_int(require_key(j, "N", ""), "N");
  if (cfg.directionCount < 2 || cfg.directionCount % 2 != 0) {
    fail("N", "direction count must be even and at least 2");
  }
  cfg.frequencyCount = as_int(require_key(j, "K", ""), "K");
  if (cfg.frequencyCount < 1) fail("K", "frequency count must be at least 1");

  cfg.lambdaMin = as_number(require_key(j, "lambdaMin", ""), "lambdaMin");
  cfg.lambdaMax = as_number(require_key(j, "lambdaMax", ""), "lambdaMax");
  if (!(cfg.lambdaMin > 0.0 && cfg.lambdaMin < cfg.lambdaMax)) {
    fail("lambdaMin/lambdaMax", "wavelengths must satisfy 0 < lambdaMin < lambdaMax");
  }

  const json& snr = require_key(j, "snrDb", "");
  if (snr.is_string()) {
    if (snr.get<std::string>() != "inf") fail("snrDb", "expected a number or \"inf\"");
    cfg.snrDb = std::numeric_limits<double>::infinity();
  } else {
    cfg.snrDb = as_number(snr, "snrDb");
    if (!std::isfinite(cfg.snrDb)) fail("snrDb", "expected a finite number or \"inf\"");
  }

  cfg.seed = as_seed(require_key(j, "seed", ""), "seed");

  if (j.contains("grid")) {
    cfg.grid = parse_grid(j["grid"], "grid");
  }

  cfg.tau = std::isinf(cfg.snrDb) ? 0.01 : 0.1;
  if (j.contains("tau")) {
    cfg.tau = as_number(j["tau"], "tau");
    if (!(cfg.tau > 0.0 && cfg.tau < 1.0)) {
      fail("tau", "rank-selection threshold must satisfy 0 < tau < 1");
    }
  }

  if (j.contains("convention")) {
    const json& convention = j["convention"];
    if (!convention.is_string()) fail("convention", "expected \"paper\" or \"symmetric\"");
    try {
      cfg.convention = convention_from_string(convention.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail("convention", e.what());
    }
  }

  cfg.discretizationSpacing = cfg.lambdaMin / 10.0;
  if (j.contains("discretizationSpacing")) {
    cfg.discretizationSpacing = as_number(j["discretizationSpacing"], "discretizationSpacing");
    if (!(cfg.discretizationSpacing > 0.0)) {
      fail("discretizationSpacing", "discretization spacing must be positive");
    }
  }

  return cfg;
}

std::string render_config(const ScenarioConfig& cfg) {
  return config_to_json(cfg).dump(2) + "\n";
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed while reading " + path.string());
  return parse_config(buffer.str());
}

ScenarioConfig with_grid_spacing(const ScenarioConfig& cfg, double spacing) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw ConfigError("grid spacing override must be positive");
  }
  const auto rescale = [&](int count) {
    const double extent = cfg.grid.spacing() * static_cast<double>(count - 1);
    return std::max(1, static_cast<int>(std::llround(extent / spacing)) + 1);
  };
  ScenarioConfig out = cfg;
  out.grid = ImagingGrid(cfg.grid.origin(), spacing, rescale(cfg.grid.nx()),
                         rescale(cfg.grid.ny()));
  return out;
}

ImagingMap run_pipeline(const ScenarioConfig& cfg) {
  const DirectionSet dirs = make_directions(cfg.directionCount);
  const FrequencyGrid frequencies =
      make_frequencies(cfg.lambdaMin, cfg.lambdaMax, cfg.frequencyCount);
  const ScattererCloud cloud = discretize(cfg.cracks, cfg.discretizationSpacing);

  std::vector<MSRMatrix> matrices;
  matrices.reserve(static_cast<std::size_t>(frequencies.size()));
  for (Eigen::Index k = 0; k < frequencies.size(); ++k) {
    MSRMatrix clean = assemble_msr(cloud, frequencies.omega(k), dirs, cfg.convention);
    const NoiseSpec noise{cfg.snrDb, derive_stream_seed(cfg.seed, static_cast<std::uint64_t>(k))};
    matrices.push_back(add_noise(clean, noise));
  }
  return evaluate_map(cfg.grid, matrices, dirs, cfg.tau);
}

ImagingMap run_pipeline(const ScenarioConfig& cfg, const std::filesystem::path& basePath,
                        bool writePgm) {
  ImagingMap map = run_pipeline(cfg);
  export_map(map, cfg, basePath, writePgm);
  return map;
}

void export_map(const ImagingMap& map, const ScenarioConfig& cfg,
                const std::filesystem::path& basePath, bool writePgm) {
  const int nx = map.grid.nx();
  const int ny = map.grid.ny();

  // CSV, row-major: row j holds the nx magnitudes at y = origin.y + j h.
  std::string csv;
  csv.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * 20);
  char buffer[40];
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", map.magnitude(j, i));
      csv += buffer;
      csv += (i + 1 < nx) ? ',' : '\n';
    }
  }
  std::filesystem::path csvPath = basePath;
  csvPath += ".csv";
  write_text_file(csvPath, csv);

  json sidecar;
  sidecar["N"] = map.meta.directionCount;
  sidecar["K"] = map.meta.frequencyCount;
  sidecar["omegas"] = json::array();
  for (Eigen::Index k = 0; k < map.meta.omegas.size(); ++k) {
    sidecar["omegas"].push_back(map.meta.omegas[k]);
  }
  sidecar["ranks"] = map.meta.ranks;
  sidecar["seed"] = cfg.seed;
  sidecar["snrDb"] = snr_to_json(cfg.snrDb);
  sidecar["convention"] = std::string(to_string(cfg.convention));
  sidecar["gridSpec"] = grid_to_json(map.grid);
  sidecar["cracks"] = json::array();
  for (const Crack& crack : cfg.cracks) sidecar["cracks"].push_back(crack_to_json(crack));
  sidecar["config"] = config_to_json(cfg);
  std::filesystem::path metaPath = basePath;
  metaPath += ".meta.json";
  write_text_file(metaPath, sidecar.dump(2) + "\n");

  if (writePgm) {
    const double maxMagnitude = map.magnitude.maxCoeff();
    std::string pgm = "P2\n" + std::to_string(nx) + " " + std::to_string(ny) + "\n255\n";
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        int pixel = 0;
        if (maxMagnitude > 0.0) {
          pixel = std::min(255, static_cast<int>(std::floor(
                                    map.magnitude(j, i) * 255.0 / maxMagnitude)));
        }
        pgm += std::to_string(pixel);
        pgm += (i + 1 < nx) ? ' ' : '\n';
      }
    }
    std::filesystem::path pgmPath = basePath;
    pgmPath += ".pgm";
    write_text_file(pgmPath, pgm);
  }
}

}  // namespace crackimg
