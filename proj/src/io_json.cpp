#include "squarepeg/io_json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace squarepeg {

namespace {

using nlohmann::json;

double need_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw std::invalid_argument(std::string("missing numeric field: ") + key);
  return j[key].get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    throw std::invalid_argument(std::string("field must be numeric: ") + key);
  return j[key].get<double>();
}

json point_to_json(const Point& p) { return json::array({p.x, p.y}); }

Point point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("point must be a [x, y] array");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

nlohmann::json segment_to_json(const Segment& segment) {
  json j;
  j["kind"] = segment_kind(segment);
  std::visit(
      [&j](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CircleArc>) {
          j["center"] = point_to_json(s.center);
          j["radius"] = s.radius;
          j["startAngle"] = s.start_angle;
          j["endAngle"] = s.end_angle;
        } else if constexpr (std::is_same_v<T, GraphBumpArc>) {
          j["c"] = s.c;
          j["a"] = s.a;
        } else {
          j["u"] = s.u;
          j["v"] = s.v;
          j["c"] = s.c;
          j["a"] = s.a;
        }
      },
      segment);
  return j;
}

Segment segment_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw std::invalid_argument("segment must be an object with a \"kind\" string");
  const std::string kind = j["kind"].get<std::string>();
  Segment out;
  if (kind == "CircleArc") {
    CircleArc arc;
    if (j.contains("center")) arc.center = point_from_json(j["center"]);
    arc.radius = number_or(j, "radius", 1.0);
    arc.start_angle = number_or(j, "startAngle", 0.0);
    arc.end_angle = number_or(j, "endAngle", kTwoPi);
    out = arc;
  } else if (kind == "SemicircleArc") {
    out = semicircle_arc();
  } else if (kind == "GraphBumpArc") {
    GraphBumpArc arc;
    arc.c = need_number(j, "c");
    arc.a = number_or(j, "a", 0.02);
    out = arc;
  } else if (kind == "PolarBumpArc") {
    PolarBumpArc arc;
    arc.u = need_number(j, "u");
    arc.v = need_number(j, "v");
    arc.c = need_number(j, "c");
    arc.a = number_or(j, "a", 0.02);
    out = arc;
  } else {
    throw std::invalid_argument("unknown segment kind: " + kind);
  }
  validate_segment(out);
  return out;
}

nlohmann::json spec_to_json(const CurveSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["segments"] = json::array();
  for (const Segment& s : spec.segments) j["segments"].push_back(segment_to_json(s));
  j["metadata"] = spec.metadata.is_null() ? json::object() : spec.metadata;
  return j;
}

CurveSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("curve spec must be a JSON object");
  CurveSpec spec;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw std::invalid_argument("name must be a string");
    spec.name = j["name"].get<std::string>();
  }
  if (!j.contains("segments") || !j["segments"].is_array() || j["segments"].empty())
    throw std::invalid_argument("curve spec needs a non-empty segments array");
  for (const json& sj : j["segments"]) spec.segments.push_back(segment_from_json(sj));
  spec.metadata = j.value("metadata", json::object());
  validate_spec(spec);
  return spec;
}

nlohmann::json config_to_json(const SolveConfig& config) {
  return json{{"gridResolution", config.grid_resolution},
              {"newtonTolerance", config.newton_tolerance},
              {"maxNewtonIterations", config.max_newton_iterations},
              {"dedupTolerance", config.dedup_tolerance},
              {"minSideLength", config.min_side_length},
              {"familyGapThreshold", config.family_gap_threshold},
              {"vertexTolerance", config.vertex_tolerance},
              {"threads", config.threads},
              {"flatTolerance", config.flat_tolerance},
              {"flatAngleLink", config.flat_angle_link},
              {"familyExtent", config.family_extent},
              {"snapWindow", config.snap_window},
              {"densifyWindow", config.densify_window},
              {"oracleThreshold", config.oracle_threshold}};
}

SolveConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  SolveConfig config;
  for (const auto& [key, value] : j.items()) {
    if (key == "gridResolution")
      config.grid_resolution = value.get<int>();
    else if (key == "newtonTolerance")
      config.newton_tolerance = value.get<double>();
    else if (key == "maxNewtonIterations")
      config.max_newton_iterations = value.get<int>();
    else if (key == "dedupTolerance")
      config.dedup_tolerance = value.get<double>();
    else if (key == "minSideLength")
      config.min_side_length = value.get<double>();
    else if (key == "familyGapThreshold")
      config.family_gap_threshold = value.get<double>();
    else if (key == "vertexTolerance")
      config.vertex_tolerance = value.get<double>();
    else if (key == "threads")
      config.threads = value.get<int>();
    else if (key == "flatTolerance")
      config.flat_tolerance = value.get<double>();
    else if (key == "flatAngleLink")
      config.flat_angle_link = value.get<double>();
    else if (key == "familyExtent")
      config.family_extent = value.get<double>();
    else if (key == "snapWindow")
      config.snap_window = value.get<double>();
    else if (key == "densifyWindow")
      config.densify_window = value.get<double>();
    else if (key == "oracleThreshold")
      config.oracle_threshold = value.get<double>();
    else
      throw std::invalid_argument("unknown config key: " + key);
  }
  return config;
}

nlohmann::json square_to_json(const Square& square) {
  json j;
  j["params"] = json::array({square.params[0], square.params[1], square.params[2],
                             square.params[3]});
  j["vertices"] = json::array();
  for (const Point& v : square.vertices) j["vertices"].push_back(point_to_json(v));
  j["center"] = point_to_json(square.center);
  j["sideLength"] = square.side_length;
  j["residualNorm"] = square.residual_norm;
  return j;
}

nlohmann::json report_to_json(const SolveReport& report) {
  json j;
  j["curve"] = report.curve_name;
  j["config"] = config_to_json(report.config);
  j["squares"] = json::array();
  for (const Square& sq : report.squares) j["squares"].push_back(square_to_json(sq));
  j["familySuspected"] = report.family_suspected;
  j["stats"] = json{{"seedsTried", report.stats.seeds_tried},
                    {"converged", report.stats.converged},
                    {"filteredDegenerate", report.stats.filtered_degenerate},
                    {"filteredOffCurve", report.stats.filtered_off_curve},
                    {"wallTimeSeconds", report.stats.wall_time_seconds}};
  return j;
}

SolveReport report_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("report must be a JSON object");
  SolveReport report;
  report.curve_name = j.value("curve", std::string{});
  if (j.contains("config")) report.config = config_from_json(j["config"]);
  if (j.contains("squares")) {
    for (const json& sj : j["squares"]) {
      Square sq;
      const json& params = sj.at("params");
      for (int i = 0; i < 4; ++i) sq.params[i] = params.at(i).get<double>();
      const json& vertices = sj.at("vertices");
      for (int i = 0; i < 4; ++i) sq.vertices[i] = point_from_json(vertices.at(i));
      sq.center = point_from_json(sj.at("center"));
      sq.half_diagonal = 0.5 * (sq.vertices[2] - sq.vertices[0]);
      sq.side_length = sj.at("sideLength").get<double>();
      sq.residual_norm = sj.at("residualNorm").get<double>();
      report.squares.push_back(sq);
    }
  }
  report.family_suspected = j.value("familySuspected", false);
  if (j.contains("stats")) {
    const json& s = j["stats"];
    report.stats.seeds_tried = s.value("seedsTried", 0L);
    report.stats.converged = s.value("converged", 0L);
    report.stats.filtered_degenerate = s.value("filteredDegenerate", 0L);
    report.stats.filtered_off_curve = s.value("filteredOffCurve", 0L);
    report.stats.wall_time_seconds = s.value("wallTimeSeconds", 0.0);
  }
  return report;
}

nlohmann::json critical_to_json(const CriticalSearchResult& result) {
  return json{{"cStar", result.c_star},
              {"bracket", json::array({result.bracket_low, result.bracket_high})},
              {"tangencyX", result.tangency_x},
              {"iterations", result.iterations}};
}

std::string squares_to_csv(const std::vector<Square>& squares) {
  std::ostringstream out;
  out.precision(17);
  out << "index,t1,t2,t3,t4,centerX,centerY,sideLength,residualNorm\n";
  for (size_t i = 0; i < squares.size(); ++i) {
    const Square& sq = squares[i];
    out << i << ',' << sq.params[0] << ',' << sq.params[1] << ',' << sq.params[2] << ','
        << sq.params[3] << ',' << sq.center.x << ',' << sq.center.y << ','
        << sq.side_length << ',' << sq.residual_norm << '\n';
  }
  return out.str();
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void save_json(const std::string& path, const nlohmann::json& j) {
  save_text(path, j.dump(2) + "\n");
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& err) {
    throw std::invalid_argument("invalid JSON in " + path + ": " + err.what());
  }
  return j;
}

CurveSpec load_spec(const std::string& path) { return spec_from_json(load_json(path)); }

}  // namespace squarepeg
