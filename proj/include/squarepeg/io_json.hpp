#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "squarepeg/constructions.hpp"
#include "squarepeg/curve.hpp"
#include "squarepeg/solver.hpp"

namespace squarepeg {

nlohmann::json segment_to_json(const Segment& segment);
Segment segment_from_json(const nlohmann::json& j);

nlohmann::json spec_to_json(const CurveSpec& spec);
CurveSpec spec_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const SolveConfig& config);
// starts from defaults; recognized keys override, unknown keys rejected
SolveConfig config_from_json(const nlohmann::json& j);

nlohmann::json square_to_json(const Square& square);
nlohmann::json report_to_json(const SolveReport& report);
SolveReport report_from_json(const nlohmann::json& j);

nlohmann::json critical_to_json(const CriticalSearchResult& result);

std::string squares_to_csv(const std::vector<Square>& squares);

void save_text(const std::string& path, const std::string& text);
void save_json(const std::string& path, const nlohmann::json& j);
nlohmann::json load_json(const std::string& path);
CurveSpec load_spec(const std::string& path);

}  // namespace squarepeg
