#pragma once

#include "isg/indepset.hpp"
#include "isg/lifting.hpp"
#include "isg/luck.hpp"
#include "isg/stability.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace isg {

// File/format problems (as opposed to invariant violations).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using json = nlohmann::json;

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

// Matrices: {"dim": d, "entries": [[[re, im], ...] row-major]}
json matrix_to_json(const cmat& m);
cmat matrix_from_json(const json& j);

json game_to_json(const SynchronousGame& g);
SynchronousGame game_from_json(const json& j);

json graph_to_json(const GameGraph& x);
GameGraph graph_from_json(const json& j);

json indep_game_to_json(const IndependentSetGame& game);
IndependentSetGame indep_game_from_json(const json& j);

json sync_strategy_to_json(const SyncQuantumStrategy& s);
SyncQuantumStrategy sync_strategy_from_json(const json& j);

// index_questions: the [t] -> Q labeling, recorded when known.
json indep_strategy_to_json(const IndepStrategy& s, const GameGraph& graph,
                            const std::vector<std::string>& index_questions = {});
IndepStrategy indep_strategy_from_json(const json& j);

json operators_to_json(const std::vector<cmat>& ops);
std::vector<cmat> operators_from_json(const json& j);

json rounding_report_to_json(const RoundingReport& r);
json lift_report_to_json(const LiftReport& r);
json sharpness_report_to_json(const SharpnessReport& r);

}  // namespace isg
