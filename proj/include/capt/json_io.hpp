// JSON schemas shared by the library, the CLI, and the batch runner.
// Complex scalars serialize as [re, im]; matrices as row-major nested arrays.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "capt/channel.hpp"
#include "capt/faithfulness.hpp"
#include "capt/schmidt.hpp"
#include "capt/state.hpp"
#include "capt/tomography.hpp"

namespace capt {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json state_to_json(const BipartiteState& s);
BipartiteState state_from_json(const json& j);

json channel_to_json(const QuantumChannel& c);
QuantumChannel channel_from_json(const json& j);
json linear_map_to_json(const LinearMap& m);

json osd_to_json(const OperatorSchmidtDecomposition& osd);

json report_to_json(const FaithfulnessReport& r);

json plan_to_json(const ExperimentPlan& plan);
ExperimentPlan plan_from_json(const json& j);

json result_to_json(const ReconstructionResult& r);

// Batch runner: {"experiments": [{"plan": ..., "channel": ... |
// "channel_seed": n, "shots": n?}, ...]}; one result object per entry,
// executed in listed order.
std::vector<json> run_batch(const json& config);

}  // namespace capt
