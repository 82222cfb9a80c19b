#include "capt/json_io.hpp"

#include <stdexcept>

namespace capt {

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix_from_json: expected nested arrays");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j.at(0).size());
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j.at(i);
    if (static_cast<Index>(row.size()) != cols)
      throw std::invalid_argument("matrix_from_json: ragged rows");
    for (Index c = 0; c < cols; ++c) {
      const json& z = row.at(c);
      if (!z.is_array() || z.size() != 2)
        throw std::invalid_argument("matrix_from_json: entries must be [re, im]");
      m(i, c) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
    }
  }
  return m;
}

json state_to_json(const BipartiteState& s) {
  return json{{"dims", {s.dim_a(), s.dim_b()}},
              {"matrix", matrix_to_json(s.matrix())}};
}

BipartiteState state_from_json(const json& j) {
  const auto& dims = j.at("dims");
  return BipartiteState(dims.at(0).get<Index>(), dims.at(1).get<Index>(),
                        matrix_from_json(j.at("matrix")));
}

json channel_to_json(const QuantumChannel& c) {
  return json{{"dim_in", c.dim_in()},
              {"dim_out", c.dim_out()},
              {"choi", matrix_to_json(c.choi())}};
}

QuantumChannel channel_from_json(const json& j) {
  return QuantumChannel::from_choi(j.at("dim_in").get<Index>(),
                                   j.at("dim_out").get<Index>(),
                                   matrix_from_json(j.at("choi")), 1e-8);
}

json linear_map_to_json(const LinearMap& m) {
  return json{{"dim_in", m.dim_in},
              {"dim_out", m.dim_out},
              {"choi", matrix_to_json(m.choi)}};
}

json osd_to_json(const OperatorSchmidtDecomposition& osd) {
  json ops_a = json::array();
  for (const auto& a : osd.ops_a) ops_a.push_back(matrix_to_json(a));
  json ops_b = json::array();
  for (const auto& b : osd.ops_b) ops_b.push_back(matrix_to_json(b));
  return json{{"coefficients", osd.coefficients},
              {"ops_A", std::move(ops_a)},
              {"ops_B", std::move(ops_b)},
              {"osr", osd.osr},
              {"near_threshold", osd.near_threshold}};
}

json report_to_json(const FaithfulnessReport& r) {
  json j{{"span_dim", r.span_dim},
         {"faithful", r.faithful},
         {"singular_values", r.singular_values}};
  if (r.frame) j["frame"] = {r.frame->first, r.frame->second};
  return j;
}

namespace {

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::spt: return "SPT";
    case Scheme::aapt: return "AAPT";
    case Scheme::capt: return "CAPT";
  }
  return "CAPT";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "SPT") return Scheme::spt;
  if (name == "AAPT") return Scheme::aapt;
  if (name == "CAPT") return Scheme::capt;
  throw std::invalid_argument("plan: unknown scheme '" + name + "'");
}

}  // namespace

json plan_to_json(const ExperimentPlan& plan) {
  json j{{"scheme", scheme_name(plan.scheme)},
         {"seed", plan.seed},
         {"tolerance", plan.tolerance}};
  if (plan.state) j["state"] = state_to_json(*plan.state);
  if (!plan.local_ops.empty()) {
    json ops = json::array();
    for (const auto& c : plan.local_ops) ops.push_back(channel_to_json(c));
    j["local_channels"] = std::move(ops);
  }
  if (!plan.probes.empty()) {
    json probes = json::array();
    for (const auto& p : plan.probes) probes.push_back(matrix_to_json(p));
    j["probes"] = std::move(probes);
  }
  return j;
}

ExperimentPlan plan_from_json(const json& j) {
  ExperimentPlan plan;
  plan.scheme = scheme_from_name(j.at("scheme").get<std::string>());
  if (j.contains("seed")) plan.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("tolerance")) plan.tolerance = j.at("tolerance").get<double>();
  if (j.contains("state")) plan.state = state_from_json(j.at("state"));
  if (j.contains("local_channels"))
    for (const auto& c : j.at("local_channels"))
      plan.local_ops.push_back(channel_from_json(c));
  if (j.contains("local_unitaries"))
    for (const auto& u : j.at("local_unitaries"))
      plan.local_ops.push_back(unitary_channel(matrix_from_json(u)));
  if (j.contains("probes"))
    for (const auto& p : j.at("probes"))
      plan.probes.push_back(matrix_from_json(p));
  validate_plan(plan);
  return plan;
}

json result_to_json(const ReconstructionResult& r) {
  json j{{"residual", r.residual},
         {"determined_dim", r.determined_dim},
         {"exact_recovery", r.exact_recovery},
         {"estimated", linear_map_to_json(r.estimated)}};
  j["choi_error"] = r.choi_error ? json(*r.choi_error) : json(nullptr);
  return j;
}

std::vector<json> run_batch(const json& config) {
  std::vector<json> results;
  for (const auto& entry : config.at("experiments")) {
    const ExperimentPlan plan = plan_from_json(entry.at("plan"));
    QuantumChannel truth = [&] {
      if (entry.contains("channel")) return channel_from_json(entry.at("channel"));
      const Index d = plan.scheme == Scheme::spt ? plan.probes.front().rows()
                                                 : plan.state->dim_a();
      const auto channel_seed = entry.value("channel_seed", std::uint64_t{0});
      return random_channel(d, channel_seed, d);
    }();
    const long shots = entry.value("shots", 0L);
    ReconstructionResult r = run_experiment(plan, truth, shots);
    json out = result_to_json(r);
    out["seed"] = plan.seed;
    results.push_back(std::move(out));
  }
  return results;
}

}  // namespace capt
