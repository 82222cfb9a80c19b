// Command-line front door: operator Schmidt analysis, faithfulness checks,
// faithful-set construction, and closed-loop tomography runs.
//
// Exit codes: 0 success (faithful / exact recovery), 1 verdict negative,
// 2 parse failure, 3 invalid state or dimension mismatch, 4 input excluded
// by the unitary construction, 5 discord construction on a classical state.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "capt/constructions.hpp"
#include "capt/json_io.hpp"
#include "capt/weyl.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitExcluded = 4;
constexpr int kExitZeroDiscord = 5;

capt::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return capt::json::parse(in);
}

void emit(const capt::json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << std::endl;
  } else {
    std::ofstream out(out_path);
    out << j.dump(2) << std::endl;
  }
}

int cmd_osd(const std::string& state_file, double tol,
            const std::string& out_path) {
  capt::json j;
  try {
    j = load_json(state_file);
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
  try {
    const capt::BipartiteState rho = capt::state_from_json(j);
    const auto osd = capt::operator_schmidt_decompose(rho, tol);
    capt::json out = capt::osd_to_json(osd);
    emit(out, out_path);
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "invalid state: " << e.what() << "\n";
    return kExitInvalid;
  }
}

int cmd_faithful_check(const std::vector<std::string>& files, double tol,
                       const std::string& out_path) {
  std::vector<capt::BipartiteState> states;
  for (const auto& f : files) {
    capt::json j;
    try {
      j = load_json(f);
    } catch (const std::exception& e) {
      std::cerr << "parse error: " << e.what() << "\n";
      return kExitParse;
    }
    try {
      states.push_back(capt::state_from_json(j));
    } catch (const std::exception& e) {
      std::cerr << "invalid state: " << e.what() << "\n";
      return kExitInvalid;
    }
  }
  try {
    const auto report = capt::local_span_dim(states, tol, /*with_frame=*/true);
    emit(capt::report_to_json(report), out_path);
    return report.faithful ? kExitOk : kExitNegative;
  } catch (const std::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  }
}

int cmd_construct(const std::string& scheme, const std::string& state_file,
                  capt::Index d, capt::Index k, std::uint64_t seed, double tol,
                  std::optional<double> eps, const std::string& out_path) {
  std::optional<capt::BipartiteState> rho;
  if (!state_file.empty()) {
    capt::json j;
    try {
      j = load_json(state_file);
    } catch (const std::exception& e) {
      std::cerr << "parse error: " << e.what() << "\n";
      return kExitParse;
    }
    try {
      rho = capt::state_from_json(j);
    } catch (const std::exception& e) {
      std::cerr << "invalid state: " << e.what() << "\n";
      return kExitInvalid;
    }
  }

  capt::json bundle{{"scheme", scheme}, {"seed", seed}};
  capt::json plan{{"scheme", "CAPT"}, {"seed", seed}, {"tolerance", tol}};
  std::vector<capt::BipartiteState> prepared;

  try {
    if (scheme == "theorem1") {
      if (!rho) throw std::invalid_argument("theorem1 requires --state");
      const auto channels = capt::faithful_channel_set(*rho, tol, seed);
      capt::json ops = capt::json::array();
      for (const auto& c : channels) {
        ops.push_back(capt::channel_to_json(c));
        prepared.push_back(capt::apply_local_a(c, *rho));
      }
      bundle["channels"] = ops;
      plan["local_channels"] = std::move(ops);
      plan["state"] = capt::state_to_json(*rho);
    } else if (scheme == "theorem2") {
      if (!rho) throw std::invalid_argument("theorem2 requires --state");
      const auto frame = capt::faithful_unitary_set(*rho, seed, tol);
      capt::json ops = capt::json::array();
      for (const auto& u : frame.unitaries) {
        ops.push_back(capt::matrix_to_json(u));
        prepared.push_back(capt::apply_local_a(capt::unitary_channel(u), *rho));
      }
      bundle["unitaries"] = ops;
      bundle["alpha"] = frame.alpha;
      bundle["beta"] = frame.beta;
      plan["local_unitaries"] = std::move(ops);
      plan["state"] = capt::state_to_json(*rho);
    } else if (scheme == "theorem3") {
      const auto unitaries = capt::block_unitary_set(d, k);
      capt::ComplexVector psi = capt::ComplexVector::Zero(d * d);
      for (capt::Index i = 0; i < k; ++i)
        psi(i * d + i) = 1.0 / std::sqrt(double(k));
      const capt::BipartiteState canonical = capt::pure_state(psi, d, d);
      capt::json ops = capt::json::array();
      for (const auto& u : unitaries) {
        ops.push_back(capt::matrix_to_json(u));
        prepared.push_back(
            capt::apply_local_a(capt::unitary_channel(u), canonical));
      }
      bundle["unitaries"] = ops;
      bundle["state"] = capt::state_to_json(canonical);
      plan["local_unitaries"] = std::move(ops);
      plan["state"] = capt::state_to_json(canonical);
    } else if (scheme == "discord") {
      if (!rho) throw std::invalid_argument("discord requires --state");
      const capt::ComplexMatrix u = capt::qubit_discord_unitary(*rho, tol);
      const capt::ComplexMatrix eye = capt::ComplexMatrix::Identity(2, 2);
      capt::json ops = capt::json::array();
      ops.push_back(capt::matrix_to_json(eye));
      ops.push_back(capt::matrix_to_json(u));
      prepared.push_back(*rho);
      prepared.push_back(capt::apply_local_a(capt::unitary_channel(u), *rho));
      bundle["unitaries"] = ops;
      plan["local_unitaries"] = std::move(ops);
      plan["state"] = capt::state_to_json(*rho);
    } else if (scheme == "sigma") {
      const capt::BipartiteState sigma = capt::fourier_pair_state(d, eps);
      const capt::ComplexMatrix eye = capt::ComplexMatrix::Identity(d, d);
      const capt::ComplexMatrix f = capt::fourier_matrix(d);
      capt::json ops = capt::json::array();
      ops.push_back(capt::matrix_to_json(eye));
      ops.push_back(capt::matrix_to_json(f));
      prepared.push_back(sigma);
      prepared.push_back(capt::apply_local_a(capt::unitary_channel(f), sigma));
      bundle["state"] = capt::state_to_json(sigma);
      bundle["unitaries"] = ops;
      plan["local_unitaries"] = std::move(ops);
      plan["state"] = capt::state_to_json(sigma);
    } else {
      std::cerr << "unknown scheme '" << scheme << "'\n";
      return kExitParse;
    }
  } catch (const capt::ExcludedStateError& e) {
    std::cerr << e.what() << "\n";
    return kExitExcluded;
  } catch (const capt::ZeroDiscordError& e) {
    std::cerr << e.what() << "\n";
    return kExitZeroDiscord;
  } catch (const std::exception& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return kExitInvalid;
  }

  const auto report = capt::local_span_dim(prepared, tol, /*with_frame=*/true);
  bundle["report"] = capt::report_to_json(report);
  bundle["plan"] = std::move(plan);
  emit(bundle, out_path);
  return report.faithful ? kExitOk : kExitNegative;
}

int cmd_run(const std::string& plan_file, const std::string& channel_file,
            bool random_channel_flag, std::uint64_t seed, long shots,
            double tol, const std::string& out_path) {
  capt::json pj;
  try {
    pj = load_json(plan_file);
    if (pj.contains("plan")) pj = pj.at("plan");  // accept construct bundles
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
  try {
    capt::ExperimentPlan plan = capt::plan_from_json(pj);
    plan.seed = seed;
    plan.tolerance = tol;

    capt::QuantumChannel truth = [&] {
      if (!channel_file.empty())
        return capt::channel_from_json(load_json(channel_file));
      if (!random_channel_flag)
        throw std::invalid_argument("need a channel file or --random-channel");
      const capt::Index d = plan.scheme == capt::Scheme::spt
                                ? plan.probes.front().rows()
                                : plan.state->dim_a();
      return capt::random_channel(d, seed, d);
    }();

    capt::ReconstructionOptions options;
    options.tol = tol;
    const auto result = capt::run_experiment(plan, truth, shots, options);
    capt::json out = capt::result_to_json(result);
    out["seed"] = seed;
    out["shots"] = shots;
    emit(out, out_path);
    return result.exact_recovery ? kExitOk : kExitNegative;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return kExitInvalid;
  }
}

int cmd_run_batch(const std::string& config_file, const std::string& out_path) {
  capt::json config;
  try {
    config = load_json(config_file);
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
  try {
    const auto results = capt::run_batch(config);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
      file.open(out_path);
      out = &file;
    }
    for (const auto& r : results) *out << r.dump() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "batch failed: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"correlation-assisted process tomography toolkit"};
  app.require_subcommand(1);

  std::string state_file, out_path, plan_file, channel_file, config_file;
  std::vector<std::string> state_files;
  std::string scheme;
  double tol = capt::kRelRankTol;
  std::uint64_t seed = 0;
  capt::Index d = 2, k = 1;
  long shots = 0;
  double eps_value = -1.0;
  bool random_channel_flag = false;

  auto* osd = app.add_subcommand("osd", "operator Schmidt decomposition of a state file");
  osd->add_option("state", state_file, "bipartite state JSON")->required();
  osd->add_option("--tol", tol, "relative rank tolerance");
  osd->add_option("--out", out_path, "write result to file instead of stdout");

  auto* check = app.add_subcommand("faithful-check", "span/faithfulness report for state files");
  check->add_option("states", state_files, "bipartite state JSON files")->required();
  check->add_option("--tol", tol, "relative rank tolerance");
  check->add_option("--out", out_path, "output file");

  auto* construct = app.add_subcommand("construct", "build a faithful input set");
  construct->add_option("--scheme", scheme, "theorem1|theorem2|theorem3|discord|sigma")
      ->required();
  construct->add_option("--state", state_file, "input state JSON (theorem1/theorem2/discord)");
  construct->add_option("--d", d, "probe dimension (theorem3/sigma)");
  construct->add_option("--k", k, "Schmidt rank (theorem3)");
  construct->add_option("--seed", seed, "random seed");
  construct->add_option("--tol", tol, "relative rank tolerance");
  construct->add_option("--eps", eps_value, "perturbation strength (sigma)");
  construct->add_option("--out", out_path, "output file");

  auto* run = app.add_subcommand("run", "simulate and reconstruct a hidden channel");
  run->add_option("--plan", plan_file, "plan JSON (or construct bundle)")->required();
  run->add_option("--channel", channel_file, "channel JSON");
  run->add_flag("--random-channel", random_channel_flag, "draw the hidden channel from --seed");
  run->add_option("--seed", seed, "random seed");
  run->add_option("--shots", shots, "finite-statistics sampling, 0 = exact");
  run->add_option("--tol", tol, "recovery tolerance");
  run->add_option("--out", out_path, "output file");

  auto* batch = app.add_subcommand("run-batch", "run every experiment in a config file");
  batch->add_option("--config", config_file, "batch config JSON")->required();
  batch->add_option("--out", out_path, "output file (one JSON object per line)");

  CLI11_PARSE(app, argc, argv);

  if (osd->parsed()) return cmd_osd(state_file, tol, out_path);
  if (check->parsed()) return cmd_faithful_check(state_files, tol, out_path);
  if (construct->parsed()) {
    std::optional<double> eps;
    if (eps_value >= 0) eps = eps_value;
    return cmd_construct(scheme, state_file, d, k, seed, tol, eps, out_path);
  }
  if (run->parsed())
    return cmd_run(plan_file, channel_file, random_channel_flag, seed, shots,
                   tol, out_path);
  if (batch->parsed()) return cmd_run_batch(config_file, out_path);
  return kExitParse;
}
