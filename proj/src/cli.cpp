#include "spinrsc/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "spinrsc/chain.hpp"
#include "spinrsc/errors.hpp"
#include "spinrsc/format.hpp"
#include "spinrsc/optimize.hpp"
#include "spinrsc/oracle.hpp"
#include "spinrsc/propagate.hpp"
#include "spinrsc/rsc.hpp"

namespace spinrsc::cli {

namespace {

using io::json_complex;
using io::json_matrix;
using io::num;

struct RunConfig {
  int n = 0;
  std::string model = "all";
  bool with_v = false;
  double t = 0.0;
  int n_min = 4;
  int n_max = 0;
  std::string models = "nn,all,all+v";
  double threshold = 0.5;
  double step = 0.1;
  ControlParams control;
  std::string out_path;
  std::uint64_t seed = 1;
  std::int64_t samples = 100000;
};

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) throw DomainError(fmt::format("cannot open '{}' for writing", cfg.out_path));
  file << text;
  if (!file) throw DomainError(fmt::format("failed writing '{}'", cfg.out_path));
}

std::vector<SweepModel> parse_models(const std::string& list) {
  std::vector<SweepModel> models;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) models.push_back(parse_sweep_model(item));
  }
  if (models.empty()) throw DomainError("--models must name at least one of nn, all, all+v");
  return models;
}

std::string cmd_hamiltonian(const RunConfig& cfg) {
  const auto h = build_hamiltonian(build_couplings({parse_coupling_kind(cfg.model), cfg.n}));
  std::string text;
  for (int i = 0; i < h.size(); ++i) {
    for (int j = 0; j < h.size(); ++j) {
      if (j > 0) text += ',';
      text += num(h.h(i, j));
    }
    text += '\n';
  }
  return text;
}

std::string cmd_amplitudes(const RunConfig& cfg) {
  if (cfg.t < 0.0) throw DomainError("--t must be >= 0");
  const auto p = amplitude_matrix(decompose_chain({parse_coupling_kind(cfg.model), cfg.n}), cfg.t);
  return fmt::format("{{\"p_nm1_1\": {}, \"p_nm1_2\": {}, \"p_n_1\": {}, \"p_n_2\": {}}}\n", json_complex(p.p(0, 0)),
                     json_complex(p.p(0, 1)), json_complex(p.p(1, 0)), json_complex(p.p(1, 1)));
}

std::string cmd_optimize(const RunConfig& cfg) {
  const CouplingKind kind = parse_coupling_kind(cfg.model);
  const auto protocol = optimize_protocol(decompose_chain({kind, cfg.n}), kind, cfg.with_v);
  return fmt::format(
      "{{\"t0\": {}, \"r_max_sq\": {}, \"a_opt\": [{}, {}], \"u\": {}, \"v0\": {}, \"lam\": [{}, {}]}}\n",
      num(protocol.t0), num(protocol.r_max_sq), json_complex(protocol.a_opt.a1), json_complex(protocol.a_opt.a2),
      json_matrix(protocol.svd.u), json_matrix(protocol.svd.v0), num(protocol.svd.lam.lam_minus),
      num(protocol.svd.lam.lam_plus));
}

std::string cmd_sweep(const RunConfig& cfg) {
  const auto models = parse_models(cfg.models);
  const auto rows = sweep(cfg.n_min, cfg.n_max, models);
  std::string text = "n,model,t0,r_max_sq\n";
  for (const auto& row : rows) {
    text += fmt::format("{},{},{},{}\n", row.n, to_string(row.model), num(row.t0), num(row.r_max_sq));
  }
  return text;
}

std::string cmd_critical_length(const RunConfig& cfg) {
  const auto models = parse_models(cfg.models);
  const auto rows = sweep(cfg.n_min, cfg.n_max, models);
  std::string text = "model,n_critical\n";
  for (const auto& cl : critical_length(rows, cfg.threshold)) {
    text += fmt::format("{},{}\n", to_string(cl.model), cl.n ? std::to_string(*cl.n) : std::string("none"));
  }
  return text;
}

OptimalProtocol protocol_for(const RunConfig& cfg, bool with_v) {
  const CouplingKind kind = parse_coupling_kind(cfg.model);
  return optimize_protocol(decompose_chain({kind, cfg.n}), kind, with_v);
}

std::string cmd_region(const RunConfig& cfg) {
  const auto grid = region_grid(protocol_for(cfg, cfg.with_v), cfg.step);
  std::string text = "alpha1,alpha2,lambda,beta1,beta2\n";
  for (const auto& pt : grid.points) {
    text += fmt::format("{},{},{},{},{}\n", num(pt.alpha1), num(pt.alpha2), num(pt.params.lam),
                        num(pt.params.beta1), num(pt.params.beta2));
  }
  return text;
}

std::string cmd_create(const RunConfig& cfg) {
  const auto protocol = protocol_for(cfg, true);
  const auto run = create_state(protocol, cfg.control);
  return fmt::format(
      "{{\"t0\": {}, \"r_max_sq\": {}, \"sender\": {{\"a0\": {}, \"a1\": {}, \"a2\": {}}}, \"z\": {}, "
      "\"receiver_density\": {}, \"lambda\": {}, \"beta1\": {}, \"beta2\": {}}}\n",
      num(protocol.t0), num(protocol.r_max_sq), num(run.sender.a0), json_complex(run.sender.a1),
      json_complex(run.sender.a2), json_complex(run.z), json_matrix(run.receiver.rho), num(run.params.lam),
      num(run.params.beta1), num(run.params.beta2));
}

std::string cmd_verify(const RunConfig& cfg) {
  if (cfg.t < 0.0) throw DomainError("--t must be >= 0");
  const CouplingModel model{parse_coupling_kind(cfg.model), cfg.n};
  if (model.n > oracle::kMaxFullSpaceLength) {
    throw DomainError(fmt::format("verify supports N <= {}", oracle::kMaxFullSpaceLength));
  }
  const double deviation = oracle::max_amplitude_deviation(model, cfg.t);
  const auto p = amplitude_matrix(decompose_chain(model), cfg.t);
  const double bound = std::pow(singular_values(p).lam_plus, 2);
  const double sampled = oracle::sample_max_transfer(p, oracle::SampleMode::ExtReceiverNorm, cfg.samples, cfg.seed);
  return fmt::format(
      "{{\"n\": {}, \"model\": \"{}\", \"t\": {}, \"amplitude_max_deviation\": {}, \"lam_plus_sq\": {}, "
      "\"sampled_max\": {}, \"sampling_gap\": {}}}\n",
      model.n, to_string(model.kind), num(cfg.t), num(deviation), num(bound), num(sampled), num(bound - sampled));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Remote state creation through homogeneous spin-1/2 XY chains"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto add_chain = [&](CLI::App* sub, bool need_model) {
    sub->add_option("--n", cfg.n, "chain length")->required()->check(CLI::Range(4, 200));
    auto* m = sub->add_option("--model", cfg.model, "coupling model")->check(CLI::IsMember({"nn", "all"}));
    if (need_model) m->required();
  };
  const auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out_path, "output file (default stdout)"); };

  std::vector<std::pair<CLI::App*, std::function<std::string(const RunConfig&)>>> commands;

  auto* hamiltonian = app.add_subcommand("hamiltonian", "one-excitation Hamiltonian as CSV");
  add_chain(hamiltonian, true);
  commands.emplace_back(hamiltonian, cmd_hamiltonian);

  auto* amplitudes = app.add_subcommand("amplitudes", "sender -> extended receiver amplitudes at time t");
  add_chain(amplitudes, true);
  amplitudes->add_option("--t", cfg.t, "dimensionless time")->required();
  commands.emplace_back(amplitudes, cmd_amplitudes);

  auto* optimize = app.add_subcommand("optimize", "optimal time, sender state and receiver transform");
  add_chain(optimize, true);
  optimize->add_flag("--with-v", cfg.with_v, "optimize with the extended-receiver transform");
  commands.emplace_back(optimize, cmd_optimize);

  auto* sweep_cmd = app.add_subcommand("sweep", "maximal transfer probability versus chain length");
  sweep_cmd->add_option("--n-min", cfg.n_min)->required()->check(CLI::Range(4, 200));
  sweep_cmd->add_option("--n-max", cfg.n_max)->required()->check(CLI::Range(4, 200));
  sweep_cmd->add_option("--models", cfg.models, "comma-separated subset of nn,all,all+v");
  add_out(sweep_cmd);
  commands.emplace_back(sweep_cmd, cmd_sweep);

  auto* critical = app.add_subcommand("critical-length", "largest N reaching a transfer-probability threshold");
  critical->add_option("--threshold", cfg.threshold)->required();
  critical->add_option("--n-max", cfg.n_max)->required()->check(CLI::Range(5, 200));
  critical->add_option("--n-min", cfg.n_min)->check(CLI::Range(4, 200));
  critical->add_option("--models", cfg.models, "comma-separated subset of nn,all,all+v");
  add_out(critical);
  commands.emplace_back(critical, cmd_critical_length);

  auto* region = app.add_subcommand("region", "creatable region on an (alpha1, alpha2) grid");
  add_chain(region, true);
  region->add_flag("--with-v", cfg.with_v, "apply the optimal extended-receiver transform");
  region->add_option("--step", cfg.step, "grid step in (0, 0.5]")->required();
  add_out(region);
  commands.emplace_back(region, cmd_region);

  auto* create = app.add_subcommand("create", "run the full creation protocol for one set of control parameters");
  add_chain(create, false);
  create->add_option("--alpha1", cfg.control.alpha1)->check(CLI::Range(0.0, 1.0));
  create->add_option("--alpha2", cfg.control.alpha2)->check(CLI::Range(0.0, 1.0));
  create->add_option("--phi1", cfg.control.phi1)->check(CLI::Range(0.0, 1.0));
  create->add_option("--phi2", cfg.control.phi2)->check(CLI::Range(0.0, 1.0));
  add_out(create);
  commands.emplace_back(create, cmd_create);

  auto* verify = app.add_subcommand("verify", "compare fast paths against brute-force oracles");
  add_chain(verify, true);
  verify->add_option("--t", cfg.t, "dimensionless time")->required();
  verify->add_option("--seed", cfg.seed, "sampling seed");
  verify->add_option("--samples", cfg.samples, "random sender states")->check(CLI::PositiveNumber);
  commands.emplace_back(verify, cmd_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (const auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    try {
      emit(cfg, handler(cfg), out);
      return 0;
    } catch (const std::exception& e) {
      err << "error: " << sub->get_name() << ": " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}

}  // namespace spinrsc::cli
