#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lwr/io.hpp"
#include "lwr/scenario.hpp"
#include "lwr/tracking.hpp"

namespace {

struct CommonOpts {
  std::string scenario;
  std::string config;
  double delta = -1.0;    // <0 means keep the spec's value
  double horizon = -1.0;
  std::string out = "out";
  std::vector<double> snapshot_times;
  lwr::ScenarioParams params;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--scenario", o.scenario,
                  "built-in scenario: appendix_a, appendix_b, "
                  "traffic_light_swap");
  cmd->add_option("--config", o.config, "network description (json)");
  cmd->add_option("--delta", o.delta, "rarefaction discretization step");
  cmd->add_option("--horizon", o.horizon, "simulation end time");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--snapshot-times", o.snapshot_times,
                  "times at which to write snapshot csv files")
      ->delimiter(',');
  cmd->add_option("--rho1-flux", o.params.rho1_flux,
                  "flux level of the incoming wave (appendix scenarios)");
  cmd->add_option("--alpha1", o.params.alpha1, "appendix_b turning fraction");
  cmd->add_option("--alpha2", o.params.alpha2, "appendix_b turning fraction");
  cmd->add_option("--beta1", o.params.beta1, "traffic_light_swap phase 1");
  cmd->add_option("--beta2", o.params.beta2, "traffic_light_swap phase 2");
  cmd->add_option("--tbar", o.params.tbar, "schedule swap time");
  cmd->add_option("--fmax", o.params.fmax, "flux maximum (non-appendix_a)");
}

lwr::NetworkSpec load_network(CommonOpts& o) {
  if (o.scenario.empty() == o.config.empty())
    throw lwr::config_error("exactly one of --scenario/--config is required");
  lwr::NetworkSpec spec;
  if (!o.scenario.empty()) {
    o.params.kind = lwr::parse_scenario_kind(o.scenario);
    if (o.delta > 0.0) o.params.delta = o.delta;
    if (o.horizon > 0.0) o.params.horizon = o.horizon;
    spec = lwr::build_scenario(o.params);
  } else {
    std::ifstream in(o.config);
    if (!in) throw lwr::config_error("cannot open " + o.config);
    std::stringstream ss;
    ss << in.rdbuf();
    spec = lwr::parse_network(ss.str());
    if (o.delta > 0.0) spec.tracking.delta = o.delta;
    if (o.horizon > 0.0) spec.tracking.horizon = o.horizon;
  }
  for (const auto& w : spec.warnings)
    std::cerr << "warning: " << w << '\n';
  return spec;
}

int cmd_run(CommonOpts& o) {
  lwr::NetworkSpec spec = load_network(o);
  lwr::Simulation sim(spec);
  long events =
      lwr::run_with_outputs(sim, spec.tracking.horizon, o.out,
                            o.snapshot_times);
  std::cout << "ran to t=" << spec.tracking.horizon << " with " << events
            << " events; outputs in " << o.out << '\n';
  return 0;
}

int cmd_validate(CommonOpts& o) {
  lwr::NetworkSpec spec = load_network(o);
  std::cout << lwr::serialize_network(spec) << '\n';
  return 0;
}

int cmd_sweep(CommonOpts& o, std::vector<double>& values) {
  if (o.scenario.empty())
    throw lwr::config_error("sweep requires --scenario");
  o.params.kind = lwr::parse_scenario_kind(o.scenario);
  if (o.delta > 0.0) o.params.delta = o.delta;
  if (o.horizon > 0.0) o.params.horizon = o.horizon;
  if (values.empty()) {
    if (o.params.kind == lwr::ScenarioKind::TrafficLightSwap) {
      // beta1 values approaching beta2 from above
      for (double gap : {1e-7, 5e-8, 2e-8, 1e-8, 5e-9})
        values.push_back(o.params.beta2 + gap);
    } else {
      // incoming wave flux approaching fmax
      for (double frac : {0.9, 0.95, 0.99, 0.995, 0.999})
        values.push_back(frac * o.params.fmax);
    }
  }

  std::filesystem::create_directories(o.out);
  std::ofstream out(std::filesystem::path(o.out) / "sweep.csv");
  out << std::setprecision(17)
      << "value,events,tv_flux_initial,tv_flux_final,max_event_increase\n";
  for (double v : values) {
    lwr::ScenarioParams p = o.params;
    if (p.kind == lwr::ScenarioKind::TrafficLightSwap)
      p.beta1 = v;
    else
      p.rho1_flux = v;
    lwr::Simulation sim(lwr::build_scenario(p));
    sim.initialize();
    double tv0 = lwr::flux_total_variation(sim.snapshot(), sim.flux());
    double prev = tv0;
    double max_inc = 0.0;
    sim.run_until(p.horizon, [&](const lwr::Simulation& s,
                                 const lwr::Event* ev) {
      if (!ev) return;
      double tv = lwr::flux_total_variation(s.snapshot(), s.flux());
      max_inc = std::max(max_inc, tv - prev);
      prev = tv;
    });
    out << v << ',' << sim.event_count() << ',' << tv0 << ',' << prev << ','
        << max_inc << '\n';
  }
  std::cout << "sweep over " << values.size() << " values; outputs in "
            << o.out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wave-front tracking for traffic flow on road networks"};
  app.require_subcommand(1);

  CommonOpts run_opts, validate_opts, sweep_opts;
  std::vector<double> sweep_values;

  auto* run = app.add_subcommand("run", "run a simulation and write outputs");
  add_common_flags(run, run_opts);
  auto* validate =
      app.add_subcommand("validate", "validate and print the normalized spec");
  add_common_flags(validate, validate_opts);
  auto* sweep = app.add_subcommand(
      "sweep", "run a scenario over a range of parameter values");
  add_common_flags(sweep, sweep_opts);
  sweep->add_option("--values", sweep_values,
                    "explicit list of swept parameter values")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(run_opts);
    if (validate->parsed()) return cmd_validate(validate_opts);
    return cmd_sweep(sweep_opts, sweep_values);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const lwr::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const lwr::runaway_error& e) {
    std::cerr << "runaway: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
