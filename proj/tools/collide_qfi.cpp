// Command-line front end for the collisional thermometry engine.

#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "collide/claims.hpp"
#include "collide/config.hpp"
#include "collide/fisher.hpp"
#include "collide/optimize.hpp"
#include "collide/output.hpp"
#include "collide/sweeps.hpp"
#include "collide/zz_analytic.hpp"

using namespace collide;

namespace {

constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

void print_kv(const char* key, double v) { std::printf("%s = %.12g\n", key, v); }

ModelParams model(const std::string& interaction, double nbar, double gamma_tau, double g_tau_sa) {
  ModelParams p;
  p.interaction = parse_interaction(interaction);
  p.nbar = nbar;
  p.gamma_tau_se = gamma_tau;
  p.g_tau_sa = g_tau_sa;
  p.validate();
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collisional quantum thermometry: Fisher information of outgoing ancillas"};
  app.require_subcommand(1);

  // thermal-fi
  double tf_nbar = 1.0;
  auto* thermal = app.add_subcommand("thermal-fi", "Thermal-qubit Fisher information (nbar units)");
  thermal->add_option("--nbar", tf_nbar, "Mean bath occupation")->required();

  // fisher
  std::string fi_interaction = "exchange", fi_block = "g";
  int fi_n = 1;
  double fi_nbar = 1.0, fi_gt = 0.5, fi_gsa = std::numbers::pi / 2;
  std::optional<double> fi_step;
  auto* fisher = app.add_subcommand("fisher", "QFI of N outgoing ancillas for one input block");
  fisher->add_option("--interaction", fi_interaction, "zz | exchange")->required();
  fisher->add_option("--block", fi_block,
                     "g | e | plusx | gg | g-plusx | plusx-g | theta:V | schmidt:r,tm,tn,pn,a")
      ->required();
  fisher->add_option("--n", fi_n, "Number of ancillas measured jointly")->required();
  fisher->add_option("--nbar", fi_nbar, "Mean bath occupation")->required();
  fisher->add_option("--gamma-tau", fi_gt, "Bath coupling times bath window")->required();
  fisher->add_option("--g-tau-sa", fi_gsa, "Collision angle (default pi/2)");
  fisher->add_option("--fd-step", fi_step, "Finite-difference step in nbar");

  // optimize
  int op_b = 1, op_n = 1, op_threads = 1, op_starts = 64;
  double op_nbar = 1.0, op_gt = 0.5;
  unsigned long long op_seed = 0;
  auto* optimize = app.add_subcommand("optimize", "Optimal ancilla block for the exchange interaction");
  optimize->add_option("--b", op_b, "Block size")->required()->check(CLI::IsMember({1, 2}));
  optimize->add_option("--n", op_n, "Number of ancillas measured jointly")->required();
  optimize->add_option("--nbar", op_nbar, "Mean bath occupation")->required();
  optimize->add_option("--gamma-tau", op_gt, "Bath coupling times bath window")->required();
  optimize->add_option("--seed", op_seed, "Seed for random starts (b=2)");
  optimize->add_option("--random-starts", op_starts, "Random starts (b=2)")->check(CLI::NonNegativeNumber);
  optimize->add_option("--threads", op_threads, "Worker threads")->check(CLI::PositiveNumber);

  // sweep
  std::string sw_config;
  auto* sweep = app.add_subcommand("sweep", "Grid evaluation over (nbar, gamma tau)");
  sweep->add_option("--config", sw_config, "key = value config file");
  const std::pair<const char*, const char*> sweep_keys[] = {
      {"nbar-grid", "nbar_grid"},       {"gamma-tau-grid", "gamma_tau_grid"},
      {"interaction", "interaction"},   {"block", "block"},
      {"n", "n_measured"},              {"quantities", "quantities"},
      {"g-tau-sa", "g_tau_sa"},         {"output", "output"},
      {"format", "format"},             {"seed", "seed"},
      {"fd-step", "fd_step"},           {"threads", "threads"},
  };
  std::map<std::string, std::string> sweep_values;
  for (const auto& [flag, key] : sweep_keys) {
    sweep->add_option(std::string("--") + flag, sweep_values[key], std::string("overrides ") + key);
  }

  // claims
  int cl_threads = 1;
  auto* claims = app.add_subcommand("claims", "Reproduce the published scalar results");
  claims->add_option("--threads", cl_threads, "Worker threads")->check(CLI::PositiveNumber);

  // zz-closed
  double zz_nbar = 1.0, zz_gt = 0.5;
  int zz_n = 1;
  auto* zz = app.add_subcommand("zz-closed", "Closed-form ZZ Fisher information");
  zz->add_option("--nbar", zz_nbar, "Mean bath occupation")->required();
  zz->add_option("--gamma-tau", zz_gt, "Bath coupling times bath window")->required();
  zz->add_option("--n", zz_n, "Number of ancillas measured jointly")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*thermal) {
      std::printf("%.6g\n", thermal_fi_nbar(tf_nbar));
    } else if (*fisher) {
      const ModelParams p = model(fi_interaction, fi_nbar, fi_gt, fi_gsa);
      const BlockSpec spec = parse_block(fi_block);
      if (spec.kind != BlockSpec::Kind::Fixed) throw std::invalid_argument("fisher needs a fixed block");
      const FisherResult r = fisher_for(p, AncillaBlock(*spec.state), fi_n, fi_step);
      print_kv("value_nbar", r.value_nbar);
      print_kv("ratio_thermal", r.ratio_thermal);
      std::printf("n_measured = %d\nblock_b = %d\n", r.n_measured, r.block_b);
    } else if (*optimize) {
      const ModelParams p = model("exchange", op_nbar, op_gt, std::numbers::pi / 2);
      OptimizeOptions opt;
      opt.seed = op_seed;
      opt.random_starts = op_starts;
      opt.threads = op_threads;
      const Optimum o = op_b == 1 ? optimize_b1(p, op_n, opt) : optimize_b2(p, op_n, opt);
      if (const auto* a = std::get_if<BlochAngles>(&o.argmax)) {
        print_kv("theta", a->theta);
        print_kv("phi", a->phi);
      } else {
        const auto& s = std::get<SchmidtParams>(o.argmax);
        print_kv("r", s.r);
        print_kv("theta_m", s.theta_m);
        print_kv("theta_n", s.theta_n);
        print_kv("phi_n", s.phi_n);
        print_kv("alpha", s.alpha);
      }
      print_kv("value_nbar", o.value_nbar);
      print_kv("ratio_thermal", o.value_nbar / (op_n * thermal_fi_nbar(op_nbar)));
      std::printf("evaluations = %ld\n", o.evaluations);
    } else if (*sweep) {
      CliConfig config;
      if (!sw_config.empty()) {
        for (const auto& [k, v] : read_kv_file(sw_config)) apply_setting(config, k, v);
      }
      for (const auto& [flag, key] : sweep_keys) {
        if (sweep->count(std::string("--") + flag) > 0) apply_setting(config, key, sweep_values[key]);
      }
      const int threads = effective_threads(config);
      const auto rows = threads > 1 ? run_sweep(config.sweep, threads) : run_sweep_serial(config.sweep);
      write_output(rows, config.sweep.quantities, config.format, config.output_path);
    } else if (*claims) {
      ClaimOptions opt;
      opt.threads = cl_threads;
      const auto checks = claim_suite(opt);
      std::cout << format_report(checks) << std::flush;
      return all_passed(checks) ? 0 : kExitNumeric;
    } else if (*zz) {
      print_kv("f1", zz_f1(zz_nbar, std::numbers::pi / 2));
      if (zz_n > 1) print_kv("delta", zz_delta(zz_nbar, zz_gt));
      const double fn = zz_fn(zz_nbar, zz_gt, zz_n);
      print_kv("fn", fn);
      print_kv("ratio_thermal", fn / (zz_n * thermal_fi_nbar(zz_nbar)));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
