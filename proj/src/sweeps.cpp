#include "collide/sweeps.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <omp.h>

#include "collide/zz_analytic.hpp"

namespace collide {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("malformed number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

PureState product_state(const CVector& a, const CVector& b) {
  CVector v(4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) v(2 * i + j) = a(i) * b(j);
  }
  return PureState(std::move(v));
}

}  // namespace

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::Qfi: return "qfi";
    case Quantity::RatioThermal: return "ratio_thermal";
    case Quantity::RatioPerCopy: return "ratio_per_copy";
    case Quantity::ThetaOpt: return "theta_opt";
    case Quantity::DeltaZz: return "delta_zz";
  }
  return "?";
}

Quantity parse_quantity(const std::string& text) {
  for (Quantity q : {Quantity::Qfi, Quantity::RatioThermal, Quantity::RatioPerCopy,
                     Quantity::ThetaOpt, Quantity::DeltaZz}) {
    if (to_string(q) == text) return q;
  }
  throw std::invalid_argument("unknown quantity '" + text + "'");
}

int BlockSpec::b() const {
  switch (kind) {
    case Kind::Fixed: return state->dim() == 2 ? 1 : 2;
    case Kind::OptimizeB1: return 1;
    case Kind::OptimizeB2: return 2;
  }
  return 1;
}

BlockSpec parse_block(const std::string& text) {
  const CVector g = bloch_state({0.0, 0.0}).amplitudes();
  const CVector plusx = bloch_state({std::numbers::pi / 2, 0.0}).amplitudes();

  BlockSpec spec;
  spec.label = text;
  if (text == "optimize-b1") {
    spec.kind = BlockSpec::Kind::OptimizeB1;
  } else if (text == "optimize-b2") {
    spec.kind = BlockSpec::Kind::OptimizeB2;
  } else if (text == "g") {
    spec.state = PureState(g);
  } else if (text == "e") {
    spec.state = bloch_state({std::numbers::pi, 0.0});
  } else if (text == "plusx") {
    spec.state = PureState(plusx);
  } else if (text == "gg") {
    spec.state = product_state(g, g);
  } else if (text == "g-plusx") {
    spec.state = product_state(g, plusx);
  } else if (text == "plusx-g") {
    spec.state = product_state(plusx, g);
  } else if (text.rfind("theta:", 0) == 0) {
    const auto v = parse_number_list(text.substr(6));
    if (v.size() != 1) throw std::invalid_argument("theta: expects one value");
    spec.state = bloch_state({v[0], 0.0});
  } else if (text.rfind("schmidt:", 0) == 0) {
    const auto v = parse_number_list(text.substr(8));
    if (v.size() != 5) throw std::invalid_argument("schmidt: expects r,theta_m,theta_n,phi_n,alpha");
    spec.state = schmidt_state({v[0], v[1], v[2], v[3], v[4]});
  } else {
    throw std::invalid_argument("unknown block '" + text + "'");
  }
  return spec;
}

void SweepConfig::validate() const {
  auto check_grid = [](const std::vector<double>& grid, const char* name, bool strictly_positive) {
    if (grid.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
    for (size_t i = 0; i < grid.size(); ++i) {
      if (!std::isfinite(grid[i]) || (strictly_positive ? grid[i] <= 0.0 : grid[i] < 0.0)) {
        throw std::invalid_argument(std::string(name) + " grid has an out-of-range value");
      }
      if (i > 0 && !(grid[i] > grid[i - 1])) {
        throw std::invalid_argument(std::string(name) + " grid must be strictly increasing");
      }
    }
  };
  check_grid(nbar_grid, "nbar", true);
  check_grid(gamma_tau_grid, "gamma_tau", false);
  if (quantities.empty()) throw std::invalid_argument("no quantities requested");
  if (n_measured < 1 || n_measured > kMaxMeasured || n_measured % block.b() != 0) {
    throw std::invalid_argument("n_measured must be in 1..4 and a multiple of the block size");
  }
  if (block.kind != BlockSpec::Kind::Fixed && interaction != Interaction::Exchange) {
    throw std::invalid_argument("block optimization is only defined for the exchange interaction");
  }
  for (Quantity q : quantities) {
    if (q == Quantity::ThetaOpt && block.kind != BlockSpec::Kind::OptimizeB1) {
      throw std::invalid_argument("theta_opt requires block = optimize-b1");
    }
  }
}

std::string to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Ok: return "ok";
    case RowStatus::Degenerate: return "degenerate";
    case RowStatus::ArgumentError: return "error:argument";
    case RowStatus::RankChange: return "error:rank_change";
    case RowStatus::NumericFailure: return "error:numeric";
  }
  return "error:unknown";
}

namespace {

struct PointValue {
  double value = 0.0;
  double theta = kNaN;
};

PointValue fisher_value(const SweepConfig& config, const ModelParams& params, int n_measured) {
  OptimizeOptions opt = config.optimizer;
  opt.threads = 1;
  switch (config.block.kind) {
    case BlockSpec::Kind::Fixed:
      return {fisher_for(params, AncillaBlock(*config.block.state), n_measured, opt.fd_step).value_nbar};
    case BlockSpec::Kind::OptimizeB1: {
      const Optimum o = optimize_b1(params, n_measured, opt);
      return {o.value_nbar, std::get<BlochAngles>(o.argmax).theta};
    }
    case BlockSpec::Kind::OptimizeB2:
      return {optimize_b2(params, n_measured, opt).value_nbar};
  }
  return {};
}

}  // namespace

SweepRow evaluate_point(const SweepConfig& config, double nbar, double gamma_tau) {
  SweepRow row;
  row.nbar = nbar;
  row.gamma_tau = gamma_tau;
  row.values.assign(config.quantities.size(), kNaN);

  ModelParams params;
  params.nbar = nbar;
  params.gamma_tau_se = gamma_tau;
  params.g_tau_sa = config.g_tau_sa;
  params.interaction = config.interaction;

  try {
    std::optional<PointValue> main;
    auto need_main = [&]() -> const PointValue& {
      if (!main) main = fisher_value(config, params, config.n_measured);
      return *main;
    };
    std::vector<double> values(config.quantities.size(), kNaN);
    for (size_t k = 0; k < config.quantities.size(); ++k) {
      switch (config.quantities[k]) {
        case Quantity::Qfi:
          values[k] = need_main().value;
          break;
        case Quantity::RatioThermal:
          values[k] = need_main().value / (config.n_measured * thermal_fi_nbar(nbar));
          break;
        case Quantity::RatioPerCopy: {
          const int b = config.block.b();
          const double per_block = b == config.n_measured ? need_main().value
                                                           : fisher_value(config, params, b).value;
          values[k] = need_main().value / ((config.n_measured / b) * per_block);
          break;
        }
        case Quantity::ThetaOpt:
          values[k] = need_main().theta;
          break;
        case Quantity::DeltaZz:
          values[k] = zz_delta(nbar, gamma_tau) / thermal_fi_nbar(nbar);
          break;
      }
    }
    for (double v : values) {
      if (!std::isfinite(v)) throw NumericError("non-finite value");
    }
    row.values = std::move(values);
  } catch (const DegenerateFixedPointError&) {
    row.status = RowStatus::Degenerate;
  } catch (const RankChangeError&) {
    row.status = RowStatus::RankChange;
  } catch (const std::invalid_argument&) {
    row.status = RowStatus::ArgumentError;
  } catch (const std::exception&) {
    row.status = RowStatus::NumericFailure;
  }
  return row;
}

std::vector<SweepRow> run_sweep_serial(const SweepConfig& config) {
  config.validate();
  std::vector<SweepRow> rows;
  rows.reserve(config.nbar_grid.size() * config.gamma_tau_grid.size());
  for (double n : config.nbar_grid) {
    for (double gt : config.gamma_tau_grid) rows.push_back(evaluate_point(config, n, gt));
  }
  return rows;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config, int threads) {
  config.validate();
  const int n_gt = static_cast<int>(config.gamma_tau_grid.size());
  const int total = static_cast<int>(config.nbar_grid.size()) * n_gt;
  std::vector<SweepRow> rows(static_cast<size_t>(total));
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();

  // evaluate_point never throws; each task writes only its own slot.
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (int idx = 0; idx < total; ++idx) {
    const double n = config.nbar_grid[static_cast<size_t>(idx / n_gt)];
    const double gt = config.gamma_tau_grid[static_cast<size_t>(idx % n_gt)];
    rows[static_cast<size_t>(idx)] = evaluate_point(config, n, gt);
  }
  return rows;
}

std::vector<double> make_grid(double start, double stop, int count, bool log_spaced) {
  if (count < 1) throw std::invalid_argument("grid count must be >= 1");
  if (log_spaced && !(start > 0.0 && stop > 0.0)) {
    throw std::invalid_argument("log grid bounds must be > 0");
  }
  std::vector<double> g(static_cast<size_t>(count));
  if (count == 1) {
    g[0] = start;
    return g;
  }
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    g[static_cast<size_t>(i)] = log_spaced ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                                           : start + t * (stop - start);
  }
  g.front() = start;
  g.back() = stop;
  return g;
}

std::vector<double> default_nbar_grid() { return make_grid(0.1, 10.0, 41, true); }
std::vector<double> default_gamma_tau_grid() { return make_grid(0.01, 3.0, 41, true); }

}  // namespace collide
