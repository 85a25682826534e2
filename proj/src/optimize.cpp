#include "collide/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <vector>

#include "collide/nelder_mead.hpp"

namespace collide {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTieTolerance = 1e-9;

// a is better than b unless they tie within kTieTolerance (relative).
bool strictly_better(double a, double b) {
  return a > b + kTieTolerance * std::max(std::abs(a), std::abs(b));
}

bool ties(double a, double b) { return !strictly_better(a, b) && !strictly_better(b, a); }

void require_exchange(const ModelParams& params, const char* who) {
  if (params.interaction != Interaction::Exchange) {
    throw std::invalid_argument(std::string(who) + ": only the exchange interaction is optimized");
  }
}

double qfi_of(const ModelParams& params, const PureState& psi, int n_measured,
              const OptimizeOptions& options) {
  return fisher_for(params, AncillaBlock(psi), n_measured, options.fd_step).value_nbar;
}

// Runs body(i) for i in [0, n), in parallel when threads > 1. The first
// exception (by index) is rethrown after the loop.
template <class Body>
void for_each_index(int n, int threads, Body&& body) {
  std::vector<std::exception_ptr> errors(static_cast<size_t>(n));
  if (threads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[static_cast<size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (int i = 0; i < n; ++i) body(i);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Bounded reparameterization of the Schmidt coordinates for the simplex
// search: r = 3/4 + cos(u)/4, theta = pi (1 - cos v) / 2, angles periodic.
SchmidtParams from_search(const std::vector<double>& x) {
  SchmidtParams p;
  p.r = 0.75 + 0.25 * std::cos(x[0]);
  p.theta_m = 0.5 * kPi * (1.0 - std::cos(x[1]));
  p.theta_n = 0.5 * kPi * (1.0 - std::cos(x[2]));
  p.phi_n = std::fmod(std::fmod(x[3], 2 * kPi) + 2 * kPi, 2 * kPi);
  p.alpha = std::fmod(std::fmod(x[4], 2 * kPi) + 2 * kPi, 2 * kPi);
  return p;
}

std::vector<double> to_search(const SchmidtParams& p) {
  auto clamp1 = [](double c) { return std::clamp(c, -1.0, 1.0); };
  return {std::acos(clamp1(4.0 * p.r - 3.0)), std::acos(clamp1(1.0 - 2.0 * p.theta_m / kPi)),
          std::acos(clamp1(1.0 - 2.0 * p.theta_n / kPi)), p.phi_n, p.alpha};
}

}  // namespace

std::pair<CVector, CVector> local_basis(double theta, double phi) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  CVector plus(2), minus(2);
  plus << c, std::polar(s, phi);
  minus << std::polar(s, -phi), -c;
  return {plus, minus};
}

PureState bloch_state(const BlochAngles& angles) {
  CVector v = local_basis(angles.theta, angles.phi).first;
  v.normalize();
  return PureState(std::move(v));
}

PureState schmidt_state(const SchmidtParams& p) {
  if (!(p.r >= 0.5 && p.r <= 1.0)) throw std::invalid_argument("schmidt_state: r must lie in [1/2, 1]");
  const auto [pm, mm] = local_basis(p.theta_m, 0.0);
  const auto [pn, mn] = local_basis(p.theta_n, p.phi_n);
  CVector v(4);
  const Complex w_plus = std::sqrt(p.r);
  const Complex w_minus = std::polar(std::sqrt(1.0 - p.r), p.alpha);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) v(2 * i + j) = w_plus * pm(i) * pn(j) + w_minus * mm(i) * mn(j);
  }
  v.normalize();
  return PureState(std::move(v));
}

Optimum optimize_b1(const ModelParams& params, int n_measured, const OptimizeOptions& options) {
  require_exchange(params, "optimize_b1");
  constexpr int kScan = 181;
  std::vector<double> thetas(kScan), values(kScan);
  for (int i = 0; i < kScan; ++i) thetas[static_cast<size_t>(i)] = kPi * i / (kScan - 1);

  for_each_index(kScan, options.threads, [&](int i) {
    const auto k = static_cast<size_t>(i);
    values[k] = qfi_of(params, bloch_state({thetas[k], 0.0}), n_measured, options);
  });
  long evaluations = kScan;

  size_t best = 0;
  for (size_t k = 1; k < values.size(); ++k) {
    if (strictly_better(values[k], values[best])) best = k;
  }

  // Golden-section refinement on the bracketing interval.
  double lo = thetas[best == 0 ? 0 : best - 1];
  double hi = thetas[std::min(best + 1, thetas.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = qfi_of(params, bloch_state({x1, 0.0}), n_measured, options);
  double f2 = qfi_of(params, bloch_state({x2, 0.0}), n_measured, options);
  evaluations += 2;
  while (hi - lo > 1e-6) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = qfi_of(params, bloch_state({x1, 0.0}), n_measured, options);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = qfi_of(params, bloch_state({x2, 0.0}), n_measured, options);
    }
    ++evaluations;
  }
  const double refined_theta = f1 >= f2 ? x1 : x2;
  const double refined_value = std::max(f1, f2);

  Optimum out;
  out.evaluations = evaluations;
  const bool take_refined = strictly_better(refined_value, values[best]) ||
                            (ties(refined_value, values[best]) && refined_theta < thetas[best]);
  if (take_refined) {
    out.argmax = BlochAngles{refined_theta, 0.0};
    out.value_nbar = refined_value;
  } else {
    out.argmax = BlochAngles{thetas[best], 0.0};
    out.value_nbar = values[best];
  }
  return out;
}

std::vector<SchmidtParams> b2_seed_points() {
  const double h = kPi / 2;
  return {
      {1.0, 0.0, 0.0, 0.0, 0.0},      // |g,g>
      {1.0, 0.0, h, 0.0, 0.0},        // |g,+x>
      {1.0, h, 0.0, 0.0, 0.0},        // |+x,g>
      {1.0, h, h, 0.0, 0.0},          // |+x,+x>
      {1.0, 0.0, kPi, 0.0, 0.0},      // |g,e>
      {1.0, kPi, 0.0, 0.0, 0.0},      // |e,g>
      {0.5, 0.0, 0.0, 0.0, 0.0},      // (|gg> + |ee>)/sqrt2
      {1.0, kPi / 4, 0.0, 0.0, 0.0},  // |psi(pi/4)> (x) |g>
  };
}

Optimum optimize_b2(const ModelParams& params, int n_measured, const OptimizeOptions& options) {
  require_exchange(params, "optimize_b2");
  if (n_measured != 2 && n_measured != 4) {
    throw std::invalid_argument("optimize_b2: n_measured must be 2 or 4");
  }

  std::vector<SchmidtParams> starts = b2_seed_points();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < options.random_starts; ++k) {
    SchmidtParams p;
    p.r = 0.5 + 0.5 * unit(rng);
    p.theta_m = kPi * unit(rng);
    p.theta_n = kPi * unit(rng);
    p.phi_n = 2 * kPi * unit(rng);
    p.alpha = 2 * kPi * unit(rng);
    starts.push_back(p);
  }

  struct RunResult {
    SchmidtParams argmax;
    double value = 0.0;
    long evaluations = 0;
  };
  std::vector<RunResult> runs(starts.size());
  auto objective = [&](const std::vector<double>& x) {
    return -qfi_of(params, schmidt_state(from_search(x)), n_measured, options);
  };

  for_each_index(static_cast<int>(starts.size()), options.threads, [&](int i) {
    const auto k = static_cast<size_t>(i);
    const NelderMeadResult nm = nelder_mead(objective, to_search(starts[k]));
    runs[k] = {from_search(nm.x), -nm.value, nm.evaluations};
  });

  Optimum out;
  size_t best = 0;
  for (size_t k = 0; k < runs.size(); ++k) {
    out.evaluations += runs[k].evaluations;
    if (k == 0) continue;
    if (strictly_better(runs[k].value, runs[best].value) ||
        (ties(runs[k].value, runs[best].value) && runs[k].argmax.r > runs[best].argmax.r)) {
      best = k;
    }
  }
  out.argmax = runs[best].argmax;
  out.value_nbar = runs[best].value;
  return out;
}

}  // namespace collide
