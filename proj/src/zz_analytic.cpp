#include "collide/zz_analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "collide/fisher.hpp"

namespace collide {

ZzProbabilities zz_probs(double nbar, double gamma_tau) {
  if (!(nbar >= 0.0) || !(gamma_tau >= 0.0)) {
    throw std::invalid_argument("zz_probs: nbar and gamma_tau must be >= 0");
  }
  ZzProbabilities p;
  p.big_gamma = gamma_tau * (2.0 * nbar + 1.0);
  p.p_g = (nbar + 1.0) / (2.0 * nbar + 1.0);
  p.p_e = nbar / (2.0 * nbar + 1.0);
  const double eta = -std::expm1(-p.big_gamma);
  p.p_gg = 1.0 - eta * p.p_e;
  p.p_eg = eta * p.p_g;
  return p;
}

ZzTransitionSlopes zz_transition_slopes(double nbar, double gamma_tau) {
  const ZzProbabilities p = zz_probs(nbar, gamma_tau);
  const double m = 2.0 * nbar + 1.0;
  const double eta = -std::expm1(-p.big_gamma);
  const double d_eta = 2.0 * gamma_tau * std::exp(-p.big_gamma);
  const double d_pe = 1.0 / (m * m);
  const double d_pg = -d_pe;
  return {-(d_eta * p.p_e + eta * d_pe), d_eta * p.p_g + eta * d_pg};
}

double zz_f1(double nbar, double g_tau_sa) {
  return 0.5 * (1.0 - std::cos(2.0 * g_tau_sa)) * thermal_fi_nbar(nbar);
}

double zz_delta(double nbar, double gamma_tau) {
  if (!(nbar > 0.0)) throw std::invalid_argument("zz_delta: nbar must be > 0");
  if (!(gamma_tau > 0.0)) {
    throw std::invalid_argument("zz_delta: undefined for gamma_tau = 0 (no transitions)");
  }
  const ZzProbabilities p = zz_probs(nbar, gamma_tau);
  const ZzTransitionSlopes s = zz_transition_slopes(nbar, gamma_tau);
  const double var_g = p.p_gg * (1.0 - p.p_gg);
  const double var_e = p.p_eg * (1.0 - p.p_eg);
  if (!(var_g > 0.0) || !(var_e > 0.0)) {
    throw std::invalid_argument("zz_delta: degenerate transition probabilities");
  }
  return p.p_g / var_g * s.d_p_gg * s.d_p_gg + p.p_e / var_e * s.d_p_eg * s.d_p_eg;
}

double zz_fn(double nbar, double gamma_tau, int n_measured) {
  if (n_measured < 1) throw std::invalid_argument("zz_fn: n_measured must be >= 1");
  const double f1 = zz_f1(nbar, std::numbers::pi / 2);
  if (n_measured == 1) return f1;
  return f1 + (n_measured - 1) * zz_delta(nbar, gamma_tau);
}

namespace {

void check_open_unit(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
}

}  // namespace

double appendix_f(double x, double dx) {
  check_open_unit(x, "appendix_f: x");
  return dx * dx / x;
}

double appendix_g(double x, double dx, double y, double dy) {
  check_open_unit(x, "appendix_g: x");
  check_open_unit(y, "appendix_g: y");
  return appendix_f(x * y, dx * y + x * dy) + appendix_f(x * (1.0 - y), dx * (1.0 - y) - x * dy);
}

}  // namespace collide
