#pragma once

namespace collide {

/// Thermal populations and bath-induced transition probabilities over one
/// bath window, for the ZZ pointer protocol.
struct ZzProbabilities {
  double p_g = 0.0;
  double p_e = 0.0;
  double p_gg = 0.0;  // p(g -> g)
  double p_eg = 0.0;  // p(e -> g)
  double big_gamma = 0.0;
};

ZzProbabilities zz_probs(double nbar, double gamma_tau);

/// Analytic d/dnbar of p(g->g) and p(e->g).
struct ZzTransitionSlopes {
  double d_p_gg = 0.0;
  double d_p_eg = 0.0;
};
ZzTransitionSlopes zz_transition_slopes(double nbar, double gamma_tau);

/// Single-ancilla FI of |+x> versus the interaction angle, in nbar units.
double zz_f1(double nbar, double g_tau_sa);

/// Per-ancilla increment of the N-ancilla FI (nbar units). Requires
/// gamma_tau > 0.
double zz_delta(double nbar, double gamma_tau);

/// zz_f1(nbar, pi/2) + (N - 1) * zz_delta(nbar, gamma_tau).
double zz_fn(double nbar, double gamma_tau, int n_measured);

/// f(x) = (dx)^2 / x for a probability x in (0, 1) with derivative dx.
double appendix_f(double x, double dx);

/// g(x, y) = f(x y) + f(x (1 - y)), derivatives by the product rule.
double appendix_g(double x, double dx, double y, double dy);

}  // namespace collide
