#include "collide/channels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace collide {

std::string to_string(Interaction kind) {
  return kind == Interaction::ZZ ? "zz" : "exchange";
}

Interaction parse_interaction(const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "zz") return Interaction::ZZ;
  if (lower == "exchange" || lower == "exc") return Interaction::Exchange;
  throw std::invalid_argument("unknown interaction '" + text + "' (expected zz|exchange)");
}

void ModelParams::validate() const {
  if (!(nbar >= 0.0)) throw std::invalid_argument("nbar must be >= 0");
  if (!(gamma_tau_se >= 0.0)) throw std::invalid_argument("gamma_tau_se must be >= 0");
  if (!std::isfinite(g_tau_sa)) throw std::invalid_argument("g_tau_sa must be finite");
}

double KrausChannel::completeness_error() const {
  if (operators.empty()) return std::numeric_limits<double>::infinity();
  CMatrix sum = CMatrix::Zero(dim(), dim());
  for (const auto& k : operators) sum += k.adjoint() * k;
  return max_abs_diff(sum, CMatrix::Identity(dim(), dim()));
}

CMatrix KrausChannel::apply(const CMatrix& rho) const {
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : operators) out += k * rho * k.adjoint();
  return out;
}

KrausChannel thermal_kraus(double nbar, double gamma_tau) {
  if (!(nbar >= 0.0) || !(gamma_tau >= 0.0)) {
    throw std::invalid_argument("thermal_kraus: nbar and gamma_tau must be >= 0");
  }
  if (gamma_tau == 0.0) return KrausChannel{{CMatrix::Identity(2, 2)}};

  const double big_gamma = gamma_tau * (2.0 * nbar + 1.0);
  const double keep = std::exp(-big_gamma);  // 1 - eta
  const double eta = -std::expm1(-big_gamma);
  const double p = (nbar + 1.0) / (2.0 * nbar + 1.0);
  const double sp = std::sqrt(p);
  const double sq = std::sqrt(1.0 - p);
  const double sk = std::sqrt(keep);
  const double se = std::sqrt(eta);

  CMatrix k0 = CMatrix::Zero(2, 2), k1 = CMatrix::Zero(2, 2);
  CMatrix k2 = CMatrix::Zero(2, 2), k3 = CMatrix::Zero(2, 2);
  k0(0, 0) = sp;
  k0(1, 1) = sp * sk;
  k1(0, 1) = sp * se;  // |e> -> |g>
  k2(0, 0) = sq * sk;
  k2(1, 1) = sq;
  k3(1, 0) = sq * se;  // |g> -> |e>
  return KrausChannel{{k0, k1, k2, k3}};
}

void apply_thermal_first(CMatrix& rho, double nbar, double gamma_tau) {
  if (!(nbar >= 0.0) || !(gamma_tau >= 0.0)) {
    throw std::invalid_argument("apply_thermal_first: nbar and gamma_tau must be >= 0");
  }
  if (rho.rows() % 2 != 0 || rho.rows() != rho.cols()) {
    throw std::invalid_argument("apply_thermal_first: even square matrix required");
  }
  const double big_gamma = gamma_tau * (2.0 * nbar + 1.0);
  const double eta = -std::expm1(-big_gamma);
  const double p = (nbar + 1.0) / (2.0 * nbar + 1.0);
  const double q = 1.0 - p;
  const double coh = std::exp(-0.5 * big_gamma);
  const Eigen::Index h = rho.rows() / 2;
  for (Eigen::Index j = 0; j < h; ++j) {
    for (Eigen::Index i = 0; i < h; ++i) {
      const Complex a = rho(i, j), d = rho(i + h, j + h);
      rho(i, j) = (1.0 - eta * q) * a + (eta * p) * d;
      rho(i + h, j + h) = (eta * q) * a + (1.0 - eta * p) * d;
      rho(i, j + h) *= coh;
      rho(i + h, j) *= coh;
    }
  }
}

int default_rk4_steps(double nbar, double gamma_t) {
  return static_cast<int>(std::ceil(gamma_t * (2.0 * nbar + 1.0) * 1000.0)) + 100;
}

namespace {

CMatrix dissipator(const CMatrix& l, const CMatrix& rho) {
  const CMatrix ldl = l.adjoint() * l;
  return l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
}

}  // namespace

DensityMatrix lindblad_rk4(const DensityMatrix& rho0, double nbar, double gamma_t, int steps) {
  if (steps < 1) throw std::invalid_argument("lindblad_rk4: steps must be >= 1");
  if (rho0.dim() != 2) throw std::invalid_argument("lindblad_rk4: qubit state required");
  const CMatrix down = std::sqrt(nbar + 1.0) * ops::sigma_minus();
  const CMatrix up = std::sqrt(nbar) * ops::sigma_plus();
  auto rhs = [&](const CMatrix& r) -> CMatrix { return dissipator(down, r) + dissipator(up, r); };

  const double dt = gamma_t / steps;
  CMatrix r = rho0.matrix();
  for (int s = 0; s < steps; ++s) {
    const CMatrix k1 = rhs(r);
    const CMatrix k2 = rhs(r + 0.5 * dt * k1);
    const CMatrix k3 = rhs(r + 0.5 * dt * k2);
    const CMatrix k4 = rhs(r + dt * k3);
    r += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  r = 0.5 * (r + r.adjoint()).eval();
  r /= r.trace();
  return DensityMatrix(std::move(r));
}

CMatrix zz_unitary(double g_tau) {
  const double theta = g_tau / 2.0;
  const Complex minus = std::polar(1.0, -theta);
  const Complex plus = std::polar(1.0, theta);
  CMatrix u = CMatrix::Zero(4, 4);
  u(0, 0) = minus;
  u(1, 1) = plus;
  u(2, 2) = plus;
  u(3, 3) = minus;
  return u;
}

CMatrix exchange_unitary(double g_tau) {
  CMatrix u = CMatrix::Identity(4, 4);
  const double c = std::cos(g_tau);
  const Complex mis(0.0, -std::sin(g_tau));
  u(1, 1) = c;
  u(2, 2) = c;
  u(1, 2) = mis;
  u(2, 1) = mis;
  return u;
}

CMatrix collision_unitary(Interaction kind, double g_tau) {
  return kind == Interaction::ZZ ? zz_unitary(g_tau) : exchange_unitary(g_tau);
}

CMatrix apply_kraus_on_raw(const KrausChannel& channel, const CMatrix& rho, int target,
                           std::span<const int> dims) {
  if (target < 0 || target >= static_cast<int>(dims.size())) {
    throw std::invalid_argument("apply_kraus_on: target out of range");
  }
  if (channel.dim() != dims[static_cast<size_t>(target)]) {
    throw std::invalid_argument("apply_kraus_on: channel dimension does not match target subsystem");
  }
  const int targets[] = {target};
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : channel.operators) out += conjugate_on(k, rho, targets, dims);
  return out;
}

DensityMatrix apply_kraus_on(const KrausChannel& channel, const DensityMatrix& rho, int target,
                             std::span<const int> dims) {
  CMatrix out = apply_kraus_on_raw(channel, rho.matrix(), target, dims);
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out));
}

}  // namespace collide
