#include "collide/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace collide {

double thermal_fi_nbar(double nbar) {
  if (!(nbar > 0.0)) throw std::invalid_argument("thermal_fi_nbar: nbar must be > 0");
  const double m = 2.0 * nbar + 1.0;
  return 1.0 / (nbar * (nbar + 1.0) * m * m);
}

double dnbar_dT(double temperature, double omega) {
  if (!(temperature > 0.0) || !(omega > 0.0)) {
    throw std::invalid_argument("dnbar_dT: temperature and omega must be > 0");
  }
  const double x = omega / temperature;
  const double em1 = std::expm1(x);
  return (x / temperature) * std::exp(x) / (em1 * em1);
}

CMatrix state_derivative(const StateBuilder& builder, double nbar, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("state_derivative: step must be > 0");
  const DensityMatrix hi = builder(nbar + step);
  const DensityMatrix lo = builder(nbar - step);
  CMatrix d = (hi.matrix() - lo.matrix()) / (2.0 * step);
  return 0.5 * (d + d.adjoint());
}

double default_fd_step(double nbar) {
  return std::min(std::max(1e-6, 1e-6 * nbar), 0.5 * nbar);
}

double qfi(const DensityMatrix& rho, const CMatrix& drho) {
  if (drho.rows() != rho.dim() || drho.cols() != rho.dim()) {
    throw std::invalid_argument("qfi: derivative dimension does not match state");
  }
  if (hermiticity_error(drho) > 1e-8 || std::abs(drho.trace()) > 1e-8) {
    throw std::invalid_argument("qfi: derivative must be Hermitian and traceless");
  }
  const HermEigen eig = herm_eigen(rho.matrix());
  const RVector& lam = eig.values;
  if (lam(0) < -Tolerances::kPsd) {
    throw NumericError("qfi: state has negative eigenvalue " + std::to_string(lam(0)));
  }
  const double kernel = 1e-12 * lam(lam.size() - 1);
  const CMatrix d = eig.vectors.adjoint() * drho * eig.vectors;

  double sum = 0.0;
  const Eigen::Index n = lam.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double denom = lam(i) + lam(j);
      const double mag = std::abs(d(i, j));
      if (denom <= kernel) {
        if (mag > 1e-8) {
          throw RankChangeError("qfi: derivative has support outside the state's support");
        }
        continue;
      }
      sum += 2.0 * mag * mag / denom;
    }
  }
  return std::max(sum, 0.0);
}

void Povm::validate() const {
  if (effects.empty()) throw std::invalid_argument("Povm: no effects");
  const int d = dim();
  CMatrix total = CMatrix::Zero(d, d);
  for (const auto& e : effects) {
    if (e.rows() != d || e.cols() != d) throw std::invalid_argument("Povm: inconsistent dimensions");
    if (hermiticity_error(e) > 1e-10) throw std::invalid_argument("Povm: effect not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(e, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -1e-10) throw std::invalid_argument("Povm: effect not PSD");
    total += e;
  }
  if (max_abs_diff(total, CMatrix::Identity(d, d)) > 1e-10) {
    throw std::invalid_argument("Povm: effects do not sum to identity");
  }
}

Povm Povm::projective(const CMatrix& basis) {
  Povm p;
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    const CVector v = basis.col(k);
    p.effects.push_back(v * v.adjoint());
  }
  return p;
}

double cfi(const StateBuilder& builder, const Povm& povm, double nbar, double step) {
  povm.validate();
  const DensityMatrix mid = builder(nbar);
  if (mid.dim() != povm.dim()) throw std::invalid_argument("cfi: POVM dimension does not match state");
  const DensityMatrix hi = builder(nbar + step);
  const DensityMatrix lo = builder(nbar - step);

  double sum = 0.0;
  for (const auto& e : povm.effects) {
    const double p = (e * mid.matrix()).trace().real();
    if (p <= 1e-14) continue;
    const double dp = ((e * hi.matrix()).trace().real() - (e * lo.matrix()).trace().real()) / (2.0 * step);
    sum += dp * dp / p;
  }
  return sum;
}

StateBuilder outgoing_state_builder(const ModelParams& params, const AncillaBlock& block,
                                    int n_measured) {
  return [params, block, n_measured](double nbar) {
    ModelParams p = params;
    p.nbar = nbar;
    const SteadyStateResult ss = steady_state(block_map_superop(p, block));
    if (!ss.unique) throw DegenerateFixedPointError("fixed point of the block map is not unique");
    return outgoing_joint_state_from(p, block, n_measured, ss.rho_s_star);
  };
}

namespace {

double qfi_with_step(const StateBuilder& builder, double nbar, double step) {
  const DensityMatrix rho = builder(nbar);
  return qfi(rho, state_derivative(builder, nbar, step));
}

}  // namespace

FisherResult fisher_for(const ModelParams& params, const AncillaBlock& block, int n_measured,
                        std::optional<double> step) {
  params.validate();
  if (!(params.nbar > 0.0)) throw std::invalid_argument("fisher_for: nbar must be > 0");
  const StateBuilder builder = outgoing_state_builder(params, block, n_measured);

  double value = 0.0;
  if (step) {
    value = qfi_with_step(builder, params.nbar, *step);
  } else {
    double h = default_fd_step(params.nbar);
    for (int attempt = 0;; ++attempt) {
      try {
        value = qfi_with_step(builder, params.nbar, h);
        break;
      } catch (const RankChangeError&) {
        if (attempt == 4) throw;
        h *= 0.5;
      }
    }
  }
  FisherResult r;
  r.value_nbar = value;
  r.ratio_thermal = value / (n_measured * thermal_fi_nbar(params.nbar));
  r.n_measured = n_measured;
  r.block_b = block.b();
  return r;
}

double fd_halving_change(const ModelParams& params, const AncillaBlock& block, int n_measured) {
  const double h = default_fd_step(params.nbar);
  const double full = fisher_for(params, block, n_measured, h).value_nbar;
  const double half = fisher_for(params, block, n_measured, h / 2).value_nbar;
  return std::abs(full - half) / std::abs(full);
}

}  // namespace collide
