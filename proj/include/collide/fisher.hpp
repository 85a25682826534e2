#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "collide/collision.hpp"

namespace collide {

// All Fisher information here is taken with respect to nbar. Multiply by
// dnbar_dT(T, omega)^2 to convert to temperature units.

/// 1 / (nbar (nbar+1) (2 nbar+1)^2). Throws for nbar <= 0.
double thermal_fi_nbar(double nbar);

/// d nbar / dT for nbar = 1/(exp(omega/T) - 1), hbar = k_B = 1.
double dnbar_dT(double temperature, double omega);

using StateBuilder = std::function<DensityMatrix(double nbar)>;

/// Central difference (rho(n+h) - rho(n-h)) / 2h.
CMatrix state_derivative(const StateBuilder& builder, double nbar, double step);

/// Default finite-difference step max(1e-6, 1e-6 nbar), capped at nbar/2.
double default_fd_step(double nbar);

/// The derivative has weight on a pair of kernel eigenvectors of rho: the
/// state changes rank across the difference stencil.
class RankChangeError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// The steady state of the block map is not unique.
class DegenerateFixedPointError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// sum_ij 2 |<i|drho|j>|^2 / (l_i + l_j) in the eigenbasis of rho, skipping
/// pairs with l_i + l_j below 1e-12 * max l.
double qfi(const DensityMatrix& rho, const CMatrix& drho);

struct Povm {
  std::vector<CMatrix> effects;

  /// Throws std::invalid_argument unless every effect is PSD and they sum to I.
  void validate() const;
  int dim() const { return effects.empty() ? 0 : static_cast<int>(effects.front().rows()); }

  /// Rank-1 projective measurement onto the columns of a unitary.
  static Povm projective(const CMatrix& basis);
};

/// Classical Fisher information of the outcome distribution of `povm`.
double cfi(const StateBuilder& builder, const Povm& povm, double nbar, double step);

struct FisherResult {
  double value_nbar = 0.0;
  double ratio_thermal = 0.0;  // value_nbar / (N * thermal FI)
  int n_measured = 0;
  int block_b = 0;
};

/// n -> outgoing N-ancilla state at the fixed point for nbar = n. Throws
/// DegenerateFixedPointError when the fixed point is not unique.
StateBuilder outgoing_state_builder(const ModelParams& params, const AncillaBlock& block,
                                    int n_measured);

/// QFI of the outgoing N-ancilla state. If `step` is not given the default
/// step is used, and is halved (up to four times) on a rank change.
FisherResult fisher_for(const ModelParams& params, const AncillaBlock& block, int n_measured,
                        std::optional<double> step = std::nullopt);

/// Relative change of the QFI when the finite-difference step is halved.
double fd_halving_change(const ModelParams& params, const AncillaBlock& block, int n_measured);

}  // namespace collide
