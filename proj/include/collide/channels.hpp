#pragma once

#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "collide/qmat.hpp"

namespace collide {

enum class Interaction { ZZ, Exchange };

std::string to_string(Interaction kind);
/// Accepts "zz" or "exchange" (case-insensitive).
Interaction parse_interaction(const std::string& text);

/// Dimensionless model knobs. All rates are folded into products with the
/// corresponding window lengths.
struct ModelParams {
  double nbar = 1.0;          // mean bath occupation
  double gamma_tau_se = 0.5;  // bath coupling times bath window
  double g_tau_sa = std::numbers::pi / 2;
  Interaction interaction = Interaction::Exchange;

  /// Effective thermalization exponent gamma*tau*(2 nbar + 1).
  double big_gamma() const { return gamma_tau_se * (2.0 * nbar + 1.0); }
  /// Throws std::invalid_argument on negative nbar or gamma_tau_se.
  void validate() const;
};

struct KrausChannel {
  std::vector<CMatrix> operators;

  int dim() const { return operators.empty() ? 0 : static_cast<int>(operators.front().rows()); }
  /// max |sum K^dag K - I|
  double completeness_error() const;
  /// Applies the channel to a full matrix of the channel's own dimension.
  CMatrix apply(const CMatrix& rho) const;
};

/// Generalized amplitude damping: decay probability 1 - exp(-Gamma),
/// ground-branch weight (nbar+1)/(2 nbar+1).
KrausChannel thermal_kraus(double nbar, double gamma_tau);

/// Thermal channel on qubit 0 of an nq-qubit matrix, in place. Same map as
/// the Kraus set above written as its action on the 2x2 system blocks.
void apply_thermal_first(CMatrix& rho, double nbar, double gamma_tau);

/// Step count used by the RK4 oracle when none is given.
int default_rk4_steps(double nbar, double gamma_t);

/// RK4 integration of the finite-temperature qubit dissipator over a
/// dimensionless time gamma*t.
DensityMatrix lindblad_rk4(const DensityMatrix& rho0, double nbar, double gamma_t, int steps);

/// exp(-i (g_tau/2) sigma_z (x) sigma_z), ordering system (x) ancilla.
CMatrix zz_unitary(double g_tau);

/// exp(-i g_tau (sigma+ sigma- + h.c.)): rotation inside span{|ge>, |eg>}.
CMatrix exchange_unitary(double g_tau);

CMatrix collision_unitary(Interaction kind, double g_tau);

/// sum_k (I (x) K_k (x) I) rho (I (x) K_k (x) I)^dagger on subsystem `target`.
DensityMatrix apply_kraus_on(const KrausChannel& channel, const DensityMatrix& rho, int target,
                             std::span<const int> dims);

/// Raw-matrix form of apply_kraus_on used inside the collision loop.
CMatrix apply_kraus_on_raw(const KrausChannel& channel, const CMatrix& rho, int target,
                           std::span<const int> dims);

}  // namespace collide
