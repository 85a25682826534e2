#pragma once

#include "collide/channels.hpp"
#include "collide/qmat.hpp"

namespace collide {

/// A block of b ancilla qubits prepared in a common pure state.
class AncillaBlock {
 public:
  /// b is inferred from the state dimension (2 -> 1, 4 -> 2).
  explicit AncillaBlock(PureState psi);

  int b() const noexcept { return b_; }
  const PureState& psi() const noexcept { return psi_; }

 private:
  int b_;
  PureState psi_;
};

/// Largest number of outgoing ancillas measured jointly.
inline constexpr int kMaxMeasured = 4;

/// 4x4 matrix of rho_S -> tr_A C[rho_S (x) Psi] acting on vec(rho_S), with
/// vec index 2*i + j for entry (i, j).
CMatrix block_map_superop(const ModelParams& params, const AncillaBlock& block);

struct SteadyStateResult {
  DensityMatrix rho_s_star;
  double residual = 0.0;  // trace distance between Phi(rho*) and rho*
  bool unique = true;
};

/// Fixed point of a trace-preserving 4x4 superoperator.
SteadyStateResult steady_state(const CMatrix& superop);

/// Applies a 4x4 superoperator to a qubit matrix.
CMatrix apply_superop(const CMatrix& superop, const CMatrix& rho);

/// Joint state of N consecutive outgoing ancillas with the system at its
/// fixed point. N must be a positive multiple of block.b() and at most 4.
DensityMatrix outgoing_joint_state(const ModelParams& params, const AncillaBlock& block,
                                   int n_measured);

/// As above but with an explicit starting system state.
DensityMatrix outgoing_joint_state_from(const ModelParams& params, const AncillaBlock& block,
                                        int n_measured, const DensityMatrix& rho_s);

}  // namespace collide
