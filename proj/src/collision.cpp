#include "collide/collision.hpp"

#include <cmath>
#include <vector>

namespace collide {

namespace {

int block_size_for(int dim) {
  if (dim == 2) return 1;
  if (dim == 4) return 2;
  throw std::invalid_argument("AncillaBlock: state dimension must be 2 or 4");
}

// Runs the collision sequence on system (x) Psi^{(x) n_blocks}: for each
// ancilla, the collision unitary on (S, A_i) then the thermal channel on S.
CMatrix run_collisions(const ModelParams& params, const AncillaBlock& block, const CMatrix& rho_s,
                       int n_blocks) {
  const int n_anc = n_blocks * block.b();
  const auto dims = qubit_dims(1 + n_anc);
  const CMatrix psi = block.psi().amplitudes() * block.psi().amplitudes().adjoint();

  CMatrix rho = rho_s;
  for (int k = 0; k < n_blocks; ++k) rho = kron(rho, psi);

  const CMatrix u = collision_unitary(params.interaction, params.g_tau_sa);
  const int nq = 1 + n_anc;
  for (int i = 1; i <= n_anc; ++i) {
    kernels::conjugate_2q(u, rho, 0, i, nq);
    apply_thermal_first(rho, params.nbar, params.gamma_tau_se);
  }
  return rho;
}

}  // namespace

AncillaBlock::AncillaBlock(PureState psi) : b_(block_size_for(psi.dim())), psi_(std::move(psi)) {}

CMatrix block_map_superop(const ModelParams& params, const AncillaBlock& block) {
  params.validate();
  const auto dims = qubit_dims(1 + block.b());
  const int keep[] = {0};
  CMatrix superop(4, 4);
  for (int k = 0; k < 4; ++k) {
    CMatrix unit = CMatrix::Zero(2, 2);
    unit(k / 2, k % 2) = 1.0;
    const CMatrix joint = run_collisions(params, block, unit, 1);
    const CMatrix image = partial_trace_raw(joint, keep, dims);
    for (int r = 0; r < 4; ++r) superop(r, k) = image(r / 2, r % 2);
  }
  return superop;
}

CMatrix apply_superop(const CMatrix& superop, const CMatrix& rho) {
  CVector v(4);
  for (int r = 0; r < 4; ++r) v(r) = rho(r / 2, r % 2);
  const CVector w = superop * v;
  CMatrix out(2, 2);
  for (int r = 0; r < 4; ++r) out(r / 2, r % 2) = w(r);
  return out;
}

SteadyStateResult steady_state(const CMatrix& superop) {
  if (superop.rows() != 4 || superop.cols() != 4) {
    throw std::invalid_argument("steady_state: expected a 4x4 superoperator");
  }
  constexpr double kUnitWindow = 1e-8;

  Eigen::ComplexEigenSolver<CMatrix> es(superop, true);
  if (es.info() != Eigen::Success) throw NumericError("steady_state: eigen-solver failed");
  const auto& lambda = es.eigenvalues();
  int n_unit = 0;
  Eigen::Index closest = 0;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (std::abs(lambda(k) - 1.0) < kUnitWindow) ++n_unit;
    if (std::abs(lambda(k) - 1.0) < std::abs(lambda(closest) - 1.0)) closest = k;
  }
  if (n_unit == 0) {
    throw NumericError("steady_state: no eigenvalue near 1 (map is not trace preserving)");
  }

  CMatrix rho(2, 2);
  if (n_unit == 1) {
    // Null vector of (Phi - I) normalized by the trace row; equals the
    // eigenvalue-1 eigenvector but stays well conditioned when the other
    // eigenvalues are degenerate.
    CMatrix a = superop - CMatrix::Identity(4, 4);
    a.row(0) << 1.0, 0.0, 0.0, 1.0;
    CVector rhs = CVector::Zero(4);
    rhs(0) = 1.0;
    const CVector v = a.fullPivLu().solve(rhs);
    for (int r = 0; r < 4; ++r) rho(r / 2, r % 2) = v(r);
  } else {
    const CVector v = es.eigenvectors().col(closest);
    for (int r = 0; r < 4; ++r) rho(r / 2, r % 2) = v(r);
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace();

  const double residual = 0.5 * trace_norm(apply_superop(superop, rho) - rho);
  return SteadyStateResult{DensityMatrix(std::move(rho)), residual, n_unit == 1};
}

DensityMatrix outgoing_joint_state_from(const ModelParams& params, const AncillaBlock& block,
                                        int n_measured, const DensityMatrix& rho_s) {
  if (n_measured < 1 || n_measured > kMaxMeasured) {
    throw std::invalid_argument("outgoing_joint_state: n_measured must be in 1..4");
  }
  if (n_measured % block.b() != 0) {
    throw std::invalid_argument("outgoing_joint_state: n_measured must be a multiple of the block size");
  }
  if (rho_s.dim() != 2) throw std::invalid_argument("outgoing_joint_state: qubit system state required");
  params.validate();

  const CMatrix joint = run_collisions(params, block, rho_s.matrix(), n_measured / block.b());
  CMatrix out = kernels::trace_out_first(joint);
  out = 0.5 * (out + out.adjoint()).eval();
  out /= out.trace();
  return DensityMatrix(std::move(out));
}

DensityMatrix outgoing_joint_state(const ModelParams& params, const AncillaBlock& block,
                                   int n_measured) {
  const SteadyStateResult ss = steady_state(block_map_superop(params, block));
  return outgoing_joint_state_from(params, block, n_measured, ss.rho_s_star);
}

}  // namespace collide
