#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "collide/fisher.hpp"

namespace collide {

struct BlochAngles {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)
};

/// Two-qubit state sqrt(r)|+m,+n> + e^{i alpha} sqrt(1-r)|-m,-n> with the
/// first local basis at azimuth 0.
struct SchmidtParams {
  double r = 1.0;  // [1/2, 1]
  double theta_m = 0.0;
  double theta_n = 0.0;
  double phi_n = 0.0;
  double alpha = 0.0;
};

struct Optimum {
  std::variant<BlochAngles, SchmidtParams> argmax;
  double value_nbar = 0.0;
  long evaluations = 0;
};

struct OptimizeOptions {
  std::uint64_t seed = 0;
  int random_starts = 64;
  /// <= 1 runs the serial reference path; otherwise OpenMP with this many threads.
  int threads = 1;
  std::optional<double> fd_step;
};

/// cos(theta/2)|g> + e^{i phi} sin(theta/2)|e>
PureState bloch_state(const BlochAngles& angles);

PureState schmidt_state(const SchmidtParams& p);

/// Local basis pair (|+k>, |-k>) of a Bloch direction.
std::pair<CVector, CVector> local_basis(double theta, double phi);

/// Maximizes the QFI over single-qubit ancillas |psi(theta)> (phi = 0):
/// 181-point scan of [0, pi] then golden-section refinement.
Optimum optimize_b1(const ModelParams& params, int n_measured, const OptimizeOptions& options = {});

/// Maximizes the QFI over two-qubit blocks with multi-start Nelder-Mead in
/// the five Schmidt parameters.
Optimum optimize_b2(const ModelParams& params, int n_measured, const OptimizeOptions& options = {});

/// The eight structured starting points used by optimize_b2.
std::vector<SchmidtParams> b2_seed_points();

}  // namespace collide
