#pragma once

#include <functional>
#include <vector>

namespace collide {

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double initial_step = 0.25;
  double size_tolerance = 1e-7;  // max |x_i - x_best|_inf over the simplex
  int max_iterations = 0;        // 0 -> 200 * dim
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;  // minimum found
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
};

/// Minimizes `f` from `start` with an axis-aligned initial simplex.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, const NelderMeadOptions& options = {});

}  // namespace collide
