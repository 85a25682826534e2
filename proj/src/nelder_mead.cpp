#include "collide/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace collide {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, const NelderMeadOptions& options) {
  const size_t n = start.size();
  if (n == 0) throw std::invalid_argument("nelder_mead: empty start vector");
  const int max_iter = options.max_iterations > 0 ? options.max_iterations : static_cast<int>(200 * n);

  NelderMeadResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return f(x);
  };

  std::vector<std::vector<double>> simplex(n + 1, start);
  for (size_t i = 0; i < n; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(n + 1);
  for (size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);

  auto along = [&](const std::vector<double>& from, double coef, std::vector<double>& out) {
    // out = centroid + coef * (centroid - from)
    for (size_t k = 0; k < n; ++k) out[k] = centroid[k] + coef * (centroid[k] - from[k]);
  };

  for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });
    const size_t best = order.front();
    const size_t worst = order.back();
    const size_t second_worst = order[n - 1];

    double size = 0.0;
    for (size_t i = 0; i <= n; ++i) {
      for (size_t k = 0; k < n; ++k) size = std::max(size, std::abs(simplex[i][k] - simplex[best][k]));
    }
    if (size < options.size_tolerance) {
      res.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k];
    }
    for (auto& c : centroid) c /= static_cast<double>(n);

    along(simplex[worst], options.reflection, trial);
    const double f_reflect = eval(trial);

    if (f_reflect < values[best]) {
      along(simplex[worst], options.reflection * options.expansion, trial2);
      const double f_expand = eval(trial2);
      if (f_expand < f_reflect) {
        simplex[worst] = trial2;
        values[worst] = f_expand;
      } else {
        simplex[worst] = trial;
        values[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < values[second_worst]) {
      simplex[worst] = trial;
      values[worst] = f_reflect;
      continue;
    }

    // Contraction: outside if the reflected point improved on the worst.
    const bool outside = f_reflect < values[worst];
    along(simplex[worst], outside ? options.contraction : -options.contraction, trial2);
    const double f_contract = eval(trial2);
    if (f_contract < (outside ? f_reflect : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = f_contract;
      continue;
    }

    for (size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (size_t k = 0; k < n; ++k) {
        simplex[i][k] = simplex[best][k] + options.shrink * (simplex[i][k] - simplex[best][k]);
      }
      values[i] = eval(simplex[i]);
    }
  }

  const size_t best = static_cast<size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  res.x = simplex[best];
  res.value = values[best];
  return res;
}

}  // namespace collide
