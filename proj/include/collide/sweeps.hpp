#pragma once

#include <optional>
#include <string>
#include <vector>

#include "collide/optimize.hpp"

namespace collide {

enum class Quantity { Qfi, RatioThermal, RatioPerCopy, ThetaOpt, DeltaZz };

std::string to_string(Quantity q);
Quantity parse_quantity(const std::string& text);

/// Ancilla input for a sweep: a fixed block state or an optimization mode.
struct BlockSpec {
  enum class Kind { Fixed, OptimizeB1, OptimizeB2 };
  Kind kind = Kind::Fixed;
  std::optional<PureState> state;  // set iff kind == Fixed
  std::string label;

  int b() const;
};

/// Parses g | e | plusx | gg | g-plusx | plusx-g | theta:V | schmidt:r,tm,tn,pn,a
/// | optimize-b1 | optimize-b2.
BlockSpec parse_block(const std::string& text);

struct SweepConfig {
  std::vector<double> nbar_grid;
  std::vector<double> gamma_tau_grid;
  Interaction interaction = Interaction::Exchange;
  double g_tau_sa = 1.5707963267948966;
  BlockSpec block = parse_block("g");
  int n_measured = 1;
  std::vector<Quantity> quantities{Quantity::Qfi, Quantity::RatioThermal};
  OptimizeOptions optimizer;

  /// Throws std::invalid_argument on empty or non-increasing grids and
  /// incompatible block/quantity combinations.
  void validate() const;
};

enum class RowStatus { Ok, Degenerate, ArgumentError, RankChange, NumericFailure };

std::string to_string(RowStatus s);

struct SweepRow {
  double nbar = 0.0;
  double gamma_tau = 0.0;
  std::vector<double> values;  // one per requested quantity, NaN unless status is Ok
  RowStatus status = RowStatus::Ok;
};

/// Evaluates one grid point; failures are captured in the row status.
SweepRow evaluate_point(const SweepConfig& config, double nbar, double gamma_tau);

/// Serial reference: rows ordered by (nbar index, gamma_tau index).
std::vector<SweepRow> run_sweep_serial(const SweepConfig& config);

/// OpenMP evaluation over grid points; same ordering and values as the
/// serial path. threads <= 0 uses the OpenMP default.
std::vector<SweepRow> run_sweep(const SweepConfig& config, int threads = 0);

/// n values from start to stop inclusive, linear or logarithmic.
std::vector<double> make_grid(double start, double stop, int count, bool log_spaced);

/// Default grids: 41 log-spaced points each.
std::vector<double> default_nbar_grid();
std::vector<double> default_gamma_tau_grid();

}  // namespace collide
