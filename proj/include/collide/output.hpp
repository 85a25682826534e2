#pragma once

#include <span>
#include <string>

#include "collide/config.hpp"

namespace collide {

/// CSV: header `nbar,gamma_tau,<quantity...>,status`, 12 significant digits, LF.
std::string format_csv(std::span<const SweepRow> rows, std::span<const Quantity> quantities);

/// JSON array of row objects using the CSV field names; NaN becomes null.
std::string format_json(std::span<const SweepRow> rows, std::span<const Quantity> quantities);

/// Writes rows to `path` ("-" for stdout). Throws std::runtime_error if the
/// file cannot be written.
void write_output(std::span<const SweepRow> rows, std::span<const Quantity> quantities,
                  OutputFormat format, const std::string& path);

}  // namespace collide
