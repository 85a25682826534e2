#pragma once

#include <string>
#include <vector>

namespace collide {

/// One reproduced scalar result with its acceptance window.
struct ClaimCheck {
  std::string id;        // e.g. "C6b"
  std::string name;
  std::string citation;  // what published result this reproduces
  double expected = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string rule;      // "abs", "rel", ">=", "<="
  bool passed = false;
};

struct ClaimOptions {
  int threads = 1;
  unsigned long long seed = 0;
};

/// Number of top-level claims (C1..C9).
inline constexpr int kClaimCount = 9;

/// Runs claim `number` (1-based) and returns its checks.
std::vector<ClaimCheck> run_claim(int number, const ClaimOptions& options = {});

/// Runs every claim in order.
std::vector<ClaimCheck> claim_suite(const ClaimOptions& options = {});

/// Fixed-format report, one line per check plus a summary line.
std::string format_report(const std::vector<ClaimCheck>& checks);

bool all_passed(const std::vector<ClaimCheck>& checks);

}  // namespace collide
