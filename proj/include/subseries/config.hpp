#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>

#include <json.hpp>

namespace subseries {

// Evaluation limits shared by every criterion.
//
//   monotone_horizon  spot-check horizon for a_n >= a_{n+1} >= 0
//   default_K         number of blocks used when a command gets no --K
//   max_terms         cap on term evaluations for one block-aligned sum
//   poly_horizon      horizon_n used to verify a polynomial-sparsity envelope
//   rel_tol           relative slack used when ordering computed sums
struct Config {
  std::int64_t monotone_horizon = 100'000;
  std::int64_t default_K = 200;
  std::int64_t max_terms = 100'000'000;
  std::int64_t poly_horizon = 100'000;
  double rel_tol = 1e-12;

  static Config from_json(const nlohmann::json& j);
  static Config load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

// a <= b up to `tol` relative to the larger magnitude.
inline bool leq_rel(double a, double b, double tol) {
  if (a <= b) return true;
  const double scale = std::max(std::abs(a), std::abs(b));
  return a - b <= tol * scale;
}

}  // namespace subseries
