#pragma once

#include <string>
#include <vector>

#include "subseries/series.hpp"

namespace subseries {

struct ThinningResult {
  std::vector<Index> chosen_indices;
  double achieved_sum = 0.0;
  double target = 0.0;
  double residual = 0.0;  // target - achieved_sum, never negative
  Index terms_scanned = 0;
  bool reached = false;   // residual < epsilon

  // The chosen indices as a `list:[...]` subsequence spec.
  std::string as_list_spec() const;
};

// Greedy thinning toward `target`: scan n = 1, 2, ... and keep a_n whenever the
// running sum stays <= target; stop once the residual drops below epsilon or
// max_scan terms were seen. Refuses (PreconditionError) unless
// a_{max_scan} < epsilon.
ThinningResult greedy_thin(const MonotoneSeries& src, double target, double epsilon, Index max_scan);

}  // namespace subseries
