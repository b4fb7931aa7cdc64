#include "subseries/thinning.hpp"

#include <cmath>
#include <stdexcept>

#include "subseries/errors.hpp"
#include "subseries/format.hpp"

namespace subseries {

std::string ThinningResult::as_list_spec() const {
  std::string out = "list:[";
  for (std::size_t i = 0; i < chosen_indices.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(chosen_indices[i]);
  }
  return out + "]";
}

ThinningResult greedy_thin(const MonotoneSeries& src, double target, double epsilon, Index max_scan) {
  if (!(target > 0.0) || !std::isfinite(target)) throw std::domain_error("greedy_thin: target must be positive");
  if (!(epsilon > 0.0)) throw std::domain_error("greedy_thin: epsilon must be positive");
  if (max_scan < 1) throw std::domain_error("greedy_thin: max_scan must be >= 1");
  if (const double last = src.term(max_scan); !(last < epsilon))
    throw PreconditionError("a_" + std::to_string(max_scan) + " = " + shortest(last) +
                                " is not below epsilon; the scan cannot get within epsilon of the target",
                            max_scan);

  ThinningResult r;
  r.target = target;
  Compensated acc;
  for (Index n = 1; n <= max_scan; ++n) {
    r.terms_scanned = n;
    const double a = src(n);
    Compensated trial = acc;
    trial.add(a);
    if (trial.value() <= target) {
      acc = trial;
      r.chosen_indices.push_back(n);
      if (target - acc.value() < epsilon) break;
    }
  }
  r.achieved_sum = acc.value();
  r.residual = target - r.achieved_sum;
  r.reached = r.residual < epsilon;
  return r;
}

}  // namespace subseries
