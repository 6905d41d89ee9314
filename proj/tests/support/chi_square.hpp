#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "cryoqaoa/ising.hpp"

namespace cryoqaoa::testing {

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 0.0;
  bool impossible_outcome = false;  // a draw landed on a zero-probability state
};

// Pearson goodness of fit of `draws` against `probabilities` (indexed by
// basis state). States with expected count below 5 are pooled into one bin.
inline ChiSquareResult chi_square(const std::vector<BitString>& draws,
                                  const std::vector<double>& probabilities) {
  std::map<std::uint64_t, std::uint64_t> observed;
  for (const auto& z : draws) ++observed[z.to_index()];
  const double t = static_cast<double>(draws.size());

  ChiSquareResult r;
  double pooled_expected = 0.0;
  double pooled_observed = 0.0;
  int bins = 0;
  for (std::uint64_t k = 0; k < probabilities.size(); ++k) {
    const double expected = t * probabilities[k];
    const double seen = observed.count(k) ? static_cast<double>(observed[k]) : 0.0;
    if (probabilities[k] == 0.0 && seen > 0.0) r.impossible_outcome = true;
    if (expected < 5.0) {
      pooled_expected += expected;
      pooled_observed += seen;
      continue;
    }
    r.statistic += (seen - expected) * (seen - expected) / expected;
    ++bins;
  }
  if (pooled_expected >= 5.0) {
    r.statistic += (pooled_observed - pooled_expected) * (pooled_observed - pooled_expected) /
                   pooled_expected;
    ++bins;
  }
  r.dof = bins - 1;
  if (r.dof < 1) {
    r.p_value = 1.0;
    return r;
  }
  boost::math::chi_squared dist(r.dof);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

}  // namespace cryoqaoa::testing
