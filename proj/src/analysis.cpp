#include "kiang/analysis.hpp"

#include "kiang/errors.hpp"

#include <cmath>

namespace kiang {

double SampleAnalysis::joint_std_error() const {
  return std::hypot(least_squares.std_error, mle.std_error);
}

bool SampleAnalysis::estimators_agree() const {
  return std::abs(least_squares.alpha - mle.alpha) <= 2 * joint_std_error();
}

SampleAnalysis analyze_sample(const CellSample &sample, double bin_width,
                              double range_max) {
  if (sample.empty())
    throw EmptySampleError("no cells to analyze");
  SampleAnalysis a;
  a.n_cells = sample.size();
  a.histogram = histogram(sample, bin_width, range_max);
  a.least_squares = fit_alpha_least_squares(a.histogram);
  a.mle = fit_alpha_mle(sample);
  a.ks_distance = ks_distance(sample.normalized, kiang_cdf);
  return a;
}

} // namespace kiang
