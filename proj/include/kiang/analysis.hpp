#ifndef KIANG_ANALYSIS_HPP
#define KIANG_ANALYSIS_HPP

#include "kiang/gamma_fit.hpp"
#include "kiang/tessellation.hpp"

namespace kiang {

/// Everything derived from one pooled cell sample: histogram, both fits and
/// the KS distance against the alpha = 2 law.
struct SampleAnalysis {
  std::size_t n_cells = 0;
  Histogram histogram;
  GammaFitResult least_squares;
  GammaFitResult mle;
  double ks_distance = 0;

  double joint_std_error() const;
  /// |alpha_ls - alpha_mle| <= 2 * joint_std_error()
  bool estimators_agree() const;
};

SampleAnalysis analyze_sample(const CellSample &sample,
                              double bin_width = kDefaultBinWidth,
                              double range_max = kDefaultRangeMax);

} // namespace kiang

#endif // KIANG_ANALYSIS_HPP
