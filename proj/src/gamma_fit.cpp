#include "kiang/gamma_fit.hpp"

#include "kiang/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace kiang {

double gamma_pdf(double x, double alpha) {
  if (!(alpha > 0) || !std::isfinite(alpha))
    throw DomainError("gamma_pdf requires alpha > 0");
  if (!(x >= 0))
    throw DomainError("gamma_pdf requires x >= 0");
  if (x == 0) {
    if (alpha > 1)
      return 0;
    if (alpha == 1)
      return 1;
    return std::numeric_limits<double>::infinity();
  }
  const double log_pdf = alpha * std::log(alpha) - log_gamma(alpha) +
                         (alpha - 1) * std::log(x) - alpha * x;
  return std::exp(log_pdf);
}

double gamma_cdf(double x, double alpha) {
  if (!(alpha > 0))
    throw DomainError("gamma_cdf requires alpha > 0");
  if (x <= 0)
    return 0;
  return gamma_p(alpha, alpha * x);
}

double kiang_cdf(double x) {
  if (x <= 0)
    return 0;
  return -std::expm1(-2 * x) - 2 * x * std::exp(-2 * x);
}

double ks_distance(std::span<const double> sample,
                   const std::function<double(double)> &cdf) {
  if (sample.empty())
    throw EmptySampleError("KS distance of an empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double worst = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double below = static_cast<double>(i) / n;
    const double above = static_cast<double>(i + 1) / n;
    // Ties: only the last of a run of equal values sets the upper step.
    if (i + 1 == sorted.size() || sorted[i + 1] != sorted[i])
      worst = std::max(worst, above - f);
    if (i == 0 || sorted[i - 1] != sorted[i])
      worst = std::max(worst, f - below);
  }
  return worst;
}

std::string to_string(FitMethod m) {
  return m == FitMethod::least_squares ? "least_squares" : "mle";
}

double GammaFitResult::abs_dev_from_2() const { return std::abs(2.0 - alpha); }

std::string to_string(BinModel m) {
  return m == BinModel::average ? "average" : "midpoint";
}

double least_squares_objective(const Histogram &hist, double alpha,
                               BinModel model) {
  double total = 0;
  if (model == BinModel::midpoint) {
    for (std::size_t i = 0; i < hist.bins(); ++i) {
      const double r = hist.densities[i] - gamma_pdf(hist.midpoint(i), alpha);
      total += r * r;
    }
    return total;
  }
  double left_cdf = gamma_cdf(hist.bin_edges[0], alpha);
  for (std::size_t i = 0; i < hist.bins(); ++i) {
    const double right_cdf = gamma_cdf(hist.bin_edges[i + 1], alpha);
    const double r =
        hist.densities[i] - (right_cdf - left_cdf) / hist.bin_width(i);
    total += r * r;
    left_cdf = right_cdf;
  }
  return total;
}

GammaFitResult fit_alpha_least_squares(const Histogram &hist, BinModel model) {
  if (hist.non_empty_bins() < 5)
    throw DegenerateHistogramError(
        "least-squares fit needs at least 5 non-empty bins, got " +
        std::to_string(hist.non_empty_bins()));

  const auto objective = [&hist, model](double a) {
    return least_squares_objective(hist, a, model);
  };

  constexpr double kScanStep = 0.05;
  const auto n_grid = static_cast<std::size_t>(
      std::llround((kAlphaUpper - kAlphaLower) / kScanStep));
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= n_grid; ++i) {
    const double v = objective(kAlphaLower + kScanStep * static_cast<double>(i));
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  if (best == 0 || best == n_grid)
    throw NoInteriorMinimumError(
        "least-squares objective is minimized at the alpha bound " +
        std::to_string(kAlphaLower + kScanStep * static_cast<double>(best)));

  // Golden-section refinement inside the bracketing grid cells.
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double lo = kAlphaLower + kScanStep * static_cast<double>(best - 1);
  double hi = kAlphaLower + kScanStep * static_cast<double>(best + 1);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > 1e-7) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    }
  }

  GammaFitResult r;
  r.method = FitMethod::least_squares;
  r.bin_model = model;
  r.alpha = 0.5 * (lo + hi);
  r.sum_sq_residual = objective(r.alpha);
  r.n_samples = hist.n_total;

  // Gauss-Newton standard error: var = s^2 / (J^T J), with J^T J estimated
  // as half the objective's curvature.
  const double h = 1e-3 * std::max(1.0, r.alpha);
  const double curvature =
      (objective(r.alpha + h) - 2 * r.sum_sq_residual + objective(r.alpha - h)) /
      (h * h);
  if (!(curvature > 0))
    throw NumericalError("least-squares objective has no positive curvature "
                         "at the minimum");
  const double dof = static_cast<double>(hist.bins()) - 1;
  const double residual_var = r.sum_sq_residual / dof;
  r.std_error = std::max(std::sqrt(2 * residual_var / curvature),
                         std::numeric_limits<double>::min());
  return r;
}

GammaFitResult fit_alpha_mle(const CellSample &sample) {
  return fit_alpha_mle(sample.normalized);
}

GammaFitResult fit_alpha_mle(std::span<const double> normalized) {
  if (normalized.empty())
    throw EmptySampleError("MLE fit of an empty sample");
  long double sum = 0, sum_log = 0;
  for (double x : normalized) {
    if (!(x > 0))
      throw PreconditionError("MLE fit requires strictly positive values");
    sum += x;
    sum_log += std::log(x);
  }
  const auto n = static_cast<long double>(normalized.size());
  const double c = static_cast<double>(sum_log / n - sum / n);

  const auto score = [c](double a) {
    return std::log(a) + 1 - digamma(a) + c;
  };
  double lo = kAlphaLower, hi = kAlphaUpper;
  const double s_lo = score(lo);
  const double s_hi = score(hi);
  if (s_hi > 0)
    throw NoRootError("MLE score positive at alpha = 10: sample variance too "
                      "small (degenerate sample)");
  if (s_lo < 0)
    throw NoRootError("MLE score negative at alpha = 0.5: sample too "
                      "dispersed for the search bracket");

  // Score is strictly decreasing in alpha.
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    if (score(mid) > 0)
      lo = mid;
    else
      hi = mid;
  }

  GammaFitResult r;
  r.method = FitMethod::mle;
  r.alpha = 0.5 * (lo + hi);
  r.n_samples = normalized.size();
  const double info = trigamma(r.alpha) - 1 / r.alpha;
  r.std_error =
      1 / std::sqrt(static_cast<double>(normalized.size()) * info);
  r.sum_sq_residual = least_squares_objective(
      histogram(normalized, kDefaultBinWidth, kDefaultRangeMax), r.alpha);
  return r;
}

} // namespace kiang
