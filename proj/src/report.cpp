#include "kiang/report.hpp"

#include "kiang/errors.hpp"
#include "kiang/random.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>

namespace kiang {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

std::string to_string(Routine r) {
  return r == Routine::blocks ? "blocks" : "digit_positions";
}

double AnalysisReport::abs_dev_from_2() const {
  return analysis.least_squares.abs_dev_from_2();
}

Json to_json(const GammaFitResult &fit) {
  Json j;
  j["alpha"] = fit.alpha;
  j["std_error"] = fit.std_error;
  j["method"] = to_string(fit.method);
  j["n_samples"] = fit.n_samples;
  j["abs_dev_from_2"] = fit.abs_dev_from_2();
  j["residual"] = fit.sum_sq_residual;
  j["bin_model"] = to_string(fit.bin_model);
  return j;
}

Json to_json(const Histogram &h) {
  Json j;
  j["bin_edges"] = h.bin_edges;
  j["counts"] = h.counts;
  j["densities"] = h.densities;
  j["overflow"] = h.overflow;
  j["n_total"] = h.n_total;
  return j;
}

Json to_json(const AnalysisReport &r) {
  Json j;
  j["tool"] = kToolName;
  j["tool_version"] = kToolVersion;
  j["source_label"] = r.source_label;
  j["routine"] = to_string(r.routine);
  j["config"] = r.config;
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  j["rng_algorithm"] = kRngAlgorithm;
  j["n_digits"] = r.n_digits;
  j["n_cells"] = r.analysis.n_cells;
  j["details"] = r.details;
  j["histogram"] = to_json(r.analysis.histogram);
  j["ks_distance"] = r.analysis.ks_distance;
  j["fits"] = {{"least_squares", to_json(r.analysis.least_squares)},
               {"mle", to_json(r.analysis.mle)}};
  j["alpha"] = r.analysis.least_squares.alpha;
  j["abs_dev_from_2"] = r.abs_dev_from_2();
  j["estimators_agree"] = r.analysis.estimators_agree();
  j["runtime_seconds"] = r.runtime_seconds;
  return j;
}

Json to_json(const QuadraticSensitivity &q) {
  Json j;
  j["model"] = "alpha - 2 = a * l_star + b * l_star^2";
  j["a"] = q.a;
  j["b"] = q.b;
  j["residual_rms"] = q.residual_rms;
  return j;
}

AnalysisReport blocks_report(const DigitStream &stream,
                             const BlockSamplerConfig &config,
                             const Json &source_config) {
  const auto start = Clock::now();
  const Routine1Result r1 = run_routine1(stream, config);

  AnalysisReport report;
  report.source_label = stream.source_label;
  report.routine = Routine::blocks;
  report.config = source_config;
  report.config["m"] = config.lattice_length;
  report.config["rho"] = config.density;
  report.config["seed"] = config.seed;
  report.config["budget"] =
      config.digit_budget == 0 ? stream.count() : config.digit_budget;
  report.config["block_lengths"] = to_string(config.block_lengths);
  report.config["bin_width"] = kDefaultBinWidth;
  report.config["range_max"] = kDefaultRangeMax;
  report.seed = config.seed;
  report.n_digits = report.config["budget"].get<std::size_t>();
  report.details["target_nuclei"] = config.target_nuclei();
  report.details["realizations"] = r1.realizations;
  report.details["digits_consumed"] = r1.digits_consumed;
  report.details["digits_discarded"] = r1.digits_discarded;
  report.details["accepted_blocks"] = r1.accepted_blocks;
  report.details["rejected_blocks"] = r1.rejected_blocks;
  report.analysis = analyze_sample(r1.sample);
  report.runtime_seconds = seconds_since(start);
  return report;
}

AnalysisReport digit_report(const DigitStream &stream,
                            const DigitPositions &positions,
                            std::size_t budget, const Json &source_config) {
  const auto start = Clock::now();
  AnalysisReport report;
  report.source_label = stream.source_label;
  report.routine = Routine::digit_positions;
  report.config = source_config;
  report.config["digit"] = positions.digit;
  report.config["budget"] = budget == 0 ? stream.count() : budget;
  report.config["bin_width"] = kDefaultBinWidth;
  report.config["range_max"] = kDefaultRangeMax;
  if (source_config.contains("stream_seed"))
    report.seed = source_config["stream_seed"].get<std::uint64_t>();
  report.n_digits = report.config["budget"].get<std::size_t>();
  report.details["target_digit"] = positions.digit;
  report.details["occurrences"] = positions.occurrences;
  report.details["first_occurrence"] = positions.first_occurrence;
  report.details["lattice_length"] = positions.nuclei.lattice_length();
  report.analysis = analyze_sample(cell_sizes(positions.nuclei));
  report.runtime_seconds = seconds_since(start);
  return report;
}

AnalysisReport digit_report(const DigitStream &stream, int digit,
                            std::size_t budget, const Json &source_config) {
  return digit_report(stream, digit_positions(stream, digit, budget), budget,
                      source_config);
}

DigitSummary all_digit_reports(const DigitStream &stream, std::size_t budget,
                               const Json &source_config) {
  const auto digits = budget == 0 ? stream.view() : stream.prefix(budget);
  const auto raw = all_occurrences(digits);
  DigitSummary out;
  for (int d = 0; d < 10; ++d) {
    try {
      out.reports.push_back(digit_report(
          stream, trim_positions(d, raw[static_cast<std::size_t>(d)]), budget,
          source_config));
    } catch (const Error &e) {
      out.failures.emplace_back(d, e.what());
    }
  }
  return out;
}

Json to_json(const DigitSummary &summary) {
  Json j;
  j["tool"] = kToolName;
  j["tool_version"] = kToolVersion;
  Json reports = Json::array();
  Json row = Json::array();
  double alpha_sum = 0;
  for (const auto &r : summary.reports) {
    reports.push_back(to_json(r));
    row.push_back({{"digit", r.details.at("target_digit")},
                   {"alpha", r.analysis.least_squares.alpha},
                   {"alpha_mle", r.analysis.mle.alpha},
                   {"abs_dev_from_2", r.abs_dev_from_2()}});
    alpha_sum += r.analysis.least_squares.alpha;
  }
  j["reports"] = reports;
  j["summary"] = row;
  Json failures = Json::array();
  for (const auto &[d, why] : summary.failures)
    failures.push_back({{"digit", d}, {"error", why}});
  j["failures"] = failures;
  if (summary.reports.empty()) {
    j["mean_alpha"] = nullptr;
    j["mean_abs_dev_from_2"] = nullptr;
  } else {
    const double mean = alpha_sum / static_cast<double>(summary.reports.size());
    j["mean_alpha"] = mean;
    j["mean_abs_dev_from_2"] = std::abs(2.0 - mean);
  }
  return j;
}

std::string summary_csv(const DigitSummary &summary) {
  std::ostringstream os;
  os << "digit,alpha_ls,alpha_mle,abs_dev_from_2,n_cells\n";
  os << std::setprecision(10);
  for (const auto &r : summary.reports)
    os << r.details.at("target_digit").get<int>() << ','
       << r.analysis.least_squares.alpha << ',' << r.analysis.mle.alpha << ','
       << r.abs_dev_from_2() << ',' << r.analysis.n_cells << '\n';
  return os.str();
}

std::string sweep_csv(std::span<const SweepPoint> sweep) {
  std::ostringstream os;
  os << "l_star,rho_lstar,alpha_mean,alpha_sd,n_replicates\n";
  os << std::setprecision(10);
  for (const auto &p : sweep)
    os << p.l_star << ',' << p.rho_lstar << ',' << p.alpha_mean << ','
       << p.alpha_sd << ',' << p.replicates << '\n';
  return os.str();
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

void write_file_atomic(const std::filesystem::path &path,
                       std::string_view content) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw IoError(path.string(), "cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out)
      throw IoError(path.string(), "write failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError(path.string(), "cannot rename temporary file into place");
  }
}

std::filesystem::path sibling_path(const std::filesystem::path &base,
                                   std::string_view suffix) {
  std::filesystem::path out = base;
  out.replace_extension();
  out += std::string(suffix);
  return out;
}

} // namespace kiang
