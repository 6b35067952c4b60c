#ifndef KIANG_REPORT_HPP
#define KIANG_REPORT_HPP

#include "kiang/analysis.hpp"
#include "kiang/block_sampler.hpp"
#include "kiang/digit_positions.hpp"
#include "kiang/hardcore.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kiang {

using Json = nlohmann::ordered_json;

inline constexpr const char *kToolName = "kiang";
inline constexpr const char *kToolVersion = KIANG_VERSION;

enum class Routine { blocks, digit_positions };
std::string to_string(Routine r);

struct AnalysisReport {
  std::string source_label;
  Routine routine = Routine::blocks;
  Json config = Json::object();   // every parameter needed for a re-run
  Json details = Json::object();  // routine-specific counters
  std::optional<std::uint64_t> seed;
  std::size_t n_digits = 0;
  SampleAnalysis analysis;
  double runtime_seconds = 0;

  /// |2 - alpha| of the least-squares fit.
  double abs_dev_from_2() const;
};

Json to_json(const GammaFitResult &fit);
Json to_json(const Histogram &h);
Json to_json(const AnalysisReport &report);
Json to_json(const QuadraticSensitivity &q);

/// Routine 1 end to end. Extra key/values land in the config echo.
AnalysisReport blocks_report(const DigitStream &stream,
                             const BlockSamplerConfig &config,
                             const Json &source_config = Json::object());

/// Routine 2 for one digit.
AnalysisReport digit_report(const DigitStream &stream, int digit,
                            std::size_t budget,
                            const Json &source_config = Json::object());
AnalysisReport digit_report(const DigitStream &stream,
                            const DigitPositions &positions,
                            std::size_t budget, const Json &source_config);

/// Per-digit reports plus the |2 - alpha| summary row and <alpha>.
struct DigitSummary {
  std::vector<AnalysisReport> reports;
  std::vector<std::pair<int, std::string>> failures; // digit, reason
};
DigitSummary all_digit_reports(const DigitStream &stream, std::size_t budget,
                               const Json &source_config = Json::object());
Json to_json(const DigitSummary &summary);
std::string summary_csv(const DigitSummary &summary);

std::string sweep_csv(std::span<const SweepPoint> sweep);

/// Pretty-printed JSON terminated by a newline.
std::string dump(const Json &j);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path &path,
                       std::string_view content);

/// `base` with its extension replaced by `suffix` (e.g. ".hist.csv").
std::filesystem::path sibling_path(const std::filesystem::path &base,
                                   std::string_view suffix);

} // namespace kiang

#endif // KIANG_REPORT_HPP
