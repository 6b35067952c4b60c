// kiang: randomness testing of digit sequences through 1D Voronoi cell sizes.

#include "kiang/analysis.hpp"
#include "kiang/block_sampler.hpp"
#include "kiang/digit_positions.hpp"
#include "kiang/digit_sources.hpp"
#include "kiang/errors.hpp"
#include "kiang/hardcore.hpp"
#include "kiang/random.hpp"
#include "kiang/report.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace kiang;

namespace {

struct SourceOptions {
  std::string digits_file;
  std::string format = "plain";
  std::string constant;
  std::size_t n = 0;
};

void add_source_options(CLI::App *cmd, SourceOptions &o, bool need_n) {
  auto *file = cmd->add_option("--digits", o.digits_file, "Digit file");
  auto *constant = cmd->add_option("--constant", o.constant,
                                   "Built-in constant: pi, e or phi")
                       ->check(CLI::IsMember({"pi", "e", "phi"}));
  file->excludes(constant);
  cmd->add_option("--format", o.format, "Digit file format")
      ->check(CLI::IsMember({"plain", "decimal-literal"}));
  if (need_n)
    cmd->add_option("--n", o.n,
                    "Digits to generate with --constant (default: budget)");
}

DigitStream load_source(const SourceOptions &o, std::size_t fallback_n) {
  if (!o.digits_file.empty())
    return ingest_digit_file(o.digits_file, parse_digit_format(o.format));
  if (!o.constant.empty()) {
    const std::size_t n = o.n != 0 ? o.n : fallback_n;
    if (n == 0)
      throw UsageError("--constant needs --n or --budget");
    return generate_digits(parse_constant(o.constant), n);
  }
  throw UsageError("one of --digits or --constant is required");
}

Json source_json(const SourceOptions &o) {
  Json j;
  if (!o.digits_file.empty()) {
    j["digits_file"] = o.digits_file;
    j["format"] = o.format;
  } else {
    j["constant"] = o.constant;
  }
  return j;
}

void log_line(const std::string &msg) { std::cerr << "kiang: " << msg << '\n'; }

std::string fmt_fixed(double v, int prec = 5) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

void emit_blocks_report(const AnalysisReport &report, const fs::path &out) {
  write_file_atomic(out, dump(to_json(report)));
  const fs::path hist = sibling_path(out, ".hist.csv");
  write_file_atomic(hist, histogram_csv(report.analysis.histogram));
  log_line(report.source_label + ": alpha = " +
           fmt_fixed(report.analysis.least_squares.alpha) + " (mle " +
           fmt_fixed(report.analysis.mle.alpha) + "), |2 - alpha| = " +
           fmt_fixed(report.abs_dev_from_2()) + ", " +
           std::to_string(report.analysis.n_cells) + " cells -> " +
           out.string());
}

void emit_digit_reports(const DigitStream &stream, const std::string &digit,
                        std::size_t budget, const Json &source,
                        const fs::path &out) {
  if (digit == "all") {
    const DigitSummary summary = all_digit_reports(stream, budget, source);
    write_file_atomic(out, dump(to_json(summary)));
    write_file_atomic(sibling_path(out, ".summary.csv"), summary_csv(summary));
    for (const auto &r : summary.reports) {
      const int d = r.details.at("target_digit").get<int>();
      write_file_atomic(
          sibling_path(out, ".d" + std::to_string(d) + ".hist.csv"),
          histogram_csv(r.analysis.histogram));
      log_line("digit " + std::to_string(d) + ": alpha = " +
               fmt_fixed(r.analysis.least_squares.alpha) +
               ", |2 - alpha| = " + fmt_fixed(r.abs_dev_from_2()));
    }
    for (const auto &[d, why] : summary.failures)
      log_line("digit " + std::to_string(d) + ": " + why);
    if (summary.reports.empty())
      throw DataError("none of the 10 digits could be analyzed");
    return;
  }
  const int d = std::stoi(digit);
  const AnalysisReport report = digit_report(stream, d, budget, source);
  write_file_atomic(out, dump(to_json(report)));
  write_file_atomic(sibling_path(out, ".hist.csv"),
                    histogram_csv(report.analysis.histogram));
  log_line(stream.source_label + " digit " + digit + ": alpha = " +
           fmt_fixed(report.analysis.least_squares.alpha) +
           ", |2 - alpha| = " + fmt_fixed(report.abs_dev_from_2()));
}

std::vector<Position> parse_lstar_list(const std::string &text) {
  std::vector<Position> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception &) {
      throw UsageError("bad --lstar entry '" + item + "'");
    }
    if (used != item.size() || v < 0)
      throw UsageError("bad --lstar entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty())
    throw UsageError("--lstar needs at least one value");
  return out;
}

void run_sweep(Position m, double rho, const std::vector<Position> &grid,
               std::size_t replicates, std::uint64_t seed,
               const fs::path &csv_out, const fs::path &fit_out) {
  const auto sweep = sweep_alpha_vs_lstar(m, rho, grid, replicates, seed);
  write_file_atomic(csv_out, sweep_csv(sweep));
  Json fit;
  fit["tool"] = kToolName;
  fit["tool_version"] = kToolVersion;
  fit["config"] = {{"m", m},
                   {"rho", rho},
                   {"l_star", grid},
                   {"replicates", replicates},
                   {"seed", seed}};
  try {
    fit["quadratic_fit"] = to_json(fit_quadratic_sensitivity(sweep));
  } catch (const Error &e) {
    fit["quadratic_fit"] = nullptr;
    fit["quadratic_fit_error"] = e.what();
  }
  fit["reference"] = {{"a", 0.0047}, {"b", 1.042e-3}};
  write_file_atomic(fit_out, dump(fit));
  for (const auto &p : sweep)
    log_line("l* = " + std::to_string(p.l_star) +
             ": alpha = " + fmt_fixed(p.alpha_mean) + " +- " +
             fmt_fixed(p.alpha_sd));
}

void add_config_option(CLI::App *cmd, std::string &path) {
  cmd->add_option("--config", path,
                  "key = value file of option defaults (e.g. m = 1000000)");
}

/// Options read from a key = value file, as extra arguments for `cmd`.
/// Options already given on the command line win.
std::vector<std::string> config_arguments(const CLI::App *cmd,
                                          const std::string &path) {
  if (!fs::exists(path))
    throw IoError(path, "config file not found");
  std::vector<std::string> out;
  for (const auto &item : CLI::ConfigINI().from_file(path)) {
    if (!item.parents.empty() || item.name == "config")
      throw UsageError(path + ": unsupported key '" + item.fullname() + "'");
    const CLI::Option *opt = cmd->get_option_no_throw("--" + item.name);
    if (opt == nullptr)
      throw UsageError(path + ": unknown key '" + item.name + "' for " +
                       cmd->get_name());
    if (opt->count() > 0)
      continue;
    out.push_back("--" + item.name);
    out.insert(out.end(), item.inputs.begin(), item.inputs.end());
  }
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Voronoi cell-size randomness tests for digit sequences"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string conf_path; // only one subcommand runs
  // gen-digits
  std::string gen_constant;
  std::size_t gen_n = 0;
  std::string gen_out;
  std::size_t gen_wrap = 80;
  auto *gen = app.add_subcommand("gen-digits", "Write fractional digits of a constant");
  gen->add_option("--constant", gen_constant, "pi, e or phi")
      ->required()
      ->check(CLI::IsMember({"pi", "e", "phi"}));
  gen->add_option("--n", gen_n, "Number of digits")->required();
  gen->add_option("--out", gen_out, "Output file")->required();
  gen->add_option("--wrap", gen_wrap, "Line width, 0 for a single line");

  // analyze-blocks
  SourceOptions blk_src;
  BlockSamplerConfig blk_cfg;
  std::string blk_lengths = "drawn";
  std::string blk_out;
  auto *blk = app.add_subcommand("analyze-blocks", "Block-length sampler (routine 1)");
  add_config_option(blk, conf_path);
  add_source_options(blk, blk_src, true);
  blk->add_option("--m", blk_cfg.lattice_length, "Lattice length M")
      ->capture_default_str();
  blk->add_option("--rho", blk_cfg.density, "Target density N0/M")
      ->capture_default_str();
  blk->add_option("--budget", blk_cfg.digit_budget,
                  "Digits to consume (0 = whole stream)");
  blk->add_option("--seed", blk_cfg.seed, "Seed for the block-length draws");
  blk->add_option("--block-lengths", blk_lengths, "drawn or fixed")
      ->check(CLI::IsMember({"drawn", "fixed"}));
  blk->add_option("--out", blk_out, "Report JSON")->required();

  // analyze-digit
  SourceOptions dig_src;
  std::string dig_digit;
  std::size_t dig_budget = 0;
  std::string dig_out;
  auto *dig = app.add_subcommand("analyze-digit", "Digit-position routine (routine 2)");
  add_source_options(dig, dig_src, true);
  dig->add_option("--digit", dig_digit, "0..9 or all")
      ->required()
      ->check(CLI::IsMember({"0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "all"}));
  dig->add_option("--budget", dig_budget, "Digits to use (0 = whole stream)");
  dig->add_option("--out", dig_out, "Report JSON")->required();
  add_config_option(dig, conf_path);

  // baseline
  std::string base_mode;
  std::uint64_t base_seed = 0;
  std::size_t base_n = 1'600'000;
  std::size_t base_perms = 1000;
  std::size_t base_blocks = 1600;
  std::string base_routine = "blocks";
  std::string base_digit = "3";
  BlockSamplerConfig base_cfg;
  std::string base_lengths = "drawn";
  std::string base_export;
  std::string base_out;
  auto *base = app.add_subcommand("baseline", "Pseudo-random control streams");
  base->add_option("--mode", base_mode, "uniform or perm-blocks")
      ->required()
      ->check(CLI::IsMember({"uniform", "perm-blocks"}));
  base->add_option("--seed", base_seed,
                  "Stream seed; block draws use a derived sub-stream");
  base->add_option("--n", base_n, "Stream length for uniform mode")
      ->capture_default_str();
  base->add_option("--n-perms", base_perms, "Distinct permutations")
      ->capture_default_str();
  base->add_option("--n-blocks", base_blocks, "Shuffled orderings")
      ->capture_default_str();
  base->add_option("--routine", base_routine, "blocks or digit-positions")
      ->check(CLI::IsMember({"blocks", "digit-positions"}));
  base->add_option("--digit", base_digit, "Digit for routine 2 (0..9 or all)")
      ->check(CLI::IsMember({"0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "all"}));
  base->add_option("--m", base_cfg.lattice_length, "Lattice length M")
      ->capture_default_str();
  base->add_option("--rho", base_cfg.density, "Target density")
      ->capture_default_str();
  base->add_option("--budget", base_cfg.digit_budget, "Digits to consume (0 = all)");
  base->add_option("--block-lengths", base_lengths, "drawn or fixed")
      ->check(CLI::IsMember({"drawn", "fixed"}));
  base->add_option("--export-digits", base_export, "Also write the stream here");
  base->add_option("--out", base_out, "Report JSON")->required();
  add_config_option(base, conf_path);

  // hardcore-sweep
  Position hc_m = 10'000'000;
  double hc_rho = 1e-3;
  std::string hc_grid = "0,10,20,30,40,50,60";
  std::size_t hc_reps = 20;
  std::uint64_t hc_seed = 0;
  std::string hc_out;
  std::string hc_fit_out;
  auto *hc = app.add_subcommand("hardcore-sweep", "alpha versus exclusion distance");
  hc->add_option("--m", hc_m, "Lattice length")->capture_default_str();
  hc->add_option("--rho", hc_rho, "Density")->capture_default_str();
  hc->add_option("--lstar", hc_grid, "Comma-separated l* grid")
      ->capture_default_str();
  hc->add_option("--replicates", hc_reps, "Replicates per l*")
      ->capture_default_str();
  hc->add_option("--seed", hc_seed, "Master seed");
  hc->add_option("--out", hc_out, "Sweep CSV")->required();
  hc->add_option("--fit-out", hc_fit_out, "Quadratic fit JSON (default <out>.fit.json)");
  add_config_option(hc, conf_path);

  // reproduce-paper
  std::string rep_dir = "kiang-out";
  std::uint64_t rep_seed = 2013;
  auto *rep = app.add_subcommand("reproduce-paper",
                                 "Desk-scale runs of both routines on pi, e, phi and "
                                 "the baselines, plus the hard-core sweep");
  rep->add_option("--out-dir", rep_dir, "Output directory")->capture_default_str();
  rep->add_option("--seed", rep_seed, "Master seed")->capture_default_str();

  try {
    app.parse(argc, argv);
    for (auto *cmd : app.get_subcommands()) {
      const CLI::Option *conf = cmd->get_option_no_throw("--config");
      if (conf == nullptr || conf->count() == 0)
        continue;
      std::vector<std::string> args(argv + 1, argv + argc);
      const auto extra = config_arguments(cmd, conf->as<std::string>());
      args.insert(args.end(), extra.begin(), extra.end());
      std::reverse(args.begin(), args.end()); // CLI11 takes them reversed
      app.clear();
      app.parse(args);
    }
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const Error &e) {
    std::cerr << "kiang: error: " << e.what() << '\n';
    return e.exit_code();
  }

  try {
    if (*gen) {
      const DigitStream s = generate_digits(parse_constant(gen_constant), gen_n);
      write_file_atomic(gen_out, to_plain_text(s.digits, gen_wrap));
      log_line("wrote " + std::to_string(s.count()) + " digits of " +
               gen_constant + " to " + gen_out);
    } else if (*blk) {
      blk_cfg.block_lengths = parse_block_lengths(blk_lengths);
      const DigitStream s = load_source(blk_src, blk_cfg.digit_budget);
      emit_blocks_report(blocks_report(s, blk_cfg, source_json(blk_src)), blk_out);
    } else if (*dig) {
      const DigitStream s = load_source(dig_src, dig_budget);
      emit_digit_reports(s, dig_digit, dig_budget, source_json(dig_src), dig_out);
    } else if (*base) {
      const RngSpec spec{base_seed, kRngAlgorithm};
      const DigitStream s =
          base_mode == "uniform"
              ? uniform_digit_stream(spec, base_n)
              : permutation_block_stream(spec, base_perms, base_blocks);
      if (!base_export.empty())
        write_file_atomic(base_export, to_plain_text(s.digits));
      Json source = {{"baseline", base_mode}, {"stream_seed", base_seed}};
      if (base_mode == "uniform")
        source["n"] = base_n;
      else
        source.update({{"n_perms", base_perms},
                       {"n_blocks", base_blocks},
                       {"ordering", "independent shuffles of the permutation set"}});
      if (base_routine == "blocks") {
        // Same master seed for digits and draws would replay one engine.
        base_cfg.seed = substream_seed(base_seed, 1);
        base_cfg.block_lengths = parse_block_lengths(base_lengths);
        emit_blocks_report(blocks_report(s, base_cfg, source), base_out);
      } else {
        emit_digit_reports(s, base_digit, base_cfg.digit_budget, source, base_out);
      }
    } else if (*hc) {
      const fs::path out = hc_out;
      run_sweep(hc_m, hc_rho, parse_lstar_list(hc_grid), hc_reps, hc_seed, out,
                hc_fit_out.empty() ? sibling_path(out, ".fit.json")
                                   : fs::path(hc_fit_out));
    } else if (*rep) {
      const fs::path dir = rep_dir;
      fs::create_directories(dir);
      constexpr std::size_t kBlocksDigits = 1'600'000;
      constexpr std::size_t kPositionsDigits = 4'000'000;
      BlockSamplerConfig cfg;
      cfg.lattice_length = 1'000'000;
      cfg.density = 1e-3;
      cfg.seed = substream_seed(rep_seed, 1);
      cfg.digit_budget = kBlocksDigits;

      log_line("blocks routine (" + std::to_string(kBlocksDigits) +
               " digits)");
      const DigitStream rnd = uniform_digit_stream({rep_seed}, kPositionsDigits);
      emit_blocks_report(blocks_report(rnd, cfg, {{"baseline", "uniform"}, {"stream_seed", rep_seed}}),
                         dir / "blocks_rnd.json");
      std::vector<DigitStream> constants;
      for (auto c : {Constant::pi, Constant::e, Constant::phi}) {
        constants.push_back(generate_digits(c, kPositionsDigits));
        emit_blocks_report(
            blocks_report(constants.back(), cfg, {{"constant", to_string(c)}}),
            dir / ("blocks_" + to_string(c) + ".json"));
      }

      log_line("digit-positions routine (" + std::to_string(kPositionsDigits) +
               " digits)");
      emit_digit_reports(rnd, "3", kPositionsDigits, {{"baseline", "uniform"}, {"stream_seed", rep_seed}},
                         dir / "positions_rnd_d3.json");
      const int positions_digit[] = {3, 2, 1};
      for (std::size_t i = 0; i < constants.size(); ++i)
        emit_digit_reports(
            constants[i], std::to_string(positions_digit[i]), kPositionsDigits,
            {{"constant", constants[i].source_label}},
            dir / ("positions_" + constants[i].source_label + "_d" +
                   std::to_string(positions_digit[i]) + ".json"));

      log_line("permutation-block baseline (1000 x 1600)");
      const DigitStream perm = permutation_block_stream({rep_seed}, 1000, 1600);
      BlockSamplerConfig perm_cfg = cfg;
      perm_cfg.digit_budget = 0;
      emit_blocks_report(
          blocks_report(perm, perm_cfg,
                        {{"baseline", "perm-blocks"}, {"stream_seed", rep_seed},
                         {"n_perms", 1000}, {"n_blocks", 1600}}),
          dir / "blocks_perm.json");

      log_line("hard-core sweep");
      run_sweep(10'000'000, 1e-3, {0, 10, 20, 30, 40, 50, 60}, 20, rep_seed,
                dir / "hardcore_sweep.csv", dir / "hardcore_sweep.fit.json");
    }
  } catch (const Error &e) {
    std::cerr << "kiang: error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const fs::filesystem_error &e) {
    std::cerr << "kiang: error: " << e.what() << '\n';
    return static_cast<int>(ErrorCategory::data);
  } catch (const std::exception &e) {
    std::cerr << "kiang: error: " << e.what() << '\n';
    return static_cast<int>(ErrorCategory::data);
  }
  return 0;
}
