#include "doctest.h"

#include "kiang/errors.hpp"
#include "kiang/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace kiang;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

} // namespace

TEST_CASE("abs_dev_from_2") {
  GammaFitResult f;
  f.alpha = 2.25;
  CHECK(f.abs_dev_from_2() == 0.25);
  f.alpha = 1.5;
  CHECK(f.abs_dev_from_2() == 0.5);
  CHECK(to_json(f)["abs_dev_from_2"].get<double>() == 0.5);
}

TEST_CASE("blocks report carries the re-run parameters") {
  const auto stream = uniform_digit_stream({1}, 300'000);
  BlockSamplerConfig cfg;
  cfg.lattice_length = 100'000;
  cfg.seed = 9;
  const auto r = blocks_report(stream, cfg, {{"source", "uniform"}});
  const Json j = to_json(r);
  CHECK(j["tool"] == "kiang");
  CHECK(j["routine"] == "blocks");
  CHECK(j["config"]["source"] == "uniform");
  CHECK(j["config"]["m"] == 100'000);
  CHECK(j["config"]["seed"] == 9);
  CHECK(j["config"]["budget"] == 300'000);
  CHECK(j["seed"] == 9);
  CHECK(j["rng_algorithm"] == "mt19937_64");
  CHECK(j["n_cells"].get<std::size_t>() == r.analysis.n_cells);
  CHECK(j["histogram"]["counts"].size() == 60);
  CHECK(j["alpha"] == j["fits"]["least_squares"]["alpha"]);
  CHECK(j["abs_dev_from_2"].get<double>() ==
        std::abs(2 - j["alpha"].get<double>()));

  // Same inputs, same report apart from timing.
  Json again = to_json(blocks_report(stream, cfg, {{"source", "uniform"}}));
  Json first = j;
  first.erase("runtime_seconds");
  again.erase("runtime_seconds");
  CHECK(first == again);
}

TEST_CASE("digit summary") {
  const auto stream = uniform_digit_stream({2}, 50'000);
  const auto summary = all_digit_reports(stream, 0, {{"stream_seed", 2}});
  CHECK(summary.reports.size() == 10);
  CHECK(summary.failures.empty());
  const Json j = to_json(summary);
  CHECK(j["summary"].size() == 10);
  CHECK(j["reports"][4]["config"]["digit"] == 4);
  CHECK(j["reports"][4]["seed"] == 2);
  CHECK(summary_csv(summary).rfind("digit,alpha_ls,alpha_mle,abs_dev_from_2,n_cells\n", 0) == 0);

  DigitStream sparse;
  sparse.source_label = "sparse";
  sparse.digits = {1, 1, 1, 2};
  const auto partial = all_digit_reports(sparse, 0);
  CHECK(partial.reports.empty());
  CHECK(partial.failures.size() == 10);
  CHECK(to_json(partial)["mean_alpha"].is_null());
}

TEST_CASE("sweep csv") {
  std::vector<SweepPoint> pts{{0, 0.0, 2.0, 0.01, 3}, {10, 0.01, 2.05, 0.02, 3}};
  const auto csv = sweep_csv(pts);
  CHECK(csv.rfind("l_star,rho_lstar,alpha_mean,alpha_sd,n_replicates\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("atomic writes") {
  const auto dir = fs::temp_directory_path() / "kiang_report_test";
  fs::create_directories(dir);
  const auto target = dir / "out.json";
  write_file_atomic(target, "first\n");
  write_file_atomic(target, "second\n");
  CHECK(slurp(target) == "second\n");
  CHECK_FALSE(fs::exists(dir / "out.json.tmp"));
  fs::remove_all(dir);

  try {
    write_file_atomic("/nonexistent/dir/out.json", "x");
    FAIL("expected IoError");
  } catch (const IoError &e) {
    CHECK(std::string(e.what()).find("/nonexistent/dir/out.json") != std::string::npos);
    CHECK(e.exit_code() == 3);
  }
}

TEST_CASE("sibling paths") {
  CHECK(sibling_path("a/run.json", ".hist.csv") == fs::path("a/run.hist.csv"));
  CHECK(sibling_path("run", ".fit.json") == fs::path("run.fit.json"));
  CHECK(sibling_path("out/sweep.csv", ".fit.json") == fs::path("out/sweep.fit.json"));
}

TEST_CASE("error categories map to exit codes") {
  CHECK(PreconditionError("x").exit_code() == 2);
  CHECK(TooFewNucleiError("x").exit_code() == 3);
  CHECK(NoRootError("x").exit_code() == 4);
}
