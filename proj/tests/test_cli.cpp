#include "doctest.h"
#include "support.hpp"

namespace {

std::string config(const std::string& name = "desk_config.yaml") {
  return "--config \"" + test::data(name).string() + "\"";
}

std::string out(const std::filesystem::path& dir) { return "--out \"" + dir.string() + "\""; }

}  // namespace

TEST_CASE("pipeline exit codes") {
  const auto dir = test::scratch("cli_pipeline");
  CHECK(test::run_cli(config() + " " + out(dir) + " pipeline") == 0);
  for (auto f : {"report.json", "report.txt", "open_loop_poles.svg", "closed_loop_poles.svg",
                 "miss_histogram.svg"})
    CHECK(std::filesystem::exists(dir / f));
  CHECK(test::run_cli(config("infeasible_config.yaml") + " " + out(test::scratch("cli_bad")) +
                      " pipeline") == 1);
}

TEST_CASE("two runs give identical machine reports") {
  const auto a = test::scratch("cli_det_a"), b = test::scratch("cli_det_b");
  REQUIRE(test::run_cli(config() + " " + out(a) + " --seed 5 pipeline") == 0);
  REQUIRE(test::run_cli(config() + " " + out(b) + " --seed 5 pipeline") == 0);
  CHECK(test::read_file(a / "report.json") == test::read_file(b / "report.json"));
  const auto c = test::scratch("cli_det_c");
  REQUIRE(test::run_cli(config() + " " + out(c) + " --seed 6 pipeline") == 0);
  CHECK(test::read_file(a / "report.json") != test::read_file(c / "report.json"));
}

TEST_CASE("usage and config errors exit 2") {
  CHECK(test::run_cli("pipeline") == 2);
  CHECK(test::run_cli("--config /no/such/file.yaml pipeline") == 2);
  CHECK(test::run_cli(config() + " --no-such-flag pipeline") == 2);
  CHECK(test::run_cli(config() + " frobnicate") == 2);
  CHECK(test::run_cli(config() + " --catalog /no/such/catalog.yaml size") == 2);
  CHECK(test::run_cli(config() + " simulate --runs 0") == 2);
  CHECK(test::run_cli("") == 2);
  CHECK(test::run_cli("--help") == 0);
  CHECK(test::run_cli("--version") == 0);
}

TEST_CASE("single-stage commands") {
  const auto dir = test::scratch("cli_stages");
  CHECK(test::run_cli(config() + " size") == 0);
  CHECK(test::run_cli(config() + " structure") == 0);
  CHECK(test::run_cli(config() + " massprops") == 0);
  CHECK(test::run_cli(config() + " " + out(dir) + " stability") == 0);
  CHECK(test::run_cli(config() + " trade") == 0);
  CHECK(test::run_cli("trade \"" + test::data("frame_trade.yaml").string() + "\"") == 0);
  CHECK(test::run_cli(config() + " " + out(dir) + " simulate --runs 40 --threads 2") == 0);
  CHECK(std::filesystem::exists(dir / "campaign.csv"));
  CHECK(test::run_cli(config() + " " + out(dir) + " simulate --runs 1") == 0);
  CHECK(std::filesystem::exists(dir / "mission_outcome.json"));
  CHECK(test::run_cli(config() + " simulate --runs 30 --detector-accuracy 0") == 1);
  CHECK(test::run_cli(config("infeasible_config.yaml") + " size") == 1);
}

TEST_CASE("report from a saved machine report") {
  const auto dir = test::scratch("cli_report");
  REQUIRE(test::run_cli(config() + " " + out(dir) + " pipeline") == 0);
  const auto rerender = test::scratch("cli_report_again");
  CHECK(test::run_cli(out(rerender) + " report --from \"" + (dir / "report.json").string() + "\"") == 0);
  CHECK(std::filesystem::exists(rerender / "report.txt"));
  CHECK(std::filesystem::exists(rerender / "miss_histogram.svg"));
  std::ofstream(dir / "broken.json") << "{\"schema_version\": 1";
  CHECK(test::run_cli("report --from \"" + (dir / "broken.json").string() + "\"") == 2);
}
