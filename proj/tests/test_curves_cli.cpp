#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qisim/cli.hpp"
#include "qisim/curves.hpp"
#include "qisim/scheme.hpp"

using namespace qisim;
using namespace qisim::curves;

namespace {

double column(const ser::CsvTable& t, const std::string& name,
              const std::vector<double>& row) {
  for (size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i] == name) return row[i];
  throw std::runtime_error("no column " + name);
}

const std::vector<double>& row_at(const ser::CsvTable& t, double key) {
  const std::vector<double>* best = nullptr;
  double gap = 1e300;
  for (const auto& row : t.rows) {
    const double d = std::abs(row[0] - key);
    if (d < gap) {
      gap = d;
      best = &row;
    }
  }
  REQUIRE(best != nullptr);
  REQUIRE(gap < 1e-9);
  return *best;
}

struct CliRun {
  int exit_code = 0;
  std::string out;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qi");
  std::vector<char*> argv;
  argv.reserve(args.size());
  for (auto& a : args) argv.push_back(a.data());

  std::ostringstream captured_out, captured_err;
  auto* old_out = std::cout.rdbuf(captured_out.rdbuf());
  auto* old_err = std::cerr.rdbuf(captured_err.rdbuf());
  CliRun r;
  r.exit_code = cli::cli_main(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  r.out = captured_out.str();
  return r;
}

}  // namespace

TEST_CASE("axis parsing") {
  const auto range = parse_axis("l=0:0.9:0.01");
  CHECK(range.param == "l");
  REQUIRE(range.values.size() == 91);
  CHECK(range.values.front() == 0.0);
  CHECK(range.values.back() == doctest::Approx(0.9).epsilon(1e-12));

  const auto list = parse_axis("G=1,2,5,10");
  CHECK(list.param == "G");
  CHECK(list.values == std::vector<double>{1.0, 2.0, 5.0, 10.0});

  CHECK_THROWS_AS(parse_axis("loss"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axis("x=0:1:0.1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axis("l=0.9:0.0:0.01"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axis("l=0:1:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axis("G=1,abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axis("l="), std::invalid_argument);
}

TEST_CASE("loss sweep over the three schemes") {
  scheme::SchemeConfig base;
  base.params.photons = 1.0;
  base.params.squeeze_r = analytic::squeeze_r_from_db(10.0);

  const std::vector<scheme::Scheme> schemes = {
      scheme::Scheme::Cqi, scheme::Scheme::QiG, scheme::Scheme::QiTG};
  const auto axes = std::vector<SweepAxis>{parse_axis("l=0:0.9:0.1")};
  const auto t = run_sweep(base, schemes, axes);

  CHECK(t.columns == std::vector<std::string>{
                         "loss", "cqi_delta_phi", "cqi_m_db", "cqi_rel_snr_db",
                         "qig_delta_phi", "qig_m_db", "qig_rel_snr_db",
                         "qitg_delta_phi", "qitg_m_db", "qitg_rel_snr_db"});
  REQUIRE(t.rows.size() == 10);
  CHECK(column(t, "cqi_delta_phi", row_at(t, 0.0)) ==
        doctest::Approx(0.31622776601683793).epsilon(1e-12));
  CHECK(column(t, "qitg_m_db", row_at(t, 0.9)) ==
        doctest::Approx(4.9526276956890571).epsilon(1e-12));

  SUBCASE("the tunable scheme saturates above half loss") {
    const auto& r6 = row_at(t, 0.6);
    const auto& r9 = row_at(t, 0.9);
    for (const char* c : {"qitg_delta_phi", "qitg_m_db", "qitg_rel_snr_db"})
      CHECK(column(t, c, r6) == doctest::Approx(column(t, c, r9)).epsilon(1e-12));
  }
  SUBCASE("identical requests serialize to identical bytes") {
    const auto again = run_sweep(base, schemes, axes);
    CHECK(t.to_string() == again.to_string());
  }
  SUBCASE("pinned knobs cannot be swept") {
    CHECK_THROWS_AS(
        run_sweep(base, schemes, {parse_axis("T=0.1:0.9:0.1")}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        run_sweep(base, {scheme::Scheme::Cqi}, {parse_axis("G=1,2")}),
        std::invalid_argument);
  }
  SUBCASE("axis count limits") {
    CHECK_THROWS_AS(run_sweep(base, schemes, {}), std::invalid_argument);
    CHECK_THROWS_AS(
        run_sweep(base, schemes,
                  {parse_axis("l=0:0.9:0.1"), parse_axis("l=0:0.5:0.1")}),
        std::invalid_argument);
  }
}

TEST_CASE("figure series reproduce the frozen operating points") {
  const auto& ids = figure_ids();
  CHECK(ids.size() >= 8);
  CHECK_THROWS_AS(figure_series("nope"), std::invalid_argument);

  SUBCASE("sensitivity vs loss, free gain") {
    const auto t = figure_series("fig2e");
    const auto& row = row_at(t, 0.9);
    CHECK(column(t, "cqi_delta_phi_sqrtn", row) ==
          doctest::Approx(2.1447610589527217).epsilon(1e-12));
    CHECK(column(t, "qig_delta_phi_sqrtn", row) ==
          doctest::Approx(0.7745966692414834).epsilon(1e-12));
    CHECK(column(t, "qitg_delta_phi_sqrtn", row) ==
          doctest::Approx(0.68251830709349474).epsilon(1e-12));
    CHECK(column(t, "sql_sqrtn", row) == 1.0);
    CHECK(column(t, "lossless_cqi_sqrtn", row) ==
          doctest::Approx(0.31622776601683793).epsilon(1e-12));
    const double gap_db = 20.0 * std::log10(column(t, "cqi_delta_phi_sqrtn", row) /
                                            column(t, "qitg_delta_phi_sqrtn", row));
    CHECK(gap_db == doctest::Approx(9.9452922190271602).epsilon(1e-12));
  }
  SUBCASE("enhancement vs loss, free gain") {
    const auto t = figure_series("fig2f");
    const auto& row = row_at(t, 0.9);
    CHECK(column(t, "cqi_m_db", row) ==
          doctest::Approx(0.77604857812669771).epsilon(1e-12));
    CHECK(column(t, "qig_m_db", row) ==
          doctest::Approx(3.9794000867203761).epsilon(1e-12));
    CHECK(column(t, "qitg_m_db", row) ==
          doctest::Approx(4.9526276956890571).epsilon(1e-12));
  }
  SUBCASE("sensitivity vs loss at the published experimental point") {
    const auto t = figure_series("fig4c");
    const auto& row = row_at(t, 0.0);
    for (const char* c :
         {"cqi_delta_phi_sqrtn", "qig_delta_phi_sqrtn", "qitg_delta_phi_sqrtn"})
      CHECK(column(t, c, row) ==
            doctest::Approx(0.61878339180614085).epsilon(1e-12));
    CHECK(column(t, "sql_sqrtn", row) == 1.0);
  }
  SUBCASE("enhancement vs loss at the published experimental point") {
    const auto t = figure_series("fig4d");
    const auto& row = row_at(t, 0.9);
    CHECK(column(t, "cqi_m_db", row) ==
          doctest::Approx(0.51685492046117487).epsilon(1e-12));
    CHECK(column(t, "qig_m_db", row) ==
          doctest::Approx(1.705632041039505).epsilon(1e-12));
    CHECK(column(t, "qitg_m_db", row) ==
          doctest::Approx(2.2792261707431655).epsilon(1e-12));
  }
  SUBCASE("emission is deterministic") {
    CHECK(figure_series("fig2e").to_string() == figure_series("fig2e").to_string());
  }
}

TEST_CASE("command line round trips") {
  SUBCASE("point emits the frozen sensitivity") {
    const auto r = run_cli({"point", "--scheme", "cqi", "--photons", "4e14",
                            "--loss", "0.9"});
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["metadata"]["tool"] == "qisim 0.1.0");
    CHECK(doc["metadata"]["scheme"] == "cqi");
    CHECK(double(doc["metrics"]["delta_phi"]) ==
          doctest::Approx(1.0723805294763608e-7).epsilon(1e-12));
    CHECK(doc["metrics"].contains("beyond_sql_db"));
    CHECK(doc["metrics"].contains("degradation_db"));
  }
  SUBCASE("optimize under the photon-number constraint") {
    const auto r = run_cli({"optimize", "--constrained", "--loss", "0.9",
                            "--squeeze-r", "0.48", "--photons", "1.2e15"});
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(double(doc["result"]["split_ratio"]) ==
          doctest::Approx(0.25879105660705818).epsilon(1e-6));
    CHECK(double(doc["result"]["gain"]) ==
          doctest::Approx(3.6101483376606866).epsilon(1e-6));
    CHECK(double(doc["result"]["delta_phi_sqrtn"]) ==
          doctest::Approx(1.0214453004083334).epsilon(1e-9));
  }
  SUBCASE("decompose groups the variance") {
    const auto r = run_cli({"decompose", "--scheme", "qig", "--loss", "0.9",
                            "--gain", "2"});
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    const auto& noise = doc["noise"];
    CHECK(double(noise["loss_induced_variance"]) +
              double(noise["amplification_associated_variance"]) ==
          doctest::Approx(double(noise["total_variance"])).epsilon(1e-9));
  }
  SUBCASE("figure writes a CSV file") {
    const auto dir = std::filesystem::temp_directory_path() / "qisim_fig_test";
    std::filesystem::create_directories(dir);
    const auto r = run_cli({"figure", "--id", "fig4c", "--out", dir.string()});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("wrote ") != std::string::npos);
    std::ifstream f(dir / "fig4c.csv");
    REQUIRE(f.good());
    std::string first;
    std::getline(f, first);
    CHECK(first.find("# figure = fig4c") != std::string::npos);
    std::filesystem::remove_all(dir);
  }
  SUBCASE("verify fast suite passes") {
    const auto r = run_cli({"verify"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("checks passed") != std::string::npos);
  }
  SUBCASE("exit codes separate usage from evaluation failures") {
    CHECK(run_cli({"point", "--loss", "1.0"}).exit_code == 3);
    CHECK(run_cli({"point", "--bogus"}).exit_code == 2);
    CHECK(run_cli({"point", "--scheme", "cqi", "--split", "0.3"}).exit_code == 2);
    CHECK(run_cli({"point", "--scheme", "cqi", "--gain", "2"}).exit_code == 2);
    CHECK(run_cli({"sweep", "--axis", "T=0.1:0.9:0.1"}).exit_code == 2);
    CHECK(run_cli({"--help"}).exit_code == 0);
  }
}
