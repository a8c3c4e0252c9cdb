#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>

#include "adw/runner.hpp"
#include "doctest.h"

using namespace adw;
namespace fs = std::filesystem;

TEST_CASE("rational json round trip") {
  for (const char* s : {"0", "5", "-7", "3/2", "-22/7"}) {
    Rat q = rat_from_string(s);
    CHECK(rat_from_json(rat_json(q)) == q);
  }
}

TEST_CASE("interval json shape is recognized") {
  Ival v = Ival::from_rat(Rat(1, 3), 64);
  Json j = ival_json(v);
  CHECK(is_interval_json(j));
  CHECK(!is_interval_json(Json{{"lo", 1}, {"hi", 2}}));
  Json b = bracket_json(RatBracket{Rat(1), Rat(2)});
  CHECK(is_interval_json(b));
}

TEST_CASE("exact-field comparison") {
  Json a = {{"x", "3/2"}, {"nested", {{"y", 1}}}};
  Json b = a;
  CHECK(compare_exact_fields(a, b).empty());
  b["nested"]["y"] = 2;
  CHECK(!compare_exact_fields(a, b).empty());

  // intervals are compared leniently
  Json wide = {{"v", {{"lo", "0.1"}, {"hi", "0.9"}, {"bits", 64}}}};
  Json narrow = {{"v", {{"lo", "0.4"}, {"hi", "0.6"}, {"bits", 128}}}};
  CHECK(compare_exact_fields(wide, narrow).empty());
}

TEST_CASE("config round trip") {
  RunConfig cfg;
  cfg.subcommand = "minima";
  cfg.flags = {{"n", "2"}, {"points", "rat:1/2"}, {"X", "2"}, {"Y", "3"}};
  cfg.precision_bits = 128;
  cfg.seed = 99;
  RunConfig back = RunConfig::from_json(cfg.to_json());
  CHECK(back.subcommand == cfg.subcommand);
  CHECK(back.flags == cfg.flags);
  CHECK(back.precision_bits == cfg.precision_bits);
  CHECK(back.seed == cfg.seed);
}

TEST_CASE("grid parsing") {
  auto g = parse_grid("100:2:3");
  REQUIRE(g.size() == 3);
  CHECK(g[0] == Rat(100));
  CHECK(g[2] == Rat(400));
  auto frac = parse_grid("1/2:3/2:2");
  CHECK(frac[1] == Rat(3, 4));
  CHECK_THROWS_AS(parse_grid("100"), ConfigError);
  CHECK_THROWS_AS(parse_grid("0:2:3"), ConfigError);
}

TEST_CASE("form run emits the binomial relation coefficients") {
  RunConfig cfg;
  cfg.subcommand = "form";
  cfg.flags = {{"case", "add"}, {"gamma", "1"}, {"n", "2"}};
  RunRecord rec = run(cfg);
  REQUIRE(rec.records.size() == 1);
  const Json& j = rec.records[0];
  CHECK(j.at("a") == Json::array({"-1", "3", "-3", "1"}));
}

TEST_CASE("bad gamma rejected with a config error") {
  RunConfig cfg;
  cfg.subcommand = "form";
  cfg.flags = {{"case", "add"}, {"gamma", "0"}, {"n", "2"}};
  CHECK_THROWS_AS(run(cfg), ConfigError);
}

TEST_CASE("persist, load, replay determinism") {
  fs::path dir = fs::temp_directory_path() / "adw_test_run";
  fs::remove_all(dir);
  RunConfig cfg;
  cfg.subcommand = "minima";
  cfg.flags = {{"n", "1"},      {"points", "rat:1/2"}, {"X", "2"},
               {"Y", "2"},      {"body", "C"},         {"method", "exhaustive"}};
  cfg.out_dir = dir.string();
  RunRecord rec = run(cfg);
  CHECK(fs::exists(dir / "config.json"));
  CHECK(fs::exists(dir / "records.jsonl"));

  RunRecord loaded = load_run(dir.string());
  CHECK(loaded.records.size() == rec.records.size());

  RunRecord fresh = replay_run(dir.string());
  CHECK(fresh.records.size() == rec.records.size());
  for (size_t i = 0; i < fresh.records.size(); ++i)
    CHECK(compare_exact_fields(fresh.records[i], rec.records[i]).empty());
  fs::remove_all(dir);
}

TEST_CASE("determinism under a fixed seed: two runs agree exactly") {
  RunConfig cfg;
  cfg.subcommand = "gelfond";
  cfg.flags = {{"case", "add"},        {"gamma", "1"},
               {"seed-point", "rat:0"}, {"n", "3"},
               {"t", "1"},             {"exponent", "value:2"},
               {"Y-grid", "11:2:2"}};
  RunRecord a = run(cfg);
  RunRecord b = run(cfg);
  REQUIRE(a.records.size() == b.records.size());
  for (size_t i = 0; i < a.records.size(); ++i)
    CHECK(compare_exact_fields(a.records[i], b.records[i]).empty());
}

TEST_CASE("plots: grid series produce csv and svg, single points do not") {
  fs::path dir = fs::temp_directory_path() / "adw_test_plots";
  fs::remove_all(dir);
  RunConfig cfg;
  cfg.subcommand = "gelfond";
  cfg.flags = {{"case", "add"},        {"gamma", "1"},
               {"seed-point", "rat:0"}, {"n", "3"},
               {"t", "1"},             {"exponent", "value:2"},
               {"Y-grid", "11:2:3"}};
  RunRecord rec = run(cfg);
  PlotOutcome p = emit_plots(rec, dir.string());
  CHECK(p.emitted);
  CHECK(fs::exists(dir / "plot.csv"));
  CHECK(fs::exists(dir / "plot.svg"));

  RunConfig single = cfg;
  single.flags["Y-grid"] = "11:2:1";
  RunRecord rec1 = run(single);
  PlotOutcome p1 = emit_plots(rec1, dir.string());
  CHECK(!p1.emitted);
  fs::remove_all(dir);
}

TEST_CASE("diag run on a stored witness record") {
  fs::path dir = fs::temp_directory_path() / "adw_test_diag";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "records.jsonl");
    out << R"({"type":"phi-scan","X":"16","Y":"4","lambda1":{"lo":"1","hi":"1","bits":0},"witness":["1","2","4","8"]})"
        << "\n";
  }
  RunConfig cfg;
  cfg.subcommand = "diag";
  cfg.flags = {{"input", (dir / "records.jsonl").string()},
               {"n", "3"},
               {"t", "1"},
               {"k", "1"}};
  RunRecord rec = run(cfg);
  REQUIRE(!rec.records.empty());
  CHECK(rec.records[0].at("type") == "diag-rank-drop");
  CHECK(rec.records[0].at("hypothesis_met") == true);
  fs::remove_all(dir);
}
