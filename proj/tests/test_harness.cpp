#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sibtree/harness.hpp"

using namespace sibtree;

namespace {
RunConfig quick_config() {
  RunConfig cfg;
  cfg.s_count = 3;
  cfg.stage = 1;
  cfg.radius = 6;
  cfg.seed = 1;
  return cfg;
}
} // namespace

TEST_CASE("unknown suite and infeasible radius are rejected") {
  RunConfig cfg = quick_config();
  CHECK_THROWS_AS(run_suite(cfg, "bogus"), parameter_error);
  cfg.radius = 2;
  CHECK_THROWS_AS(run_suite(cfg, "noniso"), parameter_error);
  CHECK(RunConfig::min_radius(1) == 6);
}

TEST_CASE("clean suites pass at the default configuration") {
  RunConfig cfg = quick_config();
  for (const char* name : {"label-reconstruct", "noniso", "similarity-unique", "embfinite"}) {
    SuiteReport r = run_suite(cfg, name);
    CHECK_MESSAGE(r.passed(), r.suite, ": ", r.violations.empty() ? "" : r.violations.front());
    CHECK(r.cases > 0);
    CHECK(r.config_hash == cfg.hash());
  }
}

TEST_CASE("report bodies are deterministic across runs") {
  RunConfig cfg = quick_config();
  std::vector<std::string> names{"label-reconstruct", "ray-centres", "noniso"};
  std::string a = report_body(run_suites(cfg, names));
  std::string b = report_body(run_suites(cfg, names));
  CHECK(a == b);
  CHECK(a.find("wall") == std::string::npos); // timing lives outside the body
}

TEST_CASE("config hash changes with the configuration") {
  RunConfig a = quick_config(), b = quick_config();
  b.radius = 7;
  CHECK(a.hash() != b.hash());
}

TEST_CASE("export: dot, json round trip, fingerprints") {
  RunConfig cfg = quick_config();
  cfg.stage = 0;
  cfg.radius = 4;
  std::string dot = export_object(cfg, "t0", "dot");
  CHECK(dot.find("graph \"t0\"") != std::string::npos);
  std::string js = export_object(cfg, "t0", "json");
  auto j = nlohmann::json::parse(js);
  DecoratedTree back = tree_from_json(j);
  TBall t = build_t(0, 0, 4, cfg.registry());
  CHECK(canonical_form(back, false) == canonical_form(t.assembly.tree, false));
  std::string fp = export_object(cfg, "fingerprint:R+.R+", "dot");
  CHECK(fp.find("<") != std::string::npos);
  CHECK_THROWS_AS(export_object(cfg, "nonsense", "dot"), parameter_error);
}

TEST_CASE("export is bit-stable for a fixed configuration") {
  RunConfig cfg = quick_config();
  cfg.stage = 0;
  cfg.radius = 4;
  CHECK(export_object(cfg, "t1", "json") == export_object(cfg, "t1", "json"));
  CHECK(export_object(cfg, "spine", "dot") == export_object(cfg, "spine", "dot"));
}

TEST_CASE("parallel suite execution merges deterministically") {
  RunConfig cfg = quick_config();
  std::vector<std::string> names{"label-reconstruct", "noniso"};
  cfg.workers = 2;
  std::string par = report_body(run_suites(cfg, names));
  cfg.workers = 1;
  std::string seq = report_body(run_suites(cfg, names));
  CHECK(par == seq);
}
