// Command line front end: build the truncated structures, run verification
// suites, export objects, and manage the sibling registry.
//
//   sibtree build    --s 0 --stage 1 --radius 6 --out out/
//   sibtree verify   --suite noniso --suite main-lemma --radius 6 --out out/
//   sibtree export   --object t0 --format dot
//   sibtree registry --generate --family 3 --out registry.json
//   sibtree registry --diff data/registry_s3.json
//
// verify exits nonzero unless every requested suite passes. SIBTREE_WORKERS
// bounds suite-level parallelism.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "sibtree/harness.hpp"

using namespace sibtree;

namespace {

void add_config_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--s,--family", cfg.s_count, "family size (number of sibling classes)");
  cmd->add_option("--stage", cfg.stage, "construction stage k");
  cmd->add_option("--radius", cfg.radius, "truncation radius (core distance)");
  cmd->add_option("--maxlabel", cfg.maxlabel, "label truncation bound");
  cmd->add_option("--registry", cfg.registry_path, "sibling registry file (JSON)");
  cmd->add_option("--seed", cfg.seed, "seed for sampled sweeps");
  cmd->add_option("--out", cfg.out_dir, "output directory");
  cmd->add_option("--workers", cfg.workers, "suite-level worker count");
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  std::filesystem::path p = dir.empty() ? std::filesystem::path(name)
                                        : std::filesystem::path(dir) / name;
  if (!dir.empty()) std::filesystem::create_directories(dir);
  std::ofstream out(p);
  out << content;
  std::cout << "wrote " << p.string() << "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"construction engine and verifier for locally finite trees "
               "with prescribed sibling counts"};
  app.require_subcommand(1);

  RunConfig cfg;

  auto* build = app.add_subcommand("build", "build truncations and write them out");
  add_config_flags(build, cfg);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_config_flags(verify, cfg);
  std::vector<std::string> suites;
  verify->add_option("--suite", suites, "suite name (repeatable; default: all)");

  auto* exp = app.add_subcommand("export", "export one object");
  add_config_flags(exp, cfg);
  std::string object_id, format = "dot";
  exp->add_option("--object", object_id, "object id (t0.., s00, spine, rball, ray0.., "
                                         "gadget:n,m, fingerprint:addr)")
      ->required();
  exp->add_option("--format", format, "dot or json");

  auto* registry = app.add_subcommand("registry", "generate or diff the sibling registry");
  add_config_flags(registry, cfg);
  bool generate = false;
  std::string diff_path;
  registry->add_flag("--generate", generate, "derive the registry for the configuration");
  registry->add_option("--diff", diff_path, "compare the derived registry against a file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      cfg.validate();
      Registry reg = cfg.registry();
      for (int s = 0; s < cfg.s_count; ++s) {
        std::string id = "t" + std::to_string(s);
        write_file(cfg.out_dir, id + ".json", export_object(cfg, id, "json"));
        write_file(cfg.out_dir, id + ".dot", export_object(cfg, id, "dot"));
      }
      write_file(cfg.out_dir, "spine.json", export_object(cfg, "spine", "json"));
      write_file(cfg.out_dir, "spine.dot", export_object(cfg, "spine", "dot"));
      return 0;
    }
    if (*verify) {
      if (suites.empty()) suites = suite_names();
      auto reports = run_suites(cfg, suites);
      bool all_ok = true;
      for (const SuiteReport& r : reports) {
        std::cout << (r.passed() ? "PASS " : "FAIL ") << r.suite << ": " << r.cases << " cases, "
                  << r.violations.size() << " violations"
                  << " (" << static_cast<long>(r.wall_ms) << " ms)\n";
        for (std::size_t i = 0; i < r.violations.size() && i < 4; ++i)
          std::cout << "      " << r.violations[i] << "\n";
        if (r.violations.size() > 4)
          std::cout << "      ... " << r.violations.size() - 4 << " more\n";
        all_ok &= r.passed();
      }
      if (!cfg.out_dir.empty()) write_file(cfg.out_dir, "report.jsonl", report_body(reports));
      return all_ok ? 0 : 1;
    }
    if (*exp) {
      std::cout << export_object(cfg, object_id, format);
      return 0;
    }
    if (*registry) {
      Registry derived = default_registry(cfg.s_count, std::max(cfg.stage, 1),
                                          std::min(cfg.radius, 5));
      if (!diff_path.empty()) {
        Registry frozen = load_registry(diff_path);
        bool same = registry_to_json(derived) == registry_to_json(frozen);
        std::cout << (same ? "registries match\n" : "registries differ\n");
        if (!same) {
          std::cout << "derived:\n" << registry_to_json(derived).dump(1) << "\n";
          std::cout << "file:\n" << registry_to_json(frozen).dump(1) << "\n";
        }
        return same ? 0 : 1;
      }
      std::string text = registry_to_json(derived).dump(1) + "\n";
      if (generate && !cfg.out_dir.empty())
        write_file(cfg.out_dir, "registry.json", text);
      else
        std::cout << text;
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
