// heisenlab: run the identity suite on a chosen group, or pretty-print a report.
//
// Exit codes: 0 all asserted checks pass, 1 an asserted check failed,
// 2 usage or I/O error.

#include <cstdio>
#include <iomanip>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "heisenlab/verify.hpp"
#include "json.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size())
      throw heisenlab::UsageError(std::string("malformed ") + what + " entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw heisenlab::UsageError(std::string("empty ") + what);
  return out;
}

int run_suite_command(heisenlab::SuiteConfig cfg, const std::string& group, const std::string& modes,
                      std::optional<double> tol, bool quiet) {
  using namespace heisenlab;
  cfg.moduli = FiniteAbelianGroup::parse(group).moduli();
  if (!modes.empty()) cfg.modes = parse_int_list(modes, "mode list");
  cfg.tol = tol;
  cfg.validate();

  const auto results = run_suite(cfg);
  if (!cfg.out.empty()) emit_report(cfg, results, cfg.out);
  else std::cout << render_report(cfg, results);

  if (!quiet) {
    for (const auto& r : results) {
      if (r.status == CheckStatus::kReported) continue;
      if (r.status == CheckStatus::kAssertedFail || !cfg.out.empty())
        std::fprintf(stderr, "%-36s %-13s err=%.3e tol=%.1e\n", r.id.c_str(), std::string(to_string(r.status)).c_str(),
                     r.max_abs_error, r.tolerance);
    }
  }
  return suite_passed(results) ? 0 : 1;
}

int show_command(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw heisenlab::UsageError("cannot open report '" + path + "'");
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw heisenlab::UsageError("report '" + path + "' is not valid JSON: " + e.what());
  }
  const auto& c = doc.at("config");
  std::printf("group moduli %s, modes %s, ntheta %d, trials %d, seed %llu\n", c.at("moduli").dump().c_str(),
              c.at("modes").dump().c_str(), c.at("ntheta").get<int>(), c.at("trials").get<int>(),
              c.at("seed").get<unsigned long long>());
  for (const auto& r : doc.at("checks")) {
    const auto& err = r.at("max_abs_error");
    std::printf("  %-36s %-13s %12s", r.at("id").get<std::string>().c_str(),
                r.at("status").get<std::string>().c_str(),
                err.is_null() ? "nan" : (std::ostringstream() << std::scientific << std::setprecision(3)
                                                              << err.get<double>()).str().c_str());
    if (r.at("status") != "reported") std::printf("  tol %.1e", r.at("tolerance").get<double>());
    const auto notes = r.at("notes").get<std::string>();
    if (!notes.empty()) std::printf("  %s", notes.c_str());
    std::printf("\n");
  }
  const auto& s = doc.at("summary");
  std::printf("%d asserted pass, %d asserted fail, %d reported: %s\n", s.at("asserted_pass").get<int>(),
              s.at("asserted_fail").get<int>(), s.at("reported").get<int>(),
              s.at("ok").get<bool>() ? "OK" : "FAILED");
  return s.at("ok").get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite Heisenberg group harmonic analysis checks"};
  app.require_subcommand(1);

  heisenlab::SuiteConfig cfg;
  cfg.seed = heisenlab::default_seed();
  std::string group = "5";
  std::string modes;
  std::optional<double> tol;
  bool quiet = false;

  auto* suite = app.add_subcommand("suite", "Run every check and write a JSON report");
  suite->add_option("--group", group, "Cyclic factors, e.g. 2,3")->capture_default_str();
  suite->add_option("--jmax", cfg.jmax, "Largest |j| among the modes")->capture_default_str();
  suite->add_option("--ntheta", cfg.n_theta, "Circle grid size (default 4*jmax+1)");
  suite->add_option("--modes", modes, "Explicit comma-separated mode list");
  suite->add_option("--trials", cfg.trials, "Random trials per check")->capture_default_str();
  suite->add_option("--seed", cfg.seed, "Seed (default: HEISENLAB_SEED or built-in)");
  suite->add_option("--tol", tol, "Override every asserted tolerance");
  suite->add_option("--out", cfg.out, "Report path (default: stdout)");
  suite->add_flag("--quiet", quiet, "No per-check lines on stderr");

  std::string report;
  auto* show = app.add_subcommand("show", "Pretty-print a report");
  show->add_option("report", report, "Report path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*suite) {
      return run_suite_command(cfg, group, modes, tol, quiet);
    }
    return show_command(report);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
