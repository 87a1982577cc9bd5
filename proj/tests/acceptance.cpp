// One PASS/FAIL line per acceptance criterion. Failed sub-checks are listed
// under their criterion. Exit status is 0 when the set of failing criteria
// equals the set given with --known-failure.

#include "mixedfem/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>

using namespace mixedfem;

namespace {

struct Criterion {
  int id;
  const char* title;
  std::function<std::vector<CheckResult>()> run;
};

std::vector<CheckResult> table(const char* name) {
  for (const GoldenTable& t : golden_tables()) {
    if (t.name == name) return check_golden_table(t);
  }
  throw std::logic_error(std::string("no table ") + name);
}

std::vector<CheckResult> concat(std::initializer_list<std::vector<CheckResult>> parts) {
  std::vector<CheckResult> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> known;
  std::vector<int> only;
  app.add_option("--known-failure", known, "criterion expected to fail (repeatable)");
  app.add_option("--only", only, "run just these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "electric vector Laplacian r=2 reproduces the published errors and rates",
       [] { return table("table1-electric"); }},
      {2, "Dirichlet vector Laplacian r=2 reproduces the published errors and rates",
       [] { return table("table2-dirichlet"); }},
      {3, "Stokes r=2 reproduces the published errors and rates",
       [] { return concat({table("table4-stokes"), check_stokes_fine_levels()}); }},
      {4, "commuting projections and discrete sequence structure",
       [] {
         return concat({check_commuting_projections(), check_sequence_dimensions(), check_dense_ranks(),
                        check_stokes_divergence(), check_zero_load()});
       }},
      {5, "biharmonic and projection convergence orders",
       [] { return concat({check_biharmonic_rates(), check_projection_rates()}); }},
      {6, "lowest-order Dirichlet: sigma converges, curl sigma stalls on perturbed meshes",
       [] { return check_lowest_order_dirichlet(); }},
  };

  std::set<int> failing;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    std::vector<CheckResult> results;
    std::string error;
    try {
      results = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    int failed = error.empty() ? 0 : 1;
    for (const CheckResult& r : results) failed += r.passed ? 0 : 1;
    if (failed) failing.insert(c.id);
    std::cout << (failed ? "FAIL" : "PASS") << " criterion " << c.id << ": " << c.title << " ("
              << results.size() - (failed - (error.empty() ? 0 : 1)) << "/" << results.size() << " checks, "
              << static_cast<int>(secs + 0.5) << " s)\n";
    if (!error.empty()) std::cout << "    error: " << error << '\n';
    for (const CheckResult& r : results) {
      if (!r.passed) std::cout << "    failed " << r.name << " : " << r.detail << '\n';
    }
  }

  std::set<int> expected;
  for (int k : known) {
    if (only.empty() || std::find(only.begin(), only.end(), k) != only.end()) expected.insert(k);
  }
  if (failing == expected) return 0;
  for (int k : failing) {
    if (!expected.count(k)) std::cout << "unexpected failure of criterion " << k << '\n';
  }
  for (int k : expected) {
    if (!failing.count(k)) std::cout << "criterion " << k << " was expected to fail but passed\n";
  }
  return 1;
}
