// Acceptance harness: one line per criterion, exit 0 only if all pass.
// Runs at desk scale on the default 8 x 26 grid unless a criterion pins
// a finer grid.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "emfield/config.hpp"
#include "emfield/ladder.hpp"
#include "emfield/sampler.hpp"
#include "emfield/suites.hpp"
#include "wick_oracle.hpp"

namespace {

using namespace emfield;

struct Outcome {
  bool pass = true;
  double worst = 0.0;
  std::string detail;
};

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;
  std::function<Outcome()> run;
};

Outcome from_checks(const std::vector<CheckResult>& checks,
                    const std::string& name_filter = "") {
  Outcome out;
  int used = 0;
  for (const auto& c : checks) {
    if (!name_filter.empty() && c.name.find(name_filter) == std::string::npos) continue;
    ++used;
    out.pass = out.pass && c.pass;
    if (c.scale > 0.0) out.worst = std::max(out.worst, c.max_abs_error / c.scale);
    if (!c.pass) out.detail += (out.detail.empty() ? "" : "; ") + c.name;
  }
  if (used == 0) {
    out.pass = false;
    out.detail = "no checks matched '" + name_filter + "'";
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome wick_exhaustive(const RunConfig& config) {
  const auto grid = LightconeGrid::build(config.grid);
  GramContext ctx(grid, config.constants);
  std::vector<LabelId> labels;
  for (int i = 0; i < 3; ++i) {
    labels.push_back(ctx.add(config.functions[static_cast<std::size_t>(i)].name,
                             sample_on_grid(gaussian_packet(
                                 config.functions[static_cast<std::size_t>(i)].packet),
                                            grid)));
  }
  Outcome out;
  long long words = 0;
  OperatorWord word;
  for (int len = 0; len <= 8; ++len) {
    std::vector<int> digits(static_cast<std::size_t>(len), 0);
    while (true) {
      word.clear();
      for (const int d : digits) {
        word.push_back({d < 3 ? OpKind::annihilate : OpKind::create,
                        labels[static_cast<std::size_t>(d % 3)]});
      }
      const Complex engine = vacuum_expectation(word, ctx);
      const Complex oracle = emfield::testing::wick_enumeration_oracle(word, ctx);
      const double scale = std::max({std::abs(engine), std::abs(oracle), 1e-300});
      out.worst = std::max(out.worst, std::abs(engine - oracle) / scale);
      ++words;
      int pos = len - 1;
      while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == 5) {
        digits[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++digits[static_cast<std::size_t>(pos)];
    }
  }
  out.pass = out.worst <= 1e-13;
  out.detail = std::to_string(words) + " words";
  return out;
}

Outcome cli_determinism(const RunConfig& config) {
  Outcome out;

  // library-level: identical batches for identical seeds
  {
    const auto grid = LightconeGrid::build(config.grid);
    GramContext ctx(grid, config.constants);
    std::vector<LabelId> real_labels;
    for (const auto& decl : config.functions) {
      const auto id =
          ctx.add(decl.name, sample_on_grid(gaussian_packet(decl.packet), grid));
      if (decl.packet.real_symmetrized) real_labels.push_back(id);
    }
    const Eigen::MatrixXd c = covariance_matrix(real_labels, ctx);
    const auto a = draw_samples(c, 2000, config.seed);
    const auto b = draw_samples(c, 2000, config.seed);
    if (!(a.values.array() == b.values.array()).all()) {
      out.pass = false;
      out.detail = "library rerun differed";
      return out;
    }
  }

  const char* bin = std::getenv("EMFIELD_BIN");
  if (bin == nullptr) {
    out.detail = "EMFIELD_BIN unset: library determinism only";
    return out;
  }
  const auto dir = std::filesystem::temp_directory_path();
  const auto csv1 = dir / "emfield_acc_1.csv";
  const auto csv2 = dir / "emfield_acc_2.csv";
  const auto json1 = dir / "emfield_acc_1.json";
  const auto json2 = dir / "emfield_acc_2.json";
  auto run = [&](const std::filesystem::path& csv, const std::filesystem::path& js) {
    std::ostringstream cmd;
    cmd << '"' << bin << '"'
        << " sample --deterministic --seed 424242 --count 5000 --out " << csv
        << " --json " << js << " > /dev/null 2>&1";
    return std::system(cmd.str().c_str());
  };
  if (run(csv1, json1) != 0 || run(csv2, json2) != 0) {
    out.pass = false;
    out.detail = "CLI sample run failed";
    return out;
  }
  const bool same_csv = read_file(csv1) == read_file(csv2);
  const bool same_json = read_file(json1) == read_file(json2);
  const bool nonempty = !read_file(csv1).empty();
  out.pass = same_csv && same_json && nonempty;
  if (!out.pass) out.detail = "CLI reruns were not byte-identical";
  else out.detail = "CLI reruns byte-identical";
  for (const auto& p : {csv1, csv2, json1, json2}) std::filesystem::remove(p);
  return out;
}

}  // namespace

int main() {
  const RunConfig config = default_config();

  std::vector<Criterion> criteria;
  criteria.push_back({1, "tensor algebra: dual involution and projectors", 1.0,
                      [&] { return from_checks(run_suite("tensor", config)); }});
  criteria.push_back({2, "four-part split completeness and orthogonality", 2.0, [&] {
                        return from_checks(run_suite("maps", config), "four-part");
                      }});
  criteria.push_back({3, "bullet and box map laws", 5.0, [&] {
                        const auto checks = run_suite("maps", config);
                        Outcome a = from_checks(checks, "bullet");
                        Outcome b = from_checks(checks, "box");
                        Outcome c = from_checks(checks, "star");
                        Outcome d = from_checks(checks, "real");
                        Outcome out;
                        out.pass = a.pass && b.pass && c.pass && d.pass;
                        out.worst = std::max({a.worst, b.worst, c.worst, d.worst});
                        out.detail = a.detail + b.detail + c.detail + d.detail;
                        return out;
                      }});
  criteria.push_back({4, "bracket hermiticity, positivity, gauge null vectors", 5.0,
                      [&] { return from_checks(run_suite("pairing", config)); }});
  criteria.push_back({5, "commutator vanishing with probes and phi contrast", 30.0,
                      [&] {
                        auto checks = run_suite("commutators", config);
                        const auto xi = run_suite("appendix", config);
                        checks.insert(checks.end(), xi.begin(), xi.end());
                        return from_checks(checks);
                      }});
  criteria.push_back({6, "wick engine vs exhaustive enumeration to length 8", 10.0,
                      [&] { return wick_exhaustive(config); }});
  criteria.push_back({7, "same expressions, a-operators vs b-operators", 10.0,
                      [&] { return from_checks(run_suite("equivalence", config)); }});
  criteria.push_back({8, "rotation and boost covariance", 120.0,
                      [&] { return from_checks(run_suite("lorentz", config)); }});
  criteria.push_back({9, "quadrature refinement convergence", 60.0,
                      [&] { return from_checks(run_suite("convergence", config)); }});
  criteria.push_back({10, "sampler moments and fixed-seed reproducibility", 120.0,
                      [&] {
                        Outcome a = from_checks(run_suite("sampler", config));
                        Outcome b = cli_determinism(config);
                        Outcome out;
                        out.pass = a.pass && b.pass;
                        out.worst = a.worst;
                        out.detail = b.detail +
                                     (a.detail.empty() ? "" : "; " + a.detail);
                        return out;
                      }});

  bool all_pass = true;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = seconds < criterion.budget_seconds;
    const bool pass = outcome.pass && in_budget;
    all_pass = all_pass && pass;
    std::printf("criterion %2d: %s  %-55s worst=%.3e  %.2fs/%.0fs%s%s\n",
                criterion.number, pass ? "PASS" : "FAIL", criterion.title.c_str(),
                outcome.worst, seconds, criterion.budget_seconds,
                outcome.detail.empty() ? "" : "  ", outcome.detail.c_str());
  }
  std::printf("acceptance: %s\n", all_pass ? "ALL CRITERIA PASS" : "FAILURES");
  return all_pass ? EXIT_SUCCESS : EXIT_FAILURE;
}
