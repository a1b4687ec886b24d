#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "emfield/config.hpp"
#include "emfield/ladder.hpp"
#include "emfield/sampler.hpp"
#include "emfield/suites.hpp"

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

namespace {

using emfield::RunConfig;
using json = nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  bool deterministic = false;
  std::string json_out;
  std::string csv_out;
};

RunConfig resolve_config(const CommonOptions& opts) {
  RunConfig config;
  std::string path = opts.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("EMFIELD_CONFIG")) path = env;
  }
  config = path.empty() ? emfield::default_config() : emfield::load_config_file(path);
  if (opts.seed) config.seed = *opts.seed;
  if (opts.jobs) config.jobs = *opts.jobs;
  if (opts.deterministic) config.deterministic = true;
  return config;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw emfield::IoError("cannot open output file: " + path);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_output(path);
  out << text;
  if (!out) throw emfield::IoError("failed writing: " + path);
}

int finish_report(const emfield::VerificationReport& report, const CommonOptions& opts) {
  for (const auto& check : report.checks) {
    std::printf("[%s] %-55s max_err=%.3e tol=%.3e scale=%.3e\n",
                check.pass ? "PASS" : "FAIL", check.name.c_str(), check.max_abs_error,
                check.tolerance, check.scale);
    if (!check.pass && !check.details.empty()) {
      std::printf("       %s\n", check.details.c_str());
    }
  }
  if (!opts.json_out.empty()) write_text(opts.json_out, report_to_json(report));
  std::printf("%zu checks, %s\n", report.checks.size(),
              report.all_pass() ? "all passed" : "FAILURES present");
  return report.all_pass() ? kExitPass : kExitCheckFailure;
}

int cmd_verify(const CommonOptions& opts, const std::vector<std::string>& suites) {
  RunConfig config = resolve_config(opts);
  if (!suites.empty()) config.suites = suites;
  return finish_report(emfield::run_suites(config, config.suites), opts);
}

int cmd_expect(const CommonOptions& opts) {
  const RunConfig config = resolve_config(opts);
  const auto grid = emfield::LightconeGrid::build(config.grid);
  emfield::GramContext ctx(grid, config.constants);
  for (const auto& decl : config.functions) {
    ctx.add(decl.name, sample_on_grid(gaussian_packet(decl.packet), grid));
  }
  json out;
  out["words"] = json::array();
  for (const auto& word : config.words) {
    const emfield::Complex value = vacuum_expectation(word.ops, ctx);
    out["words"].push_back(
        {{"name", word.name}, {"value", {value.real(), value.imag()}}});
  }
  out["fieldProducts"] = json::array();
  for (const auto& prod : config.field_products) {
    const emfield::Complex value = field_vev(prod.symbols, ctx);
    out["fieldProducts"].push_back(
        {{"name", prod.name}, {"value", {value.real(), value.imag()}}});
  }
  const std::string text = out.dump(2) + "\n";
  if (!opts.json_out.empty()) {
    write_text(opts.json_out, text);
  } else {
    std::fputs(text.c_str(), stdout);
  }
  return kExitPass;
}

int cmd_covariance(const CommonOptions& opts, const std::string& gram_out) {
  const RunConfig config = resolve_config(opts);
  const auto grid = emfield::LightconeGrid::build(config.grid);
  emfield::GramContext ctx(grid, config.constants);
  std::vector<emfield::LabelId> real_labels;
  std::vector<std::string> real_names;
  for (const auto& decl : config.functions) {
    const auto id = ctx.add(decl.name, sample_on_grid(gaussian_packet(decl.packet), grid));
    if (decl.packet.real_symmetrized) {
      real_labels.push_back(id);
      real_names.push_back(decl.name);
    }
  }
  if (real_labels.empty()) {
    throw emfield::ConfigError("covariance needs realSymmetrized functions");
  }
  const Eigen::MatrixXd c = covariance_matrix(real_labels, ctx);
  if (!opts.csv_out.empty()) {
    auto out = open_output(opts.csv_out);
    out << "label";
    for (const auto& n : real_names) out << "," << n;
    out << "\n";
    char buf[64];
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
      out << real_names[static_cast<std::size_t>(i)];
      for (Eigen::Index j = 0; j < c.cols(); ++j) {
        std::snprintf(buf, sizeof(buf), ",%.17g", c(i, j));
        out << buf;
      }
      out << "\n";
    }
  }
  if (!gram_out.empty()) {
    auto out = open_output(gram_out);
    std::vector<std::string> names;
    for (int i = 0; i < ctx.size(); ++i) names.push_back(ctx.name(i));
    emfield::write_gram_csv(out, ctx.matrix(), names);
  }
  const auto psd = emfield::positivity_report(c.cast<emfield::Complex>(),
                                     config.tolerances.gram_psd);
  std::printf("covariance %ldx%ld, eigenvalues in [%.6g, %.6g], %s\n",
              static_cast<long>(c.rows()), static_cast<long>(c.cols()),
              psd.min_eigenvalue, psd.max_eigenvalue, psd.pass ? "PSD" : "NOT PSD");
  return psd.pass ? kExitPass : kExitCheckFailure;
}

int cmd_sample(const CommonOptions& opts, int count_override) {
  RunConfig config = resolve_config(opts);
  if (count_override > 0) config.sample_count = count_override;
  const auto grid = emfield::LightconeGrid::build(config.grid);
  emfield::GramContext ctx(grid, config.constants);
  std::vector<emfield::LabelId> real_labels;
  std::vector<std::string> real_names;
  for (const auto& decl : config.functions) {
    const auto id = ctx.add(decl.name, sample_on_grid(gaussian_packet(decl.packet), grid));
    if (decl.packet.real_symmetrized) {
      real_labels.push_back(id);
      real_names.push_back(decl.name);
    }
  }
  if (real_labels.empty()) {
    throw emfield::ConfigError("sample needs realSymmetrized functions");
  }
  const Eigen::MatrixXd c = covariance_matrix(real_labels, ctx);
  const auto batch = emfield::draw_samples(c, config.sample_count, config.seed,
                                           config.jobs, config.tolerances.gram_psd);
  if (!opts.csv_out.empty()) {
    auto out = open_output(opts.csv_out);
    write_samples_csv(out, batch, real_names);
  }
  const auto moments = moment_report(batch, c, real_labels, ctx);
  if (!opts.json_out.empty()) {
    json j;
    j["sampleCount"] = config.sample_count;
    j["seed"] = config.seed;
    j["moments"] = json::array();
    for (const auto& chk : moments.checks) {
      j["moments"].push_back({{"name", chk.name},
                              {"value", chk.value},
                              {"limit", chk.limit},
                              {"status", chk.pass ? "pass" : "fail"}});
    }
    j["allPass"] = moments.pass;
    write_text(opts.json_out, j.dump(2) + "\n");
  }
  std::printf("%d samples x %zu labels, moments %s\n", config.sample_count,
              real_names.size(), moments.pass ? "within bands" : "OUT OF BAND");
  return moments.pass ? kExitPass : kExitCheckFailure;
}

int cmd_lorentz(const CommonOptions& opts, const std::vector<double>& rapidities) {
  RunConfig config = resolve_config(opts);
  if (!rapidities.empty()) config.rapidities = rapidities;
  config.suites = {"lorentz"};
  return finish_report(emfield::run_suites(config, config.suites), opts);
}

int cmd_convergence(const CommonOptions& opts) {
  RunConfig config = resolve_config(opts);
  config.suites = {"convergence"};
  return finish_report(emfield::run_suites(config, config.suites), opts);
}

int cmd_grid(const CommonOptions& opts) {
  const RunConfig config = resolve_config(opts);
  const auto grid = emfield::LightconeGrid::build(config.grid);
  if (opts.csv_out.empty()) {
    throw emfield::ConfigError("grid dump needs --out <csv>");
  }
  auto out = open_output(opts.csv_out);
  grid->write_csv(out);
  std::printf("wrote %d nodes\n", grid->size());
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical checks for a random-field presentation of the free "
               "quantized electromagnetic field"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::vector<std::string> suites;
  std::vector<double> rapidities;
  std::string gram_out;
  int sample_count = 0;

  auto add_common = [&opts](CLI::App* cmd) {
    cmd->add_option("--config", opts.config_path,
                    "JSON run configuration (falls back to $EMFIELD_CONFIG, then "
                    "built-in defaults)");
    cmd->add_option("--seed", opts.seed, "override the RNG seed");
    cmd->add_option("--jobs", opts.jobs, "worker threads for sampling");
    cmd->add_flag("--deterministic", opts.deterministic,
                  "force ordered reductions and reproducible reports");
    cmd->add_option("--json", opts.json_out, "write a JSON report here");
    cmd->add_option("--out", opts.csv_out, "write CSV output here");
  };

  CLI::App* verify = app.add_subcommand("verify", "run named verification suites");
  add_common(verify);
  verify->add_option("--suite", suites, "suite name (repeatable; default: all)");

  CLI::App* expect = app.add_subcommand("expect", "evaluate configured operator words");
  add_common(expect);

  CLI::App* covariance =
      app.add_subcommand("covariance", "covariance matrix of the real function set");
  add_common(covariance);
  covariance->add_option("--gram", gram_out, "also dump the full complex Gram CSV");

  CLI::App* sample = app.add_subcommand("sample", "draw Gaussian field samples");
  add_common(sample);
  sample->add_option("--count", sample_count, "number of rows to draw");

  CLI::App* lorentz = app.add_subcommand("lorentz", "rotation and boost covariance");
  add_common(lorentz);
  lorentz->add_option("--rapidity", rapidities, "boost rapidities along z (repeatable)");

  CLI::App* convergence =
      app.add_subcommand("convergence", "radial quadrature refinement study");
  add_common(convergence);

  CLI::App* grid = app.add_subcommand("grid", "dump the grid nodes as CSV");
  add_common(grid);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(opts, suites);
    if (expect->parsed()) return cmd_expect(opts);
    if (covariance->parsed()) return cmd_covariance(opts, gram_out);
    if (sample->parsed()) return cmd_sample(opts, sample_count);
    if (lorentz->parsed()) return cmd_lorentz(opts, rapidities);
    if (convergence->parsed()) return cmd_convergence(opts);
    if (grid->parsed()) return cmd_grid(opts);
  } catch (const emfield::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const emfield::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitIoError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfigError;
  }
  return kExitConfigError;
}
