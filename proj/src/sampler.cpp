#include "emfield/sampler.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

namespace emfield {

Eigen::MatrixXd covariance_matrix(const std::vector<LabelId>& labels,
                                  GramContext& ctx) {
  for (const LabelId id : labels) {
    if (!is_real_function(ctx.function(id), 1e-12)) {
      throw std::invalid_argument("covariance label '" + ctx.name(id) +
                                  "' is not a real test function");
    }
  }
  const auto n = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXd c(n, n);
  double scale = 0.0;
  double worst_imag = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const LabelId bi = ctx.bullet_label(labels[static_cast<std::size_t>(i)]);
      const LabelId bj = ctx.bullet_label(labels[static_cast<std::size_t>(j)]);
      const Complex v = ctx.inner(ctx.star_label(bi), bj);
      c(i, j) = v.real();
      c(j, i) = v.real();
      scale = std::max(scale, std::abs(v));
      worst_imag = std::max(worst_imag, std::abs(v.imag()));
    }
  }
  if (worst_imag > 1e-12 * std::max(scale, 1e-300)) {
    throw std::runtime_error("covariance has a non-negligible imaginary part");
  }
  return c;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

SampleBatch draw_samples(const Eigen::MatrixXd& c, int n_samples, std::uint64_t seed,
                         int jobs, double psd_tol) {
  if (n_samples < 1) throw std::invalid_argument("sample count must be positive");
  const Eigen::Index n = c.rows();
  if (c.cols() != n) throw std::invalid_argument("covariance must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
  const double lam_max = n > 0 ? std::max(es.eigenvalues().maxCoeff(), 0.0) : 0.0;
  Eigen::VectorXd lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (lam(i) < -psd_tol * lam_max) {
      throw std::runtime_error("covariance is not positive semidefinite");
    }
    lam(i) = std::max(lam(i), 0.0);
  }
  const Eigen::MatrixXd factor =
      es.eigenvectors() * lam.cwiseSqrt().asDiagonal();  // C = factor factor^T

  SampleBatch batch;
  batch.seed = seed;
  batch.values.resize(n_samples, n);
  auto fill_rows = [&](int begin, int end) {
    for (int r = begin; r < end; ++r) {
      std::mt19937_64 engine(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(r))));
      std::normal_distribution<double> normal(0.0, 1.0);
      Eigen::VectorXd z(n);
      for (Eigen::Index i = 0; i < n; ++i) z(i) = normal(engine);
      batch.values.row(r) = (factor * z).transpose();
    }
  };
  if (jobs <= 1) {
    fill_rows(0, n_samples);
  } else {
    std::vector<std::thread> workers;
    const int chunk = (n_samples + jobs - 1) / jobs;
    for (int j = 0; j < jobs; ++j) {
      const int begin = j * chunk;
      const int end = std::min(n_samples, begin + chunk);
      if (begin >= end) break;
      workers.emplace_back(fill_rows, begin, end);
    }
    for (auto& w : workers) w.join();
  }
  return batch;
}

MomentReport moment_report(const SampleBatch& batch, const Eigen::MatrixXd& c,
                           const std::vector<LabelId>& labels, GramContext& ctx,
                           double sigmas) {
  MomentReport report;
  const Eigen::Index n = c.rows();
  const Eigen::Index rows = batch.values.rows();
  const double sqrt_n = std::sqrt(static_cast<double>(rows));

  auto push = [&report](const std::string& name, double value, double limit) {
    report.checks.push_back({name, value, limit, value <= limit});
  };

  // means ~ 0 (odd moments)
  {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double mean = batch.values.col(i).mean();
      const double sd = std::sqrt(std::max(c(i, i), 1e-300));
      worst = std::max(worst, std::abs(mean) / (sd / sqrt_n));
    }
    push("mean z-score", worst, sigmas);
  }

  // second moments against C, in standard-error units estimated per pair
  {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        const Eigen::ArrayXd prod =
            batch.values.col(i).array() * batch.values.col(j).array();
        const double mean = prod.mean();
        const double var = (prod - mean).square().mean();
        const double se = std::sqrt(std::max(var, 1e-300)) / sqrt_n;
        worst = std::max(worst, std::abs(mean - c(i, j)) / se);
      }
    }
    push("covariance z-score", worst, sigmas);
  }

  // third moments ~ 0
  {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::ArrayXd cube = batch.values.col(i).array().cube();
      const double mean = cube.mean();
      const double var = (cube - mean).square().mean();
      worst = std::max(worst, std::abs(mean) / (std::sqrt(std::max(var, 1e-300)) / sqrt_n));
    }
    push("third-moment z-score", worst, sigmas);
  }

  // fourth moments against Isserlis targets, and engine against Isserlis
  {
    double worst = 0.0;
    double engine_diff = 0.0;
    double engine_scale = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j)
        for (Eigen::Index k = j; k < n; ++k)
          for (Eigen::Index l = k; l < n; ++l) {
            const double target =
                c(i, j) * c(k, l) + c(i, k) * c(j, l) + c(i, l) * c(j, k);
            const Eigen::ArrayXd prod = batch.values.col(i).array() *
                                        batch.values.col(j).array() *
                                        batch.values.col(k).array() *
                                        batch.values.col(l).array();
            const double mean = prod.mean();
            const double var = (prod - mean).square().mean();
            const double se = std::sqrt(std::max(var, 1e-300)) / sqrt_n;
            worst = std::max(worst, std::abs(mean - target) / se);

            const std::vector<FieldSymbol> product{
                {FieldKind::chi, labels[static_cast<std::size_t>(i)]},
                {FieldKind::chi, labels[static_cast<std::size_t>(j)]},
                {FieldKind::chi, labels[static_cast<std::size_t>(k)]},
                {FieldKind::chi, labels[static_cast<std::size_t>(l)]}};
            const Complex engine = field_vev(product, ctx);
            engine_diff = std::max(engine_diff, std::abs(engine - Complex(target)));
            engine_scale = std::max(engine_scale, std::abs(target));
          }
    push("fourth-moment z-score", worst, sigmas);
    report.engine_vs_isserlis = engine_diff;
    push("engine vs Isserlis", engine_diff, 1e-13 * std::max(engine_scale, 1e-300));
  }

  report.pass = true;
  for (const auto& chk : report.checks) report.pass = report.pass && chk.pass;
  return report;
}

void write_samples_csv(std::ostream& os, const SampleBatch& batch,
                       const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    os << (i ? "," : "") << names[i];
  }
  os << "\n";
  char buf[64];
  for (Eigen::Index r = 0; r < batch.values.rows(); ++r) {
    for (Eigen::Index j = 0; j < batch.values.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%s%.17g", j ? "," : "", batch.values(r, j));
      os << buf;
    }
    os << "\n";
  }
}

}  // namespace emfield
