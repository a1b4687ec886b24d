#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

#include "emfield/ladder.hpp"

namespace emfield {

/// Covariance C_ij = <chi_i chi_j> over real test functions, computed through
/// the pairing route (star(bullet f_i), bullet f_j). Labels must satisfy the
/// reality condition (star fixed point, tolerance 1e-12) or this throws;
/// residual imaginary parts beyond 1e-12 of scale also throw, since they
/// would indicate a pairing bug rather than roundoff.
Eigen::MatrixXd covariance_matrix(const std::vector<LabelId>& labels,
                                  GramContext& ctx);

struct SampleBatch {
  Eigen::MatrixXd values;  // one row per draw, one column per label
  std::uint64_t seed = 0;
};

/// I.i.d. zero-mean multivariate normal rows with covariance c, via a
/// symmetric eigendecomposition. Eigenvalues in [-tol*max, 0) are floored to
/// zero; anything lower throws (no silent repair). Each row's stream is keyed
/// by (seed, row) - splitmix64 into mt19937_64 - so results are identical for
/// any job count.
SampleBatch draw_samples(const Eigen::MatrixXd& c, int n_samples, std::uint64_t seed,
                         int jobs = 1, double psd_tol = 1e-10);

struct MomentCheck {
  std::string name;
  double value = 0.0;       // worst deviation, in units below
  double limit = 0.0;       // allowed deviation
  bool pass = true;
};

struct MomentReport {
  std::vector<MomentCheck> checks;
  double engine_vs_isserlis = 0.0;  // max |<chi chi chi chi> - Wick combination|
  bool pass = true;
};

/// Compares empirical first/second/fourth moments of the batch against the
/// covariance and the Gaussian (Isserlis) fourth-moment targets, flagging
/// deviations beyond `sigmas` standard errors; also cross-checks the ladder
/// engine's four-point values against the Isserlis combination of c.
MomentReport moment_report(const SampleBatch& batch, const Eigen::MatrixXd& c,
                           const std::vector<LabelId>& labels, GramContext& ctx,
                           double sigmas = 4.0);

/// CSV: header = label names, 17 significant digits.
void write_samples_csv(std::ostream& os, const SampleBatch& batch,
                       const std::vector<std::string>& names);

}  // namespace emfield
