#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "emfield/testfunction.hpp"

namespace emfield {

struct PhysicalConstants {
  double hbar = 1.0;
};

/// The commutation bracket as a quadrature over the positive sheet:
///   (f, g) = -hbar * sum_i w_i (k^a conj(f+)_{a mu})(k_i) eta^{mu nu}
///                                 (k^b (g+)_{b nu})(k_i).
/// Conjugate-linear in f, linear in g; only plus sheets contribute.
/// Throws std::invalid_argument when f and g live on different grids.
Complex inner_product(const OnShellTestFunction& f, const OnShellTestFunction& g,
                      const PhysicalConstants& constants = {});

using LabelId = int;

/// Registry of named test functions on a shared grid, with all pairwise
/// inner products cached. Derived labels (star, bullet, box images) are
/// registered once and memoized. Intended use: populate during setup,
/// then treat as read-only while evaluating operator words.
class GramContext {
 public:
  GramContext(GridPtr grid, PhysicalConstants constants);

  LabelId add(const std::string& name, OnShellTestFunction fn);

  int size() const { return static_cast<int>(functions_.size()); }
  const GridPtr& grid() const { return grid_; }
  const PhysicalConstants& constants() const { return constants_; }
  const std::string& name(LabelId id) const;
  const OnShellTestFunction& function(LabelId id) const;

  /// Cached (f_i, f_j); entry (i,j) is stored, (j,i) is its conjugate.
  Complex inner(LabelId i, LabelId j) const;

  LabelId star_label(LabelId id);
  LabelId bullet_label(LabelId id);
  LabelId box_label(LabelId id);

  /// Hermitian matrix over the given labels, in the given order.
  Eigen::MatrixXcd matrix(const std::vector<LabelId>& labels) const;
  /// Matrix over all registered labels.
  Eigen::MatrixXcd matrix() const;

 private:
  GridPtr grid_;
  PhysicalConstants constants_;
  std::vector<std::string> names_;
  std::vector<OnShellTestFunction> functions_;
  std::vector<std::vector<Complex>> gram_;  // gram_[i][j] for j <= i
  std::map<std::pair<LabelId, char>, LabelId> derived_;
};

struct PositivityReport {
  Eigen::VectorXd eigenvalues;  // ascending
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double tolerance = 1e-10;  // relative to max eigenvalue
  bool pass = true;
};

/// Eigenvalue spectrum of a Hermitian Gram matrix; flags eigenvalues below
/// -tol * lambda_max. Report-only, never throws on failure.
PositivityReport positivity_report(const Eigen::MatrixXcd& gram, double tol = 1e-10);

/// Complex entries as re,im pairs, 17 significant digits, row-major.
void write_gram_csv(std::ostream& os, const Eigen::MatrixXcd& gram,
                    const std::vector<std::string>& names);

}  // namespace emfield
