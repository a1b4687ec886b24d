#include "emfield/pairing.hpp"

#include <Eigen/Eigenvalues>

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace emfield {

Complex inner_product(const OnShellTestFunction& f, const OnShellTestFunction& g,
                      const PhysicalConstants& constants) {
  if (f.grid() != g.grid()) throw std::invalid_argument("grid mismatch");
  const auto& grid = *f.grid();
  Complex sum = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    sum += grid.weight(i) * contract_kFkG(grid.four_momentum_plus(i),
                                          f.plus(i).conjugate(), g.plus(i));
  }
  return -constants.hbar * sum;
}

GramContext::GramContext(GridPtr grid, PhysicalConstants constants)
    : grid_(std::move(grid)), constants_(constants) {}

LabelId GramContext::add(const std::string& name, OnShellTestFunction fn) {
  if (fn.grid() != grid_) throw std::invalid_argument("grid mismatch");
  const LabelId id = static_cast<LabelId>(functions_.size());
  names_.push_back(name);
  functions_.push_back(std::move(fn));
  auto& row = gram_.emplace_back();
  row.reserve(static_cast<std::size_t>(id) + 1);
  for (LabelId j = 0; j <= id; ++j)
    row.push_back(inner_product(functions_.back(), functions_[static_cast<std::size_t>(j)],
                                constants_));
  return id;
}

const std::string& GramContext::name(LabelId id) const {
  return names_.at(static_cast<std::size_t>(id));
}

const OnShellTestFunction& GramContext::function(LabelId id) const {
  return functions_.at(static_cast<std::size_t>(id));
}

Complex GramContext::inner(LabelId i, LabelId j) const {
  // gram_[i][j] holds (f_i, f_j) for j <= i; the bracket is Hermitian, but the
  // transposed entry is recomputed rather than conjugated, so that cached
  // values are exactly what inner_product returns.
  if (j <= i) return gram_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
  return std::conj(gram_.at(static_cast<std::size_t>(j)).at(static_cast<std::size_t>(i)));
}

LabelId GramContext::star_label(LabelId id) {
  const auto key = std::make_pair(id, '*');
  if (const auto it = derived_.find(key); it != derived_.end()) return it->second;
  const LabelId out = add("star(" + name(id) + ")", star_conjugate(function(id)));
  derived_.emplace(key, out);
  return out;
}

LabelId GramContext::bullet_label(LabelId id) {
  const auto key = std::make_pair(id, 'b');
  if (const auto it = derived_.find(key); it != derived_.end()) return it->second;
  const LabelId out = add("bullet(" + name(id) + ")", bullet_map(function(id)));
  derived_.emplace(key, out);
  return out;
}

LabelId GramContext::box_label(LabelId id) {
  const auto key = std::make_pair(id, 'x');
  if (const auto it = derived_.find(key); it != derived_.end()) return it->second;
  const LabelId out = add("box(" + name(id) + ")", box_map(function(id)));
  derived_.emplace(key, out);
  return out;
}

Eigen::MatrixXcd GramContext::matrix(const std::vector<LabelId>& labels) const {
  const auto n = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = inner(labels[static_cast<std::size_t>(i)],
                      labels[static_cast<std::size_t>(j)]);
  return m;
}

Eigen::MatrixXcd GramContext::matrix() const {
  std::vector<LabelId> all(static_cast<std::size_t>(size()));
  for (int i = 0; i < size(); ++i) all[static_cast<std::size_t>(i)] = i;
  return matrix(all);
}

PositivityReport positivity_report(const Eigen::MatrixXcd& gram, double tol) {
  PositivityReport report;
  report.tolerance = tol;
  if (gram.rows() == 0) return report;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  report.eigenvalues = es.eigenvalues();
  report.min_eigenvalue = report.eigenvalues.minCoeff();
  report.max_eigenvalue = report.eigenvalues.maxCoeff();
  report.pass = report.min_eigenvalue >= -tol * std::max(report.max_eigenvalue, 0.0);
  return report;
}

void write_gram_csv(std::ostream& os, const Eigen::MatrixXcd& gram,
                    const std::vector<std::string>& names) {
  os << "label";
  for (const auto& n : names) os << ",re(" << n << "),im(" << n << ")";
  os << "\n";
  char buf[64];
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    os << names[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < gram.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), ",%.17g,%.17g", gram(i, j).real(),
                    gram(i, j).imag());
      os << buf;
    }
    os << "\n";
  }
}

}  // namespace emfield
