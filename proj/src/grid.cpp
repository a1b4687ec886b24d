#include "emfield/grid.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <stdexcept>

namespace emfield {

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

Vec3 apply3(const Mat3& r, const Vec3& v) {
  Vec3 out{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[i] += r[i][j] * v[j];
  return out;
}

/// Union of images of a seed direction under all 48 signed permutations.
/// Components of every image are sign/position rearrangements of the seed's,
/// so set membership tests are exact.
std::vector<Vec3> octahedral_orbit(const Vec3& seed) {
  std::set<Vec3> pts;
  std::array<int, 3> perm{0, 1, 2};
  std::sort(perm.begin(), perm.end());
  do {
    for (int sx : {1, -1})
      for (int sy : {1, -1})
        for (int sz : {1, -1}) {
          pts.insert(Vec3{sx * seed[static_cast<std::size_t>(perm[0])],
                          sy * seed[static_cast<std::size_t>(perm[1])],
                          sz * seed[static_cast<std::size_t>(perm[2])]});
        }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {pts.begin(), pts.end()};
}

double double_factorial(int n) {
  double r = 1.0;
  while (n > 1) {
    r *= n;
    n -= 2;
  }
  return r;
}

/// int_{S^2} x^{2a} y^{2b} z^{2c} dOmega.
double sphere_moment(int a, int b, int c) {
  return 4.0 * std::numbers::pi * double_factorial(2 * a - 1) *
         double_factorial(2 * b - 1) * double_factorial(2 * c - 1) /
         double_factorial(2 * (a + b + c) + 1);
}

struct DirectionSet {
  std::vector<Vec3> dirs;
  std::vector<double> weights;  // sum to 4 pi
};

/// Weights for a union of octahedral orbits, one weight per orbit, fixed by
/// exactness on the octahedrally invariant moments up to the design order.
/// Underdetermined systems take the minimum-norm solution; a negative or
/// inconsistent result would be a construction bug and throws.
DirectionSet solve_orbit_weights(const std::vector<std::vector<Vec3>>& orbits,
                                 const std::vector<std::array<int, 3>>& moments) {
  const auto n_cond = static_cast<Eigen::Index>(moments.size());
  const auto n_orb = static_cast<Eigen::Index>(orbits.size());
  Eigen::MatrixXd a(n_cond, n_orb);
  Eigen::VectorXd rhs(n_cond);
  for (Eigen::Index i = 0; i < n_cond; ++i) {
    const auto& m = moments[static_cast<std::size_t>(i)];
    rhs(i) = sphere_moment(m[0], m[1], m[2]);
    for (Eigen::Index j = 0; j < n_orb; ++j) {
      double s = 0.0;
      for (const auto& d : orbits[static_cast<std::size_t>(j)])
        s += std::pow(d[0], 2 * m[0]) * std::pow(d[1], 2 * m[1]) *
             std::pow(d[2], 2 * m[2]);
      a(i, j) = s;
    }
  }
  Eigen::VectorXd w = a.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  if ((a * w - rhs).cwiseAbs().maxCoeff() > 1e-10 || w.minCoeff() <= 0.0) {
    throw std::runtime_error("angular scheme weight solve failed");
  }
  DirectionSet set;
  for (Eigen::Index j = 0; j < n_orb; ++j) {
    for (const auto& d : orbits[static_cast<std::size_t>(j)]) {
      set.dirs.push_back(d);
      set.weights.push_back(w(j));
    }
  }
  return set;
}

DirectionSet make_direction_set(AngularScheme scheme) {
  const double s2 = 1.0 / std::sqrt(2.0);
  const double s3 = 1.0 / std::sqrt(3.0);
  const auto axes = octahedral_orbit({1.0, 0.0, 0.0});
  const auto edges = octahedral_orbit({s2, s2, 0.0});
  const auto corners = octahedral_orbit({s3, s3, s3});
  auto unit = [](double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    return Vec3{x / n, y / n, z / n};
  };
  switch (scheme) {
    case AngularScheme::pair2: {
      DirectionSet set;
      set.dirs = {Vec3{0.0, 0.0, 1.0}, Vec3{0.0, 0.0, -1.0}};
      set.weights = {2.0 * std::numbers::pi, 2.0 * std::numbers::pi};
      return set;
    }
    case AngularScheme::oct6:
      return solve_orbit_weights({axes}, {{0, 0, 0}});
    case AngularScheme::oct26:
      return solve_orbit_weights({axes, edges, corners},
                                 {{0, 0, 0}, {2, 0, 0}, {1, 1, 1}});
    case AngularScheme::oct98:
      // 6 + 12 + 8 + three 24-point orbits, exact through degree 11.
      return solve_orbit_weights(
          {axes, edges, corners, octahedral_orbit(unit(1, 1, 2)),
           octahedral_orbit(unit(1, 1, 3)), octahedral_orbit(unit(1, 3, 0))},
          {{0, 0, 0}, {2, 0, 0}, {1, 1, 1}, {4, 0, 0}, {5, 0, 0}});
  }
  throw std::invalid_argument("unknown angular scheme");
}

struct Vec3Less {
  bool operator()(const Vec3& a, const Vec3& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

}  // namespace

AngularScheme parse_angular_scheme(int point_count) {
  switch (point_count) {
    case 2: return AngularScheme::pair2;
    case 6: return AngularScheme::oct6;
    case 26: return AngularScheme::oct26;
    case 98: return AngularScheme::oct98;
    default:
      throw std::invalid_argument("unknown angular scheme: " +
                                  std::to_string(point_count));
  }
}

void GridSpec::validate() const {
  if (radial_nodes <= 0) throw std::invalid_argument("radialNodes must be positive");
  if (!(k_min > 0.0)) throw std::invalid_argument("kMin must be positive");
  if (!(k_min < k_max)) throw std::invalid_argument("kMin must be below kMax");
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n <= 0) throw std::invalid_argument("gauss_legendre: n must be positive");
  nodes.resize(static_cast<std::size_t>(n));
  weights.resize(static_cast<std::size_t>(n));
  if (n == 1) {
    nodes[0] = 0.5 * (a + b);
    weights[0] = b - a;
    return;
  }
  // Golub-Welsch: eigen-decompose the Jacobi matrix of the Legendre weight.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double bi = i / std::sqrt(4.0 * i * i - 1.0);
    jac(i - 1, i) = bi;
    jac(i, i - 1) = bi;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  for (int i = 0; i < n; ++i) {
    const double x = es.eigenvalues()(i);
    const double w = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
    nodes[static_cast<std::size_t>(i)] = 0.5 * (b - a) * x + 0.5 * (a + b);
    weights[static_cast<std::size_t>(i)] = 0.5 * (b - a) * w;
  }
}

std::shared_ptr<const LightconeGrid> LightconeGrid::build(const GridSpec& spec) {
  spec.validate();
  const DirectionSet dirs = make_direction_set(spec.scheme);
  std::vector<double> r, rw;
  gauss_legendre(spec.radial_nodes, spec.k_min, spec.k_max, r, rw);

  auto grid = std::shared_ptr<LightconeGrid>(new LightconeGrid());
  grid->spec_ = spec;
  grid->num_directions_ = static_cast<int>(dirs.dirs.size());
  const double cube2pi = std::pow(2.0 * std::numbers::pi, 3);
  for (std::size_t a = 0; a < r.size(); ++a) {
    for (std::size_t b = 0; b < dirs.dirs.size(); ++b) {
      const auto& n = dirs.dirs[b];
      grid->kvec_.push_back(Vec3{r[a] * n[0], r[a] * n[1], r[a] * n[2]});
      grid->weight_.push_back(rw[a] * dirs.weights[b] * r[a] * r[a] /
                              (cube2pi * 2.0 * r[a]));
      grid->omega_.push_back(r[a]);
    }
  }

  // Parity partner and rotation permutations by exact lookup. Directions are
  // component rearrangements of each other, so the maps are exact by design.
  std::map<Vec3, int, Vec3Less> dir_index;
  for (int b = 0; b < grid->num_directions_; ++b)
    dir_index[dirs.dirs[static_cast<std::size_t>(b)]] = b;

  std::vector<int> dir_neg(static_cast<std::size_t>(grid->num_directions_));
  for (int b = 0; b < grid->num_directions_; ++b) {
    const auto& d = dirs.dirs[static_cast<std::size_t>(b)];
    dir_neg[static_cast<std::size_t>(b)] = dir_index.at(Vec3{-d[0], -d[1], -d[2]});
  }
  grid->partner_.resize(grid->kvec_.size());
  for (int a = 0; a < spec.radial_nodes; ++a)
    for (int b = 0; b < grid->num_directions_; ++b)
      grid->partner_[static_cast<std::size_t>(a * grid->num_directions_ + b)] =
          a * grid->num_directions_ + dir_neg[static_cast<std::size_t>(b)];

  const auto& rotations = proper_rotations();
  for (std::size_t ri = 0; ri < rotations.size(); ++ri) {
    std::vector<int> dir_perm(static_cast<std::size_t>(grid->num_directions_));
    bool closed = true;
    for (int b = 0; b < grid->num_directions_ && closed; ++b) {
      const Vec3 image = apply3(rotations[ri], dirs.dirs[static_cast<std::size_t>(b)]);
      const auto it = dir_index.find(image);
      if (it == dir_index.end()) {
        closed = false;
      } else {
        dir_perm[static_cast<std::size_t>(b)] = it->second;
      }
    }
    if (!closed) continue;
    auto& perm = grid->rotation_perm_[ri];
    perm.resize(grid->kvec_.size());
    for (int a = 0; a < spec.radial_nodes; ++a)
      for (int b = 0; b < grid->num_directions_; ++b)
        perm[static_cast<std::size_t>(a * grid->num_directions_ + b)] =
            a * grid->num_directions_ + dir_perm[static_cast<std::size_t>(b)];
  }
  return grid;
}

std::shared_ptr<const LightconeGrid> LightconeGrid::from_nodes(
    const std::vector<Vec3>& kvecs, const std::vector<double>& weights) {
  if (kvecs.empty() || kvecs.size() != weights.size()) {
    throw std::invalid_argument("node and weight counts must match and be nonzero");
  }
  auto grid = std::shared_ptr<LightconeGrid>(new LightconeGrid());
  grid->spec_ = GridSpec{0, 0.0, 0.0, AngularScheme::pair2};
  grid->num_directions_ = static_cast<int>(kvecs.size());
  std::map<Vec3, int, Vec3Less> index;
  for (std::size_t i = 0; i < kvecs.size(); ++i) {
    const auto& k = kvecs[i];
    const double omega = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    if (omega == 0.0) throw std::invalid_argument("zero-momentum node");
    if (!(weights[i] > 0.0)) throw std::invalid_argument("weights must be positive");
    if (!index.emplace(k, static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate node");
    }
    grid->kvec_.push_back(k);
    grid->weight_.push_back(weights[i]);
    grid->omega_.push_back(omega);
  }
  grid->partner_.resize(kvecs.size());
  for (std::size_t i = 0; i < kvecs.size(); ++i) {
    const auto& k = kvecs[i];
    const auto it = index.find(Vec3{-k[0], -k[1], -k[2]});
    if (it == index.end()) throw std::invalid_argument("node set not parity closed");
    if (weights[static_cast<std::size_t>(it->second)] != weights[i]) {
      throw std::invalid_argument("parity partners must share a weight");
    }
    grid->partner_[i] = it->second;
  }
  const auto& rotations = proper_rotations();
  for (std::size_t ri = 0; ri < rotations.size(); ++ri) {
    std::vector<int> perm(kvecs.size());
    bool closed = true;
    for (std::size_t i = 0; i < kvecs.size() && closed; ++i) {
      const auto it = index.find(apply3(rotations[ri], kvecs[i]));
      if (it == index.end()) {
        closed = false;
      } else {
        perm[i] = it->second;
      }
    }
    if (closed) grid->rotation_perm_[ri] = std::move(perm);
  }
  return grid;
}

const std::array<std::array<std::array<double, 3>, 3>, 24>&
LightconeGrid::proper_rotations() {
  static const auto rotations = [] {
    std::array<Mat3, 24> out{};
    std::size_t count = 0;
    std::array<int, 3> perm{0, 1, 2};
    std::sort(perm.begin(), perm.end());
    std::vector<Mat3> all;
    do {
      for (int sx : {1, -1})
        for (int sy : {1, -1})
          for (int sz : {1, -1}) {
            Mat3 r{};
            r[0][static_cast<std::size_t>(perm[0])] = sx;
            r[1][static_cast<std::size_t>(perm[1])] = sy;
            r[2][static_cast<std::size_t>(perm[2])] = sz;
            const double det =
                r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
                r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
                r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
            if (det > 0.5) all.push_back(r);
          }
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& r : all) out[count++] = r;
    return out;
  }();
  return rotations;
}

bool LightconeGrid::rotation_supported(int rotation_index) const {
  return !rotation_perm_[static_cast<std::size_t>(rotation_index)].empty();
}

const std::vector<int>& LightconeGrid::rotation_permutation(int rotation_index) const {
  const auto& perm = rotation_perm_[static_cast<std::size_t>(rotation_index)];
  if (perm.empty()) {
    throw std::invalid_argument("direction set not closed under this rotation");
  }
  return perm;
}

void LightconeGrid::write_csv(std::ostream& os) const {
  os << "index,kx,ky,kz,weight,partner\n";
  char buf[256];
  for (int i = 0; i < size(); ++i) {
    const auto& k = kvec(i);
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%d\n", i, k[0], k[1],
                  k[2], weight(i), parity_partner(i));
    os << buf;
  }
}

}  // namespace emfield
