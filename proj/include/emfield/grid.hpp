#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "emfield/tensor.hpp"

namespace emfield {

using Vec3 = std::array<double, 3>;

/// Direction sets on the unit sphere, identified by point count.
/// All except pair2 are unions of octahedral orbits, closed under
/// parity and all 24 proper octahedral rotations; pair2 is {+z, -z}
/// (mainly useful for hand-checkable quadratures).
/// Design orders (highest exactly integrated polynomial degree):
///   pair2: 1, oct6: 3, oct26: 7, oct98: 11.
enum class AngularScheme { pair2 = 2, oct6 = 6, oct26 = 26, oct98 = 98 };

AngularScheme parse_angular_scheme(int point_count);

struct GridSpec {
  int radial_nodes = 8;
  double k_min = 0.05;
  double k_max = 6.0;
  AngularScheme scheme = AngularScheme::oct26;

  void validate() const;  // throws std::invalid_argument
};

/// Nodes/weights for Gauss-Legendre on [a, b] (Golub-Welsch).
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// Discretized positive sheet of the mass-zero shell, carrying the
/// Lorentz-invariant measure d^3k / ((2pi)^3 2|k|).
///
/// Nodes are the product of Gauss-Legendre radii on (kMin, kMax) with a
/// parity-closed direction set; node ordering is radial-major. The parity
/// partner of every node is constructed by exact component negation, never
/// by floating-point search, so partner lookups are exact.
class LightconeGrid {
 public:
  static std::shared_ptr<const LightconeGrid> build(const GridSpec& spec);

  /// Ad-hoc grid from explicit nodes (positive weights, no zero momentum,
  /// closed under negation with matching weights). Rotation permutations are
  /// available only where the node set happens to be closed.
  static std::shared_ptr<const LightconeGrid> from_nodes(
      const std::vector<Vec3>& kvecs, const std::vector<double>& weights);

  int size() const { return static_cast<int>(kvec_.size()); }
  const GridSpec& spec() const { return spec_; }
  int num_directions() const { return num_directions_; }
  int num_radial() const { return spec_.radial_nodes; }

  const Vec3& kvec(int i) const { return kvec_[static_cast<std::size_t>(i)]; }
  double weight(int i) const { return weight_[static_cast<std::size_t>(i)]; }
  double omega(int i) const { return omega_[static_cast<std::size_t>(i)]; }

  /// Index j with kvec(j) == -kvec(i) exactly; an involution without fixed points.
  int parity_partner(int i) const { return partner_[static_cast<std::size_t>(i)]; }

  FourVector four_momentum_plus(int i) const {
    const auto& k = kvec(i);
    return FourVector{{omega(i), k[0], k[1], k[2]}};
  }
  FourVector four_momentum_minus(int i) const {
    const auto& k = kvec(i);
    return FourVector{{-omega(i), k[0], k[1], k[2]}};
  }

  /// The 24 proper octahedral rotations, in a fixed order.
  static const std::array<std::array<std::array<double, 3>, 3>, 24>& proper_rotations();

  /// True if the direction set is closed under rotation r (always true for
  /// the octahedral schemes; pair2 supports only the 8 rotations fixing {+-z}).
  bool rotation_supported(int rotation_index) const;

  /// Node permutation pi with kvec(pi(i)) == R kvec(i) exactly.
  /// Throws std::invalid_argument if the scheme is not closed under R.
  const std::vector<int>& rotation_permutation(int rotation_index) const;

  /// CSV dump: index, kx, ky, kz, weight, partner.
  void write_csv(std::ostream& os) const;

 private:
  LightconeGrid() = default;

  GridSpec spec_;
  int num_directions_ = 0;
  std::vector<Vec3> kvec_;
  std::vector<double> weight_;
  std::vector<double> omega_;
  std::vector<int> partner_;
  std::array<std::vector<int>, 24> rotation_perm_;  // empty when unsupported
};

using GridPtr = std::shared_ptr<const LightconeGrid>;

}  // namespace emfield
