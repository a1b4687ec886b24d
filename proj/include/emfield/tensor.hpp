#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace emfield {

using Complex = std::complex<double>;

// Fixed conventions, used everywhere and documented only here:
//   metric signature (+,-,-,-), epsilon_{0123} = +1 with all indices down,
//   Hodge dual (*F)_{mu nu} = 1/2 eps_{mu nu}^{alpha beta} F_{alpha beta}.
// The 1/2 keeps ** = -1 on 2-forms in Lorentzian signature, which is what
// makes (1 +- i*)/2 a pair of complementary projections.
namespace metric {
inline constexpr std::array<double, 4> kDiag{1.0, -1.0, -1.0, -1.0};
inline constexpr double kHodgeNormalization = 0.5;
}  // namespace metric

/// Contravariant 4-vector, component 0 = time.
struct FourVector {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  double operator[](int mu) const { return c[static_cast<std::size_t>(mu)]; }
  double& operator[](int mu) { return c[static_cast<std::size_t>(mu)]; }

  FourVector operator-() const { return FourVector{{-c[0], -c[1], -c[2], -c[3]}}; }

  bool finite() const {
    return std::isfinite(c[0]) && std::isfinite(c[1]) && std::isfinite(c[2]) &&
           std::isfinite(c[3]);
  }
};

inline double minkowski_dot(const FourVector& u, const FourVector& v) {
  return u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3];
}

/// Sign of the permutation (mu,nu,alpha,beta) of (0,1,2,3); 0 on repeats.
int levi_civita(int mu, int nu, int alpha, int beta);

/// Complex antisymmetric rank-2 tensor, both indices covariant.
/// Antisymmetry is exact by construction: only the six independent
/// components are ever written, the lower triangle mirrors them.
class AntisymTensor2 {
 public:
  AntisymTensor2() = default;

  /// Components (01, 02, 03, 12, 13, 23).
  static AntisymTensor2 from_components(const std::array<Complex, 6>& c);

  /// 1/2 (M - M^T) of an arbitrary complex 4x4 matrix.
  static AntisymTensor2 antisymmetrize(const std::array<std::array<Complex, 4>, 4>& m);

  Complex operator()(int mu, int nu) const {
    return e_[static_cast<std::size_t>(4 * mu + nu)];
  }

  AntisymTensor2 operator+(const AntisymTensor2& o) const;
  AntisymTensor2 operator-(const AntisymTensor2& o) const;
  AntisymTensor2 operator*(Complex s) const;
  AntisymTensor2 operator-() const { return *this * Complex(-1.0, 0.0); }

  AntisymTensor2 conjugate() const;

  double max_abs() const;

  bool finite() const;

 private:
  void set_pair(int mu, int nu, Complex v) {
    e_[static_cast<std::size_t>(4 * mu + nu)] = v;
    e_[static_cast<std::size_t>(4 * nu + mu)] = -v;
  }

  std::array<Complex, 16> e_{};  // zero-initialised
};

inline AntisymTensor2 operator*(Complex s, const AntisymTensor2& t) { return t * s; }

/// (*F)_{mu nu} = 1/2 eps_{mu nu}^{alpha beta} F_{alpha beta}; applying twice gives -F.
AntisymTensor2 hodge_dual(const AntisymTensor2& f);

enum class DualitySign { plus, minus };

/// P_+- = (1 +- i*)/2. Idempotent, complementary, mutually annihilating.
AntisymTensor2 duality_project(const AntisymTensor2& f, DualitySign sign);

/// (k^alpha F_{alpha mu}) eta^{mu nu} (k^beta G_{beta nu}).
/// Bilinear, and exactly symmetric under F <-> G.
Complex contract_kFkG(const FourVector& k, const AntisymTensor2& f,
                      const AntisymTensor2& g);

/// Real 4x4 matrix acting on contravariant 4-vectors (row index up).
struct Mat4 {
  std::array<std::array<double, 4>, 4> m{};

  static Mat4 identity();

  double operator()(int i, int j) const {
    return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  double& operator()(int i, int j) {
    return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  Mat4 operator*(const Mat4& o) const;
  FourVector operator*(const FourVector& v) const;
};

/// max |L^T eta L - eta| deviation from the Lorentz condition.
double lorentz_defect(const Mat4& l);

/// For a Lorentz matrix, L^{-1} = eta L^T eta exactly.
Mat4 lorentz_inverse(const Mat4& l);

/// Rank-2 covariant transform: F'_{mu nu} = (L^{-1})^a_mu (L^{-1})^b_nu F_{ab}.
/// Composes contravariantly, so chaining transforms matches matrix products.
AntisymTensor2 tensor_transform_cov(const Mat4& l, const AntisymTensor2& f);

Mat4 boost_z(double rapidity);

/// Embed a spatial 3x3 rotation into a Lorentz matrix (time row/column trivial).
Mat4 embed_rotation(const std::array<std::array<double, 3>, 3>& r);

}  // namespace emfield
