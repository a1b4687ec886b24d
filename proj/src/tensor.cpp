#include "emfield/tensor.hpp"

#include <algorithm>

namespace emfield {

int levi_civita(int mu, int nu, int alpha, int beta) {
  const std::array<int, 4> p{mu, nu, alpha, beta};
  int sign = 1;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (p[static_cast<std::size_t>(i)] == p[static_cast<std::size_t>(j)]) return 0;
      if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) sign = -sign;
    }
  }
  return sign;
}

AntisymTensor2 AntisymTensor2::from_components(const std::array<Complex, 6>& c) {
  AntisymTensor2 t;
  t.set_pair(0, 1, c[0]);
  t.set_pair(0, 2, c[1]);
  t.set_pair(0, 3, c[2]);
  t.set_pair(1, 2, c[3]);
  t.set_pair(1, 3, c[4]);
  t.set_pair(2, 3, c[5]);
  return t;
}

AntisymTensor2 AntisymTensor2::antisymmetrize(
    const std::array<std::array<Complex, 4>, 4>& m) {
  AntisymTensor2 t;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu + 1; nu < 4; ++nu) {
      const auto a = m[static_cast<std::size_t>(mu)][static_cast<std::size_t>(nu)];
      const auto b = m[static_cast<std::size_t>(nu)][static_cast<std::size_t>(mu)];
      t.set_pair(mu, nu, 0.5 * (a - b));
    }
  }
  return t;
}

AntisymTensor2 AntisymTensor2::operator+(const AntisymTensor2& o) const {
  AntisymTensor2 t;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu)
      t.set_pair(mu, nu, (*this)(mu, nu) + o(mu, nu));
  return t;
}

AntisymTensor2 AntisymTensor2::operator-(const AntisymTensor2& o) const {
  AntisymTensor2 t;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu)
      t.set_pair(mu, nu, (*this)(mu, nu) - o(mu, nu));
  return t;
}

AntisymTensor2 AntisymTensor2::operator*(Complex s) const {
  AntisymTensor2 t;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu)
      t.set_pair(mu, nu, s * (*this)(mu, nu));
  return t;
}

AntisymTensor2 AntisymTensor2::conjugate() const {
  AntisymTensor2 t;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu)
      t.set_pair(mu, nu, std::conj((*this)(mu, nu)));
  return t;
}

double AntisymTensor2::max_abs() const {
  double m = 0.0;
  for (const auto& v : e_) m = std::max(m, std::abs(v));
  return m;
}

bool AntisymTensor2::finite() const {
  for (const auto& v : e_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

AntisymTensor2 hodge_dual(const AntisymTensor2& f) {
  // (*F)_{mu nu} = 1/2 eps_{mu nu rho sigma} eta^{rho a} eta^{sigma b} F_{ab};
  // the metric is diagonal, so the raised epsilon is levi * diag[a] * diag[b].
  std::array<Complex, 6> out{};
  int slot = 0;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu + 1; nu < 4; ++nu) {
      Complex sum = 0.0;
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          const int sign = levi_civita(mu, nu, a, b);
          if (sign == 0) continue;
          sum += static_cast<double>(sign) * metric::kDiag[static_cast<std::size_t>(a)] *
                 metric::kDiag[static_cast<std::size_t>(b)] * f(a, b);
        }
      }
      out[static_cast<std::size_t>(slot++)] = metric::kHodgeNormalization * sum;
    }
  }
  return AntisymTensor2::from_components(out);
}

AntisymTensor2 duality_project(const AntisymTensor2& f, DualitySign sign) {
  const Complex is = sign == DualitySign::plus ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
  return (f + is * hodge_dual(f)) * Complex(0.5, 0.0);
}

Complex contract_kFkG(const FourVector& k, const AntisymTensor2& f,
                      const AntisymTensor2& g) {
  std::array<Complex, 4> v{}, u{};
  for (int mu = 0; mu < 4; ++mu) {
    for (int a = 0; a < 4; ++a) {
      v[static_cast<std::size_t>(mu)] += k[a] * f(a, mu);
      u[static_cast<std::size_t>(mu)] += k[a] * g(a, mu);
    }
  }
  Complex sum = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    sum += v[static_cast<std::size_t>(mu)] * metric::kDiag[static_cast<std::size_t>(mu)] *
           u[static_cast<std::size_t>(mu)];
  }
  return sum;
}

Mat4 Mat4::identity() {
  Mat4 l;
  for (int i = 0; i < 4; ++i) l(i, i) = 1.0;
  return l;
}

Mat4 Mat4::operator*(const Mat4& o) const {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += (*this)(i, k) * o(k, j);
      r(i, j) = s;
    }
  return r;
}

FourVector Mat4::operator*(const FourVector& v) const {
  FourVector r;
  for (int i = 0; i < 4; ++i) {
    double s = 0.0;
    for (int j = 0; j < 4; ++j) s += (*this)(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

double lorentz_defect(const Mat4& l) {
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      double s = 0.0;
      for (int m = 0; m < 4; ++m)
        s += l(m, a) * metric::kDiag[static_cast<std::size_t>(m)] * l(m, b);
      const double target = a == b ? metric::kDiag[static_cast<std::size_t>(a)] : 0.0;
      worst = std::max(worst, std::abs(s - target));
    }
  }
  return worst;
}

Mat4 lorentz_inverse(const Mat4& l) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      r(i, j) = metric::kDiag[static_cast<std::size_t>(i)] * l(j, i) *
                metric::kDiag[static_cast<std::size_t>(j)];
  return r;
}

AntisymTensor2 tensor_transform_cov(const Mat4& l, const AntisymTensor2& f) {
  const Mat4 li = lorentz_inverse(l);
  std::array<Complex, 6> out{};
  int slot = 0;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu + 1; nu < 4; ++nu) {
      Complex sum = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) sum += li(a, mu) * li(b, nu) * f(a, b);
      out[static_cast<std::size_t>(slot++)] = sum;
    }
  }
  return AntisymTensor2::from_components(out);
}

Mat4 boost_z(double rapidity) {
  Mat4 l = Mat4::identity();
  l(0, 0) = l(3, 3) = std::cosh(rapidity);
  l(0, 3) = l(3, 0) = std::sinh(rapidity);
  return l;
}

Mat4 embed_rotation(const std::array<std::array<double, 3>, 3>& r) {
  Mat4 l;
  l(0, 0) = 1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      l(i + 1, j + 1) = r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return l;
}

}  // namespace emfield
