#pragma once

#include <memory>
#include <vector>

#include "emfield/grid.hpp"
#include "emfield/tensor.hpp"

namespace emfield {

enum class FrequencySign { positive, negative };

/// Tensor-valued test function represented by its on-shell samples:
/// plus sheet holds f~(+|k|, k), minus sheet f~(-|k|, k), per grid node.
class OnShellTestFunction {
 public:
  OnShellTestFunction(GridPtr grid, std::vector<AntisymTensor2> plus,
                      std::vector<AntisymTensor2> minus);

  static OnShellTestFunction zero(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  int size() const { return static_cast<int>(plus_.size()); }

  const AntisymTensor2& plus(int i) const { return plus_[static_cast<std::size_t>(i)]; }
  const AntisymTensor2& minus(int i) const { return minus_[static_cast<std::size_t>(i)]; }
  const AntisymTensor2& sheet(FrequencySign s, int i) const {
    return s == FrequencySign::positive ? plus(i) : minus(i);
  }

  double max_abs() const;

 private:
  GridPtr grid_;
  std::vector<AntisymTensor2> plus_;
  std::vector<AntisymTensor2> minus_;
};

struct GaussianPacketParams {
  AntisymTensor2 amplitude;
  FourVector center;
  double sigma = 1.0;
  bool real_symmetrized = false;
};

/// Closed-form momentum-space test function: a complex linear combination of
/// Gaussian packets, each optionally carrying an exact Lorentz transform.
/// evaluate() works at arbitrary 4-momenta, on or off the shell.
class AnalyticTestFunction {
 public:
  AntisymTensor2 evaluate(const FourVector& k) const;

  friend AnalyticTestFunction gaussian_packet(const GaussianPacketParams& params);
  friend AnalyticTestFunction lorentz_transform(const AnalyticTestFunction& f,
                                                const Mat4& l);
  friend AnalyticTestFunction add(const AnalyticTestFunction& f,
                                  const AnalyticTestFunction& g);
  friend AnalyticTestFunction scale(const AnalyticTestFunction& f, Complex s);

 private:
  struct Term {
    Complex coeff{1.0, 0.0};
    GaussianPacketParams packet;
    Mat4 lorentz = Mat4::identity();
  };
  std::vector<Term> terms_;
};

AnalyticTestFunction gaussian_packet(const GaussianPacketParams& params);

/// (Lf)~(k) = L (x) L - transformed f~(L^{-1} k); covariant indices pick up
/// the inverse transpose, see tensor_transform_cov. Throws if L is not a
/// Lorentz matrix to 1e-12.
AnalyticTestFunction lorentz_transform(const AnalyticTestFunction& f, const Mat4& l);

AnalyticTestFunction add(const AnalyticTestFunction& f, const AnalyticTestFunction& g);
AnalyticTestFunction scale(const AnalyticTestFunction& f, Complex s);

OnShellTestFunction sample_on_grid(const AnalyticTestFunction& f, const GridPtr& grid);

/// (f*)~(k) = conj(f~(-k)): conjugate, swap sheets, negate the spatial momentum.
OnShellTestFunction star_conjugate(const OnShellTestFunction& f);

/// The four frequency x duality components; they sum back to the original.
struct FourPartSplit {
  // indexed [frequency][duality], 0 = positive/plus
  std::array<std::array<OnShellTestFunction, 2>, 2> part;

  const OnShellTestFunction& operator()(FrequencySign f, DualitySign d) const {
    return part[f == FrequencySign::positive ? 0 : 1]
               [d == DualitySign::plus ? 0 : 1];
  }
};

FourPartSplit four_part_split(const OnShellTestFunction& f);

/// plus'(i) = P+ plus(i) + P- minus(neg i);  minus'(i) = P+ plus(neg i) + P- minus(i).
/// The image is even in the full 4-momentum: minus'(i) == plus'(neg i).
OnShellTestFunction bullet_map(const OnShellTestFunction& f);

/// plus'(i) = P+ plus(i) + P- conj(plus(i)); minus'(i) = P+ conj(minus(i)) + P- minus(i).
/// Additive but not complex-homogeneous.
OnShellTestFunction box_map(const OnShellTestFunction& f);

/// Even extension with plus sheet H: result.plus(i) = H(i),
/// result.minus(i) = H(neg i); bullet_map of the result reproduces H.
OnShellTestFunction bullet_preimage(const std::vector<AntisymTensor2>& plus_sheet,
                                    const GridPtr& grid);

OnShellTestFunction add(const OnShellTestFunction& f, const OnShellTestFunction& g);
OnShellTestFunction scale(const OnShellTestFunction& f, Complex s);
OnShellTestFunction apply_hodge(const OnShellTestFunction& f);

/// max node-wise |f - g| over both sheets; functions must share a grid.
double max_abs_difference(const OnShellTestFunction& f, const OnShellTestFunction& g);

/// Star fixed point within tol, i.e. the momentum-space reality condition.
bool is_real_function(const OnShellTestFunction& f, double tol);

}  // namespace emfield
