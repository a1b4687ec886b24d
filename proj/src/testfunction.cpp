#include "emfield/testfunction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace emfield {

OnShellTestFunction::OnShellTestFunction(GridPtr grid, std::vector<AntisymTensor2> plus,
                                         std::vector<AntisymTensor2> minus)
    : grid_(std::move(grid)), plus_(std::move(plus)), minus_(std::move(minus)) {
  if (!grid_) throw std::invalid_argument("null grid");
  if (plus_.size() != static_cast<std::size_t>(grid_->size()) ||
      minus_.size() != static_cast<std::size_t>(grid_->size())) {
    throw std::invalid_argument("sheet size does not match grid");
  }
}

OnShellTestFunction OnShellTestFunction::zero(GridPtr grid) {
  const auto n = static_cast<std::size_t>(grid->size());
  return OnShellTestFunction(std::move(grid), std::vector<AntisymTensor2>(n),
                             std::vector<AntisymTensor2>(n));
}

double OnShellTestFunction::max_abs() const {
  double m = 0.0;
  for (const auto& t : plus_) m = std::max(m, t.max_abs());
  for (const auto& t : minus_) m = std::max(m, t.max_abs());
  return m;
}

namespace {

AntisymTensor2 packet_value(const GaussianPacketParams& p, const FourVector& k) {
  auto profile = [&p](const FourVector& q) {
    double d2 = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      const double d = q[mu] - p.center[mu];
      d2 += d * d;
    }
    return std::exp(-d2 / (2.0 * p.sigma * p.sigma));
  };
  if (!p.real_symmetrized) return p.amplitude * Complex(profile(k), 0.0);
  // projection onto real-valued position-space functions:
  // 1/2 [ f~(k) + conj(f~(-k)) ]
  const AntisymTensor2 direct = p.amplitude * Complex(profile(k), 0.0);
  const AntisymTensor2 mirrored =
      (p.amplitude * Complex(profile(-k), 0.0)).conjugate();
  return (direct + mirrored) * Complex(0.5, 0.0);
}

}  // namespace

AntisymTensor2 AnalyticTestFunction::evaluate(const FourVector& k) const {
  AntisymTensor2 sum;
  for (const auto& term : terms_) {
    const Mat4 li = lorentz_inverse(term.lorentz);
    const AntisymTensor2 base = packet_value(term.packet, li * k);
    sum = sum + term.coeff * tensor_transform_cov(term.lorentz, base);
  }
  return sum;
}

AnalyticTestFunction gaussian_packet(const GaussianPacketParams& params) {
  if (!(params.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!params.amplitude.finite() || !params.center.finite()) {
    throw std::invalid_argument("non-finite packet parameters");
  }
  AnalyticTestFunction f;
  f.terms_.push_back({Complex(1.0, 0.0), params, Mat4::identity()});
  return f;
}

AnalyticTestFunction lorentz_transform(const AnalyticTestFunction& f, const Mat4& l) {
  if (lorentz_defect(l) > 1e-12) {
    throw std::invalid_argument("matrix does not satisfy L^T eta L = eta");
  }
  AnalyticTestFunction out;
  out.terms_ = f.terms_;
  for (auto& term : out.terms_) term.lorentz = l * term.lorentz;
  return out;
}

AnalyticTestFunction add(const AnalyticTestFunction& f, const AnalyticTestFunction& g) {
  AnalyticTestFunction out;
  out.terms_ = f.terms_;
  out.terms_.insert(out.terms_.end(), g.terms_.begin(), g.terms_.end());
  return out;
}

AnalyticTestFunction scale(const AnalyticTestFunction& f, Complex s) {
  AnalyticTestFunction out;
  out.terms_ = f.terms_;
  for (auto& term : out.terms_) term.coeff *= s;
  return out;
}

OnShellTestFunction sample_on_grid(const AnalyticTestFunction& f, const GridPtr& grid) {
  const auto n = static_cast<std::size_t>(grid->size());
  std::vector<AntisymTensor2> plus(n), minus(n);
  for (int i = 0; i < grid->size(); ++i) {
    plus[static_cast<std::size_t>(i)] = f.evaluate(grid->four_momentum_plus(i));
    minus[static_cast<std::size_t>(i)] = f.evaluate(grid->four_momentum_minus(i));
  }
  return OnShellTestFunction(grid, std::move(plus), std::move(minus));
}

OnShellTestFunction star_conjugate(const OnShellTestFunction& f) {
  const auto& grid = f.grid();
  const auto n = static_cast<std::size_t>(grid->size());
  std::vector<AntisymTensor2> plus(n), minus(n);
  for (int i = 0; i < grid->size(); ++i) {
    const int ni = grid->parity_partner(i);
    plus[static_cast<std::size_t>(i)] = f.minus(ni).conjugate();
    minus[static_cast<std::size_t>(i)] = f.plus(ni).conjugate();
  }
  return OnShellTestFunction(grid, std::move(plus), std::move(minus));
}

FourPartSplit four_part_split(const OnShellTestFunction& f) {
  const auto& grid = f.grid();
  const auto n = static_cast<std::size_t>(grid->size());
  const std::vector<AntisymTensor2> zero(n);
  FourPartSplit split{{{{OnShellTestFunction::zero(grid), OnShellTestFunction::zero(grid)},
                        {OnShellTestFunction::zero(grid), OnShellTestFunction::zero(grid)}}}};
  for (int fi = 0; fi < 2; ++fi) {
    const auto freq = fi == 0 ? FrequencySign::positive : FrequencySign::negative;
    for (int di = 0; di < 2; ++di) {
      const auto dual = di == 0 ? DualitySign::plus : DualitySign::minus;
      std::vector<AntisymTensor2> sheet(n);
      for (int i = 0; i < grid->size(); ++i)
        sheet[static_cast<std::size_t>(i)] = duality_project(f.sheet(freq, i), dual);
      auto plus = freq == FrequencySign::positive ? sheet : zero;
      auto minus = freq == FrequencySign::positive ? zero : sheet;
      split.part[static_cast<std::size_t>(fi)][static_cast<std::size_t>(di)] =
          OnShellTestFunction(grid, std::move(plus), std::move(minus));
    }
  }
  return split;
}

OnShellTestFunction bullet_map(const OnShellTestFunction& f) {
  const auto& grid = f.grid();
  const auto n = static_cast<std::size_t>(grid->size());
  std::vector<AntisymTensor2> plus(n), minus(n);
  for (int i = 0; i < grid->size(); ++i) {
    const int ni = grid->parity_partner(i);
    plus[static_cast<std::size_t>(i)] =
        duality_project(f.plus(i), DualitySign::plus) +
        duality_project(f.minus(ni), DualitySign::minus);
    minus[static_cast<std::size_t>(i)] =
        duality_project(f.plus(ni), DualitySign::plus) +
        duality_project(f.minus(i), DualitySign::minus);
  }
  return OnShellTestFunction(grid, std::move(plus), std::move(minus));
}

OnShellTestFunction box_map(const OnShellTestFunction& f) {
  const auto& grid = f.grid();
  const auto n = static_cast<std::size_t>(grid->size());
  std::vector<AntisymTensor2> plus(n), minus(n);
  for (int i = 0; i < grid->size(); ++i) {
    plus[static_cast<std::size_t>(i)] =
        duality_project(f.plus(i), DualitySign::plus) +
        duality_project(f.plus(i).conjugate(), DualitySign::minus);
    minus[static_cast<std::size_t>(i)] =
        duality_project(f.minus(i).conjugate(), DualitySign::plus) +
        duality_project(f.minus(i), DualitySign::minus);
  }
  return OnShellTestFunction(grid, std::move(plus), std::move(minus));
}

OnShellTestFunction bullet_preimage(const std::vector<AntisymTensor2>& plus_sheet,
                                    const GridPtr& grid) {
  if (plus_sheet.size() != static_cast<std::size_t>(grid->size())) {
    throw std::invalid_argument("plus sheet size does not match grid");
  }
  const auto n = static_cast<std::size_t>(grid->size());
  std::vector<AntisymTensor2> minus(n);
  for (int i = 0; i < grid->size(); ++i)
    minus[static_cast<std::size_t>(i)] =
        plus_sheet[static_cast<std::size_t>(grid->parity_partner(i))];
  return OnShellTestFunction(grid, plus_sheet, std::move(minus));
}

OnShellTestFunction add(const OnShellTestFunction& f, const OnShellTestFunction& g) {
  if (f.grid() != g.grid()) throw std::invalid_argument("grid mismatch");
  const auto n = static_cast<std::size_t>(f.size());
  std::vector<AntisymTensor2> plus(n), minus(n);
  for (int i = 0; i < f.size(); ++i) {
    plus[static_cast<std::size_t>(i)] = f.plus(i) + g.plus(i);
    minus[static_cast<std::size_t>(i)] = f.minus(i) + g.minus(i);
  }
  return OnShellTestFunction(f.grid(), std::move(plus), std::move(minus));
}

OnShellTestFunction scale(const OnShellTestFunction& f, Complex s) {
  const auto n = static_cast<std::size_t>(f.size());
  std::vector<AntisymTensor2> plus(n), minus(n);
  for (int i = 0; i < f.size(); ++i) {
    plus[static_cast<std::size_t>(i)] = f.plus(i) * s;
    minus[static_cast<std::size_t>(i)] = f.minus(i) * s;
  }
  return OnShellTestFunction(f.grid(), std::move(plus), std::move(minus));
}

OnShellTestFunction apply_hodge(const OnShellTestFunction& f) {
  const auto n = static_cast<std::size_t>(f.size());
  std::vector<AntisymTensor2> plus(n), minus(n);
  for (int i = 0; i < f.size(); ++i) {
    plus[static_cast<std::size_t>(i)] = hodge_dual(f.plus(i));
    minus[static_cast<std::size_t>(i)] = hodge_dual(f.minus(i));
  }
  return OnShellTestFunction(f.grid(), std::move(plus), std::move(minus));
}

double max_abs_difference(const OnShellTestFunction& f, const OnShellTestFunction& g) {
  if (f.grid() != g.grid()) throw std::invalid_argument("grid mismatch");
  double m = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    m = std::max(m, (f.plus(i) - g.plus(i)).max_abs());
    m = std::max(m, (f.minus(i) - g.minus(i)).max_abs());
  }
  return m;
}

bool is_real_function(const OnShellTestFunction& f, double tol) {
  const double scale = std::max(f.max_abs(), 1e-300);
  return max_abs_difference(star_conjugate(f), f) <= tol * scale;
}

}  // namespace emfield
