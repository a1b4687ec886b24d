#include "emfield/suites.hpp"

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "emfield/ladder.hpp"
#include "emfield/sampler.hpp"

namespace emfield {

namespace {

using json = nlohmann::json;

constexpr double kTiny = 1e-300;

// Each suite draws from its own deterministic stream so that adding checks
// to one suite never shifts another suite's data.
std::mt19937_64 suite_rng(const RunConfig& config, std::uint64_t salt) {
  return std::mt19937_64(config.seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Complex rand_complex(std::mt19937_64& rng) {
  return {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
}

AntisymTensor2 rand_antisym(std::mt19937_64& rng) {
  std::array<Complex, 6> c;
  for (auto& v : c) v = rand_complex(rng);
  return AntisymTensor2::from_components(c);
}

FourVector rand_four_vector(std::mt19937_64& rng, double lo, double hi) {
  return FourVector{{uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi),
                     uniform(rng, lo, hi)}};
}

GaussianPacketParams rand_packet(std::mt19937_64& rng, bool real_symmetrized = false) {
  GaussianPacketParams p;
  p.amplitude = rand_antisym(rng);
  p.center = rand_four_vector(rng, -0.5, 1.0);
  p.sigma = uniform(rng, 0.8, 1.6);
  p.real_symmetrized = real_symmetrized;
  return p;
}

struct Workspace {
  GridPtr grid;
  std::vector<OnShellTestFunction> fns;
  std::vector<std::string> names;

  explicit Workspace(const RunConfig& config) : grid(LightconeGrid::build(config.grid)) {
    for (const auto& decl : config.functions) {
      fns.push_back(sample_on_grid(gaussian_packet(decl.packet), grid));
      names.push_back(decl.name);
    }
  }
};

class Checks {
 public:
  explicit Checks(std::string prefix) : prefix_(std::move(prefix)) {}

  /// error <= tol * scale
  void relative(const std::string& name, double error, double tol, double scale,
                const std::string& details = "") {
    const double s = std::max(scale, kTiny);
    results_.push_back({prefix_ + "/" + name, error <= tol * s, error, tol, s, details});
  }

  /// value >= threshold * scale (detection checks, e.g. nonvanishing commutators)
  void at_least(const std::string& name, double value, double threshold, double scale,
                const std::string& details = "") {
    const double s = std::max(scale, kTiny);
    results_.push_back(
        {prefix_ + "/" + name, value >= threshold * s, value, threshold, s,
         details.empty() ? "lower bound: value must reach tolerance x scale" : details});
  }

  void boolean(const std::string& name, bool pass, const std::string& details = "") {
    results_.push_back({prefix_ + "/" + name, pass, pass ? 0.0 : 1.0, 0.0, 1.0, details});
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string prefix_;
  std::vector<CheckResult> results_;
};

// ---------------------------------------------------------------- tensor ---

std::vector<CheckResult> tensor_suite(const RunConfig& config) {
  Checks checks("tensor");
  auto rng = suite_rng(config, 1);
  double star_star = 0.0, idem = 0.0, complete = 0.0, ortho = 0.0, eigen = 0.0;
  double sym = 0.0, bilin = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const AntisymTensor2 f = rand_antisym(rng);
    const double scale = std::max(f.max_abs(), kTiny);
    star_star = std::max(star_star,
                         (hodge_dual(hodge_dual(f)) + f).max_abs() / scale);
    const AntisymTensor2 p = duality_project(f, DualitySign::plus);
    const AntisymTensor2 m = duality_project(f, DualitySign::minus);
    idem = std::max(idem, (duality_project(p, DualitySign::plus) - p).max_abs() / scale);
    idem = std::max(idem, (duality_project(m, DualitySign::minus) - m).max_abs() / scale);
    complete = std::max(complete, (p + m - f).max_abs() / scale);
    ortho = std::max(ortho, duality_project(p, DualitySign::minus).max_abs() / scale);
    ortho = std::max(ortho, duality_project(m, DualitySign::plus).max_abs() / scale);
    // p is a -i eigenvector of the dual, m a +i eigenvector.
    eigen = std::max(eigen,
                     (hodge_dual(p) + Complex(0.0, 1.0) * p).max_abs() / scale);
    eigen = std::max(eigen,
                     (hodge_dual(m) - Complex(0.0, 1.0) * m).max_abs() / scale);

    const FourVector k = rand_four_vector(rng, -2.0, 2.0);
    const AntisymTensor2 g = rand_antisym(rng);
    const Complex fg = contract_kFkG(k, f, g);
    const Complex gf = contract_kFkG(k, g, f);
    const double cscale = std::max({std::abs(fg), std::abs(gf), kTiny});
    sym = std::max(sym, std::abs(fg - gf) / cscale);
    const Complex alpha = rand_complex(rng), beta = rand_complex(rng);
    const AntisymTensor2 h = rand_antisym(rng);
    const Complex lin = contract_kFkG(k, f * alpha + h * beta, g);
    const Complex expect = alpha * fg + beta * contract_kFkG(k, h, g);
    bilin = std::max(bilin, std::abs(lin - expect) /
                                std::max({std::abs(lin), std::abs(expect), kTiny}));
  }
  const double tol = config.tolerances.maps;
  checks.relative("hodge involution", star_star, tol, 1.0, "max over 100 random tensors");
  checks.relative("projector idempotence", idem, tol, 1.0);
  checks.relative("projector completeness", complete, tol, 1.0);
  checks.relative("projector orthogonality", ortho, tol, 1.0);
  checks.relative("duality eigenvectors", eigen, tol, 1.0);
  checks.relative("contraction symmetry", sym, tol, 1.0);
  checks.relative("contraction bilinearity", bilin, 10 * tol, 1.0);
  return checks.take();
}

// ------------------------------------------------------------------ grid ---

std::vector<CheckResult> grid_suite(const RunConfig& config) {
  Checks checks("grid");
  const auto grid = LightconeGrid::build(config.grid);

  double min_weight = std::numeric_limits<double>::infinity();
  double min_omega = std::numeric_limits<double>::infinity();
  bool involution = true, fixed_point_free = true, weight_match = true;
  double volume = 0.0;
  for (int i = 0; i < grid->size(); ++i) {
    min_weight = std::min(min_weight, grid->weight(i));
    min_omega = std::min(min_omega, grid->omega(i));
    const int ni = grid->parity_partner(i);
    involution = involution && grid->parity_partner(ni) == i &&
                 grid->kvec(ni)[0] == -grid->kvec(i)[0] &&
                 grid->kvec(ni)[1] == -grid->kvec(i)[1] &&
                 grid->kvec(ni)[2] == -grid->kvec(i)[2];
    fixed_point_free = fixed_point_free && ni != i;
    weight_match = weight_match && grid->weight(ni) == grid->weight(i);
    volume += grid->weight(i) * 2.0 * grid->omega(i);
  }
  checks.boolean("weights positive", min_weight > 0.0);
  checks.boolean("no zero nodes", min_omega > 0.0);
  checks.boolean("parity involution", involution && weight_match, "exact by construction");
  checks.boolean("parity has no fixed points", fixed_point_free);

  const double kmin = config.grid.k_min, kmax = config.grid.k_max;
  const double closed = (1.0 / std::pow(2.0 * std::numbers::pi, 3)) *
                        (4.0 * std::numbers::pi / 3.0) *
                        (kmax * kmax * kmax - kmin * kmin * kmin);
  checks.relative("shell volume identity", std::abs(volume - closed),
                  config.tolerances.algebraic, std::abs(closed),
                  "sum w_i 2 omega_i vs closed form (exact for >= 2 radial nodes)");

  // rotation permutations compose like the rotation group
  {
    const auto& rots = LightconeGrid::proper_rotations();
    auto mat_mul = [](const auto& a, const auto& b) {
      std::array<std::array<double, 3>, 3> r{};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k)
            r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                b[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      return r;
    };
    auto find_rotation = [&rots](const std::array<std::array<double, 3>, 3>& m) {
      for (std::size_t r = 0; r < rots.size(); ++r) {
        bool same = true;
        for (int i = 0; i < 3 && same; ++i)
          for (int j = 0; j < 3 && same; ++j)
            same = rots[r][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
                   m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (same) return static_cast<int>(r);
      }
      return -1;
    };
    bool compose_ok = true;
    for (std::size_t r1 = 0; r1 < rots.size() && compose_ok; ++r1) {
      for (std::size_t r2 = 0; r2 < rots.size() && compose_ok; ++r2) {
        const int r12 = find_rotation(mat_mul(rots[r1], rots[r2]));
        compose_ok = r12 >= 0;
        if (!compose_ok) break;
        const auto& p1 = grid->rotation_permutation(static_cast<int>(r1));
        const auto& p2 = grid->rotation_permutation(static_cast<int>(r2));
        const auto& p12 = grid->rotation_permutation(r12);
        for (int i = 0; i < grid->size() && compose_ok; ++i) {
          compose_ok = p12[static_cast<std::size_t>(i)] ==
                       p1[static_cast<std::size_t>(p2[static_cast<std::size_t>(i)])];
        }
      }
    }
    checks.boolean("rotation permutations compose", compose_ok,
                   "pi_{R1 R2} = pi_{R1} o pi_{R2} over all 24 x 24 pairs");
  }

  // angular design order: every monomial up to the design degree
  {
    const int points = static_cast<int>(config.grid.scheme);
    const int design = points == 2 ? 1 : points == 6 ? 3 : points == 26 ? 7 : 11;
    // direction weights recovered from a 1-node radial layer
    GridSpec one = config.grid;
    one.radial_nodes = 1;
    const auto layer = LightconeGrid::build(one);
    const double r0 = layer->omega(0);
    const double measure =
        (one.k_max - one.k_min) * r0 / (2.0 * std::pow(2.0 * std::numbers::pi, 3));
    double worst = 0.0;
    for (int a = 0; a <= design; ++a)
      for (int b = 0; a + b <= design; ++b)
        for (int c = 0; a + b + c <= design; ++c) {
          double q = 0.0;
          for (int i = 0; i < layer->size(); ++i) {
            const auto& k = layer->kvec(i);
            q += layer->weight(i) / measure * std::pow(k[0] / r0, a) *
                 std::pow(k[1] / r0, b) * std::pow(k[2] / r0, c);
          }
          double ref = 0.0;
          if (a % 2 == 0 && b % 2 == 0 && c % 2 == 0) {
            auto dfact = [](int n) {
              double v = 1.0;
              for (; n > 1; n -= 2) v *= n;
              return v;
            };
            ref = 4.0 * std::numbers::pi * dfact(a - 1) * dfact(b - 1) * dfact(c - 1) /
                  dfact(a + b + c + 1);
          }
          worst = std::max(worst, std::abs(q - ref));
        }
    checks.relative("angular design-order exactness", worst, 1e-12,
                    4.0 * std::numbers::pi,
                    "all monomials through degree " + std::to_string(design));
  }

  // radial convergence on exp(-|k|^2) against the closed form
  {
    auto closed_form = [&](double a, double b) {
      auto antiderivative = [](double r) {
        return std::sqrt(std::numbers::pi) / 4.0 * std::erf(r) -
               0.5 * r * std::exp(-r * r);
      };
      return 4.0 * std::numbers::pi / std::pow(2.0 * std::numbers::pi, 3) *
             (antiderivative(b) - antiderivative(a));
    };
    const double exact = closed_form(kmin, kmax);
    std::array<double, 3> err{};
    for (int lvl = 0; lvl < 3; ++lvl) {
      GridSpec refined = config.grid;
      refined.radial_nodes = config.grid.radial_nodes << lvl;
      const auto g = LightconeGrid::build(refined);
      double sum = 0.0;
      for (int i = 0; i < g->size(); ++i) {
        sum += g->weight(i) * 2.0 * g->omega(i) * std::exp(-g->omega(i) * g->omega(i));
      }
      err[static_cast<std::size_t>(lvl)] = std::abs(sum - exact);
    }
    checks.boolean("radial refinement converges",
                   err[1] < err[0] && err[2] < err[1],
                   "quadrature error decreases over three doublings");
  }
  return checks.take();
}

// ------------------------------------------------------------------ maps ---

std::vector<CheckResult> maps_suite(const RunConfig& config) {
  Checks checks("maps");
  auto rng = suite_rng(config, 2);
  const auto grid = LightconeGrid::build(config.grid);
  const double tol = config.tolerances.maps;

  auto random_fn = [&](bool real_symmetrized = false) {
    return sample_on_grid(gaussian_packet(rand_packet(rng, real_symmetrized)), grid);
  };

  // Eq. (3) split: completeness + orthogonality over 20 random packets
  {
    double complete = 0.0, ortho = 0.0, idem = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_fn();
      const double scale = std::max(f.max_abs(), kTiny);
      const FourPartSplit split = four_part_split(f);
      OnShellTestFunction sum = OnShellTestFunction::zero(grid);
      for (const auto& row : split.part)
        for (const auto& part : row) sum = add(sum, part);
      complete = std::max(complete, max_abs_difference(sum, f) / scale);
      for (int fi = 0; fi < 2; ++fi)
        for (int di = 0; di < 2; ++di) {
          const auto& part = split.part[static_cast<std::size_t>(fi)]
                                       [static_cast<std::size_t>(di)];
          const FourPartSplit again = four_part_split(part);
          for (int fj = 0; fj < 2; ++fj)
            for (int dj = 0; dj < 2; ++dj) {
              const auto& re = again.part[static_cast<std::size_t>(fj)]
                                         [static_cast<std::size_t>(dj)];
              if (fi == fj && di == dj) {
                idem = std::max(idem, max_abs_difference(re, part) / scale);
              } else {
                ortho = std::max(ortho, re.max_abs() / scale);
              }
            }
        }
    }
    checks.relative("four-part completeness", complete, tol, 1.0, "20 random packets");
    checks.relative("four-part orthogonality", ortho, tol, 1.0);
    checks.relative("four-part idempotence", idem, tol, 1.0);
  }

  // bullet: linearity, idempotence, evenness, fixed component, preimage
  {
    double linearity = 0.0, idem = 0.0, even = 0.0, fixed = 0.0, preim = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_fn();
      const auto g = random_fn();
      const Complex alpha = rand_complex(rng), beta = rand_complex(rng);
      const double norm = std::max({f.max_abs(), g.max_abs(), kTiny});
      const auto combo = bullet_map(add(scale(f, alpha), scale(g, beta)));
      const auto split_combo = add(scale(bullet_map(f), alpha), scale(bullet_map(g), beta));
      linearity = std::max(linearity, max_abs_difference(combo, split_combo) / norm);

      const auto bf = bullet_map(f);
      idem = std::max(idem, max_abs_difference(bullet_map(bf), bf) / norm);
      for (int i = 0; i < grid->size(); ++i) {
        even = std::max(even, (bf.minus(i) - bf.plus(grid->parity_partner(i))).max_abs() /
                              norm);
      }
      // the plus-sheet content of the (+,+) component passes through unchanged
      const auto part = four_part_split(f)(FrequencySign::positive, DualitySign::plus);
      const auto bpart = bullet_map(part);
      for (int i = 0; i < grid->size(); ++i) {
        fixed = std::max(fixed, (bpart.plus(i) - part.plus(i)).max_abs() / norm);
      }

      std::vector<AntisymTensor2> h(static_cast<std::size_t>(grid->size()));
      for (int i = 0; i < grid->size(); ++i) h[static_cast<std::size_t>(i)] = f.plus(i);
      const auto back = bullet_map(bullet_preimage(h, grid));
      for (int i = 0; i < grid->size(); ++i) {
        preim = std::max(preim,
                         (back.plus(i) - h[static_cast<std::size_t>(i)]).max_abs() / norm);
      }
    }
    checks.relative("bullet complex linearity", linearity, tol, 1.0);
    checks.relative("bullet idempotence", idem, tol, 1.0,
                    "bullet o bullet = bullet; measured, the literal composition");
    checks.relative("bullet image evenness", even, tol, 1.0);
    checks.relative("bullet fixes (+,+) plus-sheet content", fixed, tol, 1.0);
    checks.relative("bullet preimage round trip", preim, tol, 1.0);
  }

  // star/bullet interplay and reality preservation
  {
    double commute = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const auto f = random_fn();
      const double norm = std::max(f.max_abs(), kTiny);
      commute = std::max(commute, max_abs_difference(star_conjugate(bullet_map(f)),
                                                     bullet_map(star_conjugate(f))) /
                                      norm);
    }
    checks.relative("star and bullet commute", commute, tol, 1.0, "50 random packets");

    double real_preserved = 0.0, pointwise_real = 0.0, star_fixed = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_fn(true);
      const double norm = std::max(f.max_abs(), kTiny);
      star_fixed = std::max(star_fixed,
                            max_abs_difference(star_conjugate(f), f) / norm);
      const auto bf = bullet_map(f);
      real_preserved = std::max(real_preserved,
                                max_abs_difference(star_conjugate(bf), bf) / norm);
      for (int i = 0; i < grid->size(); ++i) {
        pointwise_real = std::max(pointwise_real,
                                  (bf.plus(i) - bf.plus(i).conjugate()).max_abs() / norm);
      }
    }
    checks.relative("real packets are star fixed points", star_fixed, tol, 1.0);
    checks.relative("bullet preserves reality", real_preserved, tol, 1.0);
    checks.relative("bullet of real is pointwise real", pointwise_real, tol, 1.0);
  }

  // box: idempotence, additivity, complex non-homogeneity, P+ content
  {
    double idem = 0.0, additive = 0.0, keep = 0.0;
    double nonlinearity = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_fn();
      const auto g = random_fn();
      const double norm = std::max({f.max_abs(), g.max_abs(), kTiny});
      const auto xf = box_map(f);
      idem = std::max(idem, max_abs_difference(box_map(xf), xf) / norm);
      additive = std::max(additive, max_abs_difference(box_map(add(f, g)),
                                                       add(xf, box_map(g))) /
                                        norm);
      const auto rotated = box_map(scale(f, Complex(0.0, 1.0)));
      const auto naive = scale(xf, Complex(0.0, 1.0));
      nonlinearity = std::min(nonlinearity,
                              max_abs_difference(rotated, naive) / std::max(xf.max_abs(), kTiny));
      for (int i = 0; i < grid->size(); ++i) {
        keep = std::max(keep, (duality_project(xf.plus(i), DualitySign::plus) -
                               duality_project(f.plus(i), DualitySign::plus))
                                  .max_abs() /
                                  norm);
      }
    }
    checks.relative("box idempotence", idem, tol, 1.0);
    checks.relative("box additivity", additive, tol, 1.0);
    checks.at_least("box complex nonlinearity", nonlinearity, 0.1, 1.0,
                    "box(i f) must differ from i box(f) by more than 0.1 relative");
    checks.relative("box preserves self-dual content", keep, tol, 1.0);
  }

  // star involution and sheet exchange
  {
    double invol = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_fn();
      invol = std::max(invol, max_abs_difference(star_conjugate(star_conjugate(f)), f) /
                                  std::max(f.max_abs(), kTiny));
    }
    checks.relative("star involution", invol, tol, 1.0);
  }
  return checks.take();
}

// --------------------------------------------------------------- pairing ---

std::vector<CheckResult> pairing_suite(const RunConfig& config) {
  Checks checks("pairing");
  auto rng = suite_rng(config, 3);
  const Workspace ws(config);
  const auto& grid = ws.grid;
  const auto& constants = config.constants;
  const double tol = config.tolerances.maps;

  // Hermiticity over random packets
  {
    double herm = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = sample_on_grid(gaussian_packet(rand_packet(rng)), grid);
      const auto g = sample_on_grid(gaussian_packet(rand_packet(rng)), grid);
      const Complex fg = inner_product(f, g, constants);
      const Complex gf = inner_product(g, f, constants);
      herm = std::max(herm, std::abs(fg - std::conj(gf)) /
                                std::max({std::abs(fg), std::abs(gf), kTiny}));
    }
    checks.relative("hermiticity", herm, tol, 1.0);
  }

  // 20 random Gram matrices stay positive semidefinite
  {
    double worst_ratio = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      GramContext ctx(grid, constants);
      std::vector<LabelId> labels;
      for (int i = 0; i < 4; ++i) {
        labels.push_back(ctx.add("p" + std::to_string(i),
                                 sample_on_grid(gaussian_packet(rand_packet(rng)), grid)));
      }
      const auto report = positivity_report(ctx.matrix(labels), config.tolerances.gram_psd);
      if (report.max_eigenvalue > 0.0) {
        worst_ratio = std::max(worst_ratio, -report.min_eigenvalue / report.max_eigenvalue);
      }
    }
    checks.relative("gram positivity", std::max(worst_ratio, 0.0),
                    config.tolerances.gram_psd, 1.0,
                    "min eigenvalue above -tol x max eigenvalue, 20 random 4x4 Grams");
  }

  // pure gauge directions k wedge w have exactly zero norm
  {
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      std::array<Complex, 4> w;
      for (auto& v : w) v = rand_complex(rng);
      std::vector<AntisymTensor2> plus(static_cast<std::size_t>(grid->size()));
      double scale = 0.0;
      for (int i = 0; i < grid->size(); ++i) {
        const FourVector k = grid->four_momentum_plus(i);
        std::array<std::array<Complex, 4>, 4> m{};
        for (int mu = 0; mu < 4; ++mu) {
          const double k_lower = metric::kDiag[static_cast<std::size_t>(mu)] * k[mu];
          for (int nu = 0; nu < 4; ++nu) {
            const double k_lower_nu = metric::kDiag[static_cast<std::size_t>(nu)] * k[nu];
            m[static_cast<std::size_t>(mu)][static_cast<std::size_t>(nu)] =
                k_lower * w[static_cast<std::size_t>(nu)] -
                k_lower_nu * w[static_cast<std::size_t>(mu)];
          }
        }
        plus[static_cast<std::size_t>(i)] = AntisymTensor2::antisymmetrize(m);
        const double fro = plus[static_cast<std::size_t>(i)].max_abs();
        scale += grid->weight(i) * grid->omega(i) * grid->omega(i) * fro * fro;
      }
      const OnShellTestFunction gauge(grid, plus,
                                      std::vector<AntisymTensor2>(
                                          static_cast<std::size_t>(grid->size())));
      worst = std::max(worst, std::abs(inner_product(gauge, gauge, constants)) /
                                  std::max(constants.hbar * scale, kTiny));
    }
    checks.relative("pure gauge zero norm", worst, tol, 1.0,
                    "f = k wedge w is null on the shell");
  }

  // single-node hand value: w = 1, k = (0,0,1), F01 = 1 -> (f,f) = hbar
  {
    const auto tiny = LightconeGrid::from_nodes(
        {Vec3{0.0, 0.0, 1.0}, Vec3{0.0, 0.0, -1.0}}, {1.0, 1.0});
    std::vector<AntisymTensor2> plus(2), minus(2);
    plus[0] = AntisymTensor2::from_components({Complex(1.0), 0, 0, 0, 0, 0});
    const OnShellTestFunction f(tiny, plus, minus);
    const Complex value = inner_product(f, f, PhysicalConstants{1.0});
    checks.boolean("single-node hand value", value == Complex(1.0, 0.0),
                   "exact equality with the hand-computed +1");
  }

  // hbar scaling
  {
    const Complex base = inner_product(ws.fns[0], ws.fns[1], PhysicalConstants{1.0});
    const Complex doubled = inner_product(ws.fns[0], ws.fns[1], PhysicalConstants{2.0});
    checks.relative("hbar scaling", std::abs(doubled - 2.0 * base), tol,
                    std::abs(doubled));
  }

  // positive semidefiniteness of the quadratic form with random coefficients
  {
    GramContext ctx(grid, constants);
    std::vector<LabelId> labels;
    for (std::size_t i = 0; i < ws.fns.size(); ++i)
      labels.push_back(ctx.add(ws.names[i], ws.fns[i]));
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Complex> coeff(labels.size());
      double norm = 0.0, self_max = 0.0;
      for (std::size_t i = 0; i < coeff.size(); ++i) {
        coeff[i] = rand_complex(rng);
        norm += std::norm(coeff[i]);
        self_max = std::max(self_max, std::abs(ctx.inner(labels[i], labels[i])));
      }
      Complex quad = 0.0;
      for (std::size_t i = 0; i < coeff.size(); ++i)
        for (std::size_t j = 0; j < coeff.size(); ++j)
          quad += std::conj(coeff[i]) * coeff[j] * ctx.inner(labels[i], labels[j]);
      worst = std::max(worst, -quad.real() / std::max(norm * self_max, kTiny));
    }
    checks.relative("quadratic form positivity", std::max(worst, 0.0), 1e-12, 1.0);
  }

  // double-cone integrand parity: the Eq. (5) integrand extended to both
  // sheets is invariant under node negation combined with a sheet swap.
  {
    const auto bf = bullet_map(ws.fns[0]);
    const auto bg = bullet_map(ws.fns[1]);
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < grid->size(); ++i) {
      const int ni = grid->parity_partner(i);
      const Complex j_plus = contract_kFkG(grid->four_momentum_plus(i),
                                           bf.minus(ni), bg.plus(i));
      const Complex j_minus = contract_kFkG(grid->four_momentum_minus(ni),
                                            bf.plus(i), bg.minus(ni));
      worst = std::max(worst, std::abs(j_plus - j_minus));
      scale = std::max({scale, std::abs(j_plus), std::abs(j_minus)});
    }
    checks.relative("integrand parity on the double cone", worst, tol, scale);
  }
  return checks.take();
}

// ----------------------------------------------------------- commutators ---

std::vector<CheckResult> commutators_suite(const RunConfig& config) {
  Checks checks("commutators");
  auto rng = suite_rng(config, 4);
  const Workspace ws(config);
  const double tol = config.tolerances.commutator;

  GramContext ctx(ws.grid, config.constants);
  std::vector<LabelId> labels;
  for (std::size_t i = 0; i < ws.fns.size(); ++i)
    labels.push_back(ctx.add(ws.names[i], ws.fns[i]));

  auto random_probe = [&](const std::vector<LabelId>& pool, int max_len) {
    OperatorWord word;
    const int len = static_cast<int>(uniform(rng, 0.0, max_len + 1.0));
    for (int i = 0; i < len; ++i) {
      word.push_back({uniform(rng, 0.0, 1.0) < 0.5 ? OpKind::create : OpKind::annihilate,
                      pool[static_cast<std::size_t>(
                          uniform(rng, 0.0, static_cast<double>(pool.size())))]});
    }
    return word;
  };

  // chi commutators over 5 random complex packet pairs, plain and probed
  {
    double plain = 0.0, probed = 0.0;
    for (int pair = 0; pair < 5; ++pair) {
      const LabelId f =
          ctx.add("rand_f" + std::to_string(pair),
                  sample_on_grid(gaussian_packet(rand_packet(rng)), ws.grid));
      const LabelId g =
          ctx.add("rand_g" + std::to_string(pair),
                  sample_on_grid(gaussian_packet(rand_packet(rng)), ws.grid));
      const auto bare = commutator_vev(FieldKind::chi, f, g, {}, {}, ctx);
      plain = std::max(plain, std::abs(bare.value) / std::max(bare.scale, kTiny));
      for (int probe = 0; probe < 3; ++probe) {
        const auto left = random_probe({f, g}, 3);
        const auto right = random_probe({f, g}, 3);
        const auto probed_value = commutator_vev(FieldKind::chi, f, g, left, right, ctx);
        if (probed_value.scale > 0.0) {
          probed = std::max(probed, std::abs(probed_value.value) / probed_value.scale);
        } else {
          probed = std::max(probed, std::abs(probed_value.value) / kTiny);
        }
      }
    }
    checks.relative("chi commutators vanish", plain, tol, 1.0,
                    "5 random complex packet pairs");
    checks.relative("chi commutators vanish under probes", probed, tol, 1.0,
                    "probe words of length <= 3 on both sides");
  }

  // four-point function is symmetric under all argument permutations
  {
    std::array<LabelId, 4> four;
    for (int i = 0; i < 4; ++i) {
      four[static_cast<std::size_t>(i)] =
          ctx.add("perm" + std::to_string(i),
                  sample_on_grid(gaussian_packet(rand_packet(rng)), ws.grid));
    }
    std::array<int, 4> order{0, 1, 2, 3};
    Complex reference = 0.0;
    double worst = 0.0, scale = 0.0;
    bool first = true;
    std::sort(order.begin(), order.end());
    do {
      std::vector<FieldSymbol> product;
      for (const int idx : order)
        product.push_back({FieldKind::chi, four[static_cast<std::size_t>(idx)]});
      const Complex value = field_vev(product, ctx);
      if (first) {
        reference = value;
        scale = std::max(std::abs(value), field_vev_bound(product, ctx));
        first = false;
      }
      worst = std::max(worst, std::abs(value - reference));
    } while (std::next_permutation(order.begin(), order.end()));
    checks.relative("four-point permutation symmetry", worst, tol, scale,
                    "all 24 argument orders of <chi chi chi chi>");
  }

  // the phi field is genuinely non-commutative on the default pair
  {
    const auto contrast = commutator_vev(FieldKind::phi, labels[0], labels[1], {}, {}, ctx);
    const double scale = std::sqrt(std::abs(ctx.inner(labels[0], labels[0])) *
                                   std::abs(ctx.inner(labels[1], labels[1])));
    checks.at_least("phi commutator contrast", std::abs(contrast.value), 1e-3, scale,
                    "|<[phi_f1, phi_f2]>| must exceed 1e-3 x sqrt((f1,f1)(f2,f2))");
  }

  // hermiticity of the state: reversing a word and swapping kinds conjugates
  {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto word = random_probe(labels, 6);
      OperatorWord reversed(word.rbegin(), word.rend());
      for (auto& op : reversed)
        op.kind = op.kind == OpKind::create ? OpKind::annihilate : OpKind::create;
      const Complex a = vacuum_expectation(word, ctx);
      const Complex b = vacuum_expectation(reversed, ctx);
      const double scale = std::max(vacuum_expectation_bound(word, ctx), kTiny);
      worst = std::max(worst, std::abs(a - std::conj(b)) / scale);
    }
    checks.relative("state hermiticity", worst, tol, 1.0,
                    "omega(reverse, kinds swapped) = conj(omega)");
  }

  // commutativity is the same statement as symmetry of the bullet bracket
  {
    const LabelId f = labels[0], g = labels[1];
    const LabelId bf = ctx.bullet_label(f), bg = ctx.bullet_label(g);
    const Complex direct = ctx.inner(ctx.star_label(bf), bg) -
                           ctx.inner(ctx.star_label(bg), bf);
    const auto engine = commutator_vev(FieldKind::chi, f, g, {}, {}, ctx);
    const double scale = std::max({std::abs(ctx.inner(ctx.star_label(bf), bg)),
                                   engine.scale, kTiny});
    checks.relative("bracket symmetry equals commutativity",
                    std::abs(direct - engine.value), tol, scale,
                    "(f**,g*) - (g**,f*) against the engine commutator");
  }
  return checks.take();
}

// ----------------------------------------------------------- equivalence ---

std::vector<CheckResult> equivalence_suite(const RunConfig& config) {
  Checks checks("equivalence");
  auto rng = suite_rng(config, 5);
  const auto grid = LightconeGrid::build(config.grid);
  const double tol = config.tolerances.commutator;

  std::vector<std::vector<AntisymTensor2>> sheets;
  for (int i = 0; i < 3; ++i) {
    const auto f = sample_on_grid(gaussian_packet(rand_packet(rng)), grid);
    std::vector<AntisymTensor2> h(static_cast<std::size_t>(grid->size()));
    for (int node = 0; node < grid->size(); ++node)
      h[static_cast<std::size_t>(node)] = f.plus(node);
    sheets.push_back(std::move(h));
  }

  std::vector<OperatorWord> words;
  words.push_back({});  // empty word: 1 = 1
  words.push_back({{OpKind::annihilate, 0}, {OpKind::create, 0}});
  for (int trial = 0; trial < 20; ++trial) {
    OperatorWord word;
    const int len = static_cast<int>(uniform(rng, 1.0, 7.0));
    for (int i = 0; i < len; ++i) {
      word.push_back(
          {uniform(rng, 0.0, 1.0) < 0.5 ? OpKind::create : OpKind::annihilate,
           static_cast<LabelId>(uniform(rng, 0.0, 3.0))});
    }
    words.push_back(std::move(word));
  }
  const auto report = equivalence_check(words, sheets, grid, config.constants);
  checks.relative("a-words equal b-words", report.max_abs_difference, tol,
                  std::max(report.scale, 1.0),
                  std::to_string(report.words_checked) +
                      " words, b over canonical bullet preimages");
  return checks.take();
}

// -------------------------------------------------------------- appendix ---

std::vector<CheckResult> appendix_suite(const RunConfig& config) {
  Checks checks("appendix");
  auto rng = suite_rng(config, 6);
  const Workspace ws(config);
  const double tol = config.tolerances.commutator;

  GramContext ctx(ws.grid, config.constants);
  std::vector<LabelId> labels;
  for (std::size_t i = 0; i < ws.fns.size(); ++i)
    labels.push_back(ctx.add(ws.names[i], ws.fns[i]));

  // xi commutators over 5 random pairs, plain and probed
  {
    double plain = 0.0, probed = 0.0;
    for (int pair = 0; pair < 5; ++pair) {
      const LabelId f =
          ctx.add("xi_f" + std::to_string(pair),
                  sample_on_grid(gaussian_packet(rand_packet(rng)), ws.grid));
      const LabelId g =
          ctx.add("xi_g" + std::to_string(pair),
                  sample_on_grid(gaussian_packet(rand_packet(rng)), ws.grid));
      const auto bare = commutator_vev(FieldKind::xi, f, g, {}, {}, ctx);
      plain = std::max(plain, std::abs(bare.value) / std::max(bare.scale, kTiny));
      for (int probe = 0; probe < 3; ++probe) {
        OperatorWord left, right;
        const int ll = static_cast<int>(uniform(rng, 0.0, 4.0));
        const int rl = static_cast<int>(uniform(rng, 0.0, 4.0));
        for (int i = 0; i < ll; ++i)
          left.push_back({uniform(rng, 0.0, 1.0) < 0.5 ? OpKind::create
                                                       : OpKind::annihilate,
                          f});
        for (int i = 0; i < rl; ++i)
          right.push_back({uniform(rng, 0.0, 1.0) < 0.5 ? OpKind::create
                                                        : OpKind::annihilate,
                           g});
        const auto value = commutator_vev(FieldKind::xi, f, g, left, right, ctx);
        probed = std::max(probed, std::abs(value.value) / std::max(value.scale, kTiny));
      }
    }
    checks.relative("xi commutators vanish", plain, tol, 1.0,
                    "5 random complex packet pairs");
    checks.relative("xi commutators vanish under probes", probed, tol, 1.0);
  }

  // [c_f, c_g^dagger] = (box f, box g)
  {
    const LabelId f = labels[0], g = labels[1];
    const LabelId cf = relabel_c(f, ctx), cg = relabel_c(g, ctx);
    const OperatorWord word{{OpKind::annihilate, cf}, {OpKind::create, cg}};
    const Complex via_words = vacuum_expectation(word, ctx);
    const Complex direct = ctx.inner(cf, cg);
    checks.relative("c relabeling bracket", std::abs(via_words - direct), tol,
                    std::max(std::abs(direct), kTiny));
  }

  // xi expansion is formally self-adjoint: both terms carry the same label
  {
    const auto ops = expand_field({FieldKind::xi, labels[0]}, ctx);
    checks.boolean("xi expansion self-adjoint", ops[0].label == ops[1].label &&
                                                    ops[0].kind != ops[1].kind);
  }

  // box complex nonlinearity, detected through the xi field's labels
  {
    const auto f = ws.fns[0];
    const auto rotated = box_map(scale(f, Complex(0.0, 1.0)));
    const auto naive = scale(box_map(f), Complex(0.0, 1.0));
    const double dev = max_abs_difference(rotated, naive) /
                       std::max(box_map(f).max_abs(), kTiny);
    checks.at_least("box nonlinearity detected", dev, 0.1, 1.0);
  }
  return checks.take();
}

// ------------------------------------------------------------ covariance ---

std::vector<CheckResult> covariance_suite(const RunConfig& config) {
  Checks checks("covariance");
  const Workspace ws(config);
  const double tol = config.tolerances.maps;

  GramContext ctx(ws.grid, config.constants);
  std::vector<LabelId> real_labels;
  std::vector<LabelId> all_labels;
  for (std::size_t i = 0; i < ws.fns.size(); ++i) {
    const LabelId id = ctx.add(ws.names[i], ws.fns[i]);
    all_labels.push_back(id);
    if (config.functions[i].packet.real_symmetrized) real_labels.push_back(id);
  }
  if (real_labels.size() < 2) {
    checks.boolean("enough real labels", false,
                   "config must declare at least two realSymmetrized functions");
    return checks.take();
  }

  const Eigen::MatrixXd c = covariance_matrix(real_labels, ctx);
  const double scale = std::max(c.cwiseAbs().maxCoeff(), kTiny);

  // pairing route against the ladder engine, entrywise
  {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < c.rows(); ++i)
      for (Eigen::Index j = 0; j < c.cols(); ++j) {
        const std::vector<FieldSymbol> prod{
            {FieldKind::chi, real_labels[static_cast<std::size_t>(i)]},
            {FieldKind::chi, real_labels[static_cast<std::size_t>(j)]}};
        worst = std::max(worst, std::abs(field_vev(prod, ctx) - Complex(c(i, j))));
      }
    checks.relative("pairing equals ladder engine", worst, tol, scale);
  }

  // imaginary parts and symmetry of the underlying brackets
  {
    double imag = 0.0, asym = 0.0;
    for (const LabelId i : real_labels)
      for (const LabelId j : real_labels) {
        const Complex v = ctx.inner(ctx.star_label(ctx.bullet_label(i)),
                                    ctx.bullet_label(j));
        const Complex w = ctx.inner(ctx.star_label(ctx.bullet_label(j)),
                                    ctx.bullet_label(i));
        imag = std::max(imag, std::abs(v.imag()));
        asym = std::max(asym, std::abs(v - w));
      }
    checks.relative("entries are real", imag, tol, scale);
    checks.relative("matrix is symmetric", asym, tol, scale);
  }

  checks.boolean("covariance is positive semidefinite",
                 positivity_report(c.cast<Complex>(), config.tolerances.gram_psd).pass);
  checks.boolean("single-label variance nonnegative", c(0, 0) >= 0.0);

  // complex labels must be rejected
  {
    bool rejected = false;
    try {
      covariance_matrix({all_labels[0]}, ctx);
    } catch (const std::invalid_argument&) {
      rejected = true;
    }
    checks.boolean("non-real label rejected", rejected);
  }
  return checks.take();
}

// --------------------------------------------------------------- sampler ---

std::vector<CheckResult> sampler_suite(const RunConfig& config) {
  Checks checks("sampler");
  const Workspace ws(config);

  GramContext ctx(ws.grid, config.constants);
  std::vector<LabelId> real_labels;
  for (std::size_t i = 0; i < ws.fns.size(); ++i) {
    if (config.functions[i].packet.real_symmetrized) {
      real_labels.push_back(ctx.add(ws.names[i], ws.fns[i]));
    }
  }
  const Eigen::MatrixXd c = covariance_matrix(real_labels, ctx);

  const auto batch = draw_samples(c, config.sample_count, config.seed, config.jobs,
                                  config.tolerances.gram_psd);
  const auto moments = moment_report(batch, c, real_labels, ctx);
  for (const auto& chk : moments.checks) {
    checks.relative(chk.name, chk.value, chk.limit, 1.0,
                    "empirical moments over " + std::to_string(config.sample_count) +
                        " draws");
  }

  // bit-exact reproducibility for a fixed seed
  {
    const int head = std::min(config.sample_count, 1000);
    const auto again = draw_samples(c, head, config.seed, config.jobs,
                                    config.tolerances.gram_psd);
    const auto again2 = draw_samples(c, head, config.seed, 4,
                                     config.tolerances.gram_psd);
    const bool same =
        (again.values.array() == again2.values.array()).all() &&
        (again.values.array() == batch.values.topRows(head).array()).all();
    checks.boolean("fixed seed reproduces samples", same,
                   "independent of the job count, prefix-stable in the row count");
  }

  // degenerate covariances
  {
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, 2);
    const auto zeros = draw_samples(zero, 100, config.seed);
    checks.boolean("zero covariance gives zero samples",
                   zeros.values.cwiseAbs().maxCoeff() == 0.0);

    const int n = 20000;
    const auto gauss = draw_samples(Eigen::MatrixXd::Identity(3, 3), n, config.seed);
    const double bound = 4.0 / std::sqrt(static_cast<double>(n));
    checks.relative("identity covariance means",
                    gauss.values.colwise().mean().cwiseAbs().maxCoeff(), bound, 1.0,
                    "per-coordinate mean within 4/sqrt(N)");

    Eigen::MatrixXd bad(2, 2);
    bad << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3 and -1
    bool threw = false;
    try {
      draw_samples(bad, 10, config.seed);
    } catch (const std::runtime_error&) {
      threw = true;
    }
    checks.boolean("indefinite covariance rejected", threw,
                   "violations beyond the tolerance are a hard error");
  }
  return checks.take();
}

// --------------------------------------------------------------- lorentz ---

std::vector<CheckResult> lorentz_suite(const RunConfig& config) {
  Checks checks("lorentz");
  const auto grid = LightconeGrid::build(config.grid);
  const double tol = config.tolerances.maps;

  std::vector<AnalyticTestFunction> analytic;
  for (const auto& decl : config.functions)
    analytic.push_back(gaussian_packet(decl.packet));

  // all 24 octahedral rotations preserve every bracket
  {
    double worst = 0.0;
    std::vector<OnShellTestFunction> base;
    std::vector<Complex> brackets;
    for (const auto& f : analytic) base.push_back(sample_on_grid(f, grid));
    for (std::size_t i = 0; i < base.size(); ++i)
      for (std::size_t j = 0; j < base.size(); ++j)
        brackets.push_back(inner_product(base[i], base[j], config.constants));
    double scale = kTiny;
    for (const auto& b : brackets) scale = std::max(scale, std::abs(b));

    const auto& rotations = LightconeGrid::proper_rotations();
    for (std::size_t r = 0; r < rotations.size(); ++r) {
      const Mat4 l = embed_rotation(rotations[r]);
      std::vector<OnShellTestFunction> rotated;
      for (const auto& f : analytic)
        rotated.push_back(sample_on_grid(lorentz_transform(f, l), grid));
      std::size_t idx = 0;
      for (std::size_t i = 0; i < rotated.size(); ++i)
        for (std::size_t j = 0; j < rotated.size(); ++j) {
          const Complex value =
              inner_product(rotated[i], rotated[j], config.constants);
          worst = std::max(worst, std::abs(value - brackets[idx++]));
        }
    }
    checks.relative("rotations preserve brackets", worst, tol, scale,
                    "all 24 proper octahedral rotations, all function pairs");
  }

  // identity transform is bit-exact
  {
    const auto f0 = sample_on_grid(analytic[0], grid);
    const auto f1 = sample_on_grid(lorentz_transform(analytic[0], Mat4::identity()), grid);
    checks.boolean("identity transform exact", max_abs_difference(f0, f1) == 0.0);
  }

  // non-Lorentz matrices are rejected
  {
    Mat4 bad = Mat4::identity();
    bad(1, 1) = 2.0;
    bool rejected = false;
    try {
      lorentz_transform(analytic[0], bad);
    } catch (const std::invalid_argument&) {
      rejected = true;
    }
    checks.boolean("non-Lorentz matrix rejected", rejected);
  }

  // boosts: re-quadrature on the 32 x 98 grid with the sigma = 0.5 pair
  {
    GridSpec fine;
    fine.radial_nodes = 32;
    fine.k_min = config.grid.k_min;
    fine.k_max = config.grid.k_max;
    fine.scheme = AngularScheme::oct98;
    const auto boost_grid = LightconeGrid::build(fine);
    const auto [pa, pb] = boost_check_packets();
    const Complex base = inner_product(sample_on_grid(pa, boost_grid),
                                       sample_on_grid(pb, boost_grid), config.constants);
    double worst = 0.0;
    for (const double rapidity : config.rapidities) {
      const Mat4 l = boost_z(rapidity);
      const Complex boosted =
          inner_product(sample_on_grid(lorentz_transform(pa, l), boost_grid),
                        sample_on_grid(lorentz_transform(pb, l), boost_grid),
                        config.constants);
      worst = std::max(worst, std::abs(boosted - base) / std::abs(base));
    }
    checks.relative("boost preserves brackets", worst, config.tolerances.boost_rel, 1.0,
                    "rapidity list along z, independent re-quadrature at 32 x 98");
  }
  return checks.take();
}

// ----------------------------------------------------------- convergence ---

std::vector<CheckResult> convergence_suite(const RunConfig& config) {
  Checks checks("convergence");
  if (config.convergence_levels.size() < 3) {
    throw ConfigError("convergence requires at least 3 refinement levels");
  }
  const auto f_decl = config.functions.at(0).packet;
  const auto g_decl = config.functions.at(1).packet;

  for (const AngularScheme scheme : {AngularScheme::oct26, AngularScheme::oct98}) {
    std::vector<Complex> values;
    for (const int radial : config.convergence_levels) {
      GridSpec spec = config.grid;
      spec.radial_nodes = radial;
      spec.scheme = scheme;
      const auto grid = LightconeGrid::build(spec);
      values.push_back(inner_product(sample_on_grid(gaussian_packet(f_decl), grid),
                                     sample_on_grid(gaussian_packet(g_decl), grid),
                                     config.constants));
    }
    const double ref = std::abs(values.back());
    std::vector<double> deltas;
    for (std::size_t i = 1; i < values.size(); ++i)
      deltas.push_back(std::abs(values[i] - values[i - 1]) / std::max(ref, kTiny));
    bool monotone = true;
    for (std::size_t i = 1; i < deltas.size(); ++i)
      monotone = monotone && deltas[i] < deltas[i - 1];
    const std::string tag = scheme == AngularScheme::oct26 ? "26" : "98";
    std::string detail = "deltas:";
    for (const double d : deltas) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), " %.3g", d);
      detail += buf;
    }
    checks.boolean("radial deltas decrease (angular " + tag + ")", monotone, detail);
    checks.relative("final radial delta (angular " + tag + ")", deltas.back(),
                    config.tolerances.convergence_final, 1.0, detail);
  }

  // the zero function is exactly stable across refinement
  {
    GaussianPacketParams zero;
    zero.amplitude = AntisymTensor2{};
    zero.center = FourVector{{0.0, 0.0, 0.0, 1.0}};
    zero.sigma = 1.0;
    double worst = 0.0;
    for (const int radial : config.convergence_levels) {
      GridSpec spec = config.grid;
      spec.radial_nodes = radial;
      const auto grid = LightconeGrid::build(spec);
      const auto f = sample_on_grid(gaussian_packet(zero), grid);
      worst = std::max(worst, std::abs(inner_product(f, f, config.constants)));
    }
    checks.boolean("zero function stays zero", worst == 0.0);
  }
  return checks.take();
}

}  // namespace

std::pair<AnalyticTestFunction, AnalyticTestFunction> boost_check_packets() {
  using namespace std::complex_literals;
  GaussianPacketParams a;
  a.amplitude = AntisymTensor2::from_components(
      {1.0 + 0.25i, 0.3 - 0.1i, -0.15 + 0.35i, 0.2 + 0.4i, 0.1i, 0.05 - 0.2i});
  a.center = FourVector{{0.5, 0.0, 0.0, 0.5}};
  a.sigma = 0.5;
  GaussianPacketParams b;
  b.amplitude = AntisymTensor2::from_components(
      {0.4 - 0.3i, -0.7 + 0.2i, 0.25 + 0.1i, 0.6 - 0.15i, -0.2 + 0.3i, 0.35 + 0.05i});
  const double r = 0.55, theta = 0.4, phi = 0.7;
  b.center = FourVector{{r, r * std::sin(theta) * std::cos(phi),
                         r * std::sin(theta) * std::sin(phi), r * std::cos(theta)}};
  b.sigma = 0.5;
  return {gaussian_packet(a), gaussian_packet(b)};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "tensor", "grid", "maps", "pairing", "commutators", "equivalence",
      "appendix", "covariance", "sampler", "lorentz", "convergence"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& name, const RunConfig& config) {
  if (name == "tensor") return tensor_suite(config);
  if (name == "grid") return grid_suite(config);
  if (name == "maps") return maps_suite(config);
  if (name == "pairing") return pairing_suite(config);
  if (name == "commutators") return commutators_suite(config);
  if (name == "equivalence") return equivalence_suite(config);
  if (name == "appendix") return appendix_suite(config);
  if (name == "covariance") return covariance_suite(config);
  if (name == "sampler") return sampler_suite(config);
  if (name == "lorentz") return lorentz_suite(config);
  if (name == "convergence") return convergence_suite(config);
  throw ConfigError("unknown suite '" + name + "'");
}

VerificationReport run_suites(const RunConfig& config,
                              const std::vector<std::string>& requested) {
  std::vector<std::string> expanded;
  for (const auto& name : requested) {
    if (name == "all") {
      expanded.insert(expanded.end(), suite_names().begin(), suite_names().end());
    } else {
      expanded.push_back(name);
    }
  }
  VerificationReport report;
  for (const auto& name : expanded) {
    auto results = run_suite(name, config);
    report.checks.insert(report.checks.end(), results.begin(), results.end());
  }
  json env;
  env["grid"] = {{"radialNodes", config.grid.radial_nodes},
                 {"kMin", config.grid.k_min},
                 {"kMax", config.grid.k_max},
                 {"angularScheme", static_cast<int>(config.grid.scheme)}};
  env["constants"] = {{"hbar", config.constants.hbar}};
  env["seed"] = config.seed;
  env["deterministic"] = config.deterministic;
  env["version"] = EMFIELD_VERSION;
  report.environment_json = env.dump();
  return report;
}

std::string report_to_json(const VerificationReport& report) {
  json j;
  j["checks"] = json::array();
  for (const auto& c : report.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"status", c.pass ? "pass" : "fail"},
                           {"maxAbsError", c.max_abs_error},
                           {"tolerance", c.tolerance},
                           {"scale", c.scale},
                           {"details", c.details}});
  }
  j["environment"] = json::parse(report.environment_json);
  j["allPass"] = report.all_pass();
  return j.dump(2) + "\n";
}

}  // namespace emfield
