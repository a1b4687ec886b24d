#include <doctest.h>

#include <algorithm>

#include "emfield/ladder.hpp"
#include "test_helpers.hpp"
#include "wick_oracle.hpp"

using namespace emfield;
namespace tst = emfield::testing;

namespace {

struct Fixture {
  GridPtr grid = tst::small_grid();
  GramContext ctx{grid, PhysicalConstants{}};
  std::vector<LabelId> labels;

  explicit Fixture(int n_functions = 3, std::uint64_t seed = 31) {
    auto rng = tst::make_rng(seed);
    for (int i = 0; i < n_functions; ++i) {
      labels.push_back(ctx.add(
          "p" + std::to_string(i),
          sample_on_grid(gaussian_packet(tst::rand_packet(rng)), grid)));
    }
  }
};

}  // namespace

TEST_CASE("wick base cases") {
  Fixture fx;
  const LabelId f = fx.labels[0], g = fx.labels[1], h = fx.labels[2];

  CHECK(vacuum_expectation({}, fx.ctx) == Complex(1.0, 0.0));
  CHECK(vacuum_expectation({{OpKind::create, f}, {OpKind::annihilate, g}}, fx.ctx) ==
        Complex(0.0, 0.0));

  const Complex fg = fx.ctx.inner(f, g);
  CHECK(vacuum_expectation({{OpKind::annihilate, f}, {OpKind::create, g}}, fx.ctx) == fg);

  // a_f a_g adag_h adag_l -> (f,h)(g,l) + (f,l)(g,h)
  const OperatorWord word{{OpKind::annihilate, f},
                          {OpKind::annihilate, g},
                          {OpKind::create, h},
                          {OpKind::create, f}};
  const Complex expected = fx.ctx.inner(f, h) * fx.ctx.inner(g, f) +
                           fx.ctx.inner(f, f) * fx.ctx.inner(g, h);
  const Complex got = vacuum_expectation(word, fx.ctx);
  CHECK(std::abs(got - expected) <= 1e-14 * std::abs(expected));
}

TEST_CASE("odd words and unbalanced words vanish") {
  Fixture fx;
  auto rng = tst::make_rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    OperatorWord word;
    const int len = 1 + static_cast<int>(tst::uniform(rng, 0.0, 7.0));
    int balance = 0;
    for (int i = 0; i < len; ++i) {
      const bool create = tst::uniform(rng) > 0.0;
      balance += create ? 1 : -1;
      word.push_back({create ? OpKind::create : OpKind::annihilate,
                      fx.labels[static_cast<std::size_t>(
                          tst::uniform(rng, 0.0, 3.0))]});
    }
    if (len % 2 == 1 || balance != 0) {
      CHECK(vacuum_expectation(word, fx.ctx) == Complex(0.0, 0.0));
    }
  }
}

TEST_CASE("wick recursion equals enumeration for every word up to length 5") {
  Fixture fx;
  // exhaustive over all words: 6 op choices per slot, lengths 0..5
  for (int len = 0; len <= 5; ++len) {
    std::vector<int> digits(static_cast<std::size_t>(len), 0);
    while (true) {
      OperatorWord word;
      for (const int d : digits) {
        word.push_back({d < 3 ? OpKind::annihilate : OpKind::create,
                        fx.labels[static_cast<std::size_t>(d % 3)]});
      }
      const Complex engine = vacuum_expectation(word, fx.ctx);
      const Complex oracle = tst::wick_enumeration_oracle(word, fx.ctx);
      CHECK(std::abs(engine - oracle) <=
            1e-13 * std::max({std::abs(engine), std::abs(oracle), 1e-300}));
      int pos = len - 1;
      while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == 5) {
        digits[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++digits[static_cast<std::size_t>(pos)];
    }
  }
}

TEST_CASE("word cap guards the combinatorial blowup") {
  Fixture fx;
  OperatorWord word(13, {OpKind::annihilate, fx.labels[0]});
  CHECK_THROWS_AS(vacuum_expectation(word, fx.ctx), std::length_error);
  CHECK_NOTHROW(vacuum_expectation(OperatorWord(4, {OpKind::annihilate, fx.labels[0]}),
                                   fx.ctx, 4));
}

TEST_CASE("field expansions") {
  Fixture fx(3, 33);
  const LabelId f = fx.labels[0];

  const auto phi = expand_field({FieldKind::phi, f}, fx.ctx);
  CHECK(phi[0].kind == OpKind::annihilate);
  CHECK(phi[0].label == fx.ctx.star_label(f));
  CHECK(phi[1].kind == OpKind::create);
  CHECK(phi[1].label == f);

  const auto chi = expand_field({FieldKind::chi, f}, fx.ctx);
  CHECK(chi[0].label == fx.ctx.star_label(fx.ctx.bullet_label(f)));
  CHECK(chi[1].label == fx.ctx.bullet_label(f));

  const auto xi = expand_field({FieldKind::xi, f}, fx.ctx);
  CHECK(xi[0].label == xi[1].label);
  CHECK(xi[0].label == fx.ctx.box_label(f));
  CHECK(xi[0].kind != xi[1].kind);
}

TEST_CASE("phi and chi of real functions collapse their labels") {
  auto rng = tst::make_rng(34);
  const auto grid = tst::small_grid();
  GramContext ctx(grid, PhysicalConstants{});
  const auto real_fn = sample_on_grid(gaussian_packet(tst::rand_packet(rng, true)), grid);
  const LabelId f = ctx.add("real", real_fn);

  // f* = f within roundoff, so (star f, g) matches (f, g) for any g
  const LabelId sf = ctx.star_label(f);
  CHECK(max_abs_difference(ctx.function(sf), ctx.function(f)) <=
        1e-13 * ctx.function(f).max_abs());

  // chi_f = b_{f*} + b_f^dagger with b_g = a_{bullet g}: for real f the
  // annihilator label equals bullet(star f) = star(bullet f)
  const auto chi = expand_field({FieldKind::chi, f}, ctx);
  const LabelId b_of_star = ctx.bullet_label(sf);
  CHECK(max_abs_difference(ctx.function(chi[0].label), ctx.function(b_of_star)) <=
        1e-13 * ctx.function(b_of_star).max_abs());
}

TEST_CASE("two-point functions match the brackets") {
  Fixture fx(3, 35);
  const LabelId f = fx.labels[0], g = fx.labels[1];

  const Complex chi2 = field_vev({{FieldKind::chi, f}, {FieldKind::chi, g}}, fx.ctx);
  const Complex expected = fx.ctx.inner(
      fx.ctx.star_label(fx.ctx.bullet_label(f)), fx.ctx.bullet_label(g));
  CHECK(std::abs(chi2 - expected) <= 1e-14 * std::max(std::abs(expected), 1e-300));

  CHECK(field_vev({{FieldKind::phi, f}}, fx.ctx) == Complex(0.0, 0.0));

  const Complex xi2 = field_vev({{FieldKind::xi, f}, {FieldKind::xi, g}}, fx.ctx);
  const Complex xi_expected = fx.ctx.inner(fx.ctx.box_label(f), fx.ctx.box_label(g));
  CHECK(std::abs(xi2 - xi_expected) <= 1e-14 * std::max(std::abs(xi_expected), 1e-300));
}

TEST_CASE("four-point chi function equals the pairing sum") {
  Fixture fx(4, 36);
  auto c2 = [&fx](LabelId a, LabelId b) {
    return field_vev({{FieldKind::chi, a}, {FieldKind::chi, b}}, fx.ctx);
  };
  const LabelId f = fx.labels[0], g = fx.labels[1], h = fx.labels[2];
  const LabelId l = fx.labels.size() > 3 ? fx.labels[3] : fx.labels[0];
  const Complex four =
      field_vev({{FieldKind::chi, f}, {FieldKind::chi, g}, {FieldKind::chi, h},
                 {FieldKind::chi, l}},
                fx.ctx);
  const Complex pairing_sum = c2(f, g) * c2(h, l) + c2(f, h) * c2(g, l) +
                              c2(f, l) * c2(g, h);
  CHECK(std::abs(four - pairing_sum) <=
        1e-13 * std::max(std::abs(pairing_sum), 1e-300));
}

TEST_CASE("chi and xi commute, phi does not") {
  Fixture fx(3, 37);
  const LabelId f = fx.labels[0], g = fx.labels[1];

  const auto chi = commutator_vev(FieldKind::chi, f, g, {}, {}, fx.ctx);
  CHECK(std::abs(chi.value) <= 1e-13 * std::max(chi.scale, 1e-300));

  const auto xi = commutator_vev(FieldKind::xi, f, g, {}, {}, fx.ctx);
  CHECK(std::abs(xi.value) <= 1e-13 * std::max(xi.scale, 1e-300));

  const auto phi = commutator_vev(FieldKind::phi, f, g, {}, {}, fx.ctx);
  const Complex expected = fx.ctx.inner(fx.ctx.star_label(f), g) -
                           fx.ctx.inner(fx.ctx.star_label(g), f);
  CHECK(std::abs(phi.value - expected) <= 1e-14 * std::max(std::abs(expected), 1e-300));
  const double scale = std::sqrt(std::abs(fx.ctx.inner(f, f)) *
                                 std::abs(fx.ctx.inner(g, g)));
  CHECK(std::abs(phi.value) > 1e-3 * scale);
}

TEST_CASE("commutators vanish under probe words") {
  Fixture fx(3, 38);
  auto rng = tst::make_rng(39);
  const LabelId f = fx.labels[0], g = fx.labels[1];
  for (int trial = 0; trial < 10; ++trial) {
    OperatorWord left, right;
    const int ll = static_cast<int>(tst::uniform(rng, 0.0, 4.0));
    const int rl = static_cast<int>(tst::uniform(rng, 0.0, 4.0));
    for (int i = 0; i < ll; ++i)
      left.push_back({tst::uniform(rng) > 0.0 ? OpKind::create : OpKind::annihilate,
                      fx.labels[static_cast<std::size_t>(tst::uniform(rng, 0.0, 3.0))]});
    for (int i = 0; i < rl; ++i)
      right.push_back({tst::uniform(rng) > 0.0 ? OpKind::create : OpKind::annihilate,
                       fx.labels[static_cast<std::size_t>(tst::uniform(rng, 0.0, 3.0))]});
    for (const FieldKind kind : {FieldKind::chi, FieldKind::xi}) {
      const auto value = commutator_vev(kind, f, g, left, right, fx.ctx);
      CHECK(std::abs(value.value) <= 1e-13 * std::max(value.scale, 1e-300));
    }
  }
}

TEST_CASE("four-point chi is invariant under all argument permutations") {
  Fixture fx(4, 40);
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end());
  Complex reference = 0.0;
  bool first = true;
  double scale = 0.0;
  do {
    std::vector<FieldSymbol> product;
    for (const int idx : order)
      product.push_back({FieldKind::chi, fx.labels[static_cast<std::size_t>(idx)]});
    const Complex value = field_vev(product, fx.ctx);
    if (first) {
      reference = value;
      scale = std::max(std::abs(value), field_vev_bound(product, fx.ctx));
      first = false;
    }
    CHECK(std::abs(value - reference) <= 1e-13 * std::max(scale, 1e-300));
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST_CASE("state hermiticity") {
  Fixture fx(3, 41);
  auto rng = tst::make_rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    OperatorWord word;
    const int len = static_cast<int>(tst::uniform(rng, 0.0, 7.0));
    for (int i = 0; i < len; ++i)
      word.push_back({tst::uniform(rng) > 0.0 ? OpKind::create : OpKind::annihilate,
                      fx.labels[static_cast<std::size_t>(tst::uniform(rng, 0.0, 3.0))]});
    OperatorWord reversed(word.rbegin(), word.rend());
    for (auto& op : reversed)
      op.kind = op.kind == OpKind::create ? OpKind::annihilate : OpKind::create;
    const Complex a = vacuum_expectation(word, fx.ctx);
    const Complex b = vacuum_expectation(reversed, fx.ctx);
    const double scale = std::max(vacuum_expectation_bound(word, fx.ctx), 1e-300);
    CHECK(std::abs(a - std::conj(b)) <= 1e-13 * scale);
  }
}

TEST_CASE("b and c relabelings reproduce the mapped brackets") {
  Fixture fx(3, 43);
  const LabelId f = fx.labels[0], g = fx.labels[1];

  const LabelId bf = relabel_b(f, fx.ctx), bg = relabel_b(g, fx.ctx);
  const Complex via_word =
      vacuum_expectation({{OpKind::annihilate, bf}, {OpKind::create, bg}}, fx.ctx);
  CHECK(via_word == fx.ctx.inner(bf, bg));

  const LabelId cf = relabel_c(f, fx.ctx), cg = relabel_c(g, fx.ctx);
  const Complex via_word_c =
      vacuum_expectation({{OpKind::annihilate, cf}, {OpKind::create, cg}}, fx.ctx);
  CHECK(via_word_c == fx.ctx.inner(cf, cg));

  // bullet acts as the identity on even functions, so b collapses to a there
  std::vector<AntisymTensor2> h(static_cast<std::size_t>(fx.grid->size()));
  auto rng = tst::make_rng(44);
  for (auto& t : h) t = tst::rand_antisym(rng);
  const auto even = bullet_preimage(h, fx.grid);
  const LabelId e = fx.ctx.add("even", even);
  const LabelId be = relabel_b(e, fx.ctx);
  CHECK(max_abs_difference(fx.ctx.function(be), fx.ctx.function(e)) <=
        1e-13 * fx.ctx.function(e).max_abs());
}

TEST_CASE("equivalence of a-words and b-words") {
  auto rng = tst::make_rng(45);
  const auto grid = tst::small_grid();
  std::vector<std::vector<AntisymTensor2>> sheets;
  for (int i = 0; i < 3; ++i) {
    const auto f = sample_on_grid(gaussian_packet(tst::rand_packet(rng)), grid);
    std::vector<AntisymTensor2> h(static_cast<std::size_t>(grid->size()));
    for (int node = 0; node < grid->size(); ++node)
      h[static_cast<std::size_t>(node)] = f.plus(node);
    sheets.push_back(std::move(h));
  }

  std::vector<OperatorWord> words;
  words.push_back({});
  words.push_back({{OpKind::annihilate, 0}, {OpKind::create, 0}});
  for (int trial = 0; trial < 20; ++trial) {
    OperatorWord word;
    const int len = 1 + static_cast<int>(tst::uniform(rng, 0.0, 6.0));
    for (int i = 0; i < len; ++i)
      word.push_back({tst::uniform(rng) > 0.0 ? OpKind::create : OpKind::annihilate,
                      static_cast<LabelId>(tst::uniform(rng, 0.0, 3.0))});
    words.push_back(std::move(word));
  }
  const auto report = equivalence_check(words, sheets, grid, PhysicalConstants{});
  CHECK(report.words_checked == 22);
  CHECK(report.max_abs_difference <= 1e-13 * std::max(report.scale, 1.0));
}

TEST_CASE("commutativity is the bracket symmetry") {
  Fixture fx(2, 46);
  const LabelId f = fx.labels[0], g = fx.labels[1];
  const LabelId bf = fx.ctx.bullet_label(f), bg = fx.ctx.bullet_label(g);
  const Complex direct = fx.ctx.inner(fx.ctx.star_label(bf), bg) -
                         fx.ctx.inner(fx.ctx.star_label(bg), bf);
  const auto engine = commutator_vev(FieldKind::chi, f, g, {}, {}, fx.ctx);
  CHECK(std::abs(direct - engine.value) <=
        1e-13 * std::max({std::abs(direct), engine.scale, 1e-300}));
}
