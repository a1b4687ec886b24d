#include "emfield/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emfield {

namespace {

void check_cap(const OperatorWord& word, int cap) {
  if (static_cast<int>(word.size()) > cap) {
    throw std::length_error("operator word exceeds the configured cap");
  }
}

Complex wick(const std::vector<LadderOp>& ops, std::vector<bool>& used,
             std::size_t first, const GramContext& ctx) {
  while (first < ops.size() && used[first]) ++first;
  if (first == ops.size()) return Complex(1.0, 0.0);
  if (ops[first].kind == OpKind::create) return Complex(0.0, 0.0);
  Complex total = 0.0;
  used[first] = true;
  for (std::size_t j = first + 1; j < ops.size(); ++j) {
    if (used[j] || ops[j].kind != OpKind::create) continue;
    used[j] = true;
    const Complex sub = wick(ops, used, first + 1, ctx);
    if (sub != Complex(0.0, 0.0)) {
      total += ctx.inner(ops[first].label, ops[j].label) * sub;
    }
    used[j] = false;
  }
  used[first] = false;
  return total;
}

double wick_bound(const std::vector<LadderOp>& ops, std::vector<bool>& used,
                  std::size_t first, const GramContext& ctx) {
  while (first < ops.size() && used[first]) ++first;
  if (first == ops.size()) return 1.0;
  if (ops[first].kind == OpKind::create) return 0.0;
  double total = 0.0;
  used[first] = true;
  for (std::size_t j = first + 1; j < ops.size(); ++j) {
    if (used[j] || ops[j].kind != OpKind::create) continue;
    used[j] = true;
    total += std::abs(ctx.inner(ops[first].label, ops[j].label)) *
             wick_bound(ops, used, first + 1, ctx);
    used[j] = false;
  }
  used[first] = false;
  return total;
}

}  // namespace

Complex vacuum_expectation(const OperatorWord& word, const GramContext& ctx, int cap) {
  check_cap(word, cap);
  std::vector<bool> used(word.size(), false);
  return wick(word, used, 0, ctx);
}

double vacuum_expectation_bound(const OperatorWord& word, const GramContext& ctx,
                                int cap) {
  check_cap(word, cap);
  std::vector<bool> used(word.size(), false);
  return wick_bound(word, used, 0, ctx);
}

std::array<LadderOp, 2> expand_field(const FieldSymbol& sym, GramContext& ctx) {
  switch (sym.kind) {
    case FieldKind::phi:
      return {LadderOp{OpKind::annihilate, ctx.star_label(sym.label)},
              LadderOp{OpKind::create, sym.label}};
    case FieldKind::chi: {
      const LabelId bullet = ctx.bullet_label(sym.label);
      return {LadderOp{OpKind::annihilate, ctx.star_label(bullet)},
              LadderOp{OpKind::create, bullet}};
    }
    case FieldKind::xi: {
      const LabelId box = ctx.box_label(sym.label);
      return {LadderOp{OpKind::annihilate, box}, LadderOp{OpKind::create, box}};
    }
  }
  throw std::invalid_argument("unknown field kind");
}

namespace {

template <typename Value, typename Eval>
Value distribute_fields(const std::vector<FieldSymbol>& symbols, GramContext& ctx,
                        int cap, Eval eval) {
  const auto n = symbols.size();
  if (static_cast<int>(n) > cap) {
    throw std::length_error("field product exceeds the configured cap");
  }
  std::vector<std::array<LadderOp, 2>> expanded;
  expanded.reserve(n);
  for (const auto& sym : symbols) expanded.push_back(expand_field(sym, ctx));
  Value total{};
  OperatorWord word(n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i)
      word[i] = expanded[i][(mask >> i) & 1U];
    total += eval(word);
  }
  return total;
}

}  // namespace

Complex field_vev(const std::vector<FieldSymbol>& symbols, GramContext& ctx, int cap) {
  return distribute_fields<Complex>(symbols, ctx, cap, [&](const OperatorWord& w) {
    return vacuum_expectation(w, ctx, cap);
  });
}

double field_vev_bound(const std::vector<FieldSymbol>& symbols, GramContext& ctx,
                       int cap) {
  return distribute_fields<double>(symbols, ctx, cap, [&](const OperatorWord& w) {
    return vacuum_expectation_bound(w, ctx, cap);
  });
}

CommutatorValue commutator_vev(FieldKind kind, LabelId f, LabelId g,
                               const OperatorWord& left_probe,
                               const OperatorWord& right_probe, GramContext& ctx,
                               int cap) {
  const auto fg = expand_field({kind, f}, ctx);
  const auto gf = expand_field({kind, g}, ctx);
  auto sandwich = [&](const std::array<LadderOp, 2>& first,
                      const std::array<LadderOp, 2>& second, auto eval) {
    using Out = decltype(eval(OperatorWord{}));
    Out total{};
    OperatorWord word;
    word.reserve(left_probe.size() + right_probe.size() + 2);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        word = left_probe;
        word.push_back(first[static_cast<std::size_t>(i)]);
        word.push_back(second[static_cast<std::size_t>(j)]);
        word.insert(word.end(), right_probe.begin(), right_probe.end());
        total += eval(word);
      }
    }
    return total;
  };
  auto value = [&](const OperatorWord& w) { return vacuum_expectation(w, ctx, cap); };
  auto bound = [&](const OperatorWord& w) {
    return vacuum_expectation_bound(w, ctx, cap);
  };
  CommutatorValue out;
  out.value = sandwich(fg, gf, value) - sandwich(gf, fg, value);
  out.scale = sandwich(fg, gf, bound) + sandwich(gf, fg, bound);
  return out;
}

LabelId relabel_b(LabelId f, GramContext& ctx) { return ctx.bullet_label(f); }
LabelId relabel_c(LabelId f, GramContext& ctx) { return ctx.box_label(f); }

EquivalenceReport equivalence_check(
    const std::vector<OperatorWord>& words,
    const std::vector<std::vector<AntisymTensor2>>& plus_sheets, const GridPtr& grid,
    const PhysicalConstants& constants, int cap) {
  GramContext ctx(grid, constants);
  std::vector<LabelId> a_labels, b_labels;
  const auto n = static_cast<std::size_t>(grid->size());
  for (std::size_t i = 0; i < plus_sheets.size(); ++i) {
    // a-route: h_i itself (the bracket reads only the plus sheet).
    a_labels.push_back(ctx.add("h" + std::to_string(i),
                               OnShellTestFunction(grid, plus_sheets[i],
                                                   std::vector<AntisymTensor2>(n))));
    // b-route: b_{f_i} = a_{bullet f_i} with f_i the canonical even preimage.
    const LabelId f = ctx.add("preimage(h" + std::to_string(i) + ")",
                              bullet_preimage(plus_sheets[i], grid));
    b_labels.push_back(relabel_b(f, ctx));
  }
  EquivalenceReport report;
  auto relabel = [](const OperatorWord& word, const std::vector<LabelId>& map) {
    OperatorWord out = word;
    for (auto& op : out) op.label = map.at(static_cast<std::size_t>(op.label));
    return out;
  };
  for (const auto& word : words) {
    const OperatorWord wa = relabel(word, a_labels);
    const OperatorWord wb = relabel(word, b_labels);
    const Complex va = vacuum_expectation(wa, ctx, cap);
    const Complex vb = vacuum_expectation(wb, ctx, cap);
    report.max_abs_difference = std::max(report.max_abs_difference, std::abs(va - vb));
    report.scale = std::max(report.scale, vacuum_expectation_bound(wa, ctx, cap) +
                                              vacuum_expectation_bound(wb, ctx, cap));
    ++report.words_checked;
  }
  return report;
}

}  // namespace emfield
