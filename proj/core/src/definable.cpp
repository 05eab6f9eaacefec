#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "kfl/error.hpp"
#include "kfl/semantics.hpp"

namespace kfl {

bool DefinableAlgebra::contains(NodeSet s) const {
  return std::binary_search(sets_.begin(), sets_.end(), s);
}

const Formula& DefinableAlgebra::defining_formula(NodeSet s) const {
  auto it = std::lower_bound(sets_.begin(), sets_.end(), s);
  if (it == sets_.end() || *it != s) throw Error("set is not definable in this model");
  return formulas_[static_cast<std::size_t>(it - sets_.begin())];
}

DefinableAlgebra definable_sets(const Model& m, std::span<const std::string> atoms,
                                std::size_t limit) {
  const Frame& f = m.frame();
  std::vector<NodeSet> found;
  std::vector<Formula> defs;
  std::unordered_map<std::uint64_t, std::size_t> index;

  auto add = [&](NodeSet s, auto&& make_formula) {
    if (index.contains(s.bits())) return;
    if (found.size() >= limit)
      throw BudgetError("definable algebra exceeds " + std::to_string(limit) + " sets");
    index.emplace(s.bits(), found.size());
    found.push_back(s);
    defs.push_back(make_formula());
  };

  add(NodeSet{}, [] { return Formula::bot(); });
  for (const auto& a : atoms) add(m.valuation(a), [&] { return Formula::atom(a); });

  // Saturate: each new set is combined with every set found before it and
  // with itself, in both argument orders for the arrow.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      NodeSet x = found[i];
      NodeSet y = found[j];
      add(x & y, [&] { return Formula::conj(defs[i], defs[j]); });
      add(x | y, [&] { return Formula::disj(defs[i], defs[j]); });
      add(arrow(f, x, y), [&] { return Formula::impl(defs[i], defs[j]); });
      add(arrow(f, y, x), [&] { return Formula::impl(defs[j], defs[i]); });
    }
  }

  std::vector<std::size_t> order(found.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return found[a] < found[b]; });
  DefinableAlgebra alg;
  alg.sets_.reserve(found.size());
  alg.formulas_.reserve(found.size());
  for (auto i : order) {
    alg.sets_.push_back(found[i]);
    alg.formulas_.push_back(defs[i]);
  }
  return alg;
}

DefinableAlgebra definable_sets(const Model& m) {
  auto atoms = m.atoms();
  return definable_sets(m, atoms);
}

}  // namespace kfl
