#include "kfl/semantics.hpp"

#include <cctype>
#include <stdexcept>

#include "kfl/error.hpp"
#include "set_program.hpp"

namespace kfl {

Model::Model(Frame frame, Valuation valuation)
    : frame_(std::move(frame)), valuation_(std::move(valuation)) {
  for (const auto& [atom, set] : valuation_) {
    if (!is_atom_name(atom)) throw Error("invalid atom name '" + atom + "'");
    if (!set.subset_of(frame_.nodes()))
      throw std::out_of_range("valuation of '" + atom + "' has out-of-range nodes");
  }
}

NodeSet Model::valuation(std::string_view atom) const {
  auto it = valuation_.find(atom);
  return it == valuation_.end() ? NodeSet{} : it->second;
}

std::vector<std::string> Model::atoms() const {
  std::vector<std::string> out;
  out.reserve(valuation_.size());
  for (const auto& entry : valuation_) out.push_back(entry.first);
  return out;
}

Model Model::with_atom(const std::string& atom, NodeSet set) const {
  Valuation v = valuation_;
  v[atom] = set;
  return Model(frame_, std::move(v));
}

NodeSet arrow(const Frame& f, NodeSet a, NodeSet b) {
  NodeSet out;
  NodeSet bad = a - b;
  for (Node k = 0; k < f.size(); ++k)
    if (!f.row(k).intersects(bad)) out.insert(k);
  return out;
}

bool forces(const Model& m, Node k, const Formula& f) {
  if (k >= m.size()) throw std::out_of_range("node " + std::to_string(k) + " out of range");
  switch (f.kind()) {
    case FormulaKind::Bot:
      return false;
    case FormulaKind::Atom:
      return m.valuation(f.name()).contains(k);
    case FormulaKind::Meta:
      throw Error("cannot evaluate metavariable " + f.name());
    case FormulaKind::And:
      return forces(m, k, f.left()) && forces(m, k, f.right());
    case FormulaKind::Or:
      return forces(m, k, f.left()) || forces(m, k, f.right());
    case FormulaKind::Impl:
      for (Node j : m.frame().row(k))
        if (forces(m, j, f.left()) && !forces(m, j, f.right())) return false;
      return true;
  }
  return false;
}

NodeSet extension(const Model& m, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Bot:
      return {};
    case FormulaKind::Atom:
      return m.valuation(f.name());
    case FormulaKind::Meta:
      throw Error("cannot evaluate metavariable " + f.name());
    case FormulaKind::And:
      return extension(m, f.left()) & extension(m, f.right());
    case FormulaKind::Or:
      return extension(m, f.left()) | extension(m, f.right());
    case FormulaKind::Impl:
      return arrow(m.frame(), extension(m, f.left()), extension(m, f.right()));
  }
  return {};
}

bool is_atom_persistent(const Model& m, NodeSet region) {
  for (const auto& [atom, set] : m.valuation())
    if (!image_of_set(m.frame(), set & region).subset_of(set)) return false;
  return true;
}

bool is_atom_persistent(const Model& m) { return is_atom_persistent(m, m.frame().nodes()); }

bool is_formula_persistent(const Frame& f, const DefinableAlgebra& algebra, NodeSet region) {
  for (NodeSet a : algebra.sets())
    if (!image_of_set(f, a & region).subset_of(a)) return false;
  return true;
}

bool is_formula_persistent(const Model& m, NodeSet region) {
  if (region.empty()) return true;
  return is_formula_persistent(m.frame(), definable_sets(m), region);
}

namespace {

constexpr std::uint64_t kAssignmentBudget = std::uint64_t{1} << 26;

void check_budget(std::size_t choices, std::size_t slots) {
  long double total = 1;
  for (std::size_t i = 0; i < slots; ++i) total *= static_cast<long double>(choices);
  if (total > static_cast<long double>(kAssignmentBudget))
    throw BudgetError("scheme check needs " + std::to_string(choices) + "^" +
                      std::to_string(slots) + " assignments, over the 2^26 budget");
}

struct Failure {
  Node node;
  std::vector<NodeSet> values;
};

std::optional<Failure> first_failure(const Frame& frame, const detail::CompiledScheme& compiled,
                                     std::size_t slots, std::span<const NodeSet> choices) {
  std::optional<Failure> found;
  std::vector<NodeSet> regs;
  detail::for_each_assignment(slots, choices, [&](std::span<const NodeSet> values) {
    NodeSet bad = compiled.failures(frame, values, regs);
    if (bad.empty()) return false;
    found = Failure{*bad.first(), {values.begin(), values.end()}};
    return true;
  });
  return found;
}

// Template variables checked at frame level: metavariables, then atoms.
std::vector<std::string> frame_slots(const Scheme& s) {
  std::vector<std::string> slots = s.metavariables();
  auto add_atoms = [&](const Formula& f) {
    for (auto& a : atoms_of(f))
      if (std::find(slots.begin(), slots.end(), a) == slots.end()) slots.push_back(a);
  };
  for (const auto& p : s.premises()) add_atoms(p);
  add_atoms(s.conclusion());
  return slots;
}

std::vector<NodeSet> frame_choices(const Frame& f, bool persistent_only) {
  if (persistent_only) return successor_closed_sets(f);
  if (f.size() > 24) throw BudgetError("frame too large to enumerate all subsets");
  std::vector<NodeSet> all;
  all.reserve(std::size_t{1} << f.size());
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << f.size()); ++b)
    all.push_back(NodeSet::from_bits(b));
  return all;
}

// Lowercase fresh atom standing for a metavariable, avoiding atoms in use.
std::string fresh_atom_for(const std::string& meta, const std::vector<std::string>& taken) {
  std::string base;
  for (char c : meta) base += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (!is_atom_name(base)) base = "x_" + base;
  std::string name = base;
  for (int i = 1; std::find(taken.begin(), taken.end(), name) != taken.end(); ++i)
    name = base + "_" + std::to_string(i);
  return name;
}

}  // namespace

std::vector<NodeSet> successor_closed_sets(const Frame& f) {
  if (f.size() > 24) throw BudgetError("frame too large to enumerate successor-closed sets");
  std::vector<NodeSet> out;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << f.size()); ++b) {
    NodeSet s = NodeSet::from_bits(b);
    if (is_successor_closed(f, s)) out.push_back(s);
  }
  return out;
}

SchemeVerdict model_validates_scheme(const Model& m, const Scheme& s) {
  return model_validates_scheme(m, definable_sets(m), s);
}

SchemeVerdict model_validates_scheme(const Model& m, const DefinableAlgebra& algebra,
                                     const Scheme& s) {
  const auto& slots = s.metavariables();
  check_budget(algebra.size(), slots.size());
  detail::CompiledScheme compiled(s, slots, &m.valuation());
  auto failure = first_failure(m.frame(), compiled, slots.size(), algebra.sets());
  SchemeVerdict v;
  if (!failure) return v;
  v.holds = false;
  v.failing_node = failure->node;
  SetAssignment sets;
  Assignment formulas;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    sets[slots[i]] = failure->values[i];
    formulas[slots[i]] = algebra.defining_formula(failure->values[i]);
  }
  v.failing_instance = instantiate(s, formulas);
  v.failing_assignment = std::move(sets);
  v.failing_formulas = std::move(formulas);
  return v;
}

bool model_scheme_holds(const Model& m, const DefinableAlgebra& algebra, const Scheme& s) {
  const auto& slots = s.metavariables();
  check_budget(algebra.size(), slots.size());
  detail::CompiledScheme compiled(s, slots, &m.valuation());
  return !first_failure(m.frame(), compiled, slots.size(), algebra.sets());
}

SchemeVerdict frame_validates_scheme(const Frame& f, const Scheme& s, bool persistent_only) {
  auto slots = frame_slots(s);
  auto choices = frame_choices(f, persistent_only);
  check_budget(choices.size(), slots.size());
  detail::CompiledScheme compiled(s, slots, nullptr);
  auto failure = first_failure(f, compiled, slots.size(), choices);
  SchemeVerdict v;
  if (!failure) return v;
  v.holds = false;
  v.failing_node = failure->node;

  // Realize every template variable as an atom of a concrete model.
  std::vector<std::string> taken;
  for (const auto& name : slots)
    if (is_atom_name(name)) taken.push_back(name);
  SetAssignment sets;
  Assignment formulas;
  Valuation valuation;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    std::string atom = slots[i];
    if (is_meta_name(atom)) {
      atom = fresh_atom_for(slots[i], taken);
      taken.push_back(atom);
      formulas[slots[i]] = Formula::atom(atom);
    }
    sets[slots[i]] = failure->values[i];
    valuation[atom] = failure->values[i];
  }
  v.failing_instance = instantiate(s, formulas);
  v.failing_assignment = std::move(sets);
  v.failing_formulas = std::move(formulas);
  v.countermodel = Model(f, std::move(valuation));
  return v;
}

bool frame_scheme_holds(const Frame& f, const Scheme& s, bool persistent_only) {
  auto slots = frame_slots(s);
  auto choices = frame_choices(f, persistent_only);
  check_budget(choices.size(), slots.size());
  detail::CompiledScheme compiled(s, slots, nullptr);
  return !first_failure(f, compiled, slots.size(), choices);
}

}  // namespace kfl
