#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kfl/formula.hpp"
#include "kfl/kripke.hpp"
#include "kfl/node_set.hpp"

namespace kfl {

using Valuation = std::map<std::string, NodeSet, std::less<>>;
using SetAssignment = std::map<std::string, NodeSet>;

/// A frame together with the set of nodes forcing each atom. Atoms absent
/// from the valuation are forced nowhere.
class Model {
 public:
  explicit Model(Frame frame, Valuation valuation = {});

  const Frame& frame() const { return frame_; }
  std::size_t size() const { return frame_.size(); }
  const Valuation& valuation() const { return valuation_; }
  NodeSet valuation(std::string_view atom) const;
  std::vector<std::string> atoms() const;

  /// Copy with `atom` (re)assigned to `set`.
  Model with_atom(const std::string& atom, NodeSet set) const;

  friend bool operator==(const Model&, const Model&) = default;

 private:
  Frame frame_;
  Valuation valuation_;
};

/// {k : R[k] ∩ a ⊆ b}, the extension of an implication.
NodeSet arrow(const Frame& f, NodeSet a, NodeSet b);

/// Nodewise forcing, evaluated by direct recursion on the formula.
/// Throws kfl::Error on metavariables and std::out_of_range on bad nodes.
bool forces(const Model& m, Node k, const Formula& f);

/// {k : forces(m, k, f)}, computed compositionally on sets.
NodeSet extension(const Model& m, const Formula& f);

/// Sources in `region`, targets anywhere: k ⊨ p and kRk' imply k' ⊨ p.
bool is_atom_persistent(const Model& m, NodeSet region);
bool is_atom_persistent(const Model& m);

/// The least family of node sets containing ∅ and the extension of each
/// chosen atom, closed under ∩, ∪ and `arrow`. These are exactly the
/// extensions of formulas over those atoms. Each set keeps one formula
/// that defines it.
class DefinableAlgebra {
 public:
  /// Members in increasing bitmask order.
  const std::vector<NodeSet>& sets() const& { return sets_; }
  std::vector<NodeSet> sets() && { return std::move(sets_); }
  std::size_t size() const { return sets_.size(); }
  bool contains(NodeSet s) const;
  /// A formula whose extension is `s`. Throws kfl::Error if `s` is absent.
  const Formula& defining_formula(NodeSet s) const;

 private:
  friend DefinableAlgebra definable_sets(const Model&, std::span<const std::string>,
                                         std::size_t);
  std::vector<NodeSet> sets_;
  std::vector<Formula> formulas_;
};

inline constexpr std::size_t kDefaultAlgebraLimit = std::size_t{1} << 16;

/// Throws BudgetError when the closure grows past `limit` sets.
DefinableAlgebra definable_sets(const Model& m, std::span<const std::string> atoms,
                                std::size_t limit = kDefaultAlgebraLimit);
/// Closure over every atom of the valuation.
DefinableAlgebra definable_sets(const Model& m);

/// Every formula true at a source in `region` stays true along R.
bool is_formula_persistent(const Model& m, NodeSet region);
bool is_formula_persistent(const Frame& f, const DefinableAlgebra& algebra, NodeSet region);

/// Outcome of checking a scheme; when `holds` is false every failing_*
/// field is set.
struct SchemeVerdict {
  bool holds = true;
  std::optional<Node> failing_node;
  /// Metavariable (or, at frame level, atom) to node set.
  std::optional<SetAssignment> failing_assignment;
  /// Metavariable to a concrete formula with the assigned extension.
  std::optional<Assignment> failing_formulas;
  std::optional<SchemeInstance> failing_instance;
  /// Frame-level failures only: the frame with fresh atoms valued by the
  /// failing assignment, in which `failing_instance` fails.
  std::optional<Model> countermodel;
};

/// Scheme satisfaction in a model: metavariables range over the definable
/// algebra of the model's atoms. Rules are checked nodewise.
SchemeVerdict model_validates_scheme(const Model& m, const Scheme& s);
SchemeVerdict model_validates_scheme(const Model& m, const DefinableAlgebra& algebra,
                                     const Scheme& s);

/// Scheme satisfaction in a frame: metavariables (and any atoms in the
/// template) range over all node subsets, or over successor-closed subsets
/// when `persistent_only`. Throws BudgetError past 2^26 assignments.
SchemeVerdict frame_validates_scheme(const Frame& f, const Scheme& s, bool persistent_only);

/// Fast boolean forms used by the sweeps.
bool model_scheme_holds(const Model& m, const DefinableAlgebra& algebra, const Scheme& s);
bool frame_scheme_holds(const Frame& f, const Scheme& s, bool persistent_only);

/// All successor-closed subsets of the frame's nodes, increasing. n <= 24.
std::vector<NodeSet> successor_closed_sets(const Frame& f);

}  // namespace kfl
