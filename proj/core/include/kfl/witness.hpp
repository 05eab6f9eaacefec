#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "kfl/formula.hpp"
#include "kfl/kripke.hpp"
#include "kfl/semantics.hpp"

namespace kfl {

/// Structural defects that the characterization results turn into
/// countermodels.
enum class ViolationKind {
  NonReflexiveNode,            // ¬kRk
  NonReflexiveInRPlus,         // k1 ∈ R+[k0], ¬k1Rk1
  NonReflexiveInR2,            // k ∈ R²[k0], ¬kRk
  NonTransitiveTripleInRPlus,  // k1 ∈ R+[k0], k1Rk2Rk3, ¬k1Rk3
  PersistencyBreakRPlus,       // k1 ∈ R+[k0], k1Rk2, definable A ∋ k1, k2 ∉ A
  PersistencyBreakRPlusPlus,   // as above with k1 ∈ R++[k0]
  NonConnectedPair,            // k', k'' ∈ R+[k], neither k'Rk'' nor k''Rk'
};

std::string_view to_string(ViolationKind kind);
/// Whether the kind depends on the valuation, not just the frame.
bool needs_model(ViolationKind kind);

/// A located defect.
///
/// `root` is k0 (or k for NonReflexiveNode and NonConnectedPair).
/// `offenders` holds, by kind: {k}; {k1}; {k}; {k1, k2, k3}; {k1, k2};
/// {k1, k2}; {k', k''}. `chain` is ℓ1..ℓn, the inner nodes of a shortest
/// walk from `root` to offenders[0] (for NonReflexiveInR2 it is the single
/// middle node k'); it is empty when `root` steps directly to the offender.
struct ViolationWitness {
  ViolationKind kind;
  Node root = 0;
  std::vector<Node> offenders;
  std::vector<Node> chain;
  std::optional<NodeSet> breaking_set;

  friend bool operator==(const ViolationWitness&, const ViolationWitness&) = default;
};

/// Lexicographically least witness of `kind`, or none when the condition
/// holds everywhere. Persistency kinds need a model; calling the Frame
/// overload with them throws kfl::Error.
std::optional<ViolationWitness> find_violation(const Frame& f, ViolationKind kind);
std::optional<ViolationWitness> find_violation(const Model& m, ViolationKind kind);

/// Whether `w` really describes a defect of `m`.
bool witness_is_genuine(const Model& m, const ViolationWitness& w);

/// The proof constructions that refute one scheme from one defect.
enum class CountermodelTheorem {
  MP,
  A1,
  A4Reflexivity,
  A4Persistency,
  A5a,
  A5bTransitivity,
  A5bPersistency,
  A6,
};

std::string_view to_string(CountermodelTheorem theorem);
/// Accepts the names printed by to_string, case-insensitively.
std::optional<CountermodelTheorem> countermodel_theorem_from_string(std::string_view name);
ViolationKind required_violation(CountermodelTheorem theorem);
/// Name of the registered scheme the construction refutes.
std::string_view target_scheme(CountermodelTheorem theorem);

struct Countermodel {
  CountermodelTheorem theorem;
  Model model;
  Node failing_node;
  /// Premises forced at `failing_node`; empty unless the target is a rule.
  std::vector<Formula> premises;
  /// Not forced at `failing_node`.
  Formula failing_instance;
};

/// Builds the countermodel prescribed for `theorem` from a witness found in
/// `base`. Frame-level constructions replace the valuation with atoms p, q,
/// r; persistency constructions keep `base`'s valuation and add one fresh
/// atom for the breaking set. Throws kfl::Error when the witness has the
/// wrong kind or is not a defect of `base`, or (A6) when the frame is not
/// reflexive and transitive. The result is re-checked before returning.
Countermodel build_countermodel(CountermodelTheorem theorem, const ViolationWitness& w,
                                const Model& base);
Countermodel build_countermodel(CountermodelTheorem theorem, const ViolationWitness& w,
                                const Frame& base);

/// Re-evaluates the countermodel invariant with `forces`.
bool countermodel_fails_as_claimed(const Countermodel& c);

}  // namespace kfl
