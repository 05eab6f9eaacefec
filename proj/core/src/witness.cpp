#include "kfl/witness.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>
#include <string>

#include "kfl/axioms.hpp"
#include "kfl/error.hpp"

namespace kfl {

namespace {

constexpr std::array kTheoremNames = {
    std::pair{CountermodelTheorem::MP, std::string_view("mp")},
    std::pair{CountermodelTheorem::A1, std::string_view("a1")},
    std::pair{CountermodelTheorem::A4Reflexivity, std::string_view("a4-reflexivity")},
    std::pair{CountermodelTheorem::A4Persistency, std::string_view("a4-persistency")},
    std::pair{CountermodelTheorem::A5a, std::string_view("a5a")},
    std::pair{CountermodelTheorem::A5bTransitivity, std::string_view("a5b-transitivity")},
    std::pair{CountermodelTheorem::A5bPersistency, std::string_view("a5b-persistency")},
    std::pair{CountermodelTheorem::A6, std::string_view("a6")},
};

std::vector<Node> inner_nodes(const Frame& f, Node from, Node to, std::size_t min_edges) {
  auto walk = shortest_walk(f, from, to, min_edges);
  if (!walk) throw std::logic_error("no walk between witness nodes");
  return {walk->begin() + 1, walk->end() - 1};
}

std::optional<ViolationWitness> find_frame_violation(const Frame& f, ViolationKind kind) {
  const std::size_t n = f.size();
  switch (kind) {
    case ViolationKind::NonReflexiveNode:
      for (Node k = 0; k < n; ++k)
        if (!f.has_edge(k, k)) return ViolationWitness{kind, k, {k}, {}, {}};
      return std::nullopt;

    case ViolationKind::NonReflexiveInRPlus:
      for (Node k0 = 0; k0 < n; ++k0)
        for (Node k1 : reach_plus(f, k0))
          if (!f.has_edge(k1, k1))
            return ViolationWitness{kind, k0, {k1}, inner_nodes(f, k0, k1, 1), {}};
      return std::nullopt;

    case ViolationKind::NonReflexiveInR2:
      for (Node k0 = 0; k0 < n; ++k0)
        for (Node k : n_step_image(f, k0, 2))
          if (!f.has_edge(k, k))
            for (Node mid : f.row(k0))
              if (f.has_edge(mid, k)) return ViolationWitness{kind, k0, {k}, {mid}, {}};
      return std::nullopt;

    case ViolationKind::NonTransitiveTripleInRPlus:
      for (Node k0 = 0; k0 < n; ++k0)
        for (Node k1 : reach_plus(f, k0))
          for (Node k2 : f.row(k1))
            for (Node k3 : f.row(k2) - f.row(k1))
              return ViolationWitness{kind, k0, {k1, k2, k3}, inner_nodes(f, k0, k1, 1), {}};
      return std::nullopt;

    case ViolationKind::NonConnectedPair:
      for (Node k = 0; k < n; ++k) {
        NodeSet reach = reach_plus(f, k);
        for (Node a : reach)
          for (Node b : reach)
            if (b >= a && !f.has_edge(a, b) && !f.has_edge(b, a))
              return ViolationWitness{kind, k, {a, b}, {}, {}};
      }
      return std::nullopt;

    case ViolationKind::PersistencyBreakRPlus:
    case ViolationKind::PersistencyBreakRPlusPlus:
      throw Error(std::string(to_string(kind)) + " needs a model, not a bare frame");
  }
  return std::nullopt;
}

std::optional<ViolationWitness> find_persistency_break(const Model& m, ViolationKind kind) {
  const Frame& f = m.frame();
  const bool plusplus = kind == ViolationKind::PersistencyBreakRPlusPlus;
  const std::size_t min_edges = plusplus ? 2 : 1;
  DefinableAlgebra algebra = definable_sets(m);
  for (Node k0 = 0; k0 < f.size(); ++k0) {
    NodeSet region = plusplus ? reach_plusplus(f, k0) : reach_plus(f, k0);
    for (Node k1 : region)
      for (Node k2 : f.row(k1))
        for (NodeSet a : algebra.sets())
          if (a.contains(k1) && !a.contains(k2))
            return ViolationWitness{kind, k0, {k1, k2}, inner_nodes(f, k0, k1, min_edges), a};
  }
  return std::nullopt;
}

bool is_walk(const Frame& f, Node from, const std::vector<Node>& inner, Node to) {
  Node cur = from;
  for (Node next : inner) {
    if (next >= f.size() || !f.has_edge(cur, next)) return false;
    cur = next;
  }
  return f.has_edge(cur, to);
}

Node last_of_chain(const ViolationWitness& w) {
  return w.chain.empty() ? w.root : w.chain.back();
}

std::string fresh_atom(const Model& m, const std::string& base) {
  std::string name = base;
  for (int i = 1; m.valuation().contains(name); ++i) name = base + "_" + std::to_string(i);
  return name;
}

Formula instance_of(std::string_view scheme, const Assignment& assignment) {
  return substitute(get_scheme(scheme).conclusion(), assignment);
}

Formula atom(const char* name) { return Formula::atom(name); }

}  // namespace

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NonReflexiveNode: return "non-reflexive-node";
    case ViolationKind::NonReflexiveInRPlus: return "non-reflexive-in-rplus";
    case ViolationKind::NonReflexiveInR2: return "non-reflexive-in-r2";
    case ViolationKind::NonTransitiveTripleInRPlus: return "non-transitive-triple-in-rplus";
    case ViolationKind::PersistencyBreakRPlus: return "persistency-break-rplus";
    case ViolationKind::PersistencyBreakRPlusPlus: return "persistency-break-rplusplus";
    case ViolationKind::NonConnectedPair: return "non-connected-pair";
  }
  return "?";
}

bool needs_model(ViolationKind kind) {
  return kind == ViolationKind::PersistencyBreakRPlus ||
         kind == ViolationKind::PersistencyBreakRPlusPlus;
}

std::optional<ViolationWitness> find_violation(const Frame& f, ViolationKind kind) {
  return find_frame_violation(f, kind);
}

std::optional<ViolationWitness> find_violation(const Model& m, ViolationKind kind) {
  if (needs_model(kind)) return find_persistency_break(m, kind);
  return find_frame_violation(m.frame(), kind);
}

bool witness_is_genuine(const Model& m, const ViolationWitness& w) {
  const Frame& f = m.frame();
  const std::size_t n = f.size();
  auto in_range = [n](Node k) { return k < n; };
  if (!in_range(w.root) || !std::all_of(w.offenders.begin(), w.offenders.end(), in_range))
    return false;
  const auto& o = w.offenders;
  switch (w.kind) {
    case ViolationKind::NonReflexiveNode:
      return o.size() == 1 && o[0] == w.root && !f.has_edge(o[0], o[0]);
    case ViolationKind::NonReflexiveInRPlus:
      return o.size() == 1 && !f.has_edge(o[0], o[0]) && is_walk(f, w.root, w.chain, o[0]);
    case ViolationKind::NonReflexiveInR2:
      return o.size() == 1 && w.chain.size() == 1 && !f.has_edge(o[0], o[0]) &&
             is_walk(f, w.root, w.chain, o[0]);
    case ViolationKind::NonTransitiveTripleInRPlus:
      return o.size() == 3 && f.has_edge(o[0], o[1]) && f.has_edge(o[1], o[2]) &&
             !f.has_edge(o[0], o[2]) && is_walk(f, w.root, w.chain, o[0]);
    case ViolationKind::PersistencyBreakRPlus:
    case ViolationKind::PersistencyBreakRPlusPlus: {
      const bool plusplus = w.kind == ViolationKind::PersistencyBreakRPlusPlus;
      if (o.size() != 2 || !w.breaking_set || (plusplus && w.chain.empty())) return false;
      NodeSet a = *w.breaking_set;
      return f.has_edge(o[0], o[1]) && a.contains(o[0]) && !a.contains(o[1]) &&
             definable_sets(m).contains(a) && is_walk(f, w.root, w.chain, o[0]);
    }
    case ViolationKind::NonConnectedPair: {
      if (o.size() != 2) return false;
      NodeSet reach = reach_plus(f, w.root);
      return reach.contains(o[0]) && reach.contains(o[1]) && !f.has_edge(o[0], o[1]) &&
             !f.has_edge(o[1], o[0]);
    }
  }
  return false;
}

std::string_view to_string(CountermodelTheorem theorem) {
  for (auto [t, name] : kTheoremNames)
    if (t == theorem) return name;
  return "?";
}

std::optional<CountermodelTheorem> countermodel_theorem_from_string(std::string_view name) {
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (auto [t, n] : kTheoremNames)
    if (n == lower) return t;
  return std::nullopt;
}

ViolationKind required_violation(CountermodelTheorem theorem) {
  switch (theorem) {
    case CountermodelTheorem::MP: return ViolationKind::NonReflexiveNode;
    case CountermodelTheorem::A1: return ViolationKind::NonTransitiveTripleInRPlus;
    case CountermodelTheorem::A4Reflexivity: return ViolationKind::NonReflexiveInRPlus;
    case CountermodelTheorem::A4Persistency: return ViolationKind::PersistencyBreakRPlus;
    case CountermodelTheorem::A5a: return ViolationKind::NonReflexiveInR2;
    case CountermodelTheorem::A5bTransitivity: return ViolationKind::NonTransitiveTripleInRPlus;
    case CountermodelTheorem::A5bPersistency: return ViolationKind::PersistencyBreakRPlusPlus;
    case CountermodelTheorem::A6: return ViolationKind::NonConnectedPair;
  }
  return ViolationKind::NonReflexiveNode;
}

std::string_view target_scheme(CountermodelTheorem theorem) {
  switch (theorem) {
    case CountermodelTheorem::MP: return "MP";
    case CountermodelTheorem::A1: return "A1";
    case CountermodelTheorem::A4Reflexivity:
    case CountermodelTheorem::A4Persistency: return "A4";
    case CountermodelTheorem::A5a: return "A5a";
    case CountermodelTheorem::A5bTransitivity:
    case CountermodelTheorem::A5bPersistency: return "A5b";
    case CountermodelTheorem::A6: return "A6";
  }
  return "?";
}

bool countermodel_fails_as_claimed(const Countermodel& c) {
  if (c.failing_node >= c.model.size()) return false;
  for (const auto& p : c.premises)
    if (!forces(c.model, c.failing_node, p)) return false;
  return !forces(c.model, c.failing_node, c.failing_instance);
}

Countermodel build_countermodel(CountermodelTheorem theorem, const ViolationWitness& w,
                                const Frame& base) {
  return build_countermodel(theorem, w, Model(base));
}

Countermodel build_countermodel(CountermodelTheorem theorem, const ViolationWitness& w,
                                const Model& base) {
  if (w.kind != required_violation(theorem))
    throw Error(std::string(to_string(theorem)) + " needs a " +
                std::string(to_string(required_violation(theorem))) + " witness, got " +
                std::string(to_string(w.kind)));
  if (!witness_is_genuine(base, w))
    throw Error("witness does not describe a defect of the given model");

  const Frame& f = base.frame();
  const NodeSet all = f.nodes();
  const auto& o = w.offenders;
  const Formula p = atom("p"), q = atom("q"), r = atom("r");

  Countermodel c{theorem, Model(f), 0, {}, Formula::bot()};
  switch (theorem) {
    case CountermodelTheorem::MP: {
      Node k = o[0];
      c.model = Model(f, {{"p", all}, {"q", f.row(k)}});
      c.failing_node = k;
      c.premises = {p, Formula::impl(p, q)};
      c.failing_instance = q;
      break;
    }
    case CountermodelTheorem::A1: {
      Node k1 = o[0], k2 = o[1];
      c.model = Model(f, {{"p", all}, {"q", f.row(k1)}, {"r", f.row(k1) & f.row(k2)}});
      c.failing_node = last_of_chain(w);
      c.failing_instance = instance_of("A1", {{"PHI", p}, {"PSI", q}, {"THETA", r}});
      break;
    }
    case CountermodelTheorem::A4Reflexivity: {
      c.model = Model(f, {{"p", NodeSet{o[0]}}});
      c.failing_node = last_of_chain(w);
      c.failing_instance = instance_of("A4", {{"PHI", p}, {"PSI", q}});
      break;
    }
    case CountermodelTheorem::A5a: {
      c.model = Model(f, {{"p", NodeSet{o[0]}}, {"q", NodeSet{o[0]}}});
      c.failing_node = w.root;
      c.failing_instance = instance_of("A5a", {{"PHI", p}, {"PSI", q}, {"THETA", r}});
      break;
    }
    case CountermodelTheorem::A5bTransitivity: {
      Node k1 = o[0], k2 = o[1], k3 = o[2];
      c.model = Model(f, {{"r", f.row(k1)}, {"p", NodeSet{k2}}, {"q", NodeSet{k3}}});
      c.failing_node = last_of_chain(w);
      c.failing_instance = instance_of("A5b", {{"PHI", p}, {"PSI", q}, {"THETA", r}});
      break;
    }
    case CountermodelTheorem::A4Persistency:
    case CountermodelTheorem::A5bPersistency: {
      std::string name = fresh_atom(base, "phi");
      c.model = base.with_atom(name, *w.breaking_set);
      Formula phi = Formula::atom(name);
      if (theorem == CountermodelTheorem::A4Persistency) {
        c.failing_node = last_of_chain(w);
        c.failing_instance = instance_of("A4", {{"PHI", phi}, {"PSI", Formula::top()}});
      } else {
        // The chain has n >= 1 inner nodes; the failure sits at ℓ(n-1),
        // which is k0 when n = 1.
        c.failing_node = w.chain.size() >= 2 ? w.chain[w.chain.size() - 2] : w.root;
        c.failing_instance =
            instance_of("A5b", {{"PHI", phi}, {"PSI", Formula::top()}, {"THETA", phi}});
      }
      break;
    }
    case CountermodelTheorem::A6: {
      if (!is_reflexive(f) || !is_transitive(f))
        throw Error("the A6 construction needs a reflexive and transitive frame");
      Node k = w.root, k1 = o[0], k2 = o[1];
      NodeSet not_back;
      for (Node l : f.row(k))
        if (!f.has_edge(l, k)) not_back.insert(l);
      c.model = Model(f, {{"p", f.row(k1)}, {"q", f.row(k2)}, {"r", not_back}});
      c.failing_node = k;
      c.failing_instance = instance_of("A6", {{"PHI", p}, {"PSI", q}, {"THETA", r}});
      break;
    }
  }
  if (!countermodel_fails_as_claimed(c))
    throw std::logic_error("countermodel for " + std::string(to_string(theorem)) +
                           " does not fail at its designated node");
  return c;
}

}  // namespace kfl
