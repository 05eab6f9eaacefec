#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace kfl {

enum class FormulaKind { Bot, Atom, Meta, And, Or, Impl };

/// An immutable propositional formula over bot, atoms, &, | and ->.
///
/// Copies share structure. Metavariables (`Meta`) only appear in scheme
/// templates; `top` is not a constructor but the formula `bot -> bot`.
class Formula {
 public:
  /// Default-constructed formulas are `bot`.
  Formula();

  static Formula bot();
  static Formula top();
  static Formula atom(std::string name);
  static Formula meta(std::string name);
  static Formula conj(Formula left, Formula right);
  static Formula disj(Formula left, Formula right);
  static Formula impl(Formula left, Formula right);
  /// `f -> bot`
  static Formula neg(Formula f);

  FormulaKind kind() const;
  /// Name of an Atom or Meta node; empty otherwise.
  const std::string& name() const;
  /// Children of And/Or/Impl. Undefined for leaves.
  const Formula& left() const;
  const Formula& right() const;

  bool is_binary() const;
  bool has_meta() const;
  std::size_t depth() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  static Formula binary(FormulaKind kind, Formula left, Formula right);
  std::shared_ptr<const Node> node_;
};

/// Whether `name` is a valid atom identifier, `[a-z][a-z0-9_]*`, other than
/// the keywords `bot` and `top`.
bool is_atom_name(std::string_view name);
/// Whether `name` is a valid metavariable identifier, `[A-Z][A-Z0-9_]*`.
bool is_meta_name(std::string_view name);

/// Atom names in order of first occurrence (left to right).
std::vector<std::string> atoms_of(const Formula& f);
/// Metavariable names in order of first occurrence (left to right).
std::vector<std::string> metas_of(const Formula& f);

enum class ParseMode { Formula, Scheme };

/// Parses the concrete syntax:
///
///     f ::= f -> f | f '|' f | f & f | ~f | (f) | bot | top | atom | META
///
/// with `~` binding tightest, then `&`, then `|`, then `->`. `->` is
/// right-associative, `&` and `|` are left-associative. Uppercase
/// identifiers are metavariables and are only accepted in Scheme mode.
/// Throws ParseError.
Formula parse(std::string_view text, ParseMode mode = ParseMode::Formula);

/// Minimal-parenthesis text such that parse(render(f)) == f.
/// `bot -> bot` renders as `top` and `f -> bot` as `~f`.
std::string render(const Formula& f);

/// JSON encoding: {"bot":true}, {"atom":"p"}, {"meta":"PHI"},
/// {"and":[l,r]}, {"or":[l,r]}, {"impl":[l,r]}.
nlohmann::json to_json(const Formula& f);
Formula formula_from_json(const nlohmann::json& j);

using Assignment = std::map<std::string, Formula>;

/// Simultaneous substitution of metavariables. Throws kfl::Error when a
/// metavariable of `f` is unassigned or an assigned formula contains Meta.
Formula substitute(const Formula& f, const Assignment& assignment);

enum class SchemeKind { Axiom, Rule };

/// A named axiom or rule template.
class Scheme {
 public:
  static Scheme axiom(std::string name, Formula body);
  static Scheme rule(std::string name, std::vector<Formula> premises,
                     Formula conclusion);

  const std::string& name() const { return name_; }
  SchemeKind kind() const { return kind_; }
  /// Empty for axioms.
  const std::vector<Formula>& premises() const { return premises_; }
  /// The body of an axiom, the conclusion of a rule.
  const Formula& conclusion() const { return conclusion_; }
  /// Metavariables in order of first occurrence, premises first.
  const std::vector<std::string>& metavariables() const { return metas_; }

 private:
  Scheme() = default;
  std::string name_;
  SchemeKind kind_ = SchemeKind::Axiom;
  std::vector<Formula> premises_;
  Formula conclusion_;
  std::vector<std::string> metas_;
};

struct SchemeInstance {
  std::vector<Formula> premises;
  Formula conclusion;
};

/// Substitutes `assignment` into every part of `s`.
SchemeInstance instantiate(const Scheme& s, const Assignment& assignment);

}  // namespace kfl
