#include "kfl/formula.hpp"

#include <algorithm>
#include <utility>

#include <nlohmann/json.hpp>

#include "kfl/error.hpp"

namespace kfl {

struct Formula::Node {
  FormulaKind kind;
  std::string name;
  Formula left;
  Formula right;
  bool has_meta;
  std::size_t depth;
};

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula::Formula() : node_(nullptr) {}

Formula Formula::bot() { return Formula(); }

Formula Formula::top() { return impl(bot(), bot()); }

Formula Formula::atom(std::string name) {
  if (!is_atom_name(name)) throw Error("invalid atom name '" + name + "'");
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Atom, std::move(name), {}, {}, false, 0}));
}

Formula Formula::meta(std::string name) {
  if (!is_meta_name(name)) throw Error("invalid metavariable name '" + name + "'");
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Meta, std::move(name), {}, {}, true, 0}));
}

Formula Formula::conj(Formula l, Formula r) {
  return binary(FormulaKind::And, std::move(l), std::move(r));
}
Formula Formula::disj(Formula l, Formula r) {
  return binary(FormulaKind::Or, std::move(l), std::move(r));
}
Formula Formula::impl(Formula l, Formula r) {
  return binary(FormulaKind::Impl, std::move(l), std::move(r));
}
Formula Formula::neg(Formula f) { return impl(std::move(f), bot()); }

FormulaKind Formula::kind() const { return node_ ? node_->kind : FormulaKind::Bot; }

const std::string& Formula::name() const {
  static const std::string empty;
  return node_ ? node_->name : empty;
}

const Formula& Formula::left() const { return node_->left; }
const Formula& Formula::right() const { return node_->right; }

bool Formula::is_binary() const {
  auto k = kind();
  return k == FormulaKind::And || k == FormulaKind::Or || k == FormulaKind::Impl;
}

bool Formula::has_meta() const { return node_ && node_->has_meta; }
std::size_t Formula::depth() const { return node_ ? node_->depth : 0; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FormulaKind::Bot:
      return true;
    case FormulaKind::Atom:
    case FormulaKind::Meta:
      return a.name() == b.name();
    default:
      return a.depth() == b.depth() && a.left() == b.left() && a.right() == b.right();
  }
}

Formula Formula::binary(FormulaKind kind, Formula l, Formula r) {
  bool meta = l.has_meta() || r.has_meta();
  std::size_t d = 1 + std::max(l.depth(), r.depth());
  return Formula(std::make_shared<const Node>(
      Node{kind, {}, std::move(l), std::move(r), meta, d}));
}

bool is_atom_name(std::string_view name) {
  if (name.empty() || name == "bot" || name == "top") return false;
  if (!(name[0] >= 'a' && name[0] <= 'z')) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

bool is_meta_name(std::string_view name) {
  if (name.empty() || !(name[0] >= 'A' && name[0] <= 'Z')) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

namespace {

void collect_names(const Formula& f, FormulaKind want, std::vector<std::string>& out) {
  if (f.kind() == want) {
    if (std::find(out.begin(), out.end(), f.name()) == out.end()) out.push_back(f.name());
  } else if (f.is_binary()) {
    collect_names(f.left(), want, out);
    collect_names(f.right(), want, out);
  }
}

}  // namespace

std::vector<std::string> atoms_of(const Formula& f) {
  std::vector<std::string> out;
  collect_names(f, FormulaKind::Atom, out);
  return out;
}

std::vector<std::string> metas_of(const Formula& f) {
  std::vector<std::string> out;
  collect_names(f, FormulaKind::Meta, out);
  return out;
}

namespace {

// Binding strength; higher binds tighter.
int precedence(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Impl:
      if (f.right().kind() == FormulaKind::Bot) return 4;  // top / ~f
      return 1;
    case FormulaKind::Or:
      return 2;
    case FormulaKind::And:
      return 3;
    default:
      return 5;
  }
}

void render_into(const Formula& f, std::string& out);

void render_operand(const Formula& f, int min_prec, std::string& out) {
  if (precedence(f) < min_prec) {
    out += '(';
    render_into(f, out);
    out += ')';
  } else {
    render_into(f, out);
  }
}

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Bot:
      out += "bot";
      return;
    case FormulaKind::Atom:
    case FormulaKind::Meta:
      out += f.name();
      return;
    case FormulaKind::And:
      render_operand(f.left(), 3, out);
      out += " & ";
      render_operand(f.right(), 4, out);
      return;
    case FormulaKind::Or:
      render_operand(f.left(), 2, out);
      out += " | ";
      render_operand(f.right(), 3, out);
      return;
    case FormulaKind::Impl:
      if (f.right().kind() == FormulaKind::Bot) {
        if (f.left().kind() == FormulaKind::Bot) {
          out += "top";
        } else {
          out += '~';
          render_operand(f.left(), 4, out);
        }
        return;
      }
      render_operand(f.left(), 2, out);
      out += " -> ";
      render_operand(f.right(), 1, out);
      return;
  }
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

nlohmann::json to_json(const Formula& f) {
  using nlohmann::json;
  switch (f.kind()) {
    case FormulaKind::Bot:
      return json{{"bot", true}};
    case FormulaKind::Atom:
      return json{{"atom", f.name()}};
    case FormulaKind::Meta:
      return json{{"meta", f.name()}};
    case FormulaKind::And:
      return json{{"and", json::array({to_json(f.left()), to_json(f.right())})}};
    case FormulaKind::Or:
      return json{{"or", json::array({to_json(f.left()), to_json(f.right())})}};
    case FormulaKind::Impl:
      return json{{"impl", json::array({to_json(f.left()), to_json(f.right())})}};
  }
  return {};
}

Formula formula_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.size() != 1) throw Error("formula JSON must be a one-key object");
  const auto it = j.begin();
  const std::string key = it.key();
  const nlohmann::json& value = it.value();
  if (key == "bot") {
    if (value != true) throw Error("formula JSON: \"bot\" must be true");
    return Formula::bot();
  }
  if (key == "atom" || key == "meta") {
    if (!value.is_string()) throw Error("formula JSON: \"" + key + "\" must be a string");
    return key == "atom" ? Formula::atom(value.get<std::string>())
                         : Formula::meta(value.get<std::string>());
  }
  if (key == "and" || key == "or" || key == "impl") {
    if (!value.is_array() || value.size() != 2)
      throw Error("formula JSON: \"" + key + "\" needs two operands");
    Formula l = formula_from_json(value[0]);
    Formula r = formula_from_json(value[1]);
    if (key == "and") return Formula::conj(std::move(l), std::move(r));
    if (key == "or") return Formula::disj(std::move(l), std::move(r));
    return Formula::impl(std::move(l), std::move(r));
  }
  throw Error("formula JSON: unknown key \"" + key + "\"");
}

Formula substitute(const Formula& f, const Assignment& assignment) {
  if (!f.has_meta()) return f;
  switch (f.kind()) {
    case FormulaKind::Meta: {
      auto it = assignment.find(f.name());
      if (it == assignment.end()) throw Error("no formula assigned to metavariable " + f.name());
      if (it->second.has_meta())
        throw Error("formula assigned to " + f.name() + " contains metavariables");
      return it->second;
    }
    case FormulaKind::And:
      return Formula::conj(substitute(f.left(), assignment), substitute(f.right(), assignment));
    case FormulaKind::Or:
      return Formula::disj(substitute(f.left(), assignment), substitute(f.right(), assignment));
    case FormulaKind::Impl:
      return Formula::impl(substitute(f.left(), assignment), substitute(f.right(), assignment));
    default:
      return f;
  }
}

Scheme Scheme::axiom(std::string name, Formula body) {
  Scheme s;
  s.name_ = std::move(name);
  s.kind_ = SchemeKind::Axiom;
  s.metas_ = metas_of(body);
  s.conclusion_ = std::move(body);
  return s;
}

Scheme Scheme::rule(std::string name, std::vector<Formula> premises, Formula conclusion) {
  Scheme s;
  s.name_ = std::move(name);
  s.kind_ = SchemeKind::Rule;
  for (const auto& p : premises) collect_names(p, FormulaKind::Meta, s.metas_);
  collect_names(conclusion, FormulaKind::Meta, s.metas_);
  s.premises_ = std::move(premises);
  s.conclusion_ = std::move(conclusion);
  return s;
}

SchemeInstance instantiate(const Scheme& s, const Assignment& assignment) {
  SchemeInstance out;
  out.premises.reserve(s.premises().size());
  for (const auto& p : s.premises()) out.premises.push_back(substitute(p, assignment));
  out.conclusion = substitute(s.conclusion(), assignment);
  return out;
}

}  // namespace kfl
