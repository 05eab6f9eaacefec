#include "kfl/axioms.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "kfl/error.hpp"

namespace kfl {
namespace {

Scheme axiom(const char* name, const char* body) {
  return Scheme::axiom(name, parse(body, ParseMode::Scheme));
}

std::vector<Scheme> build_registry() {
  std::vector<Scheme> r;
  r.push_back(axiom("A1", "(PHI -> PSI) -> ((PSI -> THETA) -> (PHI -> THETA))"));
  r.push_back(axiom("A2", "(PHI & PSI) -> PHI"));
  r.push_back(axiom("A3", "(PHI & PSI) -> (PSI & PHI)"));
  r.push_back(axiom("A4", "(PHI & (PHI -> PSI)) -> (PSI & (PSI -> PHI))"));
  r.push_back(axiom("A5a", "(PHI -> (PSI -> THETA)) -> ((PHI & PSI) -> THETA)"));
  r.push_back(axiom("A5b", "((PHI & PSI) -> THETA) -> (PHI -> (PSI -> THETA))"));
  r.push_back(axiom("A6", "((PHI -> PSI) -> THETA) -> (((PSI -> PHI) -> THETA) -> THETA)"));
  r.push_back(axiom("A7", "bot -> PHI"));
  r.push_back(Scheme::rule("MP",
                           {parse("PHI", ParseMode::Scheme), parse("PHI -> PSI", ParseMode::Scheme)},
                           parse("PSI", ParseMode::Scheme)));
  r.push_back(axiom("GODEL", "PHI -> (PHI & PHI)"));
  r.push_back(axiom("LIN", "(PHI -> PSI) | (PSI -> PHI)"));
  return r;
}

const std::vector<Scheme>& registry() {
  static const std::vector<Scheme> r = build_registry();
  return r;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) ==
                  std::toupper(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::span<const Scheme> all_schemes() { return registry(); }

std::span<const Scheme> bl_schemes() { return all_schemes().first(9); }

const Scheme& get_scheme(std::string_view name) {
  for (const auto& s : registry())
    if (iequals(s.name(), name)) return s;
  std::string valid;
  for (const auto& s : registry()) valid += (valid.empty() ? "" : ", ") + s.name();
  throw UnknownNameError("unknown scheme '" + std::string(name) + "'; valid names: " + valid);
}

}  // namespace kfl
