#include <cctype>
#include <string>

#include "kfl/error.hpp"
#include "kfl/formula.hpp"

namespace kfl {
namespace {

enum class Tok { Ident, Arrow, Amp, Bar, Tilde, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t pos;
};

class Parser {
 public:
  Parser(std::string_view text, ParseMode mode) : text_(text), mode_(mode) { advance(); }

  Formula parse_all() {
    if (cur_.kind == Tok::End) throw ParseError("empty formula", cur_.pos);
    Formula f = parse_impl();
    if (cur_.kind != Tok::End) throw ParseError("unexpected '" + std::string(cur_.text) + "'", cur_.pos);
    return f;
  }

 private:
  // impl := or ('->' impl)?
  Formula parse_impl() {
    Formula lhs = parse_or();
    if (cur_.kind == Tok::Arrow) {
      advance();
      return Formula::impl(std::move(lhs), parse_impl());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (cur_.kind == Tok::Bar) {
      advance();
      lhs = Formula::disj(std::move(lhs), parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (cur_.kind == Tok::Amp) {
      advance();
      lhs = Formula::conj(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  Formula parse_unary() {
    if (cur_.kind == Tok::Tilde) {
      advance();
      return Formula::neg(parse_unary());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::LParen: {
        advance();
        Formula inner = parse_impl();
        if (cur_.kind != Tok::RParen) throw ParseError("expected ')'", cur_.pos);
        advance();
        return inner;
      }
      case Tok::Ident: {
        advance();
        if (t.text == "bot") return Formula::bot();
        if (t.text == "top") return Formula::top();
        if (is_atom_name(t.text)) return Formula::atom(std::string(t.text));
        if (is_meta_name(t.text)) {
          if (mode_ != ParseMode::Scheme)
            throw ParseError("metavariable '" + std::string(t.text) + "' outside a scheme", t.pos);
          return Formula::meta(std::string(t.text));
        }
        throw ParseError("invalid identifier '" + std::string(t.text) + "'", t.pos);
      }
      case Tok::End:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + std::string(t.text) + "'", t.pos);
    }
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      cur_ = {Tok::End, {}, start};
      return;
    }
    char c = text_[pos_];
    auto single = [&](Tok k) {
      ++pos_;
      cur_ = {k, text_.substr(start, 1), start};
    };
    switch (c) {
      case '&': return single(Tok::Amp);
      case '|': return single(Tok::Bar);
      case '~': return single(Tok::Tilde);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          pos_ += 2;
          cur_ = {Tok::Arrow, text_.substr(start, 2), start};
          return;
        }
        break;
      default:
        if (std::isalpha(static_cast<unsigned char>(c))) {
          while (pos_ < text_.size() &&
                 (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
          cur_ = {Tok::Ident, text_.substr(start, pos_ - start), start};
          return;
        }
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", start);
  }

  std::string_view text_;
  ParseMode mode_;
  std::size_t pos_ = 0;
  Token cur_{Tok::End, {}, 0};
};

}  // namespace

Formula parse(std::string_view text, ParseMode mode) {
  return Parser(text, mode).parse_all();
}

}  // namespace kfl
