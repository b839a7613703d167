#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "distprod/boundary.hpp"
#include "distprod/errors.hpp"
#include "distprod/pairing.hpp"

namespace distprod {

// Grammar:
//   Expr := Term ('*' Term)*
//   Term := 'x^' INT | Atom
//   Atom := 'delta' | 'pv(1/x)' | '(x+i0)^-' INT | '(x-i0)^-' INT | '1' | 'd(' Atom ')'
//
// 'x^r' folds into the next atom's prefactor power; a trailing 'x^r' becomes
// the atom '1' carrying that power, i.e. exactly x^r.
namespace detail {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : s_(text) {}

  ProductExpression parse() {
    std::vector<Factor> factors;
    int pending = 0;
    bool pending_seen = false;
    skip_space();
    if (at_end()) throw ParseError("empty expression", pos_);
    while (true) {
      skip_space();
      if (lookahead("x^")) {
        pos_ += 2;
        pending += parse_int();
        pending_seen = true;
      } else {
        factors.push_back({parse_atom(), pending});
        pending = 0;
        pending_seen = false;
      }
      skip_space();
      if (at_end()) break;
      if (s_[pos_] != '*') throw ParseError("expected '*'", pos_);
      ++pos_;
      skip_space();
      if (at_end()) throw ParseError("expected a term after '*'", pos_);
    }
    if (pending_seen) factors.push_back({catalog::one(), pending});
    return ProductExpression(std::move(factors));
  }

 private:
  HyperfunctionPair parse_atom() {
    skip_space();
    const std::size_t start = pos_;
    if (lookahead("delta")) {
      pos_ += 5;
      return catalog::delta();
    }
    if (lookahead("pv(1/x)")) {
      pos_ += 7;
      return catalog::pv_inv_x();
    }
    if (lookahead("(x+i0)^-")) {
      pos_ += 8;
      return catalog::plus_i0_pow(parse_positive());
    }
    if (lookahead("(x-i0)^-")) {
      pos_ += 8;
      return catalog::minus_i0_pow(parse_positive());
    }
    if (lookahead("d(")) {
      pos_ += 2;
      auto inner = parse_atom();
      skip_space();
      if (at_end() || s_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return derivative(inner);
    }
    if (!at_end() && s_[pos_] == '1' && !(pos_ + 1 < s_.size() && std::isdigit(uchar(s_[pos_ + 1])))) {
      ++pos_;
      return catalog::one();
    }
    if (at_end()) throw ParseError("expected an atom", pos_);
    std::size_t end = pos_;
    while (end < s_.size() && s_[end] != '*' && !std::isspace(uchar(s_[end]))) ++end;
    throw UnknownAtom("unknown atom '" + std::string(s_.substr(start, end - start)) + "'", start);
  }

  int parse_positive() {
    const std::size_t start = pos_;
    const int v = parse_int();
    if (v < 1) throw ParseError("exponent must be at least 1", start);
    return v;
  }

  int parse_int() {
    const std::size_t start = pos_;
    long long v = 0;
    while (!at_end() && std::isdigit(uchar(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1000) throw ParseError("integer too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected an integer", start);
    return static_cast<int>(v);
  }

  bool lookahead(std::string_view tok) const { return s_.substr(pos_, tok.size()) == tok; }
  bool at_end() const { return pos_ >= s_.size(); }
  void skip_space() {
    while (!at_end() && std::isspace(uchar(s_[pos_]))) ++pos_;
  }
  static unsigned char uchar(char c) { return static_cast<unsigned char>(c); }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ProductExpression parse_expression(std::string_view text) {
  return detail::ExpressionParser(text).parse();
}

/// Canonical text form; parse_expression(to_string(e)) == e for every
/// expression the parser produces.
inline std::string to_string(const ProductExpression& e) {
  std::string out;
  for (const auto& f : e.factors()) {
    if (!out.empty()) out += " * ";
    if (f.power > 0) out += "x^" + std::to_string(f.power) + " * ";
    out += f.pair.label;
  }
  return out;
}

}  // namespace distprod
