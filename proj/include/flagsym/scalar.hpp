#ifndef FLAGSYM_SCALAR_HPP
#define FLAGSYM_SCALAR_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "flagsym/rational.hpp"

namespace flagsym {

/// Exact polynomial in a finite set of named formal parameters with rational
/// coefficients.  Canonical form: sorted monomials, no zero coefficients.
class Scalar {
 public:
  // parameter name -> exponent; empty map is the constant monomial
  using ParamMono = std::map<std::string, int>;
  using TermMap = std::map<ParamMono, Rational>;

  Scalar() = default;
  Scalar(const Rational& c) {  // NOLINT: implicit by design
    if (c != 0) terms_[{}] = c;
  }
  Scalar(int c) : Scalar(Rational(c)) {}  // NOLINT

  static Scalar param(const std::string& name, int exp = 1) {
    if (exp < 0) throw std::invalid_argument("negative parameter exponent");
    Scalar s;
    if (exp == 0) return Scalar(1);
    s.terms_[{{name, exp}}] = 1;
    return s;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  Rational constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::domain_error("Scalar is not constant");
    return terms_.begin()->second;
  }

  const TermMap& terms() const { return terms_; }

  std::set<std::string> parameters() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms_)
      for (const auto& [n, e] : m) out.insert(n);
    return out;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    Scalar r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    Scalar r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }
  friend Scalar operator-(const Scalar& a) { return Scalar(0) - a; }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        ParamMono m = ma;
        for (const auto& [n, e] : mb) m[n] += e;
        r.add_term(m, ca * cb);
      }
    return r;
  }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b) { return a.terms_ < b.terms_; }

  /// Substitutes one parameter by an exact rational value.
  Scalar substituted(const std::string& name, const Rational& value) const {
    Scalar r;
    for (const auto& [m, c] : terms_) {
      ParamMono rest = m;
      Rational coeff = c;
      auto it = rest.find(name);
      if (it != rest.end()) {
        for (int k = 0; k < it->second; ++k) coeff *= value;
        rest.erase(it);
      }
      r.add_term(rest, coeff);
    }
    return r;
  }

  int degree_in(const std::string& name) const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
      auto it = m.find(name);
      if (it != m.end() && it->second > d) d = it->second;
    }
    return d;
  }

  /// Largest parameter monomial dividing every term (undefined on zero: {}).
  ParamMono param_content() const {
    ParamMono content;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (first) {
        content = m;
        first = false;
        continue;
      }
      ParamMono next;
      for (const auto& [n, e] : content) {
        auto it = m.find(n);
        if (it != m.end()) next[n] = std::min(e, it->second);
      }
      content = next;
      if (content.empty()) break;
    }
    return content;
  }

  /// Exact division by a parameter monomial; every term must be divisible.
  Scalar divided_by(const ParamMono& mono) const {
    Scalar r;
    for (const auto& [m, c] : terms_) {
      ParamMono q = m;
      for (const auto& [n, e] : mono) {
        auto it = q.find(n);
        if (it == q.end() || it->second < e)
          throw std::domain_error("Scalar not divisible by parameter monomial");
        it->second -= e;
        if (it->second == 0) q.erase(it);
      }
      r.add_term(q, c);
    }
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational a = c;
      if (first) {
        if (a < 0) { out += "-"; a = -a; }
      } else {
        out += (a < 0) ? " - " : " + ";
        if (a < 0) a = -a;
      }
      first = false;
      std::string mono;
      for (const auto& [n, e] : m) {
        if (!mono.empty()) mono += "*";
        mono += n;
        if (e > 1) mono += "^" + std::to_string(e);
      }
      if (mono.empty()) {
        out += flagsym::to_string(a);
      } else if (a == 1) {
        out += mono;
      } else {
        out += flagsym::to_string(a) + "*" + mono;
      }
    }
    return out;
  }

 private:
  void add_term(const ParamMono& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TermMap terms_;
};

/// Parses the canonical form emitted by Scalar::str (sums of rational
/// multiples of parameter monomials; '^' powers, '*' products).
inline Scalar parse_scalar(const std::string& text) {
  Scalar result;
  size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && text[i] == ' ') ++i; };
  skip_ws();
  if (i >= text.size()) throw std::invalid_argument("empty scalar");
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    skip_ws();
    if (text[i] == '+' || text[i] == '-') {
      sign = (text[i] == '-') ? -1 : 1;
      ++i;
      skip_ws();
    } else if (!first) {
      throw std::invalid_argument("expected '+' or '-' in scalar: " + text);
    }
    first = false;
    // one term: optional rational, then '*'-separated parameter powers
    Rational coeff(1);
    bool saw_number = false;
    Scalar::ParamMono mono;
    bool expect_factor = true;
    while (i < text.size() && expect_factor) {
      skip_ws();
      size_t start = i;
      if (!saw_number && mono.empty() && i < text.size() &&
          (std::isdigit(static_cast<unsigned char>(text[i])))) {
        while (i < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/'))
          ++i;
        coeff = parse_rational(text.substr(start, i - start));
        saw_number = true;
      } else if (i < text.size() &&
                 (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        while (i < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
          ++i;
        std::string name = text.substr(start, i - start);
        int exp = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          size_t es = i;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
          if (es == i) throw std::invalid_argument("missing exponent in scalar: " + text);
          exp = std::stoi(text.substr(es, i - es));
        }
        mono[name] += exp;
      } else {
        throw std::invalid_argument("malformed scalar term: " + text);
      }
      skip_ws();
      if (i < text.size() && text[i] == '*') {
        ++i;
      } else {
        expect_factor = false;
      }
    }
    Scalar term(sign * coeff);
    for (const auto& [n, e] : mono) term *= Scalar::param(n, e);
    result += term;
    skip_ws();
  }
  return result;
}

}  // namespace flagsym

#endif
