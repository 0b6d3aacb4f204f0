#ifndef FLAGSYM_EXPR_HPP
#define FLAGSYM_EXPR_HPP

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flagsym/chart.hpp"
#include "flagsym/scalar.hpp"

namespace flagsym {

/// A derivative atom: one base function differentiated by a multi-index over
/// the three base coordinates.  flag2 bases are A, B, C; goursat has the
/// single contact hamiltonian f.
struct DerivAtom {
  Mode mode;
  int base = 0;                     // flag2: 0=A 1=B 2=C; goursat: 0=f
  std::array<int, 3> multi{0, 0, 0};

  static DerivAtom make(Mode mode, int base, std::array<int, 3> multi = {0, 0, 0}) {
    int nbases = (mode == Mode::flag2) ? 3 : 1;
    if (base < 0 || base >= nbases) throw std::invalid_argument("bad atom base");
    for (int e : multi)
      if (e < 0) throw std::invalid_argument("negative atom multi-index");
    return {mode, base, multi};
  }

  int order() const { return multi[0] + multi[1] + multi[2]; }

  DerivAtom raised(int slot) const {
    DerivAtom a = *this;
    a.multi[slot] += 1;
    return a;
  }

  std::string base_name() const {
    if (mode == Mode::goursat) return "f";
    return std::string(1, "ABC"[base]);
  }

  /// Text form: A, B_t, B_{t x0}; goursat f_2, f_{23}.
  std::string str() const {
    std::string subs;
    for (int slot = 0; slot < 3; ++slot)
      for (int k = 0; k < multi[slot]; ++k) {
        if (!subs.empty() && mode == Mode::flag2) subs += " ";
        subs += subscript_token(slot);
      }
    if (subs.empty()) return base_name();
    bool braces = (mode == Mode::flag2) ? (subs.find(' ') != std::string::npos)
                                        : (subs.size() > 1);
    return base_name() + "_" + (braces ? "{" + subs + "}" : subs);
  }

  std::string latex() const {
    std::string subs;
    for (int slot = 0; slot < 3; ++slot)
      for (int k = 0; k < multi[slot]; ++k) {
        if (!subs.empty()) subs += mode == Mode::flag2 ? " " : "";
        subs += latex_token(slot);
      }
    if (subs.empty()) return base_name();
    return base_name() + "_{" + subs + "}";
  }

  friend bool operator==(const DerivAtom& a, const DerivAtom& b) {
    return a.mode == b.mode && a.base == b.base && a.multi == b.multi;
  }
  // base, then graded-lexicographic multi-index
  friend bool operator<(const DerivAtom& a, const DerivAtom& b) {
    if (a.base != b.base) return a.base < b.base;
    if (a.order() != b.order()) return a.order() < b.order();
    return a.multi < b.multi;
  }

 private:
  std::string subscript_token(int slot) const {
    if (mode == Mode::goursat) return std::to_string(slot + 1);
    static const char* tok[3] = {"t", "x0", "y0"};
    return tok[slot];
  }
  std::string latex_token(int slot) const {
    if (mode == Mode::goursat) return std::to_string(slot + 1);
    static const char* tok[3] = {"t", "x^0", "y^0"};
    return tok[slot];
  }
};

/// Exponent map over chart coordinates (by coordinate index).
using Mono = std::map<int, int>;

struct Term {
  Scalar coeff;
  Mono mono;
  std::optional<DerivAtom> atom;
};

inline bool term_key_less(const Term& a, const Term& b) {
  if (a.atom.has_value() != b.atom.has_value()) return !a.atom.has_value();
  if (a.atom && b.atom && !(*a.atom == *b.atom)) return *a.atom < *b.atom;
  return a.mono < b.mono;
}
inline bool term_key_equal(const Term& a, const Term& b) {
  return a.atom == b.atom && a.mono == b.mono;
}

/// Exact expression: polynomial in chart coordinates, rational/parameter
/// coefficients, at most one derivative atom per term.  Always kept in
/// canonical form (terms sorted by (atom, mono), like terms merged, zero
/// terms dropped), so equality is structural.
class Expr {
 public:
  explicit Expr(Mode mode) : mode_(mode) {}

  static Expr zero(Mode mode) { return Expr(mode); }
  static Expr constant(Mode mode, const Scalar& c) {
    Expr e(mode);
    e.push({c, {}, std::nullopt});
    e.canonicalize();
    return e;
  }
  static Expr coordinate(Coord v, int exp = 1) {
    if (exp < 0) throw std::invalid_argument("negative exponent");
    Expr e(v.mode);
    Mono m;
    if (exp > 0) m[v.idx] = exp;
    e.push({Scalar(1), m, std::nullopt});
    return e;
  }
  static Expr atom(const DerivAtom& a) {
    Expr e(a.mode);
    e.push({Scalar(1), {}, a});
    return e;
  }
  static Expr term(const Scalar& c, const Mono& m, std::optional<DerivAtom> a, Mode mode) {
    Expr e(mode);
    e.push({c, m, a});
    e.canonicalize();
    return e;
  }

  Mode mode() const { return mode_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_atom() const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [](const Term& t) { return t.atom.has_value(); });
  }
  bool is_one() const {
    return terms_.size() == 1 && !terms_[0].atom && terms_[0].mono.empty() &&
           terms_[0].coeff == Scalar(1);
  }

  /// Highest total degree in the chart coordinates.
  int degree() const {
    int d = 0;
    for (const auto& t : terms_) {
      int td = 0;
      for (const auto& [c, e] : t.mono) td += e;
      d = std::max(d, td);
    }
    return d;
  }

  /// Highest derivative-atom order.
  int atom_order() const {
    int d = 0;
    for (const auto& t : terms_)
      if (t.atom) d = std::max(d, t.atom->order());
    return d;
  }

  bool depends_on(Coord v) const {
    check_mode(v.mode);
    for (const auto& t : terms_)
      if (t.mono.count(v.idx)) return true;
    return false;
  }

  friend Expr operator+(const Expr& a, const Expr& b) {
    a.check_mode(b.mode_);
    Expr r = a;
    for (const auto& t : b.terms_) r.push(t);
    r.canonicalize();
    return r;
  }
  friend Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }
  friend Expr operator-(const Expr& a) {
    Expr r = a;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }
  Expr& operator+=(const Expr& b) { return *this = *this + b; }
  Expr& operator-=(const Expr& b) { return *this = *this - b; }

  /// Product.  Throws if any pair of multiplied terms would carry two atoms
  /// (atom-linearity is an invariant, never silently broken).
  friend Expr operator*(const Expr& a, const Expr& b) {
    a.check_mode(b.mode_);
    Expr r(a.mode_);
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) {
        if (ta.atom && tb.atom)
          throw std::domain_error("product of two atom-bearing expressions");
        Mono m = ta.mono;
        for (const auto& [c, e] : tb.mono) m[c] += e;
        r.push({ta.coeff * tb.coeff, m, ta.atom ? ta.atom : tb.atom});
      }
    r.canonicalize();
    return r;
  }
  Expr& operator*=(const Expr& b) { return *this = *this * b; }

  friend Expr operator*(const Scalar& c, const Expr& a) {
    Expr r = a;
    for (auto& t : r.terms_) t.coeff = c * t.coeff;
    r.canonicalize();
    return r;
  }

  friend bool operator==(const Expr& a, const Expr& b) {
    if (a.mode_ != b.mode_ || a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i) {
      const Term& x = a.terms_[i];
      const Term& y = b.terms_[i];
      if (!(term_key_equal(x, y) && x.coeff == y.coeff)) return false;
    }
    return true;
  }
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  void check_mode(Mode m) const {
    if (m != mode_) throw std::invalid_argument("mixed goursat/flag2 operands");
  }

 private:
  friend Expr normalize(const Expr&);
  friend Expr partial(const Expr&, Coord);

  void push(const Term& t) { terms_.push_back(t); }

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(), term_key_less);
    std::vector<Term> merged;
    for (auto& t : terms_) {
      if (!merged.empty() && term_key_equal(merged.back(), t)) {
        merged.back().coeff += t.coeff;
      } else {
        merged.push_back(std::move(t));
      }
    }
    std::erase_if(merged, [](const Term& t) { return t.coeff.is_zero(); });
    terms_ = std::move(merged);
  }

  Mode mode_;
  std::vector<Term> terms_;
};

/// Canonical form.  Exprs are canonical by construction; this is the identity
/// on well-formed values and exists as the spec'd public entry point.
inline Expr normalize(const Expr& e) {
  Expr r = e;
  r.canonicalize();
  return r;
}

/// Partial derivative by a chart coordinate.  Product rule across
/// (monomial, atom): a base coordinate both lowers its mono exponent and
/// raises the atom multi-index; jet coordinates act on monomials only.
inline Expr partial(const Expr& e, Coord v) {
  e.check_mode(v.mode);
  Expr r(e.mode());
  for (const auto& t : e.terms()) {
    auto it = t.mono.find(v.idx);
    if (it != t.mono.end()) {
      Term d = t;
      d.coeff = Scalar(it->second) * d.coeff;
      if (it->second == 1)
        d.mono.erase(v.idx);
      else
        d.mono[v.idx] -= 1;
      r.push(d);
    }
    if (v.is_base() && t.atom) {
      Term d = t;
      d.atom = t.atom->raised(v.idx);
      r.push(d);
    }
  }
  r.canonicalize();
  return r;
}

}  // namespace flagsym

#endif
