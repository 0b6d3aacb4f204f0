#ifndef FLAGSYM_LINFORM_HPP
#define FLAGSYM_LINFORM_HPP

#include <map>
#include <string>

#include "flagsym/expr.hpp"
#include "flagsym/pointspec.hpp"
#include "flagsym/vecfield.hpp"

namespace flagsym {

/// Exact linear form in derivative atoms: sum of Scalar-weighted atoms plus
/// a Scalar constant.  Canonical: zero coefficients dropped.
struct LinForm {
  Mode mode = Mode::flag2;
  std::map<DerivAtom, Scalar> coeffs;
  Scalar constant;

  bool is_zero() const { return coeffs.empty() && constant.is_zero(); }
  bool is_homogeneous() const { return constant.is_zero(); }

  void add(const DerivAtom& a, const Scalar& c) {
    auto [it, inserted] = coeffs.emplace(a, c);
    if (!inserted) it->second += c;
    if (it->second.is_zero()) coeffs.erase(a);
  }

  friend LinForm operator+(const LinForm& a, const LinForm& b) {
    LinForm r = a;
    for (const auto& [atom, c] : b.coeffs) r.add(atom, c);
    r.constant += b.constant;
    return r;
  }
  friend LinForm operator*(const Scalar& s, const LinForm& a) {
    LinForm r{a.mode, {}, s * a.constant};
    for (const auto& [atom, c] : a.coeffs) r.add(atom, s * c);
    return r;
  }
  friend LinForm operator-(const LinForm& a, const LinForm& b) {
    return a + Scalar(-1) * b;
  }
  friend bool operator==(const LinForm& a, const LinForm& b) {
    return a.coeffs == b.coeffs && a.constant == b.constant;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    auto piece = [&](const Scalar& c, const std::string& sym) {
      std::string cs = c.str();
      bool composite = cs.find(' ') != std::string::npos;
      if (!out.empty()) out += " + ";
      if (sym.empty()) {
        out += composite ? "(" + cs + ")" : cs;
      } else if (c == Scalar(1)) {
        out += sym;
      } else if (c == Scalar(-1)) {
        out += "-" + sym;
      } else {
        out += (composite ? "(" + cs + ")" : cs) + "*" + sym;
      }
    };
    for (const auto& [atom, c] : coeffs) piece(c, atom.str());
    if (!constant.is_zero()) piece(constant, "");
    return out;
  }
};

/// Evaluates every monomial of e at p (atoms stay formal, frozen at the base
/// reference), yielding a linear form in the atoms of e.
inline LinForm substitute(const Expr& e, const PointSpec& p) {
  if (e.mode() != p.chart().mode)
    throw std::invalid_argument("substitute: point chart does not match expression mode");
  LinForm out;
  out.mode = e.mode();
  for (const auto& t : e.terms()) {
    Scalar v = t.coeff;
    for (const auto& [idx, exp] : t.mono) {
      if (idx >= p.chart().dim())
        throw std::invalid_argument("substitute: unassigned coordinate " +
                                    Coord{e.mode(), idx}.name());
      for (int k = 0; k < exp && !v.is_zero(); ++k) v *= p.value(idx);
    }
    if (v.is_zero()) continue;
    if (t.atom)
      out.add(*t.atom, v);
    else
      out.constant += v;
  }
  return out;
}

/// Evaluates an atom-free vector field at a point, one Scalar per coordinate.
inline std::vector<Scalar> evaluate_field(const VecField& V, const PointSpec& p) {
  std::vector<Scalar> row;
  row.reserve(V.chart().dim());
  for (int i = 0; i < V.chart().dim(); ++i) {
    const Expr& c = V.component(i);
    if (c.has_atom()) throw std::domain_error("evaluate_field: atom-bearing field");
    LinForm lf = substitute(c, p);
    row.push_back(lf.constant);
  }
  return row;
}

}  // namespace flagsym

#endif
