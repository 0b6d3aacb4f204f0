#ifndef FLAGSYM_SYMMETRY_HPP
#define FLAGSYM_SYMMETRY_HPP

#include <string>
#include <vector>

#include "flagsym/frame.hpp"

namespace flagsym {

/// All components of an infinitesimal symmetry in the EKR chart of a class:
/// flag2 (A, B, C, F1, G1, ..., Fr, Gr); goursat (F1, ..., F^{r+2}).
/// Components are atom-linear Exprs over the free base functions.
class SymmetryField {
 public:
  SymmetryField(ClassCode code, std::vector<Expr> components)
      : code_(std::move(code)), comps_(std::move(components)) {}

  const ClassCode& code() const { return code_; }
  int length() const { return code_.length(); }
  Chart chart() const { return code_.ambient_chart(); }
  const std::vector<Expr>& components() const { return comps_; }

  /// flag2 accessors; F(0) is B and G(0) is C by the F0:=B, G0:=C convention.
  const Expr& A() const { return comps_.at(0); }
  const Expr& F(int j) const { return j == 0 ? comps_.at(1) : comps_.at(2 * j + 1); }
  const Expr& G(int j) const { return j == 0 ? comps_.at(2) : comps_.at(2 * j + 2); }
  /// goursat accessor, 1 <= i <= r+2.
  const Expr& Fg(int i) const { return comps_.at(i - 1); }

  /// Name of the i-th component in chart order ("A","B","C","F1","G1",...,
  /// goursat "F1".."F{r+2}").
  std::string component_name(int i) const {
    if (code_.mode() == Mode::goursat) return "F" + std::to_string(i + 1);
    if (i == 0) return "A";
    if (i == 1) return "B";
    if (i == 2) return "C";
    int j = (i - 1) / 2;
    return ((i % 2 == 1) ? "F" : "G") + std::to_string(j);
  }
  int component_index(const std::string& name) const {
    for (size_t i = 0; i < comps_.size(); ++i)
      if (component_name(static_cast<int>(i)) == name) return static_cast<int>(i);
    throw std::invalid_argument("no component named '" + name + "'");
  }

  /// The symmetry as a vector field on the ambient chart.
  VecField as_field() const {
    VecField Y(chart());
    for (size_t i = 0; i < comps_.size(); ++i) Y.set(chart().coord(static_cast<int>(i)), comps_[i]);
    return Y;
  }

 private:
  ClassCode code_;
  std::vector<Expr> comps_;
};

/// Goursat seed: (F1, F2, F3) = (-f_3, f - x3 f_3, f_1 + x3 f_2).
inline std::vector<Expr> goursat_seed() {
  auto f = Expr::atom(DerivAtom::make(Mode::goursat, 0));
  auto f1 = Expr::atom(DerivAtom::make(Mode::goursat, 0, {1, 0, 0}));
  auto f2 = Expr::atom(DerivAtom::make(Mode::goursat, 0, {0, 1, 0}));
  auto f3 = Expr::atom(DerivAtom::make(Mode::goursat, 0, {0, 0, 1}));
  Expr x3 = Expr::coordinate(Coord::g(3));
  return {-f3, f - x3 * f3, f1 + x3 * f2};
}

/// One goursat prolongation step: from F1..F^{j+1} to F^{j+2}, 2 <= j <= r.
/// Case split on (i_j, s(j)); j = 2 is the classical first-prolongation
/// formula F4 = Y[2]F3 - x4 Y[2]F1.
inline Expr goursat_prolong(const Frame& frame, const std::vector<Expr>& comps, int j) {
  const ClassCode& code = frame.code();
  int r = code.length();
  if (j < 2 || j > r) throw std::out_of_range("goursat_prolong: j out of range");
  if (static_cast<int>(comps.size()) < j + 1)
    throw std::invalid_argument("goursat_prolong: components F1..F^{j+1} required");
  int s = (j >= 3) ? s_of(code, j) : 0;
  Expr lookback = (s == 0) ? directional(frame.ladder(2), comps.at(0))
                           : directional(frame.ladder(s), comps.at(s));
  Expr xnew = Expr::coordinate(Coord::g(j + 2));
  Expr lead = directional(frame.ladder(j), comps.at(j));  // Y[j] F^{j+1}
  if (code.letter(j) == 1) return normalize(lead - xnew * lookback);
  return normalize(xnew * (lookback - lead));
}

/// flag2 seed: F1 = Z[1]B - x1 Z[1]A, G1 = Z[1]C - y1 Z[1]A, for base
/// components given as Exprs (pure atoms in the generated field).
inline std::pair<Expr, Expr> flag2_seed(const Frame& frame, const Expr& A, const Expr& B,
                                        const Expr& C) {
  const VecField& Z1 = frame.ladder(1);
  Expr za = directional(Z1, A);
  Expr F1 = normalize(directional(Z1, B) - Expr::coordinate(Coord::x(1)) * za);
  Expr G1 = normalize(directional(Z1, C) - Expr::coordinate(Coord::y(1)) * za);
  return {F1, G1};
}

inline std::pair<Expr, Expr> flag2_seed() {
  ClassCode c(Mode::flag2, {1});
  Frame frame(c);
  return flag2_seed(frame, Expr::atom(DerivAtom::make(Mode::flag2, 0)),
                    Expr::atom(DerivAtom::make(Mode::flag2, 1)),
                    Expr::atom(DerivAtom::make(Mode::flag2, 2)));
}

namespace detail {
/// Accessors into a partial flag2 component list (A,B,C,F1,G1,...).
inline const Expr& comp_F(const std::vector<Expr>& comps, int j) {
  return j == 0 ? comps.at(1) : comps.at(2 * j + 1);
}
inline const Expr& comp_G(const std::vector<Expr>& comps, int j) {
  return j == 0 ? comps.at(2) : comps.at(2 * j + 2);
}
}  // namespace detail

/// One flag2 prolongation step: the nine-case table (letter i_j times
/// lookback situation) giving (F^j, G^j) from A,B,C,F1,G1,...,F^{j-1},G^{j-1}.
inline std::pair<Expr, Expr> flag2_prolong(const Frame& frame, const std::vector<Expr>& comps,
                                           int j) {
  const ClassCode& code = frame.code();
  if (j < 2 || j > code.length()) throw std::out_of_range("flag2_prolong: j out of range");
  if (static_cast<int>(comps.size()) < 2 * j + 1)
    throw std::invalid_argument("flag2_prolong: components through level j-1 required");
  int s = s_of(code, j);
  // lookback operand: Z[1]A when s = 0; Z[s]F^{s-1} or Z[s]G^{s-1} otherwise
  Expr lookback = Expr::zero(Mode::flag2);
  if (s == 0) {
    lookback = directional(frame.ladder(1), comps.at(0));
  } else if (code.letter(s) == 2) {
    lookback = directional(frame.ladder(s), detail::comp_F(comps, s - 1));
  } else {
    lookback = directional(frame.ladder(s), detail::comp_G(comps, s - 1));
  }
  const VecField& Zj = frame.ladder(j);
  Expr zF = directional(Zj, detail::comp_F(comps, j - 1));
  Expr zG = directional(Zj, detail::comp_G(comps, j - 1));
  Expr xj = Expr::coordinate(Coord::x(j));
  Expr yj = Expr::coordinate(Coord::y(j));
  Expr F(Mode::flag2), G(Mode::flag2);
  switch (code.letter(j)) {
    case 1:
      F = zF - xj * lookback;
      G = zG - yj * lookback;
      break;
    case 2:
      F = xj * (lookback - zF);
      G = zG - yj * zF;
      break;
    case 3:
      F = xj * (lookback - zG);
      G = zF - yj * zG;
      break;
  }
  return {normalize(F), normalize(G)};
}

/// The full component list of the infinitesimal symmetry generated by the
/// free base functions, by seed plus repeated prolongation.
inline SymmetryField build_symmetry(const ClassCode& code) {
  Frame frame(code);
  if (code.mode() == Mode::flag2) {
    std::vector<Expr> comps = {Expr::atom(DerivAtom::make(Mode::flag2, 0)),
                               Expr::atom(DerivAtom::make(Mode::flag2, 1)),
                               Expr::atom(DerivAtom::make(Mode::flag2, 2))};
    auto [F1, G1] = flag2_seed(frame, comps[0], comps[1], comps[2]);
    comps.push_back(F1);
    comps.push_back(G1);
    for (int j = 2; j <= code.length(); ++j) {
      auto [F, G] = flag2_prolong(frame, comps, j);
      comps.push_back(F);
      comps.push_back(G);
    }
    return SymmetryField(code, std::move(comps));
  }
  std::vector<Expr> comps = goursat_seed();
  for (int j = 2; j <= code.length(); ++j)
    comps.push_back(goursat_prolong(frame, comps, j));
  return SymmetryField(code, std::move(comps));
}

/// Outcome of checking the defining bracket conditions at the top level.
struct VerifyReport {
  bool pass = false;
  Decomposition bracket_Z;   // [Y, Z[r]] in Delta^r, carries a_r, b_r, c_r
  std::vector<Decomposition> bracket_top;  // [Y, d_xr], [Y, d_yr] (goursat: one)
};

/// Verifies that Y is an infinitesimal symmetry of the frame's distribution:
/// [Y, Z[r]], [Y, d_xr], [Y, d_yr] all decompose exactly in the Delta^r
/// generators.  Works for atom-linear generated fields and for instantiated
/// (atom-free) ones alike.
inline VerifyReport verify_symmetry(const VecField& Y, const Frame& frame) {
  int r = frame.code().length();
  VerifyReport rep{false, Decomposition(frame.chart().mode, frame.chart()), {}};
  rep.bracket_Z = decompose(lie_bracket(Y, frame.ladder(r)), frame);
  auto gens = frame.generators(r);
  rep.pass = rep.bracket_Z.ok;
  for (size_t k = 1; k < gens.size(); ++k) {
    rep.bracket_top.push_back(decompose(lie_bracket(Y, gens[k]), frame));
    rep.pass = rep.pass && rep.bracket_top.back().ok;
  }
  return rep;
}

inline VerifyReport verify_symmetry(const SymmetryField& Y, const Frame& frame) {
  if (!(Y.code() == frame.code()))
    throw std::invalid_argument("verify_symmetry: code mismatch");
  return verify_symmetry(Y.as_field(), frame);
}

/// Substitutes polynomial values (in the base coordinates) for the free base
/// functions, turning every atom into the exact corresponding partial
/// derivative.  flag2 expects {A, B, C}; goursat expects {f}.
inline VecField instantiate(const SymmetryField& Y, const std::vector<Expr>& assignments) {
  Chart chart = Y.chart();
  size_t nbases = chart.mode == Mode::flag2 ? 3 : 1;
  if (assignments.size() != nbases)
    throw std::invalid_argument("instantiate: wrong number of base assignments");
  for (const auto& a : assignments) {
    a.check_mode(chart.mode);
    if (a.has_atom()) throw std::invalid_argument("instantiate: assignments must be atom-free");
    for (const auto& t : a.terms())
      for (const auto& [idx, exp] : t.mono)
        if (idx >= 3)
          throw std::invalid_argument("instantiate: assignment in non-base variable " +
                                      Coord{chart.mode, idx}.name());
  }
  VecField out(chart);
  for (int i = 0; i < chart.dim(); ++i) {
    Expr comp = Expr::zero(chart.mode);
    for (const auto& t : Y.components().at(i).terms()) {
      Expr piece = Expr::term(t.coeff, t.mono, std::nullopt, chart.mode);
      if (t.atom) {
        Expr val = assignments.at(t.atom->base);
        for (int slot = 0; slot < 3; ++slot)
          for (int k = 0; k < t.atom->multi[slot]; ++k)
            val = partial(val, chart.coord(slot));
        piece = piece * val;
      }
      comp += piece;
    }
    out.set(chart.coord(i), comp);
  }
  return out;
}

}  // namespace flagsym

#endif
