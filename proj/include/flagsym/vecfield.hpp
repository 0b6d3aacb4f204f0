#ifndef FLAGSYM_VECFIELD_HPP
#define FLAGSYM_VECFIELD_HPP

#include <stdexcept>
#include <vector>

#include "flagsym/expr.hpp"

namespace flagsym {

/// Vector field on an ambient chart: one Expr per coordinate.
class VecField {
 public:
  explicit VecField(Chart chart)
      : chart_(chart), comp_(chart.dim(), Expr::zero(chart.mode)) {}

  static VecField coordinate_field(Chart chart, Coord v) {
    VecField f(chart);
    f.set(v, Expr::constant(chart.mode, Scalar(1)));
    return f;
  }

  Chart chart() const { return chart_; }
  const Expr& operator[](Coord v) const { return comp_.at(v.idx); }
  const Expr& component(int idx) const { return comp_.at(idx); }
  const std::vector<Expr>& components() const { return comp_; }

  void set(Coord v, Expr e) {
    e.check_mode(chart_.mode);
    comp_.at(v.idx) = std::move(e);
  }

  bool is_zero() const {
    for (const auto& e : comp_)
      if (!e.is_zero()) return false;
    return true;
  }
  bool has_atom() const {
    for (const auto& e : comp_)
      if (e.has_atom()) return true;
    return false;
  }

  friend VecField operator+(const VecField& a, const VecField& b) {
    a.check_chart(b);
    VecField r = a;
    for (int i = 0; i < a.chart_.dim(); ++i) r.comp_[i] += b.comp_[i];
    return r;
  }
  friend VecField operator-(const VecField& a, const VecField& b) {
    a.check_chart(b);
    VecField r = a;
    for (int i = 0; i < a.chart_.dim(); ++i) r.comp_[i] -= b.comp_[i];
    return r;
  }
  friend VecField operator*(const Expr& e, const VecField& a) {
    VecField r = a;
    for (auto& c : r.comp_) c = e * c;
    return r;
  }

  friend bool operator==(const VecField& a, const VecField& b) {
    return a.chart_ == b.chart_ && a.comp_ == b.comp_;
  }
  friend bool operator!=(const VecField& a, const VecField& b) { return !(a == b); }

  void check_chart(const VecField& b) const {
    if (!(chart_ == b.chart_)) throw std::invalid_argument("chart mismatch");
  }

 private:
  Chart chart_;
  std::vector<Expr> comp_;
};

/// Directional derivative V(e) = sum_v V_v * partial(e, v).  Rejected when
/// both V and e carry atoms: the product would break atom-linearity.
inline Expr directional(const VecField& V, const Expr& e) {
  e.check_mode(V.chart().mode);
  if (V.has_atom() && e.has_atom())
    throw std::domain_error("directional: both field and expression carry atoms");
  Expr r = Expr::zero(e.mode());
  for (int i = 0; i < V.chart().dim(); ++i) {
    const Expr& vi = V.component(i);
    if (vi.is_zero()) continue;
    r += vi * partial(e, V.chart().coord(i));
  }
  return r;
}

/// Lie bracket [V, W], componentwise V(W_i) - W(V_i).
inline VecField lie_bracket(const VecField& V, const VecField& W) {
  V.check_chart(W);
  if (V.has_atom() && W.has_atom())
    throw std::domain_error("lie_bracket: both operands carry atoms");
  VecField r(V.chart());
  for (int i = 0; i < V.chart().dim(); ++i) {
    Coord c = V.chart().coord(i);
    r.set(c, directional(V, W.component(i)) - directional(W, V.component(i)));
  }
  return r;
}

}  // namespace flagsym

#endif
