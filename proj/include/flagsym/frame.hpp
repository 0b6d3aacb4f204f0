#ifndef FLAGSYM_FRAME_HPP
#define FLAGSYM_FRAME_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "flagsym/classcode.hpp"
#include "flagsym/io.hpp"
#include "flagsym/linalg.hpp"
#include "flagsym/linform.hpp"
#include "flagsym/vecfield.hpp"

namespace flagsym {

/// The polynomial frame ladder of a class code: Z[1..r] (flag2) or Y[1..r]
/// (goursat), built by the three-case (resp. two-case) recursion, plus the
/// generator tuples of the distributions Delta^j.
class Frame {
 public:
  explicit Frame(const ClassCode& code) : code_(code), chart_(code.ambient_chart()) {
    ladder_.reserve(code.length());
    if (chart_.mode == Mode::flag2) {
      // Z[1] = d_t + x1 d_x0 + y1 d_y0
      VecField z(chart_);
      z.set(Coord::t(), Expr::constant(Mode::flag2, Scalar(1)));
      z.set(Coord::x(0), Expr::coordinate(Coord::x(1)));
      z.set(Coord::y(0), Expr::coordinate(Coord::y(1)));
      ladder_.push_back(z);
      for (int j = 2; j <= code.length(); ++j) {
        const VecField& prev = ladder_.back();
        VecField next(chart_);
        Expr xj = Expr::coordinate(Coord::x(j));
        Expr yj = Expr::coordinate(Coord::y(j));
        Expr one = Expr::constant(Mode::flag2, Scalar(1));
        switch (code.letter(j)) {
          case 1:
            next = prev;
            next.set(Coord::x(j - 1), prev[Coord::x(j - 1)] + xj);
            next.set(Coord::y(j - 1), prev[Coord::y(j - 1)] + yj);
            break;
          case 2:
            next = xj * prev;
            next.set(Coord::x(j - 1), next[Coord::x(j - 1)] + one);
            next.set(Coord::y(j - 1), next[Coord::y(j - 1)] + yj);
            break;
          case 3:
            next = xj * prev;
            next.set(Coord::x(j - 1), next[Coord::x(j - 1)] + yj);
            next.set(Coord::y(j - 1), next[Coord::y(j - 1)] + one);
            break;
        }
        ladder_.push_back(next);
      }
    } else {
      // Y[1] = d_1 + x3 d_2, Y[2] = Y[1] + x4 d_3
      VecField y1(chart_);
      y1.set(Coord::g(1), Expr::constant(Mode::goursat, Scalar(1)));
      y1.set(Coord::g(2), Expr::coordinate(Coord::g(3)));
      ladder_.push_back(y1);
      if (code.length() >= 2) {
        VecField y2 = y1;
        y2.set(Coord::g(3), Expr::coordinate(Coord::g(4)));
        ladder_.push_back(y2);
      }
      for (int j = 3; j <= code.length(); ++j) {
        const VecField& prev = ladder_.back();
        VecField next(chart_);
        Expr xnew = Expr::coordinate(Coord::g(j + 2));
        Expr one = Expr::constant(Mode::goursat, Scalar(1));
        if (code.letter(j) == 1) {
          next = prev;
          next.set(Coord::g(j + 1), prev[Coord::g(j + 1)] + xnew);
        } else {
          next = xnew * prev;
          next.set(Coord::g(j + 1), next[Coord::g(j + 1)] + one);
        }
        ladder_.push_back(next);
      }
    }
  }

  const ClassCode& code() const { return code_; }
  Chart chart() const { return chart_; }

  /// Z[j] resp. Y[j], 1 <= j <= r.
  const VecField& ladder(int j) const { return ladder_.at(j - 1); }

  /// Generators of Delta^j: (Z[j], d_xj, d_yj) resp. (Y[j], d_{j+2}).
  std::vector<VecField> generators(int j) const {
    std::vector<VecField> g;
    g.push_back(ladder(j));
    if (chart_.mode == Mode::flag2) {
      g.push_back(VecField::coordinate_field(chart_, Coord::x(j)));
      g.push_back(VecField::coordinate_field(chart_, Coord::y(j)));
    } else {
      g.push_back(VecField::coordinate_field(chart_, Coord::g(j + 2)));
    }
    return g;
  }

 private:
  ClassCode code_;
  Chart chart_;
  std::vector<VecField> ladder_;
};

namespace detail {
inline std::string field_key(const VecField& V) { return to_json(V).dump(); }

inline void dedupe_push(std::vector<VecField>& fields, std::set<std::string>& seen,
                        const VecField& f) {
  if (f.is_zero()) return;
  if (seen.insert(field_key(f)).second) fields.push_back(f);
}
}  // namespace detail

/// Generator sets of the derived flag D^r, D^{r-1}, ..., D^0, each obtained
/// from the previous by adjoining all pairwise Lie brackets.
inline std::vector<std::vector<VecField>> derived_flag(const Frame& f) {
  std::vector<std::vector<VecField>> flag;
  flag.push_back(f.generators(f.code().length()));
  for (int j = f.code().length(); j >= 1; --j) {
    const auto& gens = flag.back();
    std::vector<VecField> next = gens;
    std::set<std::string> seen;
    for (const auto& g : next) seen.insert(detail::field_key(g));
    for (size_t a = 0; a < gens.size(); ++a)
      for (size_t b = a + 1; b < gens.size(); ++b)
        detail::dedupe_push(next, seen, lie_bracket(gens[a], gens[b]));
    flag.push_back(std::move(next));
  }
  return flag;
}

/// Result of decomposing W in the generators of Delta^r.
struct Decomposition {
  bool ok = false;
  Expr a, b, c;          // W = a Z[r] + b d_xr + c d_yr (goursat: c unused)
  VecField residual;     // nonzero components certify non-membership
  Decomposition(Mode m, Chart ch)
      : a(Expr::zero(m)), b(Expr::zero(m)), c(Expr::zero(m)), residual(Chart(ch)) {}
};

/// Exact membership of W in Delta^r = (Z[r], d_xr, d_yr).  The coefficient a
/// is read off at the component of Z[r] that is identically 1 (such a
/// component always exists), then b, c at the top coordinates; the remaining
/// components must cancel exactly.
inline Decomposition decompose(const VecField& W, const Frame& f) {
  int r = f.code().length();
  const VecField& Z = f.ladder(r);
  W.check_chart(Z);
  Decomposition d(f.chart().mode, f.chart());
  int one_idx = -1;
  for (int i = 0; i < f.chart().dim(); ++i)
    if (Z.component(i).is_one()) {
      one_idx = i;
      break;
    }
  if (one_idx < 0) throw std::logic_error("frame field without a unit component");
  d.a = W.component(one_idx);
  VecField rest = W - d.a * Z;
  if (f.chart().mode == Mode::flag2) {
    d.b = rest[Coord::x(r)];
    d.c = rest[Coord::y(r)];
    rest.set(Coord::x(r), Expr::zero(Mode::flag2));
    rest.set(Coord::y(r), Expr::zero(Mode::flag2));
  } else {
    d.b = rest[Coord::g(r + 2)];
    rest.set(Coord::g(r + 2), Expr::zero(Mode::goursat));
  }
  d.residual = rest;
  d.ok = rest.is_zero();
  return d;
}

/// Evaluated generators as rational rows (numeric points only).
inline QMat evaluate_span(const std::vector<VecField>& gens, const PointSpec& p) {
  QMat m;
  for (const auto& g : gens) {
    QVec row;
    for (const auto& s : evaluate_field(g, p)) row.push_back(s.constant_value());
    m.push_back(std::move(row));
  }
  return m;
}

/// Small growth vector at a numeric point: dims of V_1 subset V_2 subset ...
/// with V_1 = Delta^r and V_{i+1} = V_i + [Delta^r, V_i], truncated at the
/// first maximal entry.
inline std::vector<int> small_growth_vector(const Frame& f, const PointSpec& p,
                                            int max_steps = 64) {
  if (!p.is_numeric())
    throw std::invalid_argument("small_growth_vector: point must be parameter-free");
  const auto gens = f.generators(f.code().length());
  std::vector<VecField> V = gens;
  std::set<std::string> seen;
  for (const auto& g : V) seen.insert(detail::field_key(g));
  std::vector<int> dims;
  int dim = f.chart().dim();
  size_t fresh_from = 0;
  for (int step = 0; step < max_steps; ++step) {
    dims.push_back(rank_of(evaluate_span(V, p)));
    if (dims.back() == dim) break;
    size_t old_size = V.size();
    for (const auto& g : gens)
      for (size_t i = fresh_from; i < old_size; ++i)
        detail::dedupe_push(V, seen, lie_bracket(g, V[i]));
    fresh_from = old_size;
    if (V.size() == old_size) break;
  }
  // truncate at the first occurrence of the maximum
  int mx = 0;
  for (int d : dims) mx = std::max(mx, d);
  std::vector<int> out;
  for (int d : dims) {
    out.push_back(d);
    if (d == mx) break;
  }
  return out;
}

namespace detail {

/// V_{2l+3} of the small flag of D^s, evaluated at p.
inline QMat small_flag_member(const std::vector<VecField>& dsgens, int member,
                              const PointSpec& p) {
  std::vector<VecField> V = dsgens;
  std::set<std::string> seen;
  for (const auto& g : V) seen.insert(field_key(g));
  size_t fresh_from = 0;
  for (int i = 1; i < member; ++i) {
    size_t old_size = V.size();
    for (const auto& g : dsgens)
      for (size_t k = fresh_from; k < old_size; ++k)
        dedupe_push(V, seen, lie_bracket(g, V[k]));
    fresh_from = old_size;
    if (V.size() == old_size) break;
  }
  return evaluate_span(V, p);
}

}  // namespace detail

/// Singularity class of the germ at a numeric point of the EKR chart of f:
/// sandwich letters from the inclusions D^2(p) in F(p) and
/// D^j(p) in L(D^{j-2})(p), then each non-first underlined 2 specified to
/// 2 or 3 by the small-flag test against V_{2l+3}, and the first one to 2.
inline ClassCode classify_point(const Frame& f, const PointSpec& p) {
  if (f.chart().mode != Mode::flag2)
    throw std::invalid_argument("classify_point: flag2 only");
  if (!p.is_numeric())
    throw std::invalid_argument("classify_point: point must be parameter-free");
  int r = f.code().length();
  auto flag = derived_flag(f);  // flag[k] generates D^{r-k}
  auto dgens = [&](int j) -> const std::vector<VecField>& { return flag.at(r - j); };

  // F = span(d_xi, d_yi ; 1 <= i <= r), constant in the chart
  std::vector<VecField> Fgens;
  for (int i = 1; i <= r; ++i) {
    Fgens.push_back(VecField::coordinate_field(f.chart(), Coord::x(i)));
    Fgens.push_back(VecField::coordinate_field(f.chart(), Coord::y(i)));
  }
  QMat Fmat = evaluate_span(Fgens, p);

  // Cauchy characteristics: in the EKR chart L(D^j) is the constant span
  // (d_xs, d_ys ; j+1 <= s <= r).  The pointwise intersection D^{j+1}(p) cap
  // F(p) would overshoot it exactly at the singular points of interest.
  auto L_at = [&](int j) -> QMat {
    std::vector<VecField> gens;
    for (int s = j + 1; s <= r; ++s) {
      gens.push_back(VecField::coordinate_field(f.chart(), Coord::x(s)));
      gens.push_back(VecField::coordinate_field(f.chart(), Coord::y(s)));
    }
    return evaluate_span(gens, p);
  };

  std::vector<int> sandwich(r + 1, 1);  // 1-based letters, 2 = underlined 2
  if (r >= 2) sandwich[2] = span_included(evaluate_span(dgens(2), p), Fmat) ? 2 : 1;
  for (int j = 3; j <= r; ++j)
    sandwich[j] = span_included(evaluate_span(dgens(j), p), L_at(j - 2)) ? 2 : 1;

  std::vector<int> letters(r + 1, 1);
  int first2 = 0;
  for (int j = 2; j <= r; ++j)
    if (sandwich[j] == 2) {
      first2 = j;
      break;
    }
  if (first2 > 0) {
    letters[first2] = 2;
    int prev2 = first2;
    for (int s = first2 + 1; s <= r; ++s) {
      if (sandwich[s] != 2) continue;
      int t = prev2;
      int l = s - t - 1;
      QMat v = detail::small_flag_member(dgens(s), 2 * l + 3, p);
      bool inc = (t == 2) ? span_included(v, Fmat) : span_included(v, L_at(t - 2));
      letters[s] = inc ? 3 : 2;
      prev2 = s;
    }
  }
  return ClassCode(Mode::flag2, std::vector<int>(letters.begin() + 1, letters.end()));
}

}  // namespace flagsym

#endif
