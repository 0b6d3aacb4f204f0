#ifndef FLAGSYM_MODULI_HPP
#define FLAGSYM_MODULI_HPP

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "flagsym/symmetry.hpp"

namespace flagsym {

/// Components of a symmetry evaluated at (the due truncations of) a point,
/// as exact linear forms in derivative atoms.
inline std::vector<std::pair<std::string, LinForm>> evaluate_components(const SymmetryField& Y,
                                                                        const PointSpec& p) {
  if (!(p.chart() == Y.chart()))
    throw std::invalid_argument("evaluate_components: point chart mismatch");
  std::vector<std::pair<std::string, LinForm>> out;
  for (size_t i = 0; i < Y.components().size(); ++i)
    out.emplace_back(Y.component_name(static_cast<int>(i)), substitute(Y.components()[i], p));
  return out;
}

/// Homogeneous freeze conditions plus one target linear form.
struct FreezeSystem {
  std::vector<std::pair<std::string, LinForm>> rows;
  std::set<std::string> assumptions;  // parameters declared nonzero
  std::string target_name;
  LinForm target;
};

/// Rows = every non-exempt component of Y evaluated at p and set to zero;
/// target = the exempt component's evaluation.
inline FreezeSystem freeze_system(const SymmetryField& Y, const PointSpec& p,
                                  const std::set<std::string>& exempt,
                                  std::set<std::string> assumptions = {}) {
  for (const auto& name : exempt) Y.component_index(name);  // validate names
  FreezeSystem sys;
  sys.assumptions = std::move(assumptions);
  bool target_set = false;
  for (auto& [name, lf] : evaluate_components(Y, p)) {
    if (exempt.count(name)) {
      if (!target_set) {
        sys.target_name = name;
        sys.target = lf;
        target_set = true;
      }
    } else {
      sys.rows.emplace_back(name, lf);
    }
  }
  return sys;
}

enum class ForcedKind { forced_zero, free_target, forced_relation, needs_case_split };

struct ForcedVerdict {
  ForcedKind kind = ForcedKind::free_target;
  LinForm remainder;              // target reduced modulo the rows
  Scalar multiplier;              // the verdict concerns multiplier * target
  std::vector<Scalar> case_splits;  // non-assumed polynomials the reduction divided by
  std::vector<LinForm> echelon;   // reduced row set, for reporting

  std::string kind_name() const {
    switch (kind) {
      case ForcedKind::forced_zero: return "forced_zero";
      case ForcedKind::free_target: return "free";
      case ForcedKind::forced_relation: return "forced_relation";
      default: return "needs_case_split";
    }
  }
};

namespace detail {

/// Is s a rational multiple of a monomial in the assumed-nonzero parameters?
inline bool nonzero_under(const Scalar& s, const std::set<std::string>& assumptions) {
  if (s.is_constant()) return !s.is_zero();
  if (s.terms().size() != 1) return false;
  for (const auto& [n, e] : s.terms().begin()->first)
    if (!assumptions.count(n)) return false;
  return true;
}

}  // namespace detail

/// Exact fraction-free reduction of the target against the homogeneous rows.
/// Division happens only through recorded multipliers; any multiplier that is
/// not invertible under the declared assumptions is reported as a case split
/// instead of being assumed nonzero.
inline ForcedVerdict forced_analysis(const FreezeSystem& s) {
  // atom universe, fixed order (atom columns first, constant column last)
  std::set<DerivAtom> atoms;
  auto collect = [&](const LinForm& f) {
    for (const auto& [a, c] : f.coeffs) atoms.insert(a);
  };
  for (const auto& [n, f] : s.rows) collect(f);
  collect(s.target);
  std::vector<DerivAtom> cols(atoms.begin(), atoms.end());
  size_t ncols = cols.size() + 1;

  auto to_vec = [&](const LinForm& f) {
    std::vector<Scalar> v(ncols, Scalar(0));
    for (size_t j = 0; j < cols.size(); ++j) {
      auto it = f.coeffs.find(cols[j]);
      if (it != f.coeffs.end()) v[j] = it->second;
    }
    v[ncols - 1] = f.constant;
    return v;
  };
  Mode mode = s.target.mode;
  auto to_form = [&](const std::vector<Scalar>& v) {
    LinForm f;
    f.mode = mode;
    for (size_t j = 0; j < cols.size(); ++j)
      if (!v[j].is_zero()) f.add(cols[j], v[j]);
    f.constant = v[ncols - 1];
    return f;
  };

  std::vector<std::vector<Scalar>> rows;
  for (const auto& [n, f] : s.rows) {
    auto v = to_vec(f);
    // strip assumed-nonzero parameter content, e.g. c*C_{t x0} -> C_{t x0}
    Scalar::ParamMono content;
    bool first = true;
    for (const auto& x : v) {
      if (x.is_zero()) continue;
      auto c = x.param_content();
      if (first) {
        content = c;
        first = false;
      } else {
        Scalar::ParamMono next;
        for (const auto& [name, e] : content) {
          auto it = c.find(name);
          if (it != c.end()) next[name] = std::min(e, it->second);
        }
        content = next;
      }
    }
    Scalar::ParamMono strip;
    for (const auto& [name, e] : content)
      if (s.assumptions.count(name)) strip[name] = e;
    if (!strip.empty())
      for (auto& x : v)
        if (!x.is_zero()) x = x.divided_by(strip);
    bool all_zero = true;
    for (const auto& x : v)
      if (!x.is_zero()) all_zero = false;
    if (!all_zero) rows.push_back(std::move(v));
  }

  ForcedVerdict verdict;
  verdict.multiplier = Scalar(1);
  std::vector<Scalar> multipliers;
  auto use_multiplier = [&](const Scalar& p) {
    if (p.is_constant()) return;
    multipliers.push_back(p);
  };

  // echelonize rows, pivoting leftmost; prefer constant pivot coefficients
  size_t pivot_row = 0;
  std::vector<std::pair<size_t, size_t>> pivots;  // (row, col)
  for (size_t col = 0; col < ncols && pivot_row < rows.size(); ++col) {
    size_t chosen = rows.size();
    for (size_t i = pivot_row; i < rows.size(); ++i) {
      if (rows[i][col].is_zero()) continue;
      if (chosen == rows.size()) chosen = i;
      if (rows[i][col].is_constant()) {
        chosen = i;
        break;
      }
    }
    if (chosen == rows.size()) continue;
    std::swap(rows[pivot_row], rows[chosen]);
    const Scalar p = rows[pivot_row][col];
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == pivot_row || rows[i][col].is_zero()) continue;
      Scalar q = rows[i][col];
      use_multiplier(p);
      for (size_t j = 0; j < ncols; ++j) rows[i][j] = p * rows[i][j] - q * rows[pivot_row][j];
    }
    pivots.emplace_back(pivot_row, col);
    ++pivot_row;
  }

  // reduce the target
  std::vector<Scalar> t = to_vec(s.target);
  for (const auto& [ri, col] : pivots) {
    if (t[col].is_zero()) continue;
    const Scalar p = rows[ri][col];
    Scalar q = t[col];
    use_multiplier(p);
    verdict.multiplier = verdict.multiplier * p;
    for (size_t j = 0; j < ncols; ++j) t[j] = p * t[j] - q * rows[ri][j];
  }

  for (const auto& row : rows) verdict.echelon.push_back(to_form(row));
  verdict.remainder = to_form(t);

  for (const auto& m : multipliers)
    if (!detail::nonzero_under(m, s.assumptions)) verdict.case_splits.push_back(m);

  if (!verdict.case_splits.empty()) {
    verdict.kind = ForcedKind::needs_case_split;
  } else if (verdict.remainder.is_zero()) {
    verdict.kind = ForcedKind::forced_zero;
  } else if (!verdict.remainder.coeffs.empty()) {
    verdict.kind = ForcedKind::free_target;
  } else {
    verdict.kind = ForcedKind::forced_relation;
  }
  return verdict;
}

/// The six orbits of the singularity class 1.2.1.1 with their reference
/// points in the EKR chart (all coordinates zero except the listed four).
inline std::vector<std::pair<std::string, PointSpec>> orbit_table() {
  ClassCode code(Mode::flag2, {1, 2, 1, 1});
  Chart chart = code.ambient_chart();
  struct Row {
    const char* name;
    int x3, y3, x4, y4;
  };
  static const Row table[6] = {
      {"1.2.1_{-s,tra}.1", 1, 0, 0, 0},
      {"1.2.1_{-s,tan}.1_{-s,tra}", 0, 1, 1, 0},
      {"1.2.1_{-s,tan}.1_{-s,tan}", 0, 1, 0, 0},
      {"1.2.1_{+s}.1_{-s,tra}", 0, 0, 1, 0},
      {"1.2.1_{+s}.1_{-s,tan}", 0, 0, 0, 1},
      {"1.2.1.1_{+s}", 0, 0, 0, 0},
  };
  std::vector<std::pair<std::string, PointSpec>> out;
  for (const auto& row : table) {
    PointSpec p(chart);
    p.set(Coord::x(3), Scalar(row.x3));
    p.set(Coord::y(3), Scalar(row.y3));
    p.set(Coord::x(4), Scalar(row.x4));
    p.set(Coord::y(4), Scalar(row.y4));
    out.emplace_back(row.name, p);
  }
  return out;
}

/// F^5 and G^5 of the class 1.2.1.1.i5 symmetry, evaluated at the lift Q of
/// an orbit reference point with the given top coordinates x5, y5.  The
/// output is affine in x5, y5 when those are passed as formal parameters.
inline std::pair<LinForm, LinForm> prolong_forms_1211(int i5, const PointSpec& orbit_point,
                                                      const Scalar& x5, const Scalar& y5) {
  if (i5 < 1 || i5 > 3) throw std::invalid_argument("prolong_forms_1211: i5 must be 1, 2 or 3");
  ClassCode code(Mode::flag2, {1, 2, 1, 1, i5});
  Chart chart = code.ambient_chart();
  PointSpec q(chart);
  for (int i = 0; i < orbit_point.chart().dim(); ++i)
    q.set(chart.coord(i), orbit_point.value(i));
  q.set(Coord::x(5), x5);
  q.set(Coord::y(5), y5);
  SymmetryField Y = build_symmetry(code);
  return {substitute(Y.F(5), q), substitute(Y.G(5), q)};
}

}  // namespace flagsym

#endif
