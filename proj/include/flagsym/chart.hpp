#ifndef FLAGSYM_CHART_HPP
#define FLAGSYM_CHART_HPP

#include <array>
#include <stdexcept>
#include <string>

namespace flagsym {

enum class Mode { goursat, flag2 };

inline std::string mode_name(Mode m) { return m == Mode::goursat ? "goursat" : "flag2"; }

inline Mode parse_mode(const std::string& s) {
  if (s == "goursat") return Mode::goursat;
  if (s == "flag2") return Mode::flag2;
  throw std::invalid_argument("unknown mode: '" + s + "'");
}

/// A chart coordinate, identified by its position in the fixed total order.
///
/// flag2 order:   t < x0 < y0 < x1 < y1 < ... < x^r < y^r
/// goursat order: x1 < x2 < ... < x^{r+2}
///
/// In both modes the first three coordinates are the base coordinates (the
/// arguments of the free functions), so idx < 3 doubles as the multi-index
/// slot of a derivative atom.
struct Coord {
  Mode mode;
  int idx;

  static Coord t() { return {Mode::flag2, 0}; }
  static Coord x(int j) {
    if (j < 0) throw std::invalid_argument("x(j): j < 0");
    return {Mode::flag2, j == 0 ? 1 : 2 * j + 1};
  }
  static Coord y(int j) {
    if (j < 0) throw std::invalid_argument("y(j): j < 0");
    return {Mode::flag2, j == 0 ? 2 : 2 * j + 2};
  }
  /// Goursat x^i, i >= 1.
  static Coord g(int i) {
    if (i < 1) throw std::invalid_argument("goursat coordinate index < 1");
    return {Mode::goursat, i - 1};
  }

  bool is_base() const { return idx < 3; }

  /// flag2: jet level j of x^j/y^j (base coords are level 0).
  int level() const {
    if (mode == Mode::goursat) return idx + 1;
    return idx < 3 ? 0 : (idx - 1) / 2;
  }

  std::string name() const {
    if (mode == Mode::goursat) return "x" + std::to_string(idx + 1);
    if (idx == 0) return "t";
    int j = (idx - 1) / 2;
    return ((idx % 2 == 1) ? "x" : "y") + std::to_string(j);
  }

  std::string latex() const {
    if (mode == Mode::goursat) return "x^{" + std::to_string(idx + 1) + "}";
    if (idx == 0) return "t";
    int j = (idx - 1) / 2;
    return ((idx % 2 == 1) ? std::string("x^{") : std::string("y^{")) + std::to_string(j) + "}";
  }

  friend bool operator==(const Coord& a, const Coord& b) {
    return a.mode == b.mode && a.idx == b.idx;
  }
  friend bool operator<(const Coord& a, const Coord& b) {
    if (a.mode != b.mode) throw std::invalid_argument("comparing coords of different modes");
    return a.idx < b.idx;
  }
};

/// Ambient chart: mode plus flag length r.
struct Chart {
  Mode mode;
  int r;

  int dim() const { return mode == Mode::flag2 ? 2 * r + 3 : r + 2; }

  Coord coord(int idx) const {
    if (idx < 0 || idx >= dim()) throw std::out_of_range("coordinate index out of chart");
    return {mode, idx};
  }

  /// Resolves a textual coordinate name ("t", "x0", "y3", goursat "x5").
  Coord coord_by_name(const std::string& name) const {
    for (int i = 0; i < dim(); ++i)
      if (coord(i).name() == name) return coord(i);
    throw std::invalid_argument("unknown coordinate name '" + name + "' in chart " +
                                mode_name(mode) + " r=" + std::to_string(r));
  }

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.mode == b.mode && a.r == b.r;
  }
};

}  // namespace flagsym

#endif
