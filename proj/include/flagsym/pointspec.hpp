#ifndef FLAGSYM_POINTSPEC_HPP
#define FLAGSYM_POINTSPEC_HPP

#include <cctype>
#include <string>
#include <vector>

#include "flagsym/chart.hpp"
#include "flagsym/scalar.hpp"

namespace flagsym {

/// A point of an ambient chart: one exact Scalar per coordinate (parameters
/// allowed).  Unassigned coordinates are 0.
class PointSpec {
 public:
  explicit PointSpec(Chart chart) : chart_(chart), values_(chart.dim(), Scalar(0)) {}

  Chart chart() const { return chart_; }
  const Scalar& operator[](Coord v) const { return values_.at(v.idx); }
  const Scalar& value(int idx) const { return values_.at(idx); }

  void set(Coord v, Scalar s) { values_.at(v.idx) = std::move(s); }
  void set(const std::string& name, Scalar s) { set(chart_.coord_by_name(name), std::move(s)); }

  bool is_numeric() const {
    for (const auto& s : values_)
      if (!s.is_constant()) return false;
    return true;
  }

  /// Projection pi_{r,j}: restriction to the chart of length j.
  PointSpec truncated(int j) const {
    Chart sub{chart_.mode, j};
    if (sub.dim() > chart_.dim()) throw std::invalid_argument("truncation beyond chart");
    PointSpec p(sub);
    for (int i = 0; i < sub.dim(); ++i) p.values_[i] = values_[i];
    return p;
  }

  /// Parses a comma-separated assignment list, e.g. "x3=1,x5=1,x7=c".
  /// Values are exact rationals or parameter names; omitted names are 0.
  static PointSpec parse(Chart chart, const std::string& text) {
    PointSpec p(chart);
    size_t i = 0;
    while (i < text.size()) {
      size_t comma = text.find(',', i);
      std::string item = text.substr(i, comma == std::string::npos ? std::string::npos : comma - i);
      i = comma == std::string::npos ? text.size() : comma + 1;
      // trim
      size_t a = item.find_first_not_of(' ');
      size_t b = item.find_last_not_of(' ');
      if (a == std::string::npos) continue;
      item = item.substr(a, b - a + 1);
      size_t eq = item.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("point assignment missing '=': '" + item + "'");
      std::string name = item.substr(0, eq);
      std::string val = item.substr(eq + 1);
      if (val.empty()) throw std::invalid_argument("empty value for '" + name + "'");
      if (std::isalpha(static_cast<unsigned char>(val[0])) || val[0] == '_') {
        p.set(name, Scalar::param(val));
      } else {
        p.set(name, Scalar(parse_rational(val)));
      }
    }
    return p;
  }

 private:
  Chart chart_;
  std::vector<Scalar> values_;
};

}  // namespace flagsym

#endif
