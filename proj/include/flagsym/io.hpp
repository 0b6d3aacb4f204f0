#ifndef FLAGSYM_IO_HPP
#define FLAGSYM_IO_HPP

#include <string>

#include <json.hpp>

#include "flagsym/expr.hpp"
#include "flagsym/linform.hpp"
#include "flagsym/vecfield.hpp"

namespace flagsym {

using nlohmann::json;

// ---- atoms ----------------------------------------------------------------

/// Inverse of DerivAtom::str: "A", "B_t", "B_{t x0}", "f_2", "f_{23}".
inline DerivAtom parse_atom(const std::string& s, Mode mode) {
  if (s.empty()) throw std::invalid_argument("empty atom");
  int base;
  if (mode == Mode::flag2) {
    base = std::string("ABC").find(s[0]);
    if (base == static_cast<int>(std::string::npos))
      throw std::invalid_argument("bad flag2 atom base in '" + s + "'");
  } else {
    if (s[0] != 'f') throw std::invalid_argument("bad goursat atom base in '" + s + "'");
    base = 0;
  }
  std::array<int, 3> multi{0, 0, 0};
  if (s.size() == 1) return DerivAtom::make(mode, base, multi);
  if (s[1] != '_') throw std::invalid_argument("malformed atom '" + s + "'");
  std::string subs = s.substr(2);
  if (!subs.empty() && subs.front() == '{') {
    if (subs.back() != '}') throw std::invalid_argument("malformed atom '" + s + "'");
    subs = subs.substr(1, subs.size() - 2);
  }
  size_t i = 0;
  while (i < subs.size()) {
    if (subs[i] == ' ') {
      ++i;
      continue;
    }
    if (mode == Mode::goursat) {
      int slot = subs[i] - '1';
      if (slot < 0 || slot > 2) throw std::invalid_argument("bad goursat atom subscript in '" + s + "'");
      multi[slot] += 1;
      ++i;
    } else {
      if (subs[i] == 't') {
        multi[0] += 1;
        ++i;
      } else if ((subs[i] == 'x' || subs[i] == 'y') && i + 1 < subs.size() && subs[i + 1] == '0') {
        multi[subs[i] == 'x' ? 1 : 2] += 1;
        i += 2;
      } else {
        throw std::invalid_argument("bad flag2 atom subscript in '" + s + "'");
      }
    }
  }
  return DerivAtom::make(mode, base, multi);
}

// ---- Expr -----------------------------------------------------------------

inline std::string mono_str(const Mono& m, Mode mode) {
  std::string out;
  for (const auto& [idx, exp] : m) {
    if (!out.empty()) out += "*";
    out += Coord{mode, idx}.name();
    if (exp > 1) out += "^" + std::to_string(exp);
  }
  return out;
}

inline std::string mono_latex(const Mono& m, Mode mode) {
  std::string out;
  for (const auto& [idx, exp] : m) {
    if (!out.empty()) out += "\\,";
    std::string c = Coord{mode, idx}.latex();
    out += exp > 1 ? "(" + c + ")^{" + std::to_string(exp) + "}" : c;
  }
  return out;
}

inline std::string to_text(const Expr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : e.terms()) {
    std::string cs = t.coeff.str();
    bool negated = false;
    if (cs.size() > 1 && cs[0] == '-' && cs.find(' ') == std::string::npos) {
      cs = cs.substr(1);
      negated = true;
    }
    if (first) {
      if (negated) out += "-";
    } else {
      out += negated ? " - " : " + ";
    }
    first = false;
    std::string factors;
    if (cs != "1" || (t.mono.empty() && !t.atom))
      factors = (cs.find(' ') != std::string::npos) ? "(" + cs + ")" : cs;
    std::string ms = mono_str(t.mono, e.mode());
    if (!ms.empty()) factors += (factors.empty() ? "" : "*") + ms;
    if (t.atom) factors += (factors.empty() ? "" : "*") + t.atom->str();
    out += factors;
  }
  return out;
}

inline std::string to_latex(const Expr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : e.terms()) {
    std::string cs = t.coeff.str();
    bool negated = false;
    if (cs.size() > 1 && cs[0] == '-' && cs.find(' ') == std::string::npos) {
      cs = cs.substr(1);
      negated = true;
    }
    if (first) {
      if (negated) out += "-";
    } else {
      out += negated ? " - " : " + ";
    }
    first = false;
    std::string piece;
    if (cs != "1" || (t.mono.empty() && !t.atom)) {
      // rationals as \frac, composite parameter scalars parenthesized
      auto slash = cs.find('/');
      if (cs.find(' ') != std::string::npos)
        piece = "\\bigl(" + cs + "\\bigr)";
      else if (slash != std::string::npos)
        piece = "\\tfrac{" + cs.substr(0, slash) + "}{" + cs.substr(slash + 1) + "}";
      else
        piece = cs;
    }
    std::string ms = mono_latex(t.mono, e.mode());
    if (!ms.empty()) piece += (piece.empty() ? "" : "\\,") + ms;
    if (t.atom) piece += (piece.empty() ? "" : "\\,") + t.atom->latex();
    out += piece;
  }
  return out;
}

inline json to_json(const Expr& e) {
  json terms = json::array();
  for (const auto& t : e.terms()) {
    json mono = json::object();
    for (const auto& [idx, exp] : t.mono) mono[Coord{e.mode(), idx}.name()] = exp;
    terms.push_back(json::array({t.coeff.str(), mono, t.atom ? t.atom->str() : ""}));
  }
  return json{{"mode", mode_name(e.mode())}, {"terms", terms}};
}

inline Expr expr_from_json(const json& j, int r) {
  Mode mode = parse_mode(j.at("mode").get<std::string>());
  Chart chart{mode, r};
  Expr e = Expr::zero(mode);
  for (const auto& t : j.at("terms")) {
    Scalar coeff = parse_scalar(t.at(0).get<std::string>());
    Mono mono;
    for (const auto& [name, exp] : t.at(1).items())
      mono[chart.coord_by_name(name).idx] = exp.get<int>();
    std::string atom_s = t.at(2).get<std::string>();
    std::optional<DerivAtom> atom;
    if (!atom_s.empty()) atom = parse_atom(atom_s, mode);
    e += Expr::term(coeff, mono, atom, mode);
  }
  return e;
}

// ---- VecField -------------------------------------------------------------

inline std::string to_text(const VecField& V) {
  std::string out;
  for (int i = 0; i < V.chart().dim(); ++i) {
    const Expr& c = V.component(i);
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string cs = to_text(c);
    bool composite = cs.find(' ') != std::string::npos || cs.find('*') != std::string::npos;
    out += (composite ? "(" + cs + ")" : cs) + "*d_" + V.chart().coord(i).name();
  }
  return out.empty() ? "0" : out;
}

inline std::string to_latex(const VecField& V) {
  std::string out;
  for (int i = 0; i < V.chart().dim(); ++i) {
    const Expr& c = V.component(i);
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string cs = to_latex(c);
    std::string del = "\\partial_{" + V.chart().coord(i).latex() + "}";
    if (c.is_one())
      out += del;
    else if (c.terms().size() > 1)
      out += "\\bigl(" + cs + "\\bigr)\\," + del;
    else
      out += cs + "\\," + del;
  }
  return out.empty() ? "0" : out;
}

inline json to_json(const VecField& V) {
  json comps = json::object();
  for (int i = 0; i < V.chart().dim(); ++i)
    if (!V.component(i).is_zero())
      comps[V.chart().coord(i).name()] = to_json(V.component(i));
  return json{{"mode", mode_name(V.chart().mode)}, {"r", V.chart().r}, {"components", comps}};
}

inline VecField vecfield_from_json(const json& j) {
  Chart chart{parse_mode(j.at("mode").get<std::string>()), j.at("r").get<int>()};
  VecField V(chart);
  for (const auto& [name, ej] : j.at("components").items())
    V.set(chart.coord_by_name(name), expr_from_json(ej, chart.r));
  return V;
}

// ---- LinForm --------------------------------------------------------------

inline json to_json(const LinForm& f) {
  json terms = json::array();
  for (const auto& [atom, c] : f.coeffs)
    terms.push_back(json::array({c.str(), atom.str()}));
  if (!f.constant.is_zero()) terms.push_back(json::array({f.constant.str(), ""}));
  return json{{"mode", mode_name(f.mode)}, {"terms", terms}};
}

inline std::string to_latex(const LinForm& f) {
  if (f.is_zero()) return "0";
  std::string out;
  auto add = [&](const Scalar& c, const std::string& sym) {
    std::string cs = c.str();
    if (!out.empty()) out += " + ";
    if (sym.empty()) {
      out += cs;
    } else if (c == Scalar(1)) {
      out += sym;
    } else if (c == Scalar(-1)) {
      out += "-" + sym;
    } else {
      out += (cs.find(' ') != std::string::npos ? "\\bigl(" + cs + "\\bigr)" : cs) + "\\," + sym;
    }
  };
  for (const auto& [atom, c] : f.coeffs) add(c, atom.latex());
  if (!f.constant.is_zero()) add(f.constant, "");
  return out;
}

}  // namespace flagsym

#endif
