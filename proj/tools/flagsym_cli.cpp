// flagsym: exact symbolic computations for Goursat flags and special 2-flags
// in (Extended) Kumpera-Ruiz coordinates.
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "flagsym/flagsym.hpp"

namespace {

using namespace flagsym;

enum class Format { text, json, latex };

struct Common {
  std::string mode_s = "flag2";
  std::string code_s;
  std::string point_s;
  std::string format_s = "text";
  std::string out_path;
};

Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "json") return Format::json;
  if (s == "latex") return Format::latex;
  throw validation_error("unknown format '" + s + "' (text|json|latex)");
}

void emit(const Common& c, const std::string& report) {
  if (c.out_path.empty()) {
    std::cout << report;
    return;
  }
  std::ofstream out(c.out_path);
  if (!out) throw std::runtime_error("cannot open '" + c.out_path + "' for writing");
  out << report;
}

void add_common(CLI::App* cmd, Common& c, bool wants_code, bool wants_point) {
  cmd->add_option("--mode", c.mode_s, "goursat or flag2")->capture_default_str();
  if (wants_code) cmd->add_option("--code", c.code_s, "class code, dotted notation")->required();
  if (wants_point)
    cmd->add_option("--point", c.point_s,
                    "comma-separated assignments, e.g. x3=1,x7=c; omitted are 0");
  cmd->add_option("--format", c.format_s, "text, json or latex")->capture_default_str();
  cmd->add_option("--out", c.out_path, "write the report to a file instead of stdout");
}

std::string linform_text(const LinForm& f) { return f.str(); }

json linform_json(const LinForm& f) { return to_json(f); }

// ---- subcommand payloads ---------------------------------------------------

int run_enumerate(const Common& c, int length, bool count_only) {
  Mode mode = parse_mode(c.mode_s);
  auto classes = enumerate_classes(length, mode);
  std::ostringstream os;
  switch (parse_format(c.format_s)) {
    case Format::json: {
      json j;
      j["mode"] = mode_name(mode);
      j["length"] = length;
      j["count"] = classes.size();
      if (!count_only) {
        json words = json::array();
        for (const auto& cc : classes) words.push_back(cc.word());
        j["classes"] = words;
      }
      os << j.dump(2) << "\n";
      break;
    }
    default:
      if (count_only) {
        os << classes.size() << "\n";
      } else {
        for (const auto& cc : classes) os << cc.word() << "\n";
      }
  }
  emit(c, os.str());
  return 0;
}

int run_frame(const Common& c) {
  Mode mode = parse_mode(c.mode_s);
  ClassCode code = ClassCode::parse(c.code_s, mode);
  Frame frame(code);
  std::ostringstream os;
  Format fmt = parse_format(c.format_s);
  if (fmt == Format::json) {
    json j;
    j["code"] = code.word();
    json ladder = json::array();
    for (int k = 1; k <= code.length(); ++k) ladder.push_back(to_json(frame.ladder(k)));
    j["ladder"] = ladder;
    os << j.dump(2) << "\n";
  } else {
    const char* sym = mode == Mode::flag2 ? "Z" : "Y";
    for (int k = 1; k <= code.length(); ++k) {
      const VecField& Z = frame.ladder(k);
      if (fmt == Format::latex)
        os << sym << "[" << k << "] &= " << to_latex(Z) << " \\\\\n";
      else
        os << sym << "[" << k << "] = " << to_text(Z) << "\n";
    }
  }
  emit(c, os.str());
  return 0;
}

int run_symmetry(const Common& c) {
  Mode mode = parse_mode(c.mode_s);
  ClassCode code = ClassCode::parse(c.code_s, mode);
  SymmetryField Y = build_symmetry(code);
  std::ostringstream os;
  Format fmt = parse_format(c.format_s);
  if (fmt == Format::json) {
    json j;
    j["code"] = code.word();
    json comps = json::object();
    for (size_t i = 0; i < Y.components().size(); ++i)
      comps[Y.component_name(static_cast<int>(i))] = to_json(Y.components()[i]);
    j["components"] = comps;
    os << j.dump(2) << "\n";
  } else {
    for (size_t i = 0; i < Y.components().size(); ++i) {
      const std::string name = Y.component_name(static_cast<int>(i));
      if (fmt == Format::latex)
        os << name << " &= " << to_latex(Y.components()[i]) << " \\\\\n";
      else
        os << name << " = " << to_text(Y.components()[i]) << "\n";
    }
  }
  emit(c, os.str());
  return 0;
}

int run_verify(const Common& c) {
  Mode mode = parse_mode(c.mode_s);
  ClassCode code = ClassCode::parse(c.code_s, mode);
  Frame frame(code);
  VerifyReport rep = verify_symmetry(build_symmetry(code), frame);
  std::ostringstream os;
  if (parse_format(c.format_s) == Format::json) {
    json j;
    j["code"] = code.word();
    j["pass"] = rep.pass;
    j["a"] = to_json(rep.bracket_Z.a);
    os << j.dump(2) << "\n";
  } else {
    os << code.word() << ": " << (rep.pass ? "symmetry verified" : "NOT a symmetry") << "\n";
    if (rep.pass) os << "  [Y, top frame field] coefficient a = " << to_text(rep.bracket_Z.a) << "\n";
  }
  emit(c, os.str());
  return rep.pass ? 0 : 2;
}

int run_sgv(const Common& c) {
  Mode mode = parse_mode(c.mode_s);
  ClassCode code = ClassCode::parse(c.code_s, mode);
  Frame frame(code);
  PointSpec p = PointSpec::parse(frame.chart(), c.point_s);
  auto v = small_growth_vector(frame, p);
  std::ostringstream os;
  if (parse_format(c.format_s) == Format::json) {
    json j;
    j["code"] = code.word();
    j["growth"] = v;
    os << j.dump(2) << "\n";
  } else {
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")\n";
  }
  emit(c, os.str());
  return 0;
}

int run_classify(const Common& c) {
  Mode mode = parse_mode(c.mode_s);
  if (mode != Mode::flag2) throw validation_error("classify supports --mode flag2 only");
  ClassCode code = ClassCode::parse(c.code_s, mode);
  Frame frame(code);
  PointSpec p = PointSpec::parse(frame.chart(), c.point_s);
  ClassCode got = classify_point(frame, p);
  std::ostringstream os;
  if (parse_format(c.format_s) == Format::json) {
    json j;
    j["chart"] = code.word();
    j["class"] = got.word();
    os << j.dump(2) << "\n";
  } else {
    os << got.word() << "\n";
  }
  emit(c, os.str());
  return 0;
}

int run_freeze(const Common& c, const std::vector<std::string>& exempt,
               const std::vector<std::string>& assume) {
  Mode mode = parse_mode(c.mode_s);
  ClassCode code = ClassCode::parse(c.code_s, mode);
  SymmetryField Y = build_symmetry(code);
  PointSpec p = PointSpec::parse(Y.chart(), c.point_s);
  std::set<std::string> exempt_set(exempt.begin(), exempt.end());
  std::set<std::string> assumptions;
  for (const auto& a : assume) {
    // accept "c" and "c!=0"
    auto bang = a.find("!=");
    assumptions.insert(bang == std::string::npos ? a : a.substr(0, bang));
  }
  FreezeSystem sys = freeze_system(Y, p, exempt_set, assumptions);
  ForcedVerdict v = forced_analysis(sys);
  std::ostringstream os;
  Format fmt = parse_format(c.format_s);
  if (fmt == Format::json) {
    json j;
    j["code"] = code.word();
    j["target"] = sys.target_name;
    j["target_form"] = linform_json(sys.target);
    json rows = json::array();
    for (const auto& [name, f] : sys.rows)
      rows.push_back(json{{"component", name}, {"form", linform_json(f)}});
    j["rows"] = rows;
    json ech = json::array();
    for (const auto& f : v.echelon) ech.push_back(linform_json(f));
    j["echelon"] = ech;
    j["assumptions"] = assumptions;
    j["verdict"] = v.kind_name();
    j["remainder"] = linform_json(v.remainder);
    json splits = json::array();
    for (const auto& s : v.case_splits) splits.push_back(s.str());
    j["case_splits"] = splits;
    os << j.dump(2) << "\n";
  } else {
    os << "target " << sys.target_name << " = " << linform_text(sys.target) << "\n";
    os << "frozen rows:\n";
    for (const auto& [name, f] : sys.rows)
      if (!f.is_zero()) os << "  " << name << ": " << linform_text(f) << " = 0\n";
    if (!assumptions.empty()) {
      os << "assumptions:";
      for (const auto& a : assumptions) os << " " << a << " != 0";
      os << "\n";
    }
    os << "verdict: " << v.kind_name() << "\n";
    if (v.kind == ForcedKind::forced_relation || v.kind == ForcedKind::free_target)
      os << "reduced target: " << linform_text(v.remainder) << "\n";
    for (const auto& s : v.case_splits) os << "case split on: " << s.str() << "\n";
  }
  emit(c, os.str());
  return v.kind == ForcedKind::needs_case_split ? 2 : 0;
}

int run_orbits(const Common& c) {
  auto table = orbit_table();
  std::ostringstream os;
  if (parse_format(c.format_s) == Format::json) {
    json j = json::array();
    for (const auto& [name, p] : table)
      j.push_back(json{{"orbit", name},
                       {"x3", to_string(p[Coord::x(3)].constant_value())},
                       {"y3", to_string(p[Coord::y(3)].constant_value())},
                       {"x4", to_string(p[Coord::x(4)].constant_value())},
                       {"y4", to_string(p[Coord::y(4)].constant_value())}});
    os << j.dump(2) << "\n";
  } else {
    for (const auto& [name, p] : table)
      os << name << ": x3=" << to_string(p[Coord::x(3)].constant_value())
         << " y3=" << to_string(p[Coord::y(3)].constant_value())
         << " x4=" << to_string(p[Coord::x(4)].constant_value())
         << " y4=" << to_string(p[Coord::y(4)].constant_value()) << "\n";
  }
  emit(c, os.str());
  return 0;
}

int run_prolong1211(const Common& c, int i5, int orbit_row, const std::string& x5_s,
                    const std::string& y5_s) {
  auto table = orbit_table();
  if (orbit_row < 1 || orbit_row > static_cast<int>(table.size()))
    throw validation_error("--orbit must be 1..6");
  auto parse_value = [](const std::string& s) -> Scalar {
    if (!s.empty() && (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
      return Scalar::param(s);
    return Scalar(parse_rational(s));
  };
  auto [F5, G5] = prolong_forms_1211(i5, table[orbit_row - 1].second, parse_value(x5_s),
                                     parse_value(y5_s));
  std::ostringstream os;
  Format fmt = parse_format(c.format_s);
  if (fmt == Format::json) {
    json j;
    j["orbit"] = table[orbit_row - 1].first;
    j["i5"] = i5;
    j["F5"] = linform_json(F5);
    j["G5"] = linform_json(G5);
    os << j.dump(2) << "\n";
  } else if (fmt == Format::latex) {
    os << "F^5 &= " << to_latex(F5) << " \\\\\n";
    os << "G^5 &= " << to_latex(G5) << " \\\\\n";
  } else {
    os << "orbit " << table[orbit_row - 1].first << ", i5 = " << i5 << "\n";
    os << "F5 = " << linform_text(F5) << "\n";
    os << "G5 = " << linform_text(G5) << "\n";
  }
  emit(c, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact frames, symmetries and freeze analysis for Goursat flags "
               "and special 2-flags in Kumpera-Ruiz coordinates"};
  app.require_subcommand(1);

  Common c_enum, c_frame, c_sym, c_ver, c_sgv, c_cls, c_frz, c_orb, c_pro;
  int length = 0;
  bool count_only = false;
  std::vector<std::string> exempt, assume;
  int i5 = 1, orbit_row = 1;
  std::string x5_s = "0", y5_s = "0";

  auto* cmd_enum = app.add_subcommand("enumerate", "list singularity classes of a length");
  add_common(cmd_enum, c_enum, false, false);
  cmd_enum->add_option("--length", length, "word length r")->required();
  cmd_enum->add_flag("--count", count_only, "print only the number of classes");

  auto* cmd_frame = app.add_subcommand("frame", "polynomial frame ladder of a class");
  add_common(cmd_frame, c_frame, true, false);

  auto* cmd_sym = app.add_subcommand("symmetry", "components of the generated symmetry");
  add_common(cmd_sym, c_sym, true, false);

  auto* cmd_ver = app.add_subcommand("verify", "check the defining bracket conditions");
  add_common(cmd_ver, c_ver, true, false);

  auto* cmd_sgv = app.add_subcommand("sgv", "small growth vector at a numeric point");
  add_common(cmd_sgv, c_sgv, true, true);

  auto* cmd_cls = app.add_subcommand("classify", "singularity class of a point of a chart");
  add_common(cmd_cls, c_cls, true, true);

  auto* cmd_frz = app.add_subcommand("freeze", "freeze analysis of one component at a point");
  add_common(cmd_frz, c_frz, true, true);
  cmd_frz->add_option("--exempt", exempt, "component kept as the target, e.g. F7")->required();
  cmd_frz->add_option("--assume", assume, "parameter assumed nonzero, e.g. c or c!=0");

  auto* cmd_orb = app.add_subcommand("orbits", "reference points of the 1.2.1.1 orbits");
  add_common(cmd_orb, c_orb, false, false);

  auto* cmd_pro = app.add_subcommand("prolong1211", "F5, G5 over a lifted 1.2.1.1 orbit point");
  add_common(cmd_pro, c_pro, false, false);
  cmd_pro->add_option("--i5", i5, "letter of the prolonged class, 1..3")->required();
  cmd_pro->add_option("--orbit", orbit_row, "orbit table row, 1..6")->required();
  cmd_pro->add_option("--x5", x5_s, "x5 of the lift: rational or parameter")->capture_default_str();
  cmd_pro->add_option("--y5", y5_s, "y5 of the lift: rational or parameter")->capture_default_str();

  try {
    app.parse(argc, argv);
    if (cmd_enum->parsed()) return run_enumerate(c_enum, length, count_only);
    if (cmd_frame->parsed()) return run_frame(c_frame);
    if (cmd_sym->parsed()) return run_symmetry(c_sym);
    if (cmd_ver->parsed()) return run_verify(c_ver);
    if (cmd_sgv->parsed()) return run_sgv(c_sgv);
    if (cmd_cls->parsed()) return run_classify(c_cls);
    if (cmd_frz->parsed()) return run_freeze(c_frz, exempt, assume);
    if (cmd_orb->parsed()) return run_orbits(c_orb);
    if (cmd_pro->parsed()) return run_prolong1211(c_pro, i5, orbit_row, x5_s, y5_s);
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "analysis error: " << e.what() << "\n";
    return 2;
  }
}
