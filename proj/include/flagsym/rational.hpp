#ifndef FLAGSYM_RATIONAL_HPP
#define FLAGSYM_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <stdexcept>
#include <string>

namespace flagsym {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

/// Parses "p", "-p" or "p/q" with arbitrary-precision integers.
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational: '" + s + "'");
  }
}

}  // namespace flagsym

#endif
