#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "core.hpp"
#include "serial.hpp"

// Plain-text instance files, format `lp2d v1`:
//
//   lp2d v1 m=<count> M=<bound>
//   c <cx> <cy>
//   h <ax> <ay> <b>          (one line per constraint)
//
// Numbers are written with 17 significant digits, so write followed by read
// reproduces every double bit for bit.

namespace lp2d {

namespace detail {

inline std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

}  // namespace detail

inline void write_problem(std::ostream& os, const problem& p) {
  os << "lp2d v1 m=" << p.constraints.size()
     << " M=" << detail::full_precision(p.bound_m) << "\n";
  os << "c " << detail::full_precision(p.obj.c.x) << " "
     << detail::full_precision(p.obj.c.y) << "\n";
  for (const half_plane& h : p.constraints) {
    os << "h " << detail::full_precision(h.a.x) << " "
       << detail::full_precision(h.a.y) << " " << detail::full_precision(h.b)
       << "\n";
  }
}

inline std::string to_text(const problem& p) {
  std::ostringstream os;
  write_problem(os, p);
  return os.str();
}

inline problem read_problem(std::istream& is) {
  const auto fail = [](const std::string& what) -> problem {
    throw std::runtime_error("lp2d parse: " + what);
  };

  std::string tag, version, mfield, bound_field;
  if (!(is >> tag >> version >> mfield >> bound_field) || tag != "lp2d" ||
      version != "v1" || mfield.rfind("m=", 0) != 0 ||
      bound_field.rfind("M=", 0) != 0) {
    return fail("bad header line");
  }

  problem p;
  std::size_t m = 0;
  try {
    m = std::stoull(mfield.substr(2));
    p.bound_m = std::stod(bound_field.substr(2));
  } catch (const std::exception&) {
    return fail("bad header numbers");
  }
  if (!std::isfinite(p.bound_m) || p.bound_m <= 0.0) {
    return fail("bound must be positive and finite");
  }

  std::string row;
  if (!(is >> row) || row != "c" || !(is >> p.obj.c.x >> p.obj.c.y)) {
    return fail("bad objective line");
  }
  if (!finite(p.obj.c)) return fail("objective not finite");

  p.constraints.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    half_plane h;
    if (!(is >> row) || row != "h" || !(is >> h.a.x >> h.a.y >> h.b)) {
      return fail("bad constraint line");
    }
    if (!valid(h)) return fail("constraint not finite or zero normal");
    p.constraints.push_back(h);
  }
  return p;
}

inline problem problem_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_problem(is);
}

}  // namespace lp2d
