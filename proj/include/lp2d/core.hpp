#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>

// Geometric primitives for 2D linear programs: halfplane constraints,
// the parameterization of a constraint boundary as a line, and the
// classification of one constraint against such a line. Everything here is
// shared verbatim by the serial solver and the batch engine; keeping a single
// definition is what makes their results bit-identical.

namespace lp2d {

struct vec2 {
  double x = 0.0;
  double y = 0.0;
  friend constexpr bool operator==(const vec2&, const vec2&) = default;
};

constexpr vec2 operator+(vec2 a, vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr vec2 operator-(vec2 a, vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr vec2 operator*(double s, vec2 v) { return {s * v.x, s * v.y}; }
constexpr double dot(vec2 a, vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(vec2 a, vec2 b) { return a.x * b.y - a.y * b.x; }

/// Counter-clockwise quarter turn.
constexpr vec2 perp(vec2 v) { return {-v.y, v.x}; }

inline double norm(vec2 v) { return std::sqrt(dot(v, v)); }

inline bool finite(vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

/// One constraint a.x <= b in the plane.
struct half_plane {
  vec2 a;
  double b = 0.0;
  friend constexpr bool operator==(const half_plane&, const half_plane&) = default;
};

inline bool valid(const half_plane& h) {
  return finite(h.a) && std::isfinite(h.b) && (h.a.x != 0.0 || h.a.y != 0.0);
}

/// Maximization direction; the problem is max c.x subject to the constraints.
struct objective {
  vec2 c;
};

/// The boundary a.x = b written as origin + t * dir. origin is the foot of
/// the perpendicular from (0, 0); dir is the normalized normal rotated a
/// quarter turn counter-clockwise, so the feasible halfplane lies to the
/// left of dir.
struct boundary_line {
  vec2 origin;
  vec2 dir;
};

struct tolerance {
  double eps_parallel = 1e-12;  ///< on normalized direction dot products
  double eps_feas = 1e-9;       ///< base feasibility slack, scaled where applied
  int sig_figs = 5;             ///< agreement precision for cross-solver checks

  /// Absolute slack allowed when comparing against a bound of this magnitude.
  double feas_slack(double bound) const {
    return eps_feas * (1.0 + std::abs(bound));
  }
};

inline boundary_line boundary_of(const half_plane& h) {
  assert(valid(h));
  const double len2 = dot(h.a, h.a);
  const double len = std::sqrt(len2);
  return {(h.b / len2) * h.a, (1.0 / len) * perp(h.a)};
}

enum class bound_kind : std::uint8_t {
  bounded_left,         ///< constraint admits t >= sigma on the line
  bounded_right,        ///< constraint admits t <= sigma on the line
  parallel_redundant,   ///< boundary parallel to the line, line inside
  parallel_infeasible,  ///< boundary parallel to the line, line outside
};

/// Classification of one halfplane against a boundary line: which side of
/// the 1D program it bounds and where.
struct bound_class {
  bound_kind kind;
  double sigma = 0.0;
};

/// Restrict h to the line l. The crossing parameter sigma solves
/// a.(origin + sigma * dir) = b; the sign of a.dir says whether h keeps the
/// ray below (bounded_right) or above (bounded_left) the crossing. The
/// parallel test is done on the normalized dot product, written
/// multiplicatively so classify is covariant under scaling of (a, b).
inline bound_class classify(const half_plane& h, const boundary_line& l,
                            const tolerance& tol) {
  assert(valid(h));
  const double along = dot(h.a, l.dir);
  if (std::abs(along) <= tol.eps_parallel * norm(h.a)) {
    const bool inside = dot(h.a, l.origin) <= h.b + tol.feas_slack(h.b);
    return {inside ? bound_kind::parallel_redundant
                   : bound_kind::parallel_infeasible,
            0.0};
  }
  const double sigma = (h.b - dot(h.a, l.origin)) / along;
  return {along > 0.0 ? bound_kind::bounded_right : bound_kind::bounded_left,
          sigma};
}

inline bool satisfied(const half_plane& h, vec2 p, const tolerance& tol) {
  return dot(h.a, p) <= h.b + tol.feas_slack(h.b);
}

inline double objective_value(const objective& c, vec2 p) { return dot(c.c, p); }

/// True when a and b round to the same value at sig_figs significant
/// figures; the yardstick for comparing solvers that take different
/// floating-point paths.
inline bool agree_sig_figs(double a, double b, int sig_figs) {
  if (a == b) return true;
  const double mag = std::fmax(std::fabs(a), std::fabs(b));
  const double step = std::pow(10.0, std::floor(std::log10(mag)) - (sig_figs - 1));
  return std::fabs(a - b) <= 0.5 * step;
}

}  // namespace lp2d
