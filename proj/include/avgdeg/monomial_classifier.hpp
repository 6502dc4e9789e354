#pragma once

// Non-existence certificates for limit cycles of
//
//   (x', y') = (a x^p y^q,  b x^i y^j + c x^k y^l)
//
// The classifier walks the standard case tree (trivial cases, common
// factor removal, cases (i)-(v)) and re-checks every hypothesis a branch
// relies on with exact exponent arithmetic: critical sets, invariant lines,
// first integrals, reversing symmetries, divergence sign, axis rotation
// signs. A failed check is a defect and raises UnreachableBranch.
//
// Properties cited:
//   P1  periodic orbits surround a critical point
//   P2  an invariant line through every critical point excludes periodic orbits
//   P3  one equation depends on one variable only
//   P4  a non-constant smooth first integral excludes limit cycles
//   P5  single-signed divergence (Bendixson) excludes periodic orbits
//   P6  reversible with a unique critical point: orbits around it come in
//       continua, never isolated
//   AxisSign  the rotation sense differs on two half-axes, so no orbit can
//       wind around the only critical point

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "avgdeg/errors.hpp"
#include "avgdeg/field_algebra.hpp"

namespace avgdeg {

struct MonomialSystem {
  double a = 0.0, b = 0.0, c = 0.0;
  int p = 0, q = 0, i = 0, j = 0, k = 0, l = 0;
  bool operator==(const MonomialSystem&) const = default;
};

// ---------------------------------------------------------------------------
// Sparse bivariate polynomials with integer exponents.

namespace poly {

using Exponent = std::pair<int, int>;
using Poly = std::map<Exponent, double>;

inline Poly clean(Poly p, double tol = 0.0) {
  for (auto it = p.begin(); it != p.end();) {
    it = std::abs(it->second) <= tol ? p.erase(it) : std::next(it);
  }
  return p;
}

inline Poly term(double c, int ex, int ey) { return clean(Poly{{{ex, ey}, c}}); }

inline Poly operator+(Poly a, const Poly& b) {
  for (const auto& [e, c] : b) a[e] += c;
  return clean(std::move(a));
}

inline Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) out[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  }
  return clean(std::move(out));
}

inline Poly dx(const Poly& p) {
  Poly out;
  for (const auto& [e, c] : p) {
    if (e.first > 0) out[{e.first - 1, e.second}] += c * e.first;
  }
  return clean(std::move(out));
}

inline Poly dy(const Poly& p) {
  Poly out;
  for (const auto& [e, c] : p) {
    if (e.second > 0) out[{e.first, e.second - 1}] += c * e.second;
  }
  return clean(std::move(out));
}

inline double max_abs_coeff(const Poly& p) {
  double m = 0.0;
  for (const auto& [e, c] : p) m = std::max(m, std::abs(c));
  return m;
}

// Restriction to x = 0 (keep_y) or y = 0: a univariate polynomial given as
// exponent -> coefficient.
inline std::map<int, double> restrict_to_axis(const Poly& p, bool on_x_zero) {
  std::map<int, double> out;
  for (const auto& [e, c] : p) {
    if (on_x_zero && e.first == 0) out[e.second] += c;
    if (!on_x_zero && e.second == 0) out[e.first] += c;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0.0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace poly

// Poly is a std::map, so argument-dependent lookup cannot find these.
using poly::operator+;
using poly::operator*;

inline poly::Poly xdot_poly(const MonomialSystem& s) { return poly::term(s.a, s.p, s.q); }
inline poly::Poly ydot_poly(const MonomialSystem& s) {
  return poly::term(s.b, s.i, s.j) + poly::term(s.c, s.k, s.l);
}

// ---------------------------------------------------------------------------
// Critical points. With x' a single nonzero monomial they all lie on the
// axes, so the set is a union of whole axes and finitely many points.

struct CriticalSet {
  bool x_zero_line = false;  // every point of {x = 0} is critical
  bool y_zero_line = false;  // every point of {y = 0} is critical
  std::vector<Vec2> points;  // isolated critical points

  bool empty() const { return !x_zero_line && !y_zero_line && points.empty(); }
  bool only_origin() const {
    return !x_zero_line && !y_zero_line && points.size() == 1 && points[0] == Vec2{0.0, 0.0};
  }
  bool within_x_zero() const {
    return !y_zero_line &&
           std::all_of(points.begin(), points.end(), [](const Vec2& v) { return v.x == 0.0; });
  }
  bool within_y_zero() const {
    return !x_zero_line &&
           std::all_of(points.begin(), points.end(), [](const Vec2& v) { return v.y == 0.0; });
  }
  bool within_axes() const {
    return std::all_of(points.begin(), points.end(),
                       [](const Vec2& v) { return v.x == 0.0 || v.y == 0.0; });
  }
};

namespace detail {

// Real zeros of a univariate polynomial with at most two terms.
// Returns false when it vanishes identically.
inline bool univariate_zeros(const std::map<int, double>& r, std::vector<double>& zeros) {
  if (r.empty()) return false;
  if (r.size() > 2) throw UnreachableBranch("axis restriction has more than two terms");
  const auto first = *r.begin();
  if (first.first >= 1) zeros.push_back(0.0);
  if (r.size() == 2) {
    const auto second = *std::next(r.begin());
    const int d = second.first - first.first;
    const double rho = -first.second / second.second;
    if (d % 2 != 0) {
      zeros.push_back(std::copysign(std::pow(std::abs(rho), 1.0 / d), rho));
    } else if (rho > 0.0) {
      const double t = std::pow(rho, 1.0 / d);
      zeros.push_back(t);
      zeros.push_back(-t);
    }
  }
  return true;
}

}  // namespace detail

inline CriticalSet critical_set(const MonomialSystem& s) {
  if (s.a == 0.0) throw InvalidArgument("critical_set requires a != 0");
  const auto ydot = ydot_poly(s);
  CriticalSet cs;
  auto add_point = [&](Vec2 v) {
    if (std::find(cs.points.begin(), cs.points.end(), v) == cs.points.end()) cs.points.push_back(v);
  };
  std::vector<double> zeros;
  if (s.p >= 1) {
    if (!detail::univariate_zeros(poly::restrict_to_axis(ydot, true), zeros)) {
      cs.x_zero_line = true;
    } else {
      for (double y : zeros) add_point({0.0, y});
    }
  }
  zeros.clear();
  if (s.q >= 1) {
    if (!detail::univariate_zeros(poly::restrict_to_axis(ydot, false), zeros)) {
      cs.y_zero_line = true;
    } else {
      for (double x : zeros) add_point({x, 0.0});
    }
  }
  if (cs.x_zero_line) std::erase_if(cs.points, [](const Vec2& v) { return v.x == 0.0; });
  if (cs.y_zero_line) std::erase_if(cs.points, [](const Vec2& v) { return v.y == 0.0; });
  std::sort(cs.points.begin(), cs.points.end(),
            [](const Vec2& u, const Vec2& v) { return std::pair(u.x, u.y) < std::pair(v.x, v.y); });
  return cs;
}

// ---------------------------------------------------------------------------

enum class Property { P1, P2, P3, P4, P5, P6, AxisSign };

inline const char* to_string(Property p) {
  switch (p) {
    case Property::P1: return "P1";
    case Property::P2: return "P2";
    case Property::P3: return "P3";
    case Property::P4: return "P4";
    case Property::P5: return "P5";
    case Property::P6: return "P6";
    case Property::AxisSign: return "axis-sign";
  }
  return "?";
}

// Division of both components by x^power or y^power.
struct Reduction {
  char variable = 'x';
  int power = 0;
  bool operator==(const Reduction&) const = default;
};

struct PreconditionCheck {
  std::string name;
  bool passed = false;
};

struct NoCycleCertificate {
  Property property = Property::P1;
  std::string case_label;
  std::vector<Reduction> reduction_trace;
  std::vector<std::string> canonicalization;
  std::vector<PreconditionCheck> checks;
  MonomialSystem input;
  MonomialSystem reduced;  // the system the final argument is about

  bool all_checks_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const PreconditionCheck& c) { return c.passed; });
  }
};

struct ReductionResult {
  MonomialSystem system;
  std::vector<Reduction> trace;
};

// Divides by x^s y^u with s = min(p, i, k), u = min(q, j, l). The phase
// portrait is unchanged (up to time direction) off {x^s y^u = 0}, and when s
// or u is positive that axis consists of critical points, which no periodic
// orbit can cross.
inline ReductionResult reduce_common_factor(const MonomialSystem& sys) {
  if (sys.a == 0.0 || sys.b == 0.0 || sys.c == 0.0) {
    throw InvalidArgument("reduce_common_factor requires abc != 0");
  }
  ReductionResult out{sys, {}};
  const int s = std::min({sys.p, sys.i, sys.k});
  const int u = std::min({sys.q, sys.j, sys.l});
  if (s > 0) {
    out.system.p -= s;
    out.system.i -= s;
    out.system.k -= s;
    out.trace.push_back({'x', s});
  }
  if (u > 0) {
    out.system.q -= u;
    out.system.j -= u;
    out.system.l -= u;
    out.trace.push_back({'y', u});
  }
  return out;
}

namespace detail {

inline void swap_ydot_terms(MonomialSystem& s) {
  std::swap(s.b, s.c);
  std::swap(s.i, s.k);
  std::swap(s.j, s.l);
}

class CertificateBuilder {
 public:
  explicit CertificateBuilder(const MonomialSystem& input) { cert_.input = input; }

  NoCycleCertificate& cert() { return cert_; }

  void note(std::string text) { cert_.canonicalization.push_back(std::move(text)); }

  void require(const std::string& name, bool passed) {
    cert_.checks.push_back({name, passed});
    if (!passed) {
      throw UnreachableBranch("precondition '" + name + "' failed in branch " + cert_.case_label);
    }
  }

  NoCycleCertificate finish(Property p, std::string label, const MonomialSystem& reduced) {
    cert_.property = p;
    cert_.case_label = std::move(label);
    cert_.reduced = reduced;
    return cert_;
  }

  void label(std::string l) { cert_.case_label = std::move(l); }

  // --- reusable checks ------------------------------------------------------

  void check_single_variable_equation(const MonomialSystem& s) {
    const auto xd = xdot_poly(s), yd = ydot_poly(s);
    auto only_x = [](const poly::Poly& p) {
      return std::all_of(p.begin(), p.end(), [](const auto& t) { return t.first.second == 0; });
    };
    auto only_y = [](const poly::Poly& p) {
      return std::all_of(p.begin(), p.end(), [](const auto& t) { return t.first.first == 0; });
    };
    require("x' depends on x only, or y' depends on y only", only_x(xd) || only_y(yd));
  }

  void check_no_critical_points(const MonomialSystem& s) {
    require("no critical points", critical_set(s).empty());
  }

  void check_unique_origin(const MonomialSystem& s) {
    require("unique critical point (0,0)", critical_set(s).only_origin());
  }

  void check_polynomial_first_integral(const MonomialSystem& s, const poly::Poly& h) {
    using namespace poly;
    const Poly dh = dx(h) * xdot_poly(s) + dy(h) * ydot_poly(s);
    const double scale = std::max(1.0, max_abs_coeff(h)) *
                         std::max({std::abs(s.a), std::abs(s.b), std::abs(s.c), 1.0});
    require("polynomial first integral: dH/dt == 0", clean(dh, 1e-12 * scale).empty());
    bool constant = true;
    for (const auto& [e, c] : h) {
      if (e != Exponent{0, 0} && c != 0.0) constant = false;
    }
    require("first integral is non-constant", !constant);
  }

  // H = Psi(y) - int y'(x) / x^p dx with x' = x^p psi(y): a first integral
  // on each side of the invariant line x = 0.
  void check_separable_off_x_axis(const MonomialSystem& s) {
    require("invariant line x = 0", s.p >= 1);
    const auto yd = ydot_poly(s);
    require("y' depends on x only",
            std::all_of(yd.begin(), yd.end(), [](const auto& t) { return t.first.second == 0; }));
    require("y' not identically zero", !yd.empty());
    require("x' = x^p * psi(y) with psi != 0", s.a != 0.0);
  }

  // Angular velocity x y' - y x' on each open half-axis; returns false when
  // a half-axis restriction is not a single nonzero monomial.
  bool half_axis_signs(const MonomialSystem& s, int out[4]) {
    auto sign_on = [](const std::map<int, double>& r, bool positive, int& sgn) {
      if (r.size() != 1) return false;
      const auto [e, c] = *r.begin();
      sgn = (c > 0 ? 1 : -1) * ((positive || e % 2 == 0) ? 1 : -1);
      return true;
    };
    const auto q_on_y0 = poly::restrict_to_axis(ydot_poly(s), false);
    const auto p_on_x0 = poly::restrict_to_axis(xdot_poly(s), true);
    int qp, qn, pp, pn;
    if (!sign_on(q_on_y0, true, qp) || !sign_on(q_on_y0, false, qn) ||
        !sign_on(p_on_x0, true, pp) || !sign_on(p_on_x0, false, pn)) {
      return false;
    }
    out[0] = qp;   // (+x, 0):  x y'
    out[1] = -qn;  // (-x, 0):  x y' with x < 0
    out[2] = -pp;  // (0, +y): -y x'
    out[3] = pn;   // (0, -y): -y x' with y < 0
    return true;
  }

  void check_axis_sign_obstruction(const MonomialSystem& s) {
    int signs[4] = {0, 0, 0, 0};
    require("rotation sense is constant on each half-axis", half_axis_signs(s, signs));
    require("rotation sense differs between half-axes",
            !(signs[0] == signs[1] && signs[1] == signs[2] && signs[2] == signs[3]));
  }

  // (x, y, t) -> (x, -y, -t) when flip_y, else (x, y, t) -> (-x, y, -t).
  void check_reversible(const MonomialSystem& s, bool flip_y) {
    const auto xd = xdot_poly(s), yd = ydot_poly(s);
    auto parity_ok = [&](const poly::Poly& p, bool want_odd) {
      return std::all_of(p.begin(), p.end(), [&](const auto& t) {
        const int e = flip_y ? t.first.second : t.first.first;
        return (e % 2 != 0) == want_odd;
      });
    };
    if (flip_y) {
      require("invariant under (x,y,t) -> (x,-y,-t)", parity_ok(xd, true) && parity_ok(yd, false));
    } else {
      require("invariant under (x,y,t) -> (-x,y,-t)", parity_ok(xd, false) && parity_ok(yd, true));
    }
  }

  void check_single_signed_divergence(const MonomialSystem& s) {
    using namespace poly;
    const Poly div = dx(xdot_poly(s)) + dy(ydot_poly(s));
    require("divergence is a single monomial", div.size() == 1);
    const auto [e, c] = *div.begin();
    require("divergence has even exponents (single-signed, vanishes only on xy = 0)",
            e.first % 2 == 0 && e.second % 2 == 0 && c != 0.0);
  }

 private:
  NoCycleCertificate cert_;
};

// (a y^q, b x^i + c x^k y^l), i >= 1, q >= 1.
inline NoCycleCertificate classify_case_ii(CertificateBuilder& cb, const MonomialSystem& s,
                                           const std::string& prefix) {
  cb.label(prefix);
  cb.require("shape (a y^q, b x^i + c x^k y^l) with i >= 1, q >= 1",
             s.p == 0 && s.j == 0 && s.i >= 1 && s.q >= 1);
  if (s.l == 0) {
    cb.label(prefix + "-integrable");
    using namespace poly;
    // H = b x^(i+1)/(i+1) + c x^(k+1)/(k+1) - a y^(q+1)/(q+1)
    const Poly h = term(s.b / (s.i + 1), s.i + 1, 0) + term(s.c / (s.k + 1), s.k + 1, 0) +
                   term(-s.a / (s.q + 1), 0, s.q + 1);
    cb.check_polynomial_first_integral(s, h);
    return cb.finish(Property::P4, prefix + "-integrable", s);
  }
  cb.check_unique_origin(s);
  const bool may_encircle = (s.q % 2 == 1) && (s.i % 2 == 1) && (s.a * s.b < 0.0);
  if (!may_encircle) {
    cb.label(prefix + "-parity");
    cb.check_axis_sign_obstruction(s);
    return cb.finish(Property::AxisSign, prefix + "-parity", s);
  }
  if (s.l % 2 == 0) {
    cb.label(prefix + "-reversible");
    cb.check_reversible(s, true);
    return cb.finish(Property::P6, prefix + "-reversible", s);
  }
  if (s.k % 2 == 1) {
    cb.label(prefix + "-reversible");
    cb.check_reversible(s, false);
    return cb.finish(Property::P6, prefix + "-reversible", s);
  }
  cb.label(prefix + "-divergence");
  // div = c l x^k y^(l-1) with k even, l odd
  cb.check_single_signed_divergence(s);
  return cb.finish(Property::P5, prefix + "-divergence", s);
}

}  // namespace detail

inline NoCycleCertificate classify(const MonomialSystem& input) {
  if (input.p < 0 || input.q < 0 || input.i < 0 || input.j < 0 || input.k < 0 || input.l < 0) {
    throw InvalidArgument("monomial exponents must be non-negative");
  }
  detail::CertificateBuilder cb(input);
  MonomialSystem s = input;

  if (s.b != 0.0 && s.c != 0.0 && s.i == s.k && s.j == s.l) {
    s.b += s.c;
    s.c = 0.0;
    cb.note("merged identical y' monomials");
  }
  if (s.b == 0.0 && s.c != 0.0) {
    detail::swap_ydot_terms(s);
    cb.note("swapped y' terms so that b != 0");
  }

  if (s.a == 0.0) {
    cb.label("a=0");
    cb.require("x' vanishes identically", true);
    return cb.finish(Property::P3, "a=0", s);
  }
  if (s.a < 0.0) {
    s.a = -s.a;
    s.b = -s.b;
    s.c = -s.c;
    cb.note("time reversal (a, b, c) -> (-a, -b, -c) to make a > 0");
  }

  if (s.b == 0.0) {
    cb.label("bc=0-trivial");
    cb.require("y' vanishes identically", s.c == 0.0);
    return cb.finish(Property::P3, "bc=0-trivial", s);
  }

  if (s.c == 0.0) {
    // (a x^p y^q, b x^i y^j)
    if (s.p == 0 && s.j == 0) {
      cb.label("bc=0-integrable");
      using namespace poly;
      const Poly h = term(s.b / (s.i + 1), s.i + 1, 0) + term(-s.a / (s.q + 1), 0, s.q + 1);
      cb.check_polynomial_first_integral(s, h);
      return cb.finish(Property::P4, "bc=0-integrable", s);
    }
    cb.label("bc=0-line");
    const bool x0_invariant = s.p >= 1;
    const bool y0_invariant = s.j >= 1;
    cb.require("an invariant coordinate line exists", x0_invariant || y0_invariant);
    const auto cs = critical_set(s);
    bool covered = false;
    if (x0_invariant && y0_invariant) covered = cs.within_axes();
    else if (x0_invariant) covered = cs.within_x_zero();
    else covered = cs.within_y_zero();
    cb.require("all critical points lie on the invariant line(s)", covered);
    return cb.finish(Property::P2, "bc=0-line", s);
  }

  // abc != 0
  auto [r, trace] = reduce_common_factor(s);
  cb.cert().reduction_trace = trace;
  cb.require("reduced: min(p, i, k) == 0", std::min({r.p, r.i, r.k}) == 0);
  cb.require("reduced: min(q, j, l) == 0", std::min({r.q, r.j, r.l}) == 0);
  if (r.i > r.k) {
    detail::swap_ydot_terms(r);
    cb.note("ordered y' terms so that i <= k");
  }

  if (r.i >= 1) {
    // (a y^q, b x^i y^j + c x^k y^l), i >= 1
    cb.require("first reduced form: p == 0", r.p == 0);
    if (r.q == 0) {
      cb.label("(i)");
      cb.check_no_critical_points(r);
      return cb.finish(Property::P1, "(i)", r);
    }
    if (r.j != 0) {
      detail::swap_ydot_terms(r);
      cb.note("swapped y' terms so that j == 0");
    }
    return detail::classify_case_ii(cb, r, "(ii)");
  }

  // (a x^p y^q, b y^j + c x^k y^l)
  if (r.q == 0) {
    cb.label("(iii)");
    cb.check_single_variable_equation(r);
    return cb.finish(Property::P3, "(iii)", r);
  }
  if (r.j == 0) {
    // (iv): (a x^p y^q, b + c x^k y^l), q >= 1
    if (r.p != 0 && r.k != 0 && r.l != 0) {
      cb.label("(iv)-no-critical");
      cb.check_no_critical_points(r);
      return cb.finish(Property::P1, "(iv)-no-critical", r);
    }
    if (r.p == 0) {
      if (r.l != 0) {
        cb.label("(iv)-no-critical");
        cb.check_no_critical_points(r);
        return cb.finish(Property::P1, "(iv)-no-critical", r);
      }
      cb.label("(iv)-integrable");
      using namespace poly;
      const Poly h = term(r.b, 1, 0) + term(r.c / (r.k + 1), r.k + 1, 0) +
                     term(-r.a / (r.q + 1), 0, r.q + 1);
      cb.check_polynomial_first_integral(r, h);
      return cb.finish(Property::P4, "(iv)-integrable", r);
    }
    if (r.k == 0) {
      cb.label("(iv)-one-variable");
      cb.check_single_variable_equation(r);
      return cb.finish(Property::P3, "(iv)-one-variable", r);
    }
    cb.label("(iv)-separable");
    cb.require("l == 0", r.l == 0);
    cb.check_separable_off_x_axis(r);
    return cb.finish(Property::P4, "(iv)-separable", r);
  }
  if (r.l == 0) {
    // (v): (a x^p y^q, b y^j + c x^k), q >= 1, j >= 1
    if (r.p == 0) {
      if (r.k == 0) {
        cb.label("(v)-one-variable");
        cb.check_single_variable_equation(r);
        return cb.finish(Property::P3, "(v)-one-variable", r);
      }
      // Same shape as case (ii) with the roles of the y' terms exchanged.
      MonomialSystem as_ii = r;
      detail::swap_ydot_terms(as_ii);
      cb.note("relabelled (a y^q, b y^j + c x^k) as case (ii) with k = 0");
      return detail::classify_case_ii(cb, as_ii, "(v)-(ii)");
    }
    cb.label("(v)-line");
    cb.require("invariant line x = 0", r.p >= 1);
    cb.require("all critical points lie on x = 0", critical_set(r).within_x_zero());
    return cb.finish(Property::P2, "(v)-line", r);
  }
  throw UnreachableBranch("no case matched the reduced system");
}

// ---------------------------------------------------------------------------
// Exhaustive scans

struct ScanFailureRecord {
  MonomialSystem system;
  std::string reason;
};

struct ScanSummary {
  int max_exponent = 0;
  long systems = 0;
  long certified = 0;
  std::map<std::string, long> by_property;
  std::map<std::string, long> by_label;
  std::vector<ScanFailureRecord> failures;
};

// Classifies every system with exponents in [0, max_exponent] and a, b, c
// drawn from `coefficients`. A system counts as certified only when every
// recorded precondition check passed.
inline ScanSummary scan_systems(int max_exponent,
                                const std::vector<double>& coefficients = {-1.0, 0.0, 1.0}) {
  if (max_exponent < 0) throw InvalidArgument("scan bound must be non-negative");
  ScanSummary out;
  out.max_exponent = max_exponent;
  const int n = max_exponent + 1;
  long combos = 1;
  for (int d = 0; d < 6; ++d) combos *= n;
  for (double a : coefficients) {
    for (double b : coefficients) {
      for (double c : coefficients) {
        for (long idx = 0; idx < combos; ++idx) {
          long rest = idx;
          int e[6];
          for (int d = 5; d >= 0; --d) {
            e[d] = static_cast<int>(rest % n);
            rest /= n;
          }
          const MonomialSystem s{a, b, c, e[0], e[1], e[2], e[3], e[4], e[5]};
          ++out.systems;
          try {
            const auto cert = classify(s);
            if (!cert.all_checks_passed()) {
              out.failures.push_back({s, "failed precondition in " + cert.case_label});
              continue;
            }
            ++out.certified;
            ++out.by_property[to_string(cert.property)];
            ++out.by_label[cert.case_label];
          } catch (const Error& err) {
            out.failures.push_back({s, err.what()});
          }
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Liénard constructions

// (x', y') = (y, -x + eps (a_0 y + a_1 y^3 + ... + a_{m-3} y^(2m-5))),
// returned in ccw form.
inline PerturbationSpec lienard_family(int m, std::span<const double> coefficients,
                                       double epsilon = 1.0) {
  if (m < 4) throw InvalidArgument("lienard_family needs m >= 4");
  if (coefficients.size() != static_cast<std::size_t>(m - 2)) {
    throw InvalidArgument("lienard_family(m) needs m - 2 coefficients");
  }
  std::vector<HomogeneousField> fields;
  for (int j = 0; j <= m - 3; ++j) {
    const int deg = 2 * j + 1;
    fields.emplace_back(Rational(deg), std::vector<SignedPowerTerm>{},
                        std::vector<SignedPowerTerm>{SignedPowerTerm::monomial(1.0, 0, deg)});
  }
  const PerturbationSpec cw(std::move(fields),
                            std::vector<double>(coefficients.begin(), coefficients.end()), epsilon,
                            Orientation::cw);
  return swap_orientation(cw);
}

// Constructive lower bound on the number of limit cycles of systems with m
// monomials: 0 for m <= 3, m - 3 beyond.
inline int hilbert_monomial_lower_bound(int m) {
  if (m < 1) throw InvalidArgument("hilbert_monomial_lower_bound needs m >= 1");
  return m <= 3 ? 0 : m - 3;
}

}  // namespace avgdeg
