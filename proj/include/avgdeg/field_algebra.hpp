#pragma once

// Continuous homogeneous planar vector fields built from signed power
// monomials, and the perturbed linear center they are plugged into.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "avgdeg/errors.hpp"
#include "avgdeg/rational.hpp"

namespace avgdeg {

namespace detail {

inline double ipow(double base, std::int64_t n) {
  double result = 1.0;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

// |u|^a for u != 0. Square and cube roots are taken exactly so that
// sqrt(4) == 2 and cbrt(8) == 2 without pow() rounding.
inline double abs_power(double u, const Rational& a) {
  const double m = std::abs(u);
  switch (a.den()) {
    case 1: return ipow(m, a.num());
    case 2: return ipow(std::sqrt(m), a.num());
    case 3: return ipow(std::cbrt(m), a.num());
    default: return std::pow(m, a.to_double());
  }
}

}  // namespace detail

// p(u, a, signed): sgn(u)|u|^a when signed, |u|^a otherwise.
// p(0, a>0, .) = 0 and p(u, 0, false) = 1. The case (a = 0, signed) is the
// discontinuous sgn(u); terms never store it, but the function defines it.
inline double signed_power(double u, const Rational& a, bool is_signed) {
  if (a.is_zero()) {
    if (!is_signed) return 1.0;
    return u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
  }
  if (u == 0.0) return 0.0;
  const double m = detail::abs_power(u, a);
  return (is_signed && u < 0.0) ? -m : m;
}

// c * p(x, x_exp, x_signed) * p(y, y_exp, y_signed)
class SignedPowerTerm {
 public:
  SignedPowerTerm(double coeff, Rational x_exp, bool x_signed, Rational y_exp, bool y_signed)
      : coeff_(coeff), x_exp_(x_exp), y_exp_(y_exp), x_signed_(x_signed), y_signed_(y_signed) {
    if (!std::isfinite(coeff)) throw InvalidArgument("term coefficient must be finite");
    if (x_exp.is_negative() || y_exp.is_negative()) {
      throw InvalidArgument("term exponents must be non-negative");
    }
    if ((x_exp.is_zero() && x_signed) || (y_exp.is_zero() && y_signed)) {
      throw InvalidArgument("signed factor with zero exponent is discontinuous");
    }
  }

  // Ordinary monomial c x^nx y^ny; odd powers carry the sign.
  static SignedPowerTerm monomial(double coeff, std::int64_t nx, std::int64_t ny) {
    return SignedPowerTerm(coeff, Rational(nx), nx % 2 != 0, Rational(ny), ny % 2 != 0);
  }

  double coeff() const { return coeff_; }
  const Rational& x_exp() const { return x_exp_; }
  const Rational& y_exp() const { return y_exp_; }
  bool x_signed() const { return x_signed_; }
  bool y_signed() const { return y_signed_; }
  Rational degree() const { return x_exp_ + y_exp_; }

  // Exchange the roles of x and y.
  SignedPowerTerm swapped() const {
    return SignedPowerTerm(coeff_, y_exp_, y_signed_, x_exp_, x_signed_);
  }

  bool operator==(const SignedPowerTerm&) const = default;

 private:
  double coeff_;
  Rational x_exp_;
  Rational y_exp_;
  bool x_signed_;
  bool y_signed_;
};

inline double eval_term(const SignedPowerTerm& t, double x, double y) {
  return t.coeff() * signed_power(x, t.x_exp(), t.x_signed()) *
         signed_power(y, t.y_exp(), t.y_signed());
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Vec2&) const = default;
};

// X = (f, g) with every term of total degree alpha.
class HomogeneousField {
 public:
  HomogeneousField(Rational alpha, std::vector<SignedPowerTerm> f_terms,
                   std::vector<SignedPowerTerm> g_terms)
      : alpha_(alpha), f_(std::move(f_terms)), g_(std::move(g_terms)) {
    if (alpha_.is_negative()) throw InvalidArgument("homogeneity degree must be >= 0");
    auto check = [&](const std::vector<SignedPowerTerm>& terms, const char* which) {
      for (const auto& t : terms) {
        if (t.degree() != alpha_) {
          throw InvalidArgument(std::string("term in ") + which + " has degree " +
                                t.degree().str() + ", field degree is " + alpha_.str());
        }
      }
    };
    check(f_, "f");
    check(g_, "g");
  }

  const Rational& alpha() const { return alpha_; }
  const std::vector<SignedPowerTerm>& f_terms() const { return f_; }
  const std::vector<SignedPowerTerm>& g_terms() const { return g_; }

  // True when every exponent is a whole number, i.e. the field is polynomial.
  bool is_polynomial() const {
    auto integral = [](const SignedPowerTerm& t) {
      return t.x_exp().is_integer() && t.y_exp().is_integer();
    };
    return std::all_of(f_.begin(), f_.end(), integral) &&
           std::all_of(g_.begin(), g_.end(), integral);
  }

  HomogeneousField swapped() const {
    auto swap_all = [](const std::vector<SignedPowerTerm>& terms) {
      std::vector<SignedPowerTerm> out;
      out.reserve(terms.size());
      for (const auto& t : terms) out.push_back(t.swapped());
      return out;
    };
    return HomogeneousField(alpha_, swap_all(g_), swap_all(f_));
  }

  bool operator==(const HomogeneousField&) const = default;

 private:
  Rational alpha_;
  std::vector<SignedPowerTerm> f_;
  std::vector<SignedPowerTerm> g_;
};

inline Vec2 eval_field(const HomogeneousField& field, double x, double y) {
  Vec2 v;
  for (const auto& t : field.f_terms()) v.x += eval_term(t, x, y);
  for (const auto& t : field.g_terms()) v.y += eval_term(t, x, y);
  return v;
}

// Radial and angular parts of X on the unit circle:
//   F = f cos + g sin,  G = g cos - f sin.
struct AngularComponents {
  double radial = 0.0;
  double angular = 0.0;
};

inline AngularComponents angular_components(const HomogeneousField& field, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Vec2 v = eval_field(field, c, s);
  return {v.x * c + v.y * s, v.y * c - v.x * s};
}

// max |X(rx, ry) - r^alpha X(x, y)|
inline double homogeneity_residual(const HomogeneousField& field, double r, double x, double y) {
  if (!(r > 0.0)) throw InvalidArgument("homogeneity_residual needs r > 0");
  const Vec2 scaled = eval_field(field, r * x, r * y);
  const Vec2 base = eval_field(field, x, y);
  const double ra = std::pow(r, field.alpha().to_double());
  return std::max(std::abs(scaled.x - ra * base.x), std::abs(scaled.y - ra * base.y));
}

// ccw: unperturbed part (-y, x). cw: (y, -x).
enum class Orientation { ccw, cw };

// (x', y') = L(x, y) + epsilon * sum_j b_j X_j(x, y), L the linear center
// selected by the orientation.
class PerturbationSpec {
 public:
  PerturbationSpec(std::vector<HomogeneousField> fields, std::vector<double> b, double epsilon,
                   Orientation orientation = Orientation::ccw)
      : fields_(std::move(fields)), b_(std::move(b)), epsilon_(epsilon), orientation_(orientation) {
    if (fields_.size() != b_.size()) {
      throw InvalidArgument("spec has " + std::to_string(fields_.size()) + " fields but " +
                            std::to_string(b_.size()) + " coefficients");
    }
    for (std::size_t j = 1; j < fields_.size(); ++j) {
      if (!(fields_[j - 1].alpha() < fields_[j].alpha())) {
        throw InvalidArgument("field degrees must strictly increase (field " + std::to_string(j) +
                              ")");
      }
    }
    if (!std::isfinite(epsilon_)) throw InvalidArgument("epsilon must be finite");
    for (double v : b_) {
      if (!std::isfinite(v)) throw InvalidArgument("coefficients must be finite");
    }
  }

  const std::vector<HomogeneousField>& fields() const { return fields_; }
  const std::vector<double>& b() const { return b_; }
  double epsilon() const { return epsilon_; }
  Orientation orientation() const { return orientation_; }
  std::size_t size() const { return fields_.size(); }

  bool is_polynomial() const {
    return std::all_of(fields_.begin(), fields_.end(),
                       [](const HomogeneousField& f) { return f.is_polynomial(); });
  }

  PerturbationSpec with_epsilon(double epsilon) const {
    return PerturbationSpec(fields_, b_, epsilon, orientation_);
  }
  PerturbationSpec with_b(std::vector<double> b) const {
    return PerturbationSpec(fields_, std::move(b), epsilon_, orientation_);
  }

  bool operator==(const PerturbationSpec&) const = default;

 private:
  std::vector<HomogeneousField> fields_;
  std::vector<double> b_;
  double epsilon_;
  Orientation orientation_;
};

// Full vector field of the spec at (x, y), linear part included.
inline Vec2 eval_spec(const PerturbationSpec& spec, double x, double y) {
  Vec2 v = spec.orientation() == Orientation::ccw ? Vec2{-y, x} : Vec2{y, -x};
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const Vec2 w = eval_field(spec.fields()[j], x, y);
    v.x += spec.epsilon() * spec.b()[j] * w.x;
    v.y += spec.epsilon() * spec.b()[j] * w.y;
  }
  return v;
}

// Rewrites a cw spec in the coordinates (u, v) = (y, x), where the center
// becomes (-v, u). Orbits are mirrored across the diagonal, so cycle counts
// and radii are unchanged.
inline PerturbationSpec swap_orientation(const PerturbationSpec& spec) {
  if (spec.orientation() != Orientation::cw) {
    throw InvalidArgument("swap_orientation expects a cw spec");
  }
  std::vector<HomogeneousField> fields;
  fields.reserve(spec.size());
  for (const auto& f : spec.fields()) fields.push_back(f.swapped());
  return PerturbationSpec(std::move(fields), spec.b(), spec.epsilon(), Orientation::ccw);
}

// Returns the spec unchanged when already ccw.
inline PerturbationSpec normalized(const PerturbationSpec& spec) {
  return spec.orientation() == Orientation::ccw ? spec : swap_orientation(spec);
}

}  // namespace avgdeg
