#pragma once

// Ready-made systems: the square-root and cube-root families with a linear
// part, the van der Pol / Liénard constructions, and the motivating models
// (capillary rise, herd predation, square-root SIR) in decomposed form.

#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avgdeg/averaging.hpp"
#include "avgdeg/errors.hpp"
#include "avgdeg/field_algebra.hpp"
#include "avgdeg/monomial_classifier.hpp"

namespace avgdeg::presets {

using Terms = std::vector<SignedPowerTerm>;

// sgn(x)|x|^e as a term (e > 0)
inline SignedPowerTerm sx(double c, Rational e) { return {c, e, true, Rational(0), false}; }
inline SignedPowerTerm sy(double c, Rational e) { return {c, Rational(0), false, e, true}; }

inline HomogeneousField constant_field(double s1, double s2) {
  return {Rational(0), Terms{SignedPowerTerm::monomial(s1, 0, 0)},
          Terms{SignedPowerTerm::monomial(s2, 0, 0)}};
}

// (m11 x + m12 y, m21 x + m22 y)
inline HomogeneousField linear_field(double m11, double m12, double m21, double m22) {
  using T = SignedPowerTerm;
  return {Rational(1), Terms{T::monomial(m11, 1, 0), T::monomial(m12, 0, 1)},
          Terms{T::monomial(m21, 1, 0), T::monomial(m22, 0, 1)}};
}

struct Matrix2 {
  double m11, m12, m21, m22;
};

// (s1, s2) + Q (surd x, surd y) + P (x, y), surd u = sgn(u) sqrt|u|.
// Degrees 0, 1/2, 1.
struct SqrtFamilyParams {
  double s1 = 0.2, s2 = -0.1;
  Matrix2 q{0.6, 0.3, -0.2, 0.4};
  Matrix2 p{-0.7, 0.5, -0.4, -0.3};
};

inline PerturbationSpec sqrt_family(const SqrtFamilyParams& prm = {}, double epsilon = 0.01,
                                    std::vector<double> b = {1.0, 1.0, 1.0}) {
  const Rational half(1, 2);
  std::vector<HomogeneousField> fields{
      constant_field(prm.s1, prm.s2),
      HomogeneousField(half, Terms{sx(prm.q.m11, half), sy(prm.q.m12, half)},
                       Terms{sx(prm.q.m21, half), sy(prm.q.m22, half)}),
      linear_field(prm.p.m11, prm.p.m12, prm.p.m21, prm.p.m22)};
  return {std::move(fields), std::move(b), epsilon, Orientation::ccw};
}

// (s1, s2) + P (x, y) + Q (cbrt x, surd y). Degrees 0, 1/3, 1/2, 1.
struct CbrtFamilyParams {
  double s1 = 0.1, s2 = 0.2;
  // Cross terms in q leave every I_j unchanged but feed a large
  // second-order drift, so they are off by default.
  Matrix2 q{1.0, 0.0, 0.0, 1.0};
  Matrix2 p{0.5, -0.2, 0.3, 0.5};
};

inline PerturbationSpec cbrt_family(const CbrtFamilyParams& prm = {}, double epsilon = 0.005,
                                    std::vector<double> b = {1.0, 1.0, 1.0, 1.0}) {
  const Rational third(1, 3), half(1, 2);
  std::vector<HomogeneousField> fields{
      constant_field(prm.s1, prm.s2),
      HomogeneousField(third, Terms{sx(prm.q.m11, third)}, Terms{sx(prm.q.m21, third)}),
      HomogeneousField(half, Terms{sy(prm.q.m12, half)}, Terms{sy(prm.q.m22, half)}),
      linear_field(prm.p.m11, prm.p.m12, prm.p.m21, prm.p.m22)};
  return {std::move(fields), std::move(b), epsilon, Orientation::ccw};
}

// x'' + x = eps (x' - x'^3) written as (y, -x + eps (y - y^3)), normalized.
inline PerturbationSpec van_der_pol(double epsilon = 0.01) {
  const double a[] = {1.0, -1.0};
  return lienard_family(4, a, epsilon);
}

// Evenly spaced target radii for the m-monomial Liénard construction.
inline std::vector<double> lienard_targets(int m) {
  if (m < 4) throw InvalidArgument("lienard targets need m >= 4");
  const int n = m - 3;
  if (n == 1) return {2.0 / std::sqrt(3.0)};
  std::vector<double> t;
  for (int i = 1; i <= n; ++i) t.push_back(1.6 * i / n);
  return t;
}

// Liénard system with coefficients synthesized for the given radii.
inline PerturbationSpec lienard_with_targets(int m, std::span<const double> targets,
                                             double epsilon) {
  const std::vector<double> ones(static_cast<std::size_t>(m - 2), 1.0);
  const PerturbationSpec base = lienard_family(m, ones, epsilon);
  const auto betas = active_exponents(base);
  const auto c = synthesize_coefficients(betas, targets);
  return realize_coefficients(base, c);
}

// Motivating models. They are not perturbations of a center; they are
// shipped decomposed into homogeneous parts (eps = 1, all b = 1) for
// evaluation and integral bookkeeping only.

// x' = y,  y' = 1 - a y - sqrt(2x)
inline PerturbationSpec capillary(double a = 0.5) {
  const Rational half(1, 2);
  std::vector<HomogeneousField> fields{
      HomogeneousField(Rational(0), Terms{}, Terms{SignedPowerTerm::monomial(1.0, 0, 0)}),
      HomogeneousField(half, Terms{}, Terms{sx(-std::sqrt(2.0), half)}),
      linear_field(0.0, 1.0, 0.0, -a)};
  return {std::move(fields), {1.0, 1.0, 1.0}, 1.0, Orientation::ccw};
}

// x' = x(1 - x) - y sqrt x,  y' = -x y + c y sqrt x
inline PerturbationSpec herd(double c = 0.5) {
  using T = SignedPowerTerm;
  const Rational half(1, 2), three_halves(3, 2);
  std::vector<HomogeneousField> fields{
      HomogeneousField(Rational(1), Terms{T::monomial(1.0, 1, 0)}, Terms{}),
      HomogeneousField(three_halves, Terms{T(-1.0, half, true, Rational(1), true)},
                       Terms{T(c, half, true, Rational(1), true)}),
      HomogeneousField(Rational(2), Terms{T::monomial(-1.0, 2, 0)}, Terms{T::monomial(-1.0, 1, 1)})};
  return {std::move(fields), {1.0, 1.0, 1.0}, 1.0, Orientation::ccw};
}

// S' = -beta sqrt(S I),  I' = beta sqrt(S I) - gamma sqrt I
inline PerturbationSpec sir(double beta = 0.5, double gamma = 0.2) {
  using T = SignedPowerTerm;
  const Rational half(1, 2);
  std::vector<HomogeneousField> fields{
      HomogeneousField(half, Terms{}, Terms{sy(-gamma, half)}),
      HomogeneousField(Rational(1), Terms{T(-beta, half, true, half, true)},
                       Terms{T(beta, half, true, half, true)})};
  return {std::move(fields), {1.0, 1.0}, 1.0, Orientation::ccw};
}

struct Preset {
  std::string name;
  std::optional<PerturbationSpec> spec;
  std::optional<MonomialSystem> monomial;
  // What the system is expected to show; empty for motivating models.
  std::string expected;
  std::optional<int> lower_bound;
  std::vector<double> targets;
  std::vector<double> eps_list;
  Bracket bracket;
};

inline std::vector<std::string> preset_names() {
  return {"example1", "example2", "vdp",  "lienard5", "lienard6",
          "lienard7", "capillary", "herd", "sir",      "center"};
}

inline Preset preset(const std::string& name) {
  Preset p;
  p.name = name;
  if (name == "example1") {
    p.spec = sqrt_family();
    p.expected = "one limit cycle (I0 = 0, I1 and I2 nonzero)";
    p.lower_bound = 1;
    p.eps_list = {0.01};
    p.bracket = {0.3, 4.0};
  } else if (name == "example2") {
    p.spec = cbrt_family();
    p.expected = "two limit cycles (I0 = 0, I1, I2, I3 nonzero)";
    p.lower_bound = 2;
    p.targets = {1.0, 4.0};
    p.eps_list = {0.01, 0.005};
    p.bracket = {0.4, 6.0};
  } else if (name == "vdp") {
    p.spec = van_der_pol(0.01);
    p.expected = "one limit cycle near radius 2/sqrt(3)";
    p.lower_bound = 1;
    p.eps_list = {0.02, 0.01, 0.005};
    p.bracket = {0.3, 3.0};
  } else if (name.rfind("lienard", 0) == 0 && name.size() > 7) {
    int m = 0;
    const auto tail = std::string_view(name).substr(7);
    const auto [end, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), m);
    if (ec != std::errc() || end != tail.data() + tail.size()) {
      throw InvalidArgument("unknown preset '" + name + "'");
    }
    const auto targets = lienard_targets(m);
    p.spec = lienard_with_targets(m, targets, 0.005);
    p.expected = std::to_string(m - 3) + " limit cycles";
    p.lower_bound = m - 3;
    p.targets = targets;
    p.eps_list = {0.005};
    p.bracket = {0.5 * targets.front(), 1.15 * targets.back()};
  } else if (name == "capillary") {
    p.spec = capillary();
  } else if (name == "herd") {
    p.spec = herd();
  } else if (name == "sir") {
    p.spec = sir();
  } else if (name == "center") {
    p.monomial = MonomialSystem{-1.0, 1.0, 0.0, 0, 1, 1, 0, 0, 0};
    p.expected = "no limit cycles (integrable)";
  } else {
    throw InvalidArgument("unknown preset '" + name + "'");
  }
  return p;
}

}  // namespace avgdeg::presets
