#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "avgdeg/field_algebra.hpp"
#include "avgdeg/presets.hpp"

using namespace avgdeg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using Terms = std::vector<SignedPowerTerm>;

namespace {

const Rational kHalf(1, 2), kThird(1, 3);

SignedPowerTerm make(double c, Rational px, bool sx, Rational py, bool sy) {
  return SignedPowerTerm(c, px, sx, py, sy);
}

// A random field of degree num/den built from a few terms with random flags.
HomogeneousField random_field(std::mt19937& rng, Rational alpha) {
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_int_distribution<int> split(0, 4);
  std::bernoulli_distribution flag(0.5);
  auto one = [&] {
    // x exponent k/4 of alpha, y the rest
    const Rational px = Rational(alpha.num() * split(rng), alpha.den() * 4);
    const Rational py = alpha - px;
    return make(coeff(rng), px, !px.is_zero() && flag(rng), py, !py.is_zero() && flag(rng));
  };
  return HomogeneousField(alpha, Terms{one(), one()}, Terms{one(), one(), one()});
}

}  // namespace

TEST_CASE("Rational normalizes and parses", "[rational]") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational::parse("6/4").str() == "3/2");
  CHECK(Rational::parse("5").str() == "5");
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational::parse("1/0"), InvalidArgument);
  CHECK_THROWS_AS(Rational::parse("x"), InvalidArgument);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), InvalidArgument);
}

TEST_CASE("eval_term on worked values", "[field]") {
  CHECK(eval_term(make(1, kHalf, true, 0, false), -4, 7) == -2.0);
  CHECK(eval_term(make(3, 2, false, 1, true), 2, -1) == -12.0);
  CHECK_THAT(eval_term(make(1, kThird, true, 0, false), -8, 0), WithinAbs(-2.0, 1e-15));
}

TEST_CASE("eval_term degenerate conventions at zero", "[field]") {
  // 0^0 unsigned is 1; positive powers of 0 vanish; no NaN anywhere.
  CHECK(eval_term(make(2, 0, false, 0, false), 0, 0) == 2.0);
  CHECK(eval_term(make(2, kHalf, true, 0, false), 0, 5) == 0.0);
  CHECK(eval_term(make(2, kHalf, false, kHalf, true), 0, 0) == 0.0);
  CHECK(eval_term(make(1, 3, true, 0, false), -0.0, 1) == 0.0);
}

TEST_CASE("ordinary monomials carry the sign of odd powers", "[field]") {
  for (int n = 0; n <= 5; ++n) {
    const auto t = SignedPowerTerm::monomial(1.0, n, 0);
    CHECK(t.x_signed() == (n % 2 == 1));
    CHECK(eval_term(t, -1.5, 1.0) == std::pow(-1.5, n));
  }
}

TEST_CASE("constructor rejects discontinuous or negative terms", "[field]") {
  CHECK_THROWS_AS(make(1, 0, true, 1, false), InvalidArgument);
  CHECK_THROWS_AS(make(1, Rational(-1, 2), false, 0, false), InvalidArgument);
  CHECK_THROWS_AS(make(NAN, 1, false, 0, false), InvalidArgument);
  CHECK_THROWS_AS(HomogeneousField(1, Terms{make(1, 2, false, 0, false)}, Terms{}),
                  InvalidArgument);
}

TEST_CASE("eval_field examples", "[field]") {
  using T = SignedPowerTerm;
  const HomogeneousField identity(1, Terms{T::monomial(1, 1, 0)}, Terms{T::monomial(1, 0, 1)});
  CHECK(eval_field(identity, 3, -2) == Vec2{3, -2});

  const HomogeneousField capillary(kHalf, Terms{}, Terms{make(-std::sqrt(2.0), kHalf, true, 0, false)});
  const Vec2 v = eval_field(capillary, 2, 0);
  CHECK(v.x == 0.0);
  CHECK_THAT(v.y, WithinAbs(-2.0, 1e-15));

  const double c = 0.7;
  const HomogeneousField herd(Rational(3, 2), Terms{make(-1, kHalf, true, 1, true)},
                              Terms{make(c, kHalf, true, 1, true)});
  const Vec2 w = eval_field(herd, 1, 1);
  CHECK(w.x == -1.0);
  CHECK(w.y == c);
}

TEST_CASE("angular_components examples", "[field]") {
  using T = SignedPowerTerm;
  const HomogeneousField identity(1, Terms{T::monomial(1, 1, 0)}, Terms{T::monomial(1, 0, 1)});
  const auto a = angular_components(identity, std::numbers::pi / 3);
  CHECK_THAT(a.radial, WithinAbs(1.0, 1e-15));
  CHECK_THAT(a.angular, WithinAbs(0.0, 1e-15));

  const HomogeneousField rotation(1, Terms{T::monomial(-1, 0, 1)}, Terms{T::monomial(1, 1, 0)});
  for (double th : {0.0, 0.4, 2.0, 5.5}) {
    const auto r = angular_components(rotation, th);
    CHECK_THAT(r.radial, WithinAbs(0.0, 1e-15));
    CHECK_THAT(r.angular, WithinAbs(1.0, 1e-15));
  }

  const HomogeneousField surd(kHalf, Terms{make(1, kHalf, true, 0, false)}, Terms{});
  CHECK_THAT(angular_components(surd, std::numbers::pi).radial, WithinAbs(1.0, 1e-15));
}

TEST_CASE("homogeneity residual examples", "[field]") {
  using T = SignedPowerTerm;
  const HomogeneousField sq(2, Terms{T::monomial(1, 2, 0)}, Terms{});
  CHECK(homogeneity_residual(sq, 3, 1, 0) == 0.0);
  const HomogeneousField surd(kHalf, Terms{make(1, kHalf, true, 0, false)}, Terms{});
  CHECK(homogeneity_residual(surd, 4, 1, 0) == 0.0);
  CHECK_THROWS_AS(homogeneity_residual(sq, 0.0, 1, 1), InvalidArgument);
}

TEST_CASE("property: homogeneity holds for random fields", "[field][property]") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0), lr(-2.0, 2.0);
  const Rational alphas[] = {0, kThird, kHalf, Rational(1), Rational(3, 2), Rational(2),
                             Rational(5, 3), Rational(3)};
  for (const Rational& alpha : alphas) {
    const HomogeneousField f = random_field(rng, alpha);
    for (int n = 0; n < 1000; ++n) {
      const double r = std::exp(lr(rng)), x = u(rng), y = u(rng);
      const Vec2 v = eval_field(f, x, y);
      const double scale = std::pow(r, alpha.to_double()) * (1.0 + std::hypot(v.x, v.y));
      REQUIRE(homogeneity_residual(f, r, x, y) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("property: signed powers are continuous across the axes", "[field][property]") {
  const Rational exps[] = {kThird, kHalf, Rational(2, 3), Rational(1), Rational(3, 2), Rational(2)};
  for (const Rational& a : exps) {
    for (bool s : {false, true}) {
      const double p0 = signed_power(0.0, a, s);
      for (double delta : {1e-2, 1e-4, 1e-8}) {
        const double bound = std::pow(delta, std::min(a.to_double(), 1.0));
        CHECK(std::abs(signed_power(delta, a, s) - p0) <= bound);
        CHECK(std::abs(signed_power(-delta, a, s) - p0) <= bound);
      }
    }
  }
}

TEST_CASE("property: angular components are 2pi periodic", "[field][property]") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> th(0.0, 2.0 * std::numbers::pi);
  // t + 2 pi is rounded, so near an axis a Hoelder factor |cos|^(1/2)
  // amplifies that rounding; fractional fields are probed off the axes.
  for (const Rational& alpha : {Rational(1), Rational(2), Rational(3), kThird, kHalf}) {
    const HomogeneousField f = random_field(rng, alpha);
    double mass = 0.0;  // bounds |F|, |G| and their angle derivatives / alpha
    for (const auto& t : f.f_terms()) mass += std::abs(t.coeff());
    for (const auto& t : f.g_terms()) mass += std::abs(t.coeff());
    const double tol = 1e-14 * std::max(1.0, mass);
    for (int n = 0; n < 200; ++n) {
      const double t = th(rng);
      if (!alpha.is_integer() && std::min(std::abs(std::cos(t)), std::abs(std::sin(t))) < 0.05) {
        continue;
      }
      const auto a = angular_components(f, t);
      const auto b = angular_components(f, t + 2.0 * std::numbers::pi);
      CHECK(std::abs(a.radial - b.radial) <= tol);
      CHECK(std::abs(a.angular - b.angular) <= tol);
    }
  }
}

TEST_CASE("PerturbationSpec validation", "[field]") {
  using T = SignedPowerTerm;
  const HomogeneousField lin(1, Terms{T::monomial(1, 1, 0)}, Terms{});
  const HomogeneousField cub(3, Terms{T::monomial(1, 3, 0)}, Terms{});
  CHECK_NOTHROW(PerturbationSpec({lin, cub}, {1, 2}, 0.1));
  CHECK_THROWS_AS(PerturbationSpec({lin, cub}, {1}, 0.1), InvalidArgument);
  CHECK_THROWS_AS(PerturbationSpec({cub, lin}, {1, 1}, 0.1), InvalidArgument);
  CHECK_THROWS_AS(PerturbationSpec({lin, lin}, {1, 1}, 0.1), InvalidArgument);
}

TEST_CASE("swap_orientation on a Lienard-type spec", "[field]") {
  using T = SignedPowerTerm;
  // (x', y') = (y, -x + eps y^3) becomes (u', v') = (-v + eps u^3, u).
  const HomogeneousField g(3, Terms{}, Terms{T::monomial(1, 0, 3)});
  const PerturbationSpec cw({g}, {1.0}, 0.1, Orientation::cw);
  const PerturbationSpec ccw = swap_orientation(cw);
  CHECK(ccw.orientation() == Orientation::ccw);
  const HomogeneousField& f = ccw.fields()[0];
  REQUIRE(f.f_terms().size() == 1);
  CHECK(f.g_terms().empty());
  CHECK(f.f_terms()[0] == T::monomial(1, 3, 0));

  // orbits mirror across the diagonal: the field at (u, v) is the mirror
  // image of the original at (v, u)
  for (auto [u, v] : {std::pair{0.3, -1.2}, std::pair{-2.0, 0.5}}) {
    const Vec2 a = eval_spec(cw, v, u);
    const Vec2 b = eval_spec(ccw, u, v);
    CHECK_THAT(b.x, WithinAbs(a.y, 1e-15));
    CHECK_THAT(b.y, WithinAbs(a.x, 1e-15));
  }
  CHECK_THROWS_AS(swap_orientation(ccw), InvalidArgument);
}

TEST_CASE("property: the coordinate swap is an involution", "[field][property]") {
  std::mt19937 rng(3);
  for (const Rational& a : {kThird, kHalf, Rational(1), Rational(5, 2)}) {
    const HomogeneousField f = random_field(rng, a);
    CHECK(f.swapped().swapped() == f);
  }
  const PerturbationSpec base = presets::sqrt_family();
  const PerturbationSpec as_cw(base.fields(), base.b(), base.epsilon(), Orientation::cw);
  const PerturbationSpec once = swap_orientation(as_cw);
  CHECK(once.fields() != base.fields());
  const PerturbationSpec again(once.fields(), once.b(), once.epsilon(), Orientation::cw);
  CHECK(swap_orientation(again).fields() == base.fields());
}

TEST_CASE("eval_spec includes the rotation", "[field]") {
  const PerturbationSpec spec = presets::sqrt_family().with_epsilon(0.0);
  const Vec2 v = eval_spec(spec, 0.3, -0.8);
  CHECK(v.x == 0.8);
  CHECK(v.y == 0.3);
}
