#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "avgdeg/flow_sim.hpp"
#include "avgdeg/presets.hpp"
#include "oracles.hpp"

using namespace avgdeg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using Terms = std::vector<SignedPowerTerm>;
using T = SignedPowerTerm;

namespace {

// (0, y) and (0, -y^3) around the ccw center: h(z) = z/2 - 3z^3/8.
PerturbationSpec vdp_type(double eps) {
  return PerturbationSpec({HomogeneousField(1, Terms{}, Terms{T::monomial(1, 0, 1)}),
                           HomogeneousField(3, Terms{}, Terms{T::monomial(-1, 0, 3)})},
                          {1.0, 1.0}, eps);
}

const double kVdpRoot = 2.0 / std::sqrt(3.0);

// First return to the positive x axis of the planar system, by Cartesian
// RK4 in time with linear interpolation at the crossing.
double cartesian_return(const PerturbationSpec& spec, double r0, double dt) {
  auto rhs = [&](double x, double y) { return eval_spec(spec, x, y); };
  double x = r0, y = 0.0;
  bool left_axis = false;
  for (long n = 0; n < 100000000L; ++n) {
    const Vec2 k1 = rhs(x, y);
    const Vec2 k2 = rhs(x + 0.5 * dt * k1.x, y + 0.5 * dt * k1.y);
    const Vec2 k3 = rhs(x + 0.5 * dt * k2.x, y + 0.5 * dt * k2.y);
    const Vec2 k4 = rhs(x + dt * k3.x, y + dt * k3.y);
    const double nx = x + dt * (k1.x + 2 * k2.x + 2 * k3.x + k4.x) / 6;
    const double ny = y + dt * (k1.y + 2 * k2.y + 2 * k3.y + k4.y) / 6;
    if (ny < 0) left_axis = true;
    if (left_axis && y < 0 && ny >= 0 && nx > 0) {
      const double s = -y / (ny - y);
      return x + s * (nx - x);
    }
    x = nx;
    y = ny;
  }
  return NAN;
}

}  // namespace

TEST_CASE("radial rhs examples", "[flow]") {
  CHECK(radial_rhs(vdp_type(0.0), 0.7, 1.3).value == 0.0);
  const auto r = radial_rhs(vdp_type(0.01), std::numbers::pi / 2, 1.0);
  CHECK_THAT(r.value, WithinAbs(0.0, 1e-16));
  CHECK(r.denominator > 0.0);

  // a strong clockwise push makes the angle stall
  const HomogeneousField rotation(1, Terms{T::monomial(-1, 0, 1)}, Terms{T::monomial(1, 1, 0)});
  const PerturbationSpec stall({rotation}, {-5.0}, 1.0);
  CHECK_THROWS_AS(radial_rhs(stall, 0.3, 1.0), FlowError);
  CHECK_THROWS_AS(return_map(stall, 1.0), FlowError);
}

TEST_CASE("radial rhs is the exact quotient", "[flow]") {
  // direct polar evaluation of the planar field
  const PerturbationSpec spec = presets::sqrt_family().with_epsilon(0.2);
  for (double th : {0.3, 1.9, 4.0}) {
    for (double r : {0.5, 2.0}) {
      const double x = r * std::cos(th), y = r * std::sin(th);
      const Vec2 v = eval_spec(spec, x, y);
      const double rdot = (x * v.x + y * v.y) / r;
      const double thdot = (x * v.y - y * v.x) / (r * r);
      CHECK_THAT(radial_rhs(spec, th, r).value, WithinRel(rdot / thdot, 1e-12));
    }
  }
}

TEST_CASE("return map with eps = 0 is the identity", "[flow][property]") {
  const PolarFlow flow(vdp_type(0.0));
  for (double r : {1e-3, 0.2, 1.0, 7.5, 900.0}) CHECK(std::abs(flow.map(r) - r) <= 1e-13 * r);
  const PolarFlow frac(presets::cbrt_family().with_epsilon(0.0));
  for (double r : {0.01, 1.0, 50.0}) CHECK(frac.map(r) == r);
}

TEST_CASE("return map follows the averaged drift", "[flow]") {
  const auto spec = vdp_type(0.01);
  CHECK(return_map(spec, 0.5).r1 > 0.5);
  CHECK(return_map(spec, 2.0).r1 < 2.0);
  const auto s = return_map(spec, 1.0);
  CHECK(s.min_theta_speed > 0.0);
  CHECK(s.steps == 4096);
  CHECK(s.error_estimate < 1e-10);
}

TEST_CASE("return map agrees with a Cartesian integration", "[flow]") {
  for (const auto& spec : {presets::sqrt_family().with_epsilon(0.05), vdp_type(0.05)}) {
    for (double r0 : {0.7, 1.5}) {
      const double polar = return_map(spec, r0).r1;
      CHECK_THAT(polar, WithinRel(cartesian_return(spec, r0, 2e-4), 1e-6));
    }
  }
}

TEST_CASE("return map option validation and guard", "[flow]") {
  CHECK_THROWS_AS(return_map(vdp_type(0.01), 1.0, FlowOptions{100, 1e-4, 1e4, true}), InvalidArgument);
  CHECK_THROWS_AS(return_map(vdp_type(0.01), -1.0), InvalidArgument);
  CHECK_THROWS_AS(return_map(vdp_type(0.01), 1.0, FlowOptions{4096, 2.0, 1e4, true}), FlowError);
  const PerturbationSpec cw(vdp_type(0.01).fields(), {1, 1}, 0.01, Orientation::cw);
  CHECK_THROWS_AS(return_map(cw, 1.0), InvalidArgument);
}

TEST_CASE("property: step halving shows fourth-order convergence", "[flow][property]") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> rr(0.3, 3.0), ee(0.005, 0.05);
  const std::vector<PerturbationSpec> specs{presets::sqrt_family(), presets::cbrt_family(),
                                            vdp_type(0.01)};
  int probes = 0, violations = 0;
  for (int n = 0; n < 120; ++n) {
    const auto spec = specs[n % specs.size()].with_epsilon(ee(rng));
    const double r = rr(rng);
    const double p2 = PolarFlow(spec, {2048, 1e-4, 1e4, false}).map(r);
    const double p4 = PolarFlow(spec, {4096, 1e-4, 1e4, false}).map(r);
    const double p8 = PolarFlow(spec, {8192, 1e-4, 1e4, false}).map(r);
    ++probes;
    // differences at rounding level carry no order information
    const double floor = 64 * std::numeric_limits<double>::epsilon() * r;
    if (std::abs(p4 - p8) > 16.0 * std::abs(p2 - p4) + floor) ++violations;
  }
  CHECK(violations * 100 < probes);
}

TEST_CASE("van der Pol type fixed point", "[flow]") {
  const auto rep = find_fixed_points(vdp_type(0.01), {0.3, 3.0});
  REQUIRE(rep.cycles.size() == 1);
  CHECK(rep.failures.empty());
  const auto& c = rep.cycles[0];
  CHECK(std::abs(c.r_star - kVdpRoot) <= 2 * 0.01);
  CHECK(c.residual <= 1e-10);
  CHECK(c.hyperbolic);
  CHECK(std::abs(c.map_derivative - 1.0) > 10 * 1e-10);
  CHECK(c.map_derivative < 1.0);  // attracting, as h'(z*) < 0
  CHECK(c.epsilon == 0.01);
  CHECK(c.isolating.lo < c.r_star);
  CHECK(c.r_star < c.isolating.hi);
  CHECK_THROWS_AS(find_fixed_points(vdp_type(0.0), {0.3, 3.0}), InvalidArgument);
}

TEST_CASE("synthesized cube-root family has two fixed points", "[flow]") {
  const auto base = presets::cbrt_family(presets::CbrtFamilyParams{}, 0.005);
  const std::vector<double> targets{1.0, 4.0};
  const auto spec = realize_coefficients(base, synthesize_coefficients(active_exponents(base), targets));
  const auto rep = find_fixed_points(spec, {0.4, 6.0});
  REQUIRE(rep.cycles.size() == 2);
  CHECK_THAT(rep.cycles[0].r_star, WithinRel(1.0, 0.05));
  CHECK_THAT(rep.cycles[1].r_star, WithinRel(4.0, 0.05));
}

TEST_CASE("flow failures are reported per grid point", "[flow]") {
  // outer part of the bracket escapes the guard interval
  const auto rep = find_fixed_points(vdp_type(0.5), {0.3, 50.0}, 1e-10,
                                     FixedPointOptions{60, {4096, 1e-4, 20.0, false}});
  CHECK_FALSE(rep.failures.empty());
  REQUIRE(rep.cycles.size() == 1);
}

TEST_CASE("continuation toward the averaged root", "[flow]") {
  const std::vector<double> eps{0.02, 0.01, 0.005};
  const auto table = continuation_check(vdp_type(1.0), eps, kVdpRoot, {0.3, 3.0});
  REQUIRE(table.rows.size() == 3);
  CHECK(table.non_increasing);
  for (const auto& row : table.rows) CHECK(row.gap <= 2 * row.epsilon);

  const std::vector<double> one{0.01};
  CHECK(continuation_check(vdp_type(1.0), one, kVdpRoot, {0.3, 3.0}).rows.size() == 1);
  CHECK_THROWS_AS(continuation_check(vdp_type(1.0), one, 20.0, {0.3, 3.0}), ContinuationError);
  const std::vector<double> ascending{0.005, 0.01};
  CHECK_THROWS_AS(continuation_check(vdp_type(1.0), ascending, kVdpRoot, {0.3, 3.0}), InvalidArgument);
}

TEST_CASE("property: drift sign matches the averaged function", "[flow][property]") {
  const std::vector<PerturbationSpec> specs{presets::sqrt_family(), vdp_type(0.01),
                                            presets::preset("lienard5").spec->with_epsilon(0.01)};
  for (const auto& spec : specs) {
    const auto h = averaged_function(spec);
    const auto roots = positive_roots(h, {0.05, 3.0}).roots;
    const PolarFlow flow(spec);
    for (double r : detail::log_grid(0.1, 1.75, 40)) {
      bool near = false;
      for (const auto& z : roots) near = near || std::abs(r - z.z) < 0.1 * z.z;
      if (near) continue;
      CHECK(sign_of(flow.map(r) - r) == sign_of(spec.epsilon() * h(r)));
    }
  }
}

TEST_CASE("property: one fixed point near each simple averaged root", "[flow][property]") {
  for (const char* name : {"example1", "example2", "vdp", "lienard5", "lienard6"}) {
    auto p = presets::preset(name);
    PerturbationSpec spec = *p.spec;
    if (!p.targets.empty()) {
      spec = realize_coefficients(spec, synthesize_coefficients(active_exponents(spec), p.targets));
    }
    spec = spec.with_epsilon(0.005);
    const auto roots = positive_roots(averaged_function(spec), {0.05, 10.0}).roots;
    const auto fps = find_fixed_points(spec, p.bracket).cycles;
    INFO(name);
    REQUIRE_FALSE(roots.empty());
    for (const auto& z : roots) {
      REQUIRE(z.interval_degree != 0);
      const auto hits = std::count_if(fps.begin(), fps.end(), [&](const LimitCycleCertificate& c) {
        return std::abs(c.r_star - z.z) < 0.2 * z.z;
      });
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("return map scan skips failing points", "[flow]") {
  const auto samples = scan_return_map(vdp_type(0.5), {0.3, 50.0}, 30, {4096, 1e-4, 20.0, false});
  CHECK_FALSE(samples.empty());
  CHECK(samples.size() < 30);
  for (const auto& s : samples) CHECK(s.r1 > 0.0);
}

TEST_CASE("rk4_scalar integrates an exponential", "[flow]") {
  const double y = rk4_scalar([](double, double v) { return v; }, 0.0, 1.0, 1.0, 1000);
  CHECK_THAT(y, WithinRel(std::exp(1.0), 1e-12));
}
