#pragma once

// Poincare return map of the polar equation
//
//   dr/dθ = eps Σ b_j F_j(θ) r^α_j / (1 + eps Σ b_j G_j(θ) r^(α_j - 1))
//
// integrated over one revolution with fixed-step RK4. The step count is a
// multiple of 8 so both the full and the half-resolution grids contain the
// axis angles, where the right-hand side loses smoothness in θ.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "avgdeg/averaging.hpp"
#include "avgdeg/errors.hpp"
#include "avgdeg/field_algebra.hpp"

namespace avgdeg {

// Classical RK4 for a scalar ODE y' = f(t, y) on [t0, t1].
template <class F>
double rk4_scalar(const F& f, double t0, double t1, double y0, int steps) {
  const double h = (t1 - t0) / steps;
  double y = y0;
  for (int n = 0; n < steps; ++n) {
    const double t = t0 + n * h;
    const double k1 = f(t, y);
    const double k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = f(t + h, y + h * k3);
    y += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
  }
  return y;
}

struct RadialRhs {
  double value = 0.0;
  double denominator = 1.0;
};

struct FlowOptions {
  int steps = 4096;
  double r_min = 1e-4;
  double r_max = 1e4;
  bool richardson = true;
};

struct ReturnMapSample {
  double r0 = 0.0;
  double r1 = 0.0;
  double min_theta_speed = 0.0;
  int steps = 0;
  // |P_N - P_{N/2}| / 15, or NaN when not requested.
  double error_estimate = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline RadialRhs polar_quotient(std::span<const double> b, std::span<const double> alpha,
                                std::span<const double> radial, std::span<const double> angular,
                                double eps, double r) {
  const double lr = std::log(r);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    const double ra = std::exp(alpha[j] * lr);
    num += b[j] * radial[j] * ra;
    den += b[j] * angular[j] * ra;
  }
  RadialRhs out;
  out.denominator = 1.0 + eps * den / r;
  out.value = eps * num / out.denominator;
  return out;
}

inline void require_ccw(const PerturbationSpec& spec) {
  if (spec.orientation() != Orientation::ccw) {
    throw InvalidArgument("flow simulation expects a ccw spec; apply swap_orientation first");
  }
}

}  // namespace detail

// The exact polar quotient (no O(eps^2) truncation) at (θ, r).
inline RadialRhs radial_rhs(const PerturbationSpec& spec, double theta, double r) {
  if (!(r > 0.0)) throw InvalidArgument("radial_rhs needs r > 0");
  detail::require_ccw(spec);
  std::vector<double> alpha, radial, angular;
  for (const auto& f : spec.fields()) {
    const auto ac = angular_components(f, theta);
    alpha.push_back(f.alpha().to_double());
    radial.push_back(ac.radial);
    angular.push_back(ac.angular);
  }
  const RadialRhs out = detail::polar_quotient(spec.b(), alpha, radial, angular, spec.epsilon(), r);
  if (!(out.denominator > 0.0)) {
    throw FlowError("angular speed " + std::to_string(out.denominator) + " <= 0 at theta = " +
                    std::to_string(theta) + ", r = " + std::to_string(r));
  }
  return out;
}

// Precomputes F_j and G_j on the half-step angle grid so repeated return
// map evaluations only pay for the powers of r.
class PolarFlow {
 public:
  explicit PolarFlow(const PerturbationSpec& spec, FlowOptions opts = {})
      : opts_(opts), eps_(spec.epsilon()), b_(spec.b()) {
    detail::require_ccw(spec);
    if (opts_.steps < 8 || opts_.steps % 8 != 0) {
      throw InvalidArgument("step count must be a positive multiple of 8");
    }
    if (!(opts_.r_min > 0.0 && opts_.r_min < opts_.r_max)) {
      throw InvalidArgument("guard bounds must satisfy 0 < r_min < r_max");
    }
    const std::size_t nf = spec.size();
    const int nodes = 2 * opts_.steps + 1;
    for (const auto& f : spec.fields()) alpha_.push_back(f.alpha().to_double());
    radial_.resize(static_cast<std::size_t>(nodes) * nf);
    angular_.resize(radial_.size());
    for (int n = 0; n < nodes; ++n) {
      // Grid indices that land on axis angles get exact axis values.
      double c, s;
      axis_point(n, nodes - 1, c, s);
      for (std::size_t j = 0; j < nf; ++j) {
        const Vec2 v = eval_field(spec.fields()[j], c, s);
        radial_[n * nf + j] = v.x * c + v.y * s;
        angular_[n * nf + j] = v.y * c - v.x * s;
      }
    }
  }

  const FlowOptions& options() const { return opts_; }

  ReturnMapSample sample(double r0) const {
    if (!(r0 > 0.0)) throw InvalidArgument("return map needs r0 > 0");
    ReturnMapSample s;
    s.r0 = r0;
    s.steps = opts_.steps;
    s.min_theta_speed = std::numeric_limits<double>::infinity();
    s.r1 = integrate(r0, 1, s.min_theta_speed);
    if (opts_.richardson) {
      double ignored = std::numeric_limits<double>::infinity();
      const double coarse = integrate(r0, 2, ignored);
      s.error_estimate = std::abs(s.r1 - coarse) / 15.0;
    }
    return s;
  }

  double map(double r0) const {
    double ignored = std::numeric_limits<double>::infinity();
    return integrate(r0, 1, ignored);
  }

 private:
  static void axis_point(int n, int last, double& c, double& s) {
    // n / last is the fraction of a full turn.
    if (4 * n % last == 0) {
      static constexpr double cs[5][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 0}};
      const int q = 4 * n / last;
      c = cs[q][0];
      s = cs[q][1];
      return;
    }
    const double theta = 2.0 * std::numbers::pi * n / last;
    c = std::cos(theta);
    s = std::sin(theta);
  }

  RadialRhs eval(int node, double r, double theta_h) const {
    if (!(r > opts_.r_min && r < opts_.r_max)) {
      throw FlowError("radius " + std::to_string(r) + " left the guard interval (" +
                      std::to_string(opts_.r_min) + ", " + std::to_string(opts_.r_max) + ")");
    }
    const std::size_t nf = b_.size();
    const std::span<const double> radial(radial_.data() + node * nf, nf);
    const std::span<const double> angular(angular_.data() + node * nf, nf);
    const RadialRhs out = detail::polar_quotient(b_, alpha_, radial, angular, eps_, r);
    if (!(out.denominator > 0.0)) {
      throw FlowError("angular speed " + std::to_string(out.denominator) +
                      " <= 0 at theta = " + std::to_string(theta_h * node) +
                      ", r = " + std::to_string(r));
    }
    return out;
  }

  // stride 1: opts_.steps steps; stride 2: half as many.
  double integrate(double r0, int stride, double& min_speed) const {
    const int steps = opts_.steps / stride;
    const double h = 2.0 * std::numbers::pi / steps;
    const double theta_h = std::numbers::pi / opts_.steps;
    double r = r0;
    for (int n = 0; n < steps; ++n) {
      const int i0 = 2 * n * stride;
      const int i1 = i0 + stride;
      const int i2 = i0 + 2 * stride;
      const RadialRhs k1 = eval(i0, r, theta_h);
      const RadialRhs k2 = eval(i1, r + 0.5 * h * k1.value, theta_h);
      const RadialRhs k3 = eval(i1, r + 0.5 * h * k2.value, theta_h);
      const RadialRhs k4 = eval(i2, r + h * k3.value, theta_h);
      min_speed = std::min({min_speed, k1.denominator, k2.denominator, k3.denominator,
                            k4.denominator});
      r += h * (k1.value + 2.0 * k2.value + 2.0 * k3.value + k4.value) / 6.0;
    }
    if (!(r > opts_.r_min && r < opts_.r_max)) {
      throw FlowError("radius " + std::to_string(r) + " left the guard interval");
    }
    return r;
  }

  FlowOptions opts_;
  double eps_;
  std::vector<double> b_;
  std::vector<double> alpha_;
  std::vector<double> radial_;
  std::vector<double> angular_;
};

inline ReturnMapSample return_map(const PerturbationSpec& spec, double r0, FlowOptions opts = {}) {
  return PolarFlow(spec, opts).sample(r0);
}

struct LimitCycleCertificate {
  double r_star = 0.0;
  double residual = 0.0;
  double map_derivative = 0.0;
  bool hyperbolic = false;
  double epsilon = 0.0;
  Bracket isolating;
};

struct ScanFailure {
  double r = 0.0;
  std::string message;
};

struct FixedPointReport {
  std::vector<LimitCycleCertificate> cycles;
  std::vector<ScanFailure> failures;
};

struct FixedPointOptions {
  int grid_points = 200;
  FlowOptions flow{4096, 1e-4, 1e4, false};
};

// Fixed points of P on a log grid over the bracket. Grid points where the
// flow fails are reported and never bridged by a sign change.
inline FixedPointReport find_fixed_points(const PerturbationSpec& spec, Bracket bracket,
                                          double tol = 1e-10, FixedPointOptions opts = {}) {
  if (spec.epsilon() == 0.0) throw InvalidArgument("find_fixed_points needs eps != 0");
  if (!(bracket.lo > 0.0 && bracket.lo < bracket.hi)) {
    throw InvalidArgument("fixed point bracket must satisfy 0 < lo < hi");
  }
  if (!(tol > 0.0) || opts.grid_points < 2) {
    throw InvalidArgument("fixed point search needs tol > 0 and at least two grid points");
  }
  const PolarFlow flow(spec, opts.flow);
  auto displacement = [&](double r) { return flow.map(r) - r; };

  FixedPointReport report;
  const auto grid = detail::log_grid(bracket.lo, bracket.hi, opts.grid_points);
  std::vector<double> d(grid.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      d[i] = displacement(grid[i]);
    } catch (const FlowError& e) {
      report.failures.push_back({grid[i], e.what()});
    }
  }

  auto certify = [&](double r, double dr, Bracket cell) {
    LimitCycleCertificate cert;
    cert.r_star = r;
    cert.residual = std::abs(dr);
    const double step = 1e-5 * r;
    cert.map_derivative = (flow.map(r + step) - flow.map(r - step)) / (2.0 * step);
    cert.hyperbolic = std::abs(cert.map_derivative - 1.0) > 10.0 * tol;
    cert.epsilon = spec.epsilon();
    cert.isolating = cell;
    if (cert.residual > tol) {
      report.failures.push_back(
          {r, "bisection residual " + std::to_string(cert.residual) + " exceeds tolerance"});
      return;
    }
    report.cycles.push_back(cert);
  };

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::isnan(d[i])) continue;
    const Bracket cell{grid[i > 0 ? i - 1 : i], grid[i + 1 < grid.size() ? i + 1 : i]};
    try {
      if (d[i] == 0.0) {
        certify(grid[i], 0.0, cell);
        continue;
      }
      if (i + 1 >= grid.size() || std::isnan(d[i + 1]) || d[i + 1] == 0.0 ||
          sign_of(d[i]) == sign_of(d[i + 1])) {
        continue;
      }
      double lo = grid[i], hi = grid[i + 1], dlo = d[i];
      double mid = lo, dmid = dlo;
      for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        dmid = displacement(mid);
        if (dmid == 0.0) break;
        if ((dmid > 0.0) == (dlo > 0.0)) {
          lo = mid;
          dlo = dmid;
        } else {
          hi = mid;
        }
        if (hi - lo <= tol && std::abs(dmid) <= tol) break;
      }
      certify(mid, dmid, {grid[i], grid[i + 1]});
    } catch (const FlowError& e) {
      report.failures.push_back({grid[i], e.what()});
    }
  }
  return report;
}

struct ContinuationRow {
  double epsilon = 0.0;
  double r_star = 0.0;
  double gap = 0.0;
};

struct ContinuationTable {
  std::vector<ContinuationRow> rows;
  // gap_{i+1} <= 1.2 gap_i along the descending eps list
  bool non_increasing = true;
};

namespace detail {

inline void check_descending(std::span<const double> eps_list) {
  if (eps_list.empty()) throw InvalidArgument("continuation needs at least one eps");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw InvalidArgument("continuation eps values must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw InvalidArgument("continuation eps list must be strictly descending");
    }
  }
}

}  // namespace detail

// Builds the table from fixed-point reports already computed, one per eps
// (reports[i] belongs to the i-th entry of the descending eps list).
inline ContinuationTable continuation_from_reports(std::span<const FixedPointReport> reports,
                                                   std::span<const double> eps_list,
                                                   double predicted_root) {
  detail::check_descending(eps_list);
  if (!(predicted_root > 0.0)) throw InvalidArgument("predicted root must be positive");
  if (reports.size() != eps_list.size()) {
    throw InvalidArgument("continuation needs one fixed-point report per eps");
  }
  ContinuationTable table;
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    const LimitCycleCertificate* best = nullptr;
    for (const auto& c : reports[i].cycles) {
      if (!best || std::abs(c.r_star - predicted_root) < std::abs(best->r_star - predicted_root)) {
        best = &c;
      }
    }
    if (!best || std::abs(best->r_star - predicted_root) > 0.5 * predicted_root) {
      std::ostringstream msg;
      msg << "no fixed point within 0.5*" << predicted_root << " of the predicted root at eps = "
          << eps_list[i];
      throw ContinuationError(msg.str());
    }
    table.rows.push_back({eps_list[i], best->r_star, std::abs(best->r_star - predicted_root)});
  }
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (table.rows[i].gap > 1.2 * table.rows[i - 1].gap + 1e-12) table.non_increasing = false;
  }
  return table;
}

inline ContinuationTable continuation_check(const PerturbationSpec& spec_base,
                                            std::span<const double> eps_list,
                                            double predicted_root, Bracket bracket,
                                            double tol = 1e-10, FixedPointOptions opts = {}) {
  detail::check_descending(eps_list);
  if (!(predicted_root > 0.0)) throw InvalidArgument("predicted root must be positive");
  std::vector<FixedPointReport> reports;
  for (double eps : eps_list) {
    reports.push_back(find_fixed_points(spec_base.with_epsilon(eps), bracket, tol, opts));
  }
  return continuation_from_reports(reports, eps_list, predicted_root);
}

struct ScanSample {
  double r0 = 0.0;
  double r1 = 0.0;
};

// (r0, P(r0)) on a log grid, for plotting. Failed points are skipped.
inline std::vector<ScanSample> scan_return_map(const PerturbationSpec& spec, Bracket bracket,
                                               int points = 200, FlowOptions opts = {4096, 1e-4,
                                                                                      1e4, false}) {
  const PolarFlow flow(spec, opts);
  std::vector<ScanSample> out;
  for (double r : detail::log_grid(bracket.lo, bracket.hi, points)) {
    try {
      out.push_back({r, flow.map(r)});
    } catch (const FlowError&) {
    }
  }
  return out;
}

}  // namespace avgdeg
