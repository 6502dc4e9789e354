#pragma once

// Adaptive composite Gauss-Legendre quadrature with fixed break points.

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "avgdeg/errors.hpp"

namespace avgdeg {

template <int N>
struct GaussLegendreRule {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};
};

// Nodes and weights on [-1, 1] by Newton iteration on P_N.
template <int N>
const GaussLegendreRule<N>& gauss_legendre() {
  static const GaussLegendreRule<N> rule = [] {
    GaussLegendreRule<N> r;
    for (int i = 0; i < N; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= N; ++k) {
          const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = N * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      r.nodes[i] = x;
      r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

template <class F>
double gauss_legendre_15(const F& f, double a, double b) {
  const auto& rule = gauss_legendre<15>();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 15; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

struct QuadratureOptions {
  double tol = 1e-12;
  int max_depth = 60;
  // Total panel evaluations over all branches; the depth cap alone still
  // allows 2^depth panels when the tolerance is hopeless.
  long max_panels = 200000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
  long evaluated = 0;  // including panels later refined
};

namespace detail {

template <class F>
void adapt(const F& f, double a, double b, double whole, double tol, int depth,
           const QuadratureOptions& opts, QuadratureResult& out) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_legendre_15(f, a, mid);
  const double right = gauss_legendre_15(f, mid, b);
  out.evaluated += 2;
  if (!std::isfinite(left) || !std::isfinite(right)) {
    throw QuadratureError("integrand is not finite near [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
  }
  if (out.evaluated > opts.max_panels) {
    throw QuadratureError("quadrature exceeded " + std::to_string(opts.max_panels) +
                          " panels without meeting the tolerance");
  }
  const double err = std::abs(left + right - whole);
  if (err <= tol || mid <= a || mid >= b) {
    out.value += left + right;
    out.error_estimate += err;
    out.panels += 2;
    return;
  }
  if (depth >= opts.max_depth) {
    throw QuadratureError("quadrature exceeded subdivision depth " +
                          std::to_string(opts.max_depth) + " near [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
  }
  adapt(f, a, mid, left, 0.5 * tol, depth + 1, opts, out);
  adapt(f, mid, b, right, 0.5 * tol, depth + 1, opts, out);
}

}  // namespace detail

// Integrates f over consecutive break points; each panel is refined by
// halving until the two-half estimate agrees with the parent to its share
// of the tolerance (proportional to panel width).
template <class F>
QuadratureResult integrate_panels(const F& f, std::span<const double> breaks,
                                  const QuadratureOptions& opts = {}) {
  if (!(opts.tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  if (breaks.size() < 2) throw InvalidArgument("need at least two break points");
  QuadratureResult out;
  const double total = breaks.back() - breaks.front();
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    const double share = opts.tol * (b - a) / total;
    detail::adapt(f, a, b, gauss_legendre_15(f, a, b), share, 0, opts, out);
  }
  return out;
}

// Break points at the axis angles, where |cos|^a and |sin|^a lose smoothness.
inline constexpr std::array<double, 5> kAxisBreaks = {
    0.0, 0.5 * std::numbers::pi, std::numbers::pi, 1.5 * std::numbers::pi, 2.0 * std::numbers::pi};

template <class F>
QuadratureResult integrate_circle(const F& f, const QuadratureOptions& opts = {}) {
  return integrate_panels(f, std::span<const double>(kAxisBreaks), opts);
}

}  // namespace avgdeg
