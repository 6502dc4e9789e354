#pragma once

// First-order averaging for (-y, x) + eps * sum_j b_j X_j.
//
// In polar coordinates the radial drift averages to
//
//   h(z) = sum_j c_j z^beta_j,   c_j = b_j I_j / (2 pi),
//
// where I_j is the integral of the radial component of X_j over the unit
// circle and beta_j runs over the degrees with I_j != 0. Simple positive
// zeros of h persist as limit cycles for small eps.
//
// Normalization used throughout: the circulation of (P, Q) over the circle
// of squared radius k equals 2 pi * sqrt(k) * h(sqrt(k)). melnikov() returns
// sqrt(k) h(sqrt(k)); melnikov_line_integral() returns the raw circulation.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "avgdeg/errors.hpp"
#include "avgdeg/field_algebra.hpp"
#include "avgdeg/quadrature.hpp"

namespace avgdeg {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kDefaultIntegralTol = 1e-10;

// I = int_0^{2pi} F(theta) d theta, F the radial component of X.
inline double angular_integral(const HomogeneousField& field, double tol = kDefaultIntegralTol,
                               int max_depth = 60) {
  if (!(tol > 0.0)) throw InvalidArgument("angular_integral needs tol > 0");
  auto radial = [&](double theta) { return angular_components(field, theta).radial; };
  return integrate_circle(radial, QuadratureOptions{tol, max_depth}).value;
}

// |I| > 100 tol is nonzero, |I| < tol is structurally zero; anything in
// between is reported rather than guessed.
inline bool integral_is_nonzero(double integral, double tol) {
  const double a = std::abs(integral);
  if (a > 100.0 * tol) return true;
  if (a < tol) return false;
  throw AmbiguousIntegral("integral " + std::to_string(integral) +
                          " lies between tol and 100*tol; cannot decide whether it vanishes");
}

class AveragedFunction {
 public:
  AveragedFunction() = default;
  AveragedFunction(std::vector<double> exponents, std::vector<double> coefficients)
      : beta_(std::move(exponents)), c_(std::move(coefficients)) {
    if (beta_.size() != c_.size()) {
      throw InvalidArgument("averaged function needs one coefficient per exponent");
    }
    for (std::size_t j = 1; j < beta_.size(); ++j) {
      if (!(beta_[j - 1] < beta_[j])) {
        throw InvalidArgument("averaged function exponents must strictly increase");
      }
    }
  }

  const std::vector<double>& exponents() const { return beta_; }
  const std::vector<double>& coefficients() const { return c_; }
  std::size_t size() const { return beta_.size(); }
  bool empty() const { return beta_.empty(); }

  double operator()(double z) const {
    const double lz = std::log(z);
    double sum = 0.0;
    for (std::size_t j = 0; j < beta_.size(); ++j) sum += c_[j] * std::exp(beta_[j] * lz);
    return sum;
  }

  AveragedFunction scaled(double lambda) const {
    std::vector<double> c = c_;
    for (double& v : c) v *= lambda;
    return {beta_, std::move(c)};
  }

 private:
  std::vector<double> beta_;
  std::vector<double> c_;
};

inline std::vector<double> angular_integrals(const PerturbationSpec& spec,
                                             double tol = kDefaultIntegralTol) {
  std::vector<double> out;
  out.reserve(spec.size());
  for (const auto& f : spec.fields()) out.push_back(angular_integral(f, tol));
  return out;
}

struct AveragingSummary {
  std::vector<double> integrals;
  std::vector<bool> nonzero;
  AveragedFunction h;
  int lower_bound = 0;
};

inline AveragingSummary summarize(const PerturbationSpec& spec, double tol = kDefaultIntegralTol) {
  if (spec.orientation() != Orientation::ccw) {
    throw InvalidArgument("averaging expects a ccw spec; apply swap_orientation first");
  }
  AveragingSummary s;
  s.integrals = angular_integrals(spec, tol);
  std::vector<double> beta, c;
  int nonzero = 0;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const bool nz = integral_is_nonzero(s.integrals[j], tol);
    s.nonzero.push_back(nz);
    if (!nz) continue;
    ++nonzero;
    if (spec.b()[j] == 0.0) continue;
    beta.push_back(spec.fields()[j].alpha().to_double());
    c.push_back(spec.b()[j] * s.integrals[j] / kTwoPi);
  }
  s.h = AveragedFunction(std::move(beta), std::move(c));
  s.lower_bound = std::max(nonzero - 1, 0);
  return s;
}

inline AveragedFunction averaged_function(const PerturbationSpec& spec,
                                          double tol = kDefaultIntegralTol) {
  return summarize(spec, tol).h;
}

// Guaranteed cycle count for suitable b: (# nonzero I_j) - 1, at least 0.
inline int lower_bound_count(const PerturbationSpec& spec, double tol = kDefaultIntegralTol) {
  return summarize(normalized(spec), tol).lower_bound;
}

// Degrees of the fields with nonzero I_j, ascending: the exponents h can
// realize whatever b is chosen.
inline std::vector<double> active_exponents(const PerturbationSpec& spec,
                                            double tol = kDefaultIntegralTol) {
  const auto s = summarize(spec, tol);
  std::vector<double> out;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    if (s.nonzero[j]) out.push_back(spec.fields()[j].alpha().to_double());
  }
  return out;
}

// Picks b so that the averaged function has the given coefficients, one per
// active exponent. Fields with I_j = 0 keep their b_j.
inline PerturbationSpec realize_coefficients(const PerturbationSpec& spec,
                                             std::span<const double> coefficients,
                                             double tol = kDefaultIntegralTol) {
  const auto s = summarize(spec, tol);
  std::vector<double> b = spec.b();
  std::size_t idx = 0;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    if (!s.nonzero[j]) continue;
    if (idx >= coefficients.size()) break;
    b[j] = kTwoPi * coefficients[idx++] / s.integrals[j];
  }
  if (idx != coefficients.size() ||
      idx != static_cast<std::size_t>(std::count(s.nonzero.begin(), s.nonzero.end(), true))) {
    throw InvalidArgument("need exactly one coefficient per field with nonzero integral");
  }
  return spec.with_b(std::move(b));
}

// Sign changes in the coefficient sequence, zeros skipped.
inline int descartes_bound(const AveragedFunction& h) {
  int changes = 0;
  double last = 0.0;
  for (double c : h.coefficients()) {
    if (c == 0.0) continue;
    if (last != 0.0 && (c > 0.0) != (last > 0.0)) ++changes;
    last = c;
  }
  return changes;
}

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

struct Bracket {
  double lo = 1e-6;
  double hi = 1e3;
};

struct Root {
  double z = 0.0;
  int derivative_sign = 0;
  int interval_degree = 0;
  Bracket isolating;
};

struct RootReport {
  std::vector<Root> roots;
  int descartes_bound = 0;
  Bracket bracket;
};

// (sgn h(b) - sgn h(a)) / 2, the Brouwer degree of h on (a, b).
inline int interval_degree(const AveragedFunction& h, double a, double b,
                           double abs_tol = 1e-12) {
  if (!(a > 0.0 && a < b)) throw InvalidArgument("interval_degree needs 0 < a < b");
  const double ha = h(a);
  const double hb = h(b);
  if (std::abs(ha) <= abs_tol || std::abs(hb) <= abs_tol) {
    throw InvalidArgument("interval_degree: h vanishes at an interval endpoint");
  }
  return (sign_of(hb) - sign_of(ha)) / 2;
}

struct RootOptions {
  double abs_tol = 1e-10;
  int scan_points = 10000;
};

namespace detail {

template <class Fn>
double bisect(const Fn& fn, double lo, double hi, double flo) {
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return std::abs(fn(lo)) <= std::abs(fn(hi)) ? lo : hi;
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> z(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i) z[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
  z.front() = lo;
  z.back() = hi;
  return z;
}

}  // namespace detail

// Sign-change roots of h on a log-spaced grid, refined by bisection.
// Tangential (even multiplicity) zeros are not detected.
inline RootReport positive_roots(const AveragedFunction& h, Bracket bracket = {},
                                 RootOptions opts = {}) {
  if (!(bracket.lo > 0.0 && bracket.lo < bracket.hi)) {
    throw InvalidArgument("root bracket must satisfy 0 < lo < hi");
  }
  if (!(opts.abs_tol > 0.0) || opts.scan_points < 2) {
    throw InvalidArgument("root options need abs_tol > 0 and at least two scan points");
  }
  RootReport report;
  report.bracket = bracket;
  report.descartes_bound = descartes_bound(h);
  if (report.descartes_bound == 0) return report;

  const auto z = detail::log_grid(bracket.lo, bracket.hi, opts.scan_points);
  std::vector<double> v(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) v[i] = h(z[i]);

  auto annotate = [&](double root, double a, double b) {
    Root r;
    r.z = root;
    if (std::abs(h(root)) > opts.abs_tol) {
      throw RootFindingError("bisection could not reduce |h| below abs_tol near z = " +
                             std::to_string(root));
    }
    const double step = 1e-6 * root;
    r.derivative_sign = sign_of(h(root + step) - h(root - step));
    r.interval_degree = (sign_of(h(b)) - sign_of(h(a))) / 2;
    r.isolating = {a, b};
    report.roots.push_back(r);
  };

  std::size_t i = 0;
  while (i + 1 < z.size()) {
    if (v[i] == 0.0) {
      ++i;
      continue;
    }
    if (v[i + 1] == 0.0) {
      // Grid point hit the root exactly; look past it for the sign change.
      std::size_t k = i + 1;
      while (k < z.size() && v[k] == 0.0) ++k;
      if (k < z.size() && sign_of(v[k]) != sign_of(v[i]) && k == i + 2) {
        annotate(z[i + 1], z[i], z[k]);
      }
      i = k;
      continue;
    }
    if (sign_of(v[i]) != sign_of(v[i + 1])) {
      annotate(detail::bisect(h, z[i], z[i + 1], v[i]), z[i], z[i + 1]);
    }
    ++i;
  }
  if (static_cast<int>(report.roots.size()) > report.descartes_bound) {
    throw RootFindingError("found " + std::to_string(report.roots.size()) +
                           " roots, more than the Descartes bound " +
                           std::to_string(report.descartes_bound));
  }
  return report;
}

inline double melnikov(const AveragedFunction& h, double k) {
  if (!(k > 0.0)) throw InvalidArgument("melnikov needs k > 0");
  const double r = std::sqrt(k);
  return r * h(r);
}

// Circulation  int_{x^2+y^2=k} P dy - Q dx  for (P, Q) = sum_j b_j X_j,
// evaluated on the parameterized circle. Equals 2 pi * melnikov(h, k).
inline double melnikov_line_integral(const PerturbationSpec& spec, double k,
                                     double tol = kDefaultIntegralTol) {
  if (!(k > 0.0)) throw InvalidArgument("melnikov_line_integral needs k > 0");
  if (!spec.is_polynomial()) {
    throw InvalidArgument("melnikov_line_integral requires integer exponents");
  }
  if (spec.orientation() != Orientation::ccw) {
    throw InvalidArgument("melnikov_line_integral expects a ccw spec");
  }
  const double r = std::sqrt(k);
  auto integrand = [&](double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double x = r * c, y = r * s;
    double p = 0.0, q = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
      const Vec2 w = eval_field(spec.fields()[j], x, y);
      p += spec.b()[j] * w.x;
      q += spec.b()[j] * w.y;
    }
    // dy = r cos dθ, dx = -r sin dθ
    return p * r * c + q * r * s;
  };
  return integrate_circle(integrand, QuadratureOptions{tol, 60}).value;
}

// ---------------------------------------------------------------------------
// Wronskians of (x^beta_0, ..., x^beta_k)

namespace detail {
inline void require_distinct(std::span<const double> betas, const char* who) {
  for (std::size_t i = 0; i < betas.size(); ++i) {
    for (std::size_t j = i + 1; j < betas.size(); ++j) {
      if (betas[i] == betas[j]) throw InvalidArgument(std::string(who) + ": repeated exponent");
    }
  }
}
}  // namespace detail

// x^S * prod_{i<j} (beta_j - beta_i),  S = sum beta - k(k+1)/2.
inline double wronskian_closed_form(std::span<const double> betas, double x) {
  if (!(x > 0.0)) throw InvalidArgument("wronskian needs x > 0");
  detail::require_distinct(betas, "wronskian_closed_form");
  const double k = static_cast<double>(betas.size()) - 1.0;
  double s = -k * (k + 1.0) / 2.0;
  double prod = 1.0;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    s += betas[i];
    for (std::size_t j = i + 1; j < betas.size(); ++j) prod *= betas[j] - betas[i];
  }
  return std::pow(x, s) * prod;
}

// Determinant of the derivative matrix: row i holds
// beta (beta-1) ... (beta-i+1) x^(beta-i) for each exponent.
inline double wronskian_numeric(std::span<const double> betas, double x) {
  if (!(x > 0.0)) throw InvalidArgument("wronskian needs x > 0");
  detail::require_distinct(betas, "wronskian_numeric");
  const auto n = static_cast<Eigen::Index>(betas.size());
  if (n == 0) return 1.0;
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double beta = betas[j];
    double falling = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      m(i, j) = falling * std::pow(x, beta - static_cast<double>(i));
      falling *= beta - static_cast<double>(i);
    }
  }
  return m.fullPivLu().determinant();
}

// ---------------------------------------------------------------------------
// Coefficient synthesis

struct SynthesisOptions {
  double max_condition = 1e12;
  double match_rel_tol = 1e-6;
  int scan_points = 10000;
};

struct SynthesisResult {
  std::vector<double> coefficients;
  double condition = 0.0;
  RootReport verification;
};

// Coefficients c (ascending exponent order) with h(z_i) = 0 at every target
// and top coefficient (-1)^m. Rows are scaled by z_i^-beta_top, so the matrix
// entries are exp((beta_j - beta_top) ln z_i).
inline SynthesisResult synthesize(std::span<const double> betas, std::span<const double> targets,
                                  const SynthesisOptions& opts = {}) {
  const std::size_t m = targets.size();
  if (betas.size() != m + 1) {
    throw InvalidArgument("synthesis needs exactly one target fewer than exponents (" +
                          std::to_string(betas.size()) + " exponents, " + std::to_string(m) +
                          " targets)");
  }
  for (std::size_t j = 1; j < betas.size(); ++j) {
    if (!(betas[j - 1] < betas[j])) throw InvalidArgument("exponents must strictly increase");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!(targets[i] > 0.0)) throw InvalidArgument("targets must be positive");
    if (i > 0 && !(targets[i - 1] < targets[i])) {
      throw InvalidArgument("targets must be distinct and ascending");
    }
  }

  SynthesisResult out;
  const double top = (m % 2 == 0) ? 1.0 : -1.0;
  out.coefficients.assign(m + 1, 0.0);
  out.coefficients[m] = top;
  if (m == 0) {
    out.condition = 1.0;
    return out;
  }

  const double beta_top = betas[m];
  Eigen::MatrixXd a(m, m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m), -top);
  for (std::size_t i = 0; i < m; ++i) {
    const double lz = std::log(targets[i]);
    for (std::size_t j = 0; j < m; ++j) a(i, j) = std::exp((betas[j] - beta_top) * lz);
  }
  // Column equilibration keeps the estimate about geometry, not units.
  Eigen::VectorXd col_scale(m);
  for (std::size_t j = 0; j < m; ++j) {
    col_scale(j) = a.col(j).cwiseAbs().maxCoeff();
    a.col(j) /= col_scale(j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  out.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                          : std::numeric_limits<double>::infinity();
  if (!(out.condition <= opts.max_condition)) {
    throw SynthesisError("generalized Vandermonde system is ill-conditioned (cond = " +
                         std::to_string(out.condition) + ")");
  }
  const Eigen::VectorXd sol = a.colPivHouseholderQr().solve(rhs);
  for (std::size_t j = 0; j < m; ++j) out.coefficients[j] = sol(j) / col_scale(j);

  // Verification on a bracket one decade wider than the targets.
  const AveragedFunction h(std::vector<double>(betas.begin(), betas.end()), out.coefficients);
  double scale = 0.0;
  for (double t : targets) {
    double s = 0.0;
    for (std::size_t j = 0; j <= m; ++j) s += std::abs(out.coefficients[j]) * std::pow(t, betas[j]);
    scale = std::max(scale, s);
  }
  const Bracket bracket{targets.front() / 10.0, targets.back() * 10.0};
  try {
    out.verification = positive_roots(h, bracket, RootOptions{1e-10 * scale, opts.scan_points});
  } catch (const RootFindingError& e) {
    throw SynthesisError(std::string("verification failed: ") + e.what());
  }
  const auto& roots = out.verification.roots;
  if (roots.size() != m) {
    throw SynthesisError("verification found " + std::to_string(roots.size()) + " roots, expected " +
                         std::to_string(m));
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (std::abs(roots[i].z - targets[i]) > opts.match_rel_tol * targets[i] ||
        roots[i].interval_degree == 0) {
      throw SynthesisError("verification: target " + std::to_string(targets[i]) +
                           " not recovered as a simple root");
    }
  }
  return out;
}

inline std::vector<double> synthesize_coefficients(std::span<const double> betas,
                                                   std::span<const double> targets,
                                                   const SynthesisOptions& opts = {}) {
  return synthesize(betas, targets, opts).coefficients;
}

}  // namespace avgdeg
