#ifndef THETARING_THETA_HPP
#define THETARING_THETA_HPP

// Two-variable theta series with a shear parameter s:
//
//   theta(a1, a2, b1, b2, l; s) = sum_{m,n in Z} exp(2 pi i s l Q(x, y)),
//   x = m + a1/(2sl) + b1/2,  y = n + a2/(2sl) + b2/2,
//   Q(x, y) = tau1 x^2 + tau2 y^2 + 2 tau3 x y.
//
// s = 2 with b = 0 is the series behind the torus ring with a
// shear-2 symplectomorphism; s = 3 carries the translation (b1, b2).

#include "thetaring/error.hpp"

#include <cfloat>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace thetaring {

using Complex = std::complex<double>;

struct PeriodMatrix {
  Complex tau1{0.0, 1.0};
  Complex tau2{0.0, 1.0};
  Complex tau3{0.0, 0.0};

  /// Smallest eigenvalue of [[Im tau1, Im tau3], [Im tau3, Im tau2]].
  double min_imag_eigenvalue() const {
    const double p = tau1.imag();
    const double q = tau2.imag();
    const double r = tau3.imag();
    const double mean = 0.5 * (p + q);
    const double radius = std::hypot(0.5 * (p - q), r);
    return mean - radius;
  }

  bool is_valid() const {
    const double p = tau1.imag();
    const double q = tau2.imag();
    const double r = tau3.imag();
    return std::isfinite(p) && std::isfinite(q) && std::isfinite(r) &&
           std::isfinite(tau1.real()) && std::isfinite(tau2.real()) &&
           std::isfinite(tau3.real()) && p > 0.0 && q > 0.0 && p * q - r * r > 0.0;
  }

  void validate() const {
    if (!is_valid()) {
      std::ostringstream msg;
      msg << "period matrix imaginary part is not positive definite: Im(tau1)="
          << tau1.imag() << ", Im(tau2)=" << tau2.imag() << ", Im(tau3)=" << tau3.imag();
      throw DomainError(msg.str());
    }
  }

  friend bool operator==(const PeriodMatrix&, const PeriodMatrix&) = default;
};

struct ThetaArgs {
  long long a1 = 0;
  long long a2 = 0;
  double b1 = 0.0;
  double b2 = 0.0;
  int l = 1;
  int s = 2;
};

struct Tolerance {
  double abs_eps = 1e-14;
};

namespace detail {

inline void check_args(const ThetaArgs& args, const Tolerance& tol) {
  if (args.l < 1) throw UsageError("theta degree l must be >= 1");
  if (args.s < 1) throw UsageError("theta shear s must be >= 1");
  if (!(tol.abs_eps > 0.0)) throw UsageError("tolerance must be positive");
  if (!std::isfinite(args.b1) || !std::isfinite(args.b2))
    throw UsageError("theta characteristics must be finite");
}

/// sum_{k >= 0} exp(-c (t + k)^2) <= exp(-c t^2) / (1 - exp(-2 c t)) for t > 0.
inline double gaussian_tail(double c, double t) {
  const double denom = -std::expm1(-2.0 * c * t);
  return std::exp(-c * t * t) / denom;
}

inline long long floor_mod(long long a, long long n) {
  const long long r = a % n;
  return r < 0 ? r + n : r;
}

} // namespace detail

/// A priori bound on sum |term| over the whole lattice; every term has
/// modulus exp(-2 pi s l Im Q) <= exp(-c (x^2 + y^2)) with c = 2 pi s l lambda_min.
inline double theta_magnitude_bound(const PeriodMatrix& period, const ThetaArgs& args) {
  const double c = 2.0 * std::numbers::pi * args.s * args.l * period.min_imag_eigenvalue();
  const double one_dim = 1.0 + 2.0 * detail::gaussian_tail(c, 0.5);
  return one_dim * one_dim;
}

/// Half-width R of the box centered at the lattice point nearest the
/// minimizer of Im Q such that the omitted tail is at most tol.abs_eps.
///
/// Outside the box one of |x|, |y| is >= R + 1/2, so the tail is bounded by
/// 2 * (2 G(R + 1/2)) * (1 + 2 G(1/2)) where G is the one-sided Gaussian sum.
inline int truncation_radius(const PeriodMatrix& period, const ThetaArgs& args,
                             const Tolerance& tol = {}) {
  period.validate();
  detail::check_args(args, tol);
  const double lambda = period.min_imag_eigenvalue();
  if (!(lambda > 0.0)) throw DomainError("smallest eigenvalue of Im(tau) is not positive");

  constexpr int kMaxRadius = 4096;
  const double c = 2.0 * std::numbers::pi * args.s * args.l * lambda;
  const double full = 1.0 + 2.0 * detail::gaussian_tail(c, 0.5);
  for (int r = 0; r <= kMaxRadius; ++r) {
    const double tail = 4.0 * detail::gaussian_tail(c, r + 0.5) * full;
    if (tail <= tol.abs_eps) return r;
  }
  throw PrecisionError("theta truncation box exceeds the maximum half-width");
}

/// Evaluates the sheared theta series to absolute error tol.abs_eps.
/// Terms are accumulated row-major over the truncation box (m outer, n inner).
inline Complex theta_general(const PeriodMatrix& period, const ThetaArgs& args,
                             const Tolerance& tol = {}) {
  const int radius = truncation_radius(period, args, tol);
  if (tol.abs_eps < 4.0 * DBL_EPSILON * theta_magnitude_bound(period, args)) {
    std::ostringstream msg;
    msg << "requested theta tolerance " << tol.abs_eps
        << " is below the double-precision rounding floor";
    throw PrecisionError(msg.str());
  }

  const long long period_len = 2LL * args.s * args.l;
  const double denom = static_cast<double>(period_len);
  const double alpha =
      static_cast<double>(detail::floor_mod(args.a1, period_len)) / denom + 0.5 * args.b1;
  const double beta =
      static_cast<double>(detail::floor_mod(args.a2, period_len)) / denom + 0.5 * args.b2;
  const auto m0 = static_cast<long long>(std::llround(-alpha));
  const auto n0 = static_cast<long long>(std::llround(-beta));

  const Complex scale{0.0, 2.0 * std::numbers::pi * args.s * args.l};
  Complex sum{0.0, 0.0};
  for (long long m = m0 - radius; m <= m0 + radius; ++m) {
    const double x = static_cast<double>(m) + alpha;
    for (long long n = n0 - radius; n <= n0 + radius; ++n) {
      const double y = static_cast<double>(n) + beta;
      const Complex q = period.tau1 * (x * x) + period.tau2 * (y * y) +
                        period.tau3 * (2.0 * x * y);
      sum += std::exp(scale * q);
    }
  }
  return sum;
}

} // namespace thetaring

#endif // THETARING_THETA_HPP
