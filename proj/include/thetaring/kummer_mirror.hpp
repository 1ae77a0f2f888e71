#ifndef THETARING_KUMMER_MIRROR_HPP
#define THETARING_KUMMER_MIRROR_HPP

// Mirror Kummer quartic
//
//   sum X_i^4 + A (X0^2 X1^2 + X2^2 X3^2) + B (X0^2 X2^2 + X1^2 X3^2)
//             + C (X0^2 X3^2 + X1^2 X2^2) + D X0 X1 X2 X3 = 0
//
// recovered two ways: as the kernel (1, A, B, C, D) of the 4x5 matrix
// expressing the quartic monomial sums W_0..W_4 of the Kummer ring over the
// degree-4 combinations Z_0..Z_3, and from closed forms in the theta
// constants (g : h : j : k).

#include "thetaring/error.hpp"
#include "thetaring/fukaya_ring.hpp"
#include "thetaring/linalg.hpp"
#include "thetaring/theta.hpp"

#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace thetaring {

struct ThetaConstantsGhjk {
  Complex g, h, j, k;
};

struct QuarticCoefficients {
  Complex A, B, C, D;
};

struct GenericityCheck {
  std::string name;
  bool passed = false;
};

using GenericityReport = std::array<GenericityCheck, 7>;

inline bool all_pass(const GenericityReport& report) {
  for (const auto& c : report)
    if (!c.passed) return false;
  return true;
}

/// Degree-2 theta combinations g, h, j, k.
inline ThetaConstantsGhjk compute_ghjk(const PeriodMatrix& period, const Tolerance& tol = {}) {
  period.validate();
  const auto t = [&](long long a, long long b) {
    return theta_general(period, ThetaArgs{a, b, 0.0, 0.0, 2, 2}, tol);
  };
  return {
      0.5 * (t(0, 0) + t(4, 0) + t(0, 4) + t(4, 4)),
      t(2, 0) + t(2, 4),
      t(0, 2) + t(4, 2),
      t(2, 2) + t(6, 2),
  };
}

namespace detail {

// x != y, relative to the larger magnitude.
inline bool distinct(Complex x, Complex y, double rel = 1e-10) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return std::abs(x - y) > rel * scale;
}

} // namespace detail

/// The seven inequalities on (g : h : j : k) that make the quartic a Kummer
/// surface with sixteen nodes.
inline GenericityReport genericity_check(const ThetaConstantsGhjk& t) {
  const auto [g, h, j, k] = t;
  const Complex g2 = g * g, h2 = h * h, j2 = j * j, k2 = k * k;
  const auto pm = [](Complex x, Complex y) {
    return detail::distinct(x, y) && detail::distinct(x, -y);
  };
  const double sum_scale = std::max({std::abs(g2), std::abs(h2), std::abs(j2), std::abs(k2)});
  return {{
      {"gh != +-jk", pm(g * h, j * k)},
      {"gj != +-hk", pm(g * j, h * k)},
      {"gk != +-hj", pm(g * k, h * j)},
      {"g^2+h^2 != j^2+k^2", detail::distinct(g2 + h2, j2 + k2)},
      {"g^2+j^2 != h^2+k^2", detail::distinct(g2 + j2, h2 + k2)},
      {"g^2+k^2 != h^2+j^2", detail::distinct(g2 + k2, h2 + j2)},
      {"g^2+h^2+j^2+k^2 != 0", std::abs(g2 + h2 + j2 + k2) > 1e-10 * sum_scale},
  }};
}

inline void require_generic(const GenericityReport& report) {
  for (const auto& c : report)
    if (!c.passed)
      throw DegeneracyError(c.name, "degenerate theta constants: violated " + c.name);
}

/// Classical closed forms for A, B, C, D in terms of (g : h : j : k).
inline QuarticCoefficients closed_form_coefficients(const ThetaConstantsGhjk& t) {
  const auto [g, h, j, k] = t;
  const Complex g2 = g * g, h2 = h * h, j2 = j * j, k2 = k * k;
  const Complex g4 = g2 * g2, h4 = h2 * h2, j4 = j2 * j2, k4 = k2 * k2;
  const Complex da = h2 * g2 - j2 * k2;
  const Complex db = j2 * g2 - h2 * k2;
  const Complex dc = k2 * g2 - j2 * h2;
  return {
      (j4 + k4 - h4 - g4) / da,
      (k4 + h4 - j4 - g4) / db,
      (h4 + j4 - k4 - g4) / dc,
      2.0 * h * j * k * g * (g2 + h2 - j2 - k2) * (g2 + j2 - k2 - h2) * (g2 - h2 - j2 + k2) *
          (h2 + j2 + k2 + g2) / (da * db * dc),
  };
}

/// Closed-form expansion matrix: rows index Z_0..Z_3, columns W_0..W_4.
inline ComplexMatrix closed_form_matrix(const ThetaConstantsGhjk& t) {
  const auto [g, h, j, k] = t;
  ComplexMatrix m(4, 5);
  m << 8.0 * g * g * g, 4.0 * h * h * g, 4.0 * j * j * g, 4.0 * k * k * g, 2.0 * j * k * h,
      8.0 * h * h * h, 4.0 * g * g * h, 4.0 * k * k * h, 4.0 * j * j * h, 2.0 * j * k * g,
      8.0 * j * j * j, 4.0 * k * k * j, 4.0 * g * g * j, 4.0 * h * h * j, 2.0 * h * g * k,
      8.0 * k * k * k, 4.0 * j * j * k, 4.0 * h * h * k, 4.0 * g * g * k, 2.0 * h * g * j;
  return m;
}

/// Orbit generators of the degree-4 combinations Z_0..Z_3 (each with coefficient 1).
inline std::array<std::vector<GeneratorIndex>, 4> z_supports() {
  const auto y = [](long long a, long long b) { return GeneratorIndex{a, b, 4}; };
  return {{
      {y(0, 0), y(4, 0), y(0, 4), y(4, 4)},
      {y(2, 0), y(2, 4)},
      {y(0, 2), y(4, 2)},
      {y(2, 2), y(2, 6)},
  }};
}

/// The quartic monomial sums W_0..W_4 of the Kummer ring together with the
/// degree-1 generators used to build them.
struct DegreeFourData {
  RingFamily family;
  std::array<RingElement, 4> x;  ///< X_0..X_3 in degree 1
  std::array<RingElement, 5> w;  ///< W_0..W_4 in degree 4
};

/// Builds W_0..W_4 with the balanced products (X_a X_b)(X_c X_d).
inline DegreeFourData degree_four_elements(const PeriodMatrix& period, const Tolerance& tol = {}) {
  const RingFamily family{RingKind::Kummer, period, 0.0, 0.0, tol};
  family.validate();
  const std::array<RingElement, 4> x{
      RingElement::generator(family, 0, 0, 1),
      RingElement::generator(family, 1, 0, 1),
      RingElement::generator(family, 0, 1, 1),
      RingElement::generator(family, 1, 1, 1),
  };
  std::map<std::pair<int, int>, RingElement> quadratic;
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) quadratic.emplace(std::pair{a, b}, product_kummer(x[a], x[b]));
  const auto q = [&](int a, int b) -> const RingElement& { return quadratic.at({a, b}); };
  const auto p = [&](int a, int b, int c, int d) { return product_kummer(q(a, b), q(c, d)); };

  return {family,
          x,
          {{
              p(0, 0, 0, 0) + p(1, 1, 1, 1) + p(2, 2, 2, 2) + p(3, 3, 3, 3),
              p(0, 0, 1, 1) + p(2, 2, 3, 3),
              p(0, 0, 2, 2) + p(1, 1, 3, 3),
              p(0, 0, 3, 3) + p(1, 1, 2, 2),
              p(0, 1, 2, 3),
          }}};
}

/// Reads the 4x5 array of W_i over Z_j. Throws ModelError if some W_i has
/// weight outside the Z-span (relative to max ||W_i||) above 1e-9.
inline ComplexMatrix matrix_from_degree_four(const DegreeFourData& data) {
  const auto supports = z_supports();
  double scale = 0.0;
  for (const auto& w : data.w) scale = std::max(scale, w.sup_norm());

  ComplexMatrix m(4, 5);
  double leakage = 0.0;
  for (int col = 0; col < 5; ++col) {
    const RingElement& w = data.w[col];
    std::map<GeneratorIndex, bool> covered;
    for (int row = 0; row < 4; ++row) {
      const auto& support = supports[row];
      Complex mean{};
      for (const auto& idx : support) mean += w.coeff(idx);
      mean /= static_cast<double>(support.size());
      for (const auto& idx : support) {
        leakage = std::max(leakage, std::abs(w.coeff(idx) - mean));
        covered[canonical(data.family, idx)] = true;
      }
      m(row, col) = mean;
    }
    for (const auto& [idx, c] : w.terms())
      if (!covered.contains(idx)) leakage = std::max(leakage, std::abs(c));
  }
  if (leakage > 1e-9 * scale) {
    std::ostringstream msg;
    msg << "W_i not in the span of Z_0..Z_3: leakage " << leakage / scale;
    throw ModelError(msg.str(), leakage / scale);
  }
  return m;
}

/// Largest relative mismatch between the rows of two matrices after fitting
/// one complex scale per row.
inline double row_scaled_discrepancy(const ComplexMatrix& reference, const ComplexMatrix& other) {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < reference.rows(); ++r) {
    const ComplexVector a = reference.row(r).transpose();
    const ComplexVector b = other.row(r).transpose();
    const Complex denom = b.squaredNorm();
    const Complex scale = denom == Complex{} ? Complex{} : b.dot(a) / denom;
    const double norm = inf_norm(a);
    const double diff = inf_norm(ComplexVector(a - scale * b));
    worst = std::max(worst, norm == 0.0 ? diff : diff / norm);
  }
  return worst;
}

/// Expansion matrix computed in the Kummer ring, cross-checked against the
/// closed-form matrix in (g : h : j : k).
inline ComplexMatrix expansion_matrix(const PeriodMatrix& period, const Tolerance& tol = {}) {
  const ComplexMatrix m = matrix_from_degree_four(degree_four_elements(period, tol));
  const double mismatch = row_scaled_discrepancy(m, closed_form_matrix(compute_ghjk(period, tol)));
  if (mismatch > 1e-9) {
    std::ostringstream msg;
    msg << "ring expansion matrix disagrees with the closed-form matrix: " << mismatch;
    throw ModelError(msg.str(), mismatch);
  }
  return m;
}

struct QuarticData {
  PeriodMatrix period;
  ThetaConstantsGhjk ghjk;
  QuarticCoefficients coefficients;          ///< from the kernel of the expansion matrix
  QuarticCoefficients closed_form;           ///< from (g : h : j : k)
  GenericityReport genericity;
  ComplexMatrix expansion_matrix;
  double kernel_residual = 0.0;
  double route_discrepancy = 0.0;            ///< max relative gap between the two routes
  double closed_form_matrix_discrepancy = 0.0;
};

namespace detail {

inline double relative_gap(Complex x, Complex y) {
  const double scale = std::max({std::abs(x), std::abs(y), 1.0});
  return std::abs(x - y) / scale;
}

} // namespace detail

inline QuarticData quartic_from_degree_four(const DegreeFourData& data, const Tolerance& tol = {}) {
  QuarticData out;
  out.period = data.family.period;
  out.ghjk = compute_ghjk(out.period, tol);
  out.genericity = genericity_check(out.ghjk);
  require_generic(out.genericity);

  out.expansion_matrix = matrix_from_degree_four(data);
  out.closed_form_matrix_discrepancy =
      row_scaled_discrepancy(out.expansion_matrix, closed_form_matrix(out.ghjk));

  const auto kernel = nullspace(out.expansion_matrix, 1e-9);
  if (kernel.size() != 1) {
    std::ostringstream msg;
    msg << "expansion matrix kernel has dimension " << kernel.size() << ", expected 1";
    throw ModelError(msg.str());
  }
  const ComplexVector& v = kernel.front();
  if (std::abs(v(0) - Complex{1.0}) > 1e-12) throw ModelError("kernel vector has zero W_0 weight");
  out.coefficients = {v(1), v(2), v(3), v(4)};
  out.kernel_residual = relative_residual(out.expansion_matrix, v);
  out.closed_form = closed_form_coefficients(out.ghjk);

  const auto& a = out.coefficients;
  const auto& b = out.closed_form;
  out.route_discrepancy = std::max({detail::relative_gap(a.A, b.A), detail::relative_gap(a.B, b.B),
                                    detail::relative_gap(a.C, b.C), detail::relative_gap(a.D, b.D)});
  return out;
}

/// Full quartic pipeline. Throws DegeneracyError naming the violated
/// inequality, or ModelError when the kernel residual or the agreement
/// between the two routes exceeds 1e-9.
inline QuarticData quartic_coefficients(const PeriodMatrix& period, const Tolerance& tol = {}) {
  period.validate();
  require_generic(genericity_check(compute_ghjk(period, tol)));
  QuarticData out = quartic_from_degree_four(degree_four_elements(period, tol), tol);
  if (out.kernel_residual > 1e-9)
    throw ModelError("kernel residual exceeds 1e-9", out.kernel_residual);
  if (out.route_discrepancy > 1e-9)
    throw ModelError("kernel and closed-form coefficients disagree", out.route_discrepancy);
  return out;
}

/// Exponents of X0..X3.
using Monomial = std::array<int, 4>;

struct QuarticPolynomial {
  std::map<Monomial, Complex> coefficients;

  Complex coeff(const Monomial& m) const {
    const auto it = coefficients.find(m);
    return it == coefficients.end() ? Complex{} : it->second;
  }
};

/// Monomials of the normal form, in output order.
inline const std::array<Monomial, 11>& normal_form_monomials() {
  static const std::array<Monomial, 11> order{{
      {4, 0, 0, 0}, {0, 4, 0, 0}, {0, 0, 4, 0}, {0, 0, 0, 4},
      {2, 2, 0, 0}, {0, 0, 2, 2},
      {2, 0, 2, 0}, {0, 2, 0, 2},
      {2, 0, 0, 2}, {0, 2, 2, 0},
      {1, 1, 1, 1},
  }};
  return order;
}

inline std::string monomial_name(const Monomial& m) {
  std::string out;
  for (int i = 0; i < 4; ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += "X" + std::to_string(i);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

inline QuarticPolynomial emit_quartic(const QuarticCoefficients& c) {
  const auto& order = normal_form_monomials();
  const std::array<Complex, 11> values{1.0, 1.0, 1.0, 1.0, c.A, c.A, c.B, c.B, c.C, c.C, c.D};
  QuarticPolynomial poly;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (values[i] != Complex{}) poly.coefficients[order[i]] = values[i];
  return poly;
}

inline QuarticPolynomial emit_quartic(const QuarticData& data) { return emit_quartic(data.coefficients); }

/// W_0 + A W_1 + B W_2 + C W_3 + D W_4 in the degree-4 Kummer ring.
inline RingElement relation_element(const DegreeFourData& data, const QuarticCoefficients& c) {
  const std::array<Complex, 5> weights{1.0, c.A, c.B, c.C, c.D};
  RingElement sum(data.family, 4);
  for (int i = 0; i < 5; ++i) sum = RingElement::combine(sum, 1.0, data.w[i], weights[i]);
  return sum;
}

struct CentralRelation {
  QuarticData quartic;
  double residual = 0.0;  ///< sup norm of the relation over max ||W_i||
};

inline CentralRelation central_relation(const PeriodMatrix& period, const Tolerance& tol = {}) {
  period.validate();
  require_generic(genericity_check(compute_ghjk(period, tol)));
  const DegreeFourData data = degree_four_elements(period, tol);
  CentralRelation out{quartic_from_degree_four(data, tol), 0.0};
  double scale = 0.0;
  for (const auto& w : data.w) scale = std::max(scale, w.sup_norm());
  out.residual = relation_element(data, out.quartic.coefficients).sup_norm() / scale;
  return out;
}

} // namespace thetaring

#endif // THETARING_KUMMER_MIRROR_HPP
