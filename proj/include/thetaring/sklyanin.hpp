#ifndef THETARING_SKLYANIN_HPP
#define THETARING_SKLYANIN_HPP

// Quadratic relations of the noncommutative deformation of P^8 attached to
// the shear-3 torus with translation (b1, b2).
//
// Degree-1 generators Z_ij = Y_{1;i,j}, (i, j) in (Z/3)^2. For each (i, j)
// the four commutators of the pairs (Z_{(i,j)-d}, Z_{(i,j)+d}) with
// d = (1,0), (0,1), (1,1), (1,-1) and the matching anticommutators plus
// Z_ij Z_ij all land in the same four degree-2 generators
// Y_{2; 2(i,j) + 3e}, e in {0,1}^2. Their coefficient vectors there are
// v_d^-, v_d^+ and v_5, built from the constants A_ab = theta(a, b, b1, b2, 1).
// The 4x5 matrix M has row r = the solution of V_r m_r = -v_r^- (V_r drops
// column r from (v_1^+ | ... | v_4^+ | v_5)) with a zero inserted at slot r.

#include "thetaring/error.hpp"
#include "thetaring/fukaya_ring.hpp"
#include "thetaring/linalg.hpp"
#include "thetaring/theta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace thetaring {

/// A_ab = theta(a, b, b1, b2, 1) at shear 3, indices mod 6.
struct ThetaConstants {
  double b1 = 0.0;
  double b2 = 0.0;
  std::array<std::array<Complex, 6>, 6> values{};

  Complex at(long long a, long long b) const {
    return values[detail::floor_mod(a, 6)][detail::floor_mod(b, 6)];
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& row : values)
      for (const auto& v : row) m = std::max(m, std::abs(v));
    return m;
  }
};

inline ThetaConstants theta_constants(const PeriodMatrix& period, double b1, double b2,
                                      const Tolerance& tol = {}) {
  period.validate();
  ThetaConstants tc{b1, b2, {}};
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      tc.values[a][b] = theta_general(period, ThetaArgs{a, b, b1, b2, 1, 3}, tol);
  return tc;
}

/// Ordered pair of degree-1 generators Z_{a1 a2} Z_{c1 c2}, indices in Z/3.
struct QuadraticMonomial {
  int a1 = 0, a2 = 0, c1 = 0, c2 = 0;

  friend auto operator<=>(const QuadraticMonomial&, const QuadraticMonomial&) = default;

  /// Position among the 81 ordered pairs.
  int flat_index() const { return ((a1 * 3 + a2) * 3 + c1) * 3 + c2; }
};

/// Formal degree-2 element of the free algebra on the nine Z_ij.
class FreeQuadratic {
public:
  using Terms = std::map<QuadraticMonomial, Complex>;

  FreeQuadratic() = default;

  static FreeQuadratic monomial(int a1, int a2, int c1, int c2, Complex c = 1.0) {
    FreeQuadratic q;
    q.add(QuadraticMonomial{mod3(a1), mod3(a2), mod3(c1), mod3(c2)}, c);
    return q;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Complex coeff(const QuadraticMonomial& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? Complex{} : it->second;
  }

  friend FreeQuadratic operator+(FreeQuadratic x, const FreeQuadratic& y) {
    for (const auto& [m, c] : y.terms_) x.add(m, c);
    return x;
  }
  friend FreeQuadratic operator-(FreeQuadratic x, const FreeQuadratic& y) {
    for (const auto& [m, c] : y.terms_) x.add(m, -c);
    return x;
  }
  friend FreeQuadratic operator*(Complex s, FreeQuadratic x) {
    FreeQuadratic out;
    for (const auto& [m, c] : x.terms_) out.add(m, s * c);
    return out;
  }

  /// Same monomials with the two factors swapped.
  FreeQuadratic swapped() const {
    FreeQuadratic out;
    for (const auto& [m, c] : terms_) out.add(QuadraticMonomial{m.c1, m.c2, m.a1, m.a2}, c);
    return out;
  }

  static int mod3(int a) { return static_cast<int>(detail::floor_mod(a, 3)); }

private:
  void add(const QuadraticMonomial& m, Complex c) {
    auto& slot = terms_[m];
    slot += c;
    if (slot == Complex{}) terms_.erase(m);
  }

  Terms terms_;
};

/// Offsets d of the four pairs (Z_{p-d}, Z_{p+d}): horizontal, vertical, two diagonals.
inline constexpr std::array<std::array<int, 2>, 4> kPairOffsets{{{1, 0}, {0, 1}, {1, 1}, {1, -1}}};

inline std::array<FreeQuadratic, 4> commutator_vector(int i, int j) {
  std::array<FreeQuadratic, 4> out;
  for (int r = 0; r < 4; ++r) {
    const auto [di, dj] = kPairOffsets[r];
    out[r] = FreeQuadratic::monomial(i - di, j - dj, i + di, j + dj) -
             FreeQuadratic::monomial(i + di, j + dj, i - di, j - dj);
  }
  return out;
}

inline std::array<FreeQuadratic, 5> anticommutator_vector(int i, int j) {
  std::array<FreeQuadratic, 5> out;
  for (int r = 0; r < 4; ++r) {
    const auto [di, dj] = kPairOffsets[r];
    out[r] = FreeQuadratic::monomial(i - di, j - dj, i + di, j + dj) +
             FreeQuadratic::monomial(i + di, j + dj, i - di, j - dj);
  }
  out[4] = FreeQuadratic::monomial(i, j, i, j);
  return out;
}

using Vector4 = Eigen::Vector4cd;

struct DeformationVectors {
  std::array<Vector4, 4> plus;
  std::array<Vector4, 4> minus;
  Vector4 v5;
};

/// Coefficients of Z_{-d} Z_{+d} +- Z_{+d} Z_{-d} on Y_{2;3e}, e = (0,0),
/// (1,0), (0,1), (1,1); Z_{-d} Z_{+d} contributes A_{2d+3e}.
inline DeformationVectors deformation_vectors(const ThetaConstants& tc) {
  static constexpr std::array<std::array<int, 2>, 4> kBlock{{{0, 0}, {3, 0}, {0, 3}, {3, 3}}};
  DeformationVectors out;
  for (int r = 0; r < 4; ++r) {
    const auto [di, dj] = kPairOffsets[r];
    for (int e = 0; e < 4; ++e) {
      const auto [ei, ej] = kBlock[e];
      const Complex forward = tc.at(2 * di + ei, 2 * dj + ej);
      const Complex backward = tc.at(-2 * di + ei, -2 * dj + ej);
      out.plus[r](e) = forward + backward;
      out.minus[r](e) = forward - backward;
    }
  }
  for (int e = 0; e < 4; ++e) out.v5(e) = tc.at(kBlock[e][0], kBlock[e][1]);
  return out;
}

struct RowConstruction {
  double rcond = 1.0;  ///< reciprocal condition number of V_r (1 when skipped)
  int sign = 1;        ///< +1: V_r m_r = -v_r^-, -1: the negated row was accepted
  bool trivial = false; ///< v_r^- vanished, so m_r = 0 without a solve
};

struct DeformationMatrix {
  DeformationVectors vectors;
  ComplexMatrix M = ComplexMatrix::Zero(4, 5);
  std::array<RowConstruction, 4> log{};
};

/// Builds M with the V_r m_r = -v_r^- sign on every row; row signs are
/// settled by generate_and_verify.
inline DeformationMatrix build_deformation_matrix(const ThetaConstants& tc) {
  DeformationMatrix dm;
  dm.vectors = deformation_vectors(tc);
  const double scale = tc.max_abs();

  for (int r = 0; r < 4; ++r) {
    const Vector4& minus = dm.vectors.minus[r];
    if (minus.cwiseAbs().maxCoeff() <= 1e-13 * scale) {
      dm.log[r].trivial = true;
      continue;
    }
    ComplexMatrix v(4, 4);
    int col = 0;
    for (int c = 0; c < 5; ++c) {
      if (c == r) continue;
      v.col(col++) = c < 4 ? dm.vectors.plus[c] : dm.vectors.v5;
    }
    SolveResult sol;
    try {
      sol = solve(v, ComplexVector(-minus));
    } catch (const SingularityError& e) {
      std::ostringstream msg;
      msg << "V_" << (r + 1) << " is singular (pivot " << e.pivot() << ")";
      throw DegeneracyError("V_" + std::to_string(r + 1) + " nonsingular", msg.str());
    }
    dm.log[r].rcond = sol.rcond;
    col = 0;
    for (int c = 0; c < 5; ++c) dm.M(r, c) = c == r ? Complex{} : sol.x(col++);
  }
  return dm;
}

/// Degree-2 image of free quadratics in the shear-3 torus ring; the 81
/// products of degree-1 generators are computed once.
class DegreeTwoEvaluator {
public:
  explicit DegreeTwoEvaluator(RingFamily family) : family_(std::move(family)) {
    if (family_.kind != RingKind::TorusShear3)
      throw UsageError("degree-2 evaluation needs the shear-3 torus family");
    family_.validate();
    for (int a = 0; a < 9; ++a)
      for (int c = 0; c < 9; ++c)
        products_.push_back(product_torus(RingElement::generator(family_, a / 3, a % 3, 1),
                                          RingElement::generator(family_, c / 3, c % 3, 1)));
    for (const auto& p : products_) max_constant_ = std::max(max_constant_, p.sup_norm());
  }

  const RingFamily& family() const { return family_; }

  const RingElement& product(const QuadraticMonomial& m) const {
    return products_[static_cast<std::size_t>(m.flat_index())];
  }

  RingElement evaluate(const FreeQuadratic& q) const {
    RingElement out(family_, 2);
    for (const auto& [m, c] : q.terms()) out = RingElement::combine(out, 1.0, product(m), c);
    return out;
  }

  /// Largest structure constant among degree-1 products.
  double max_structure_constant() const { return max_constant_; }

private:
  RingFamily family_;
  std::vector<RingElement> products_;
  double max_constant_ = 0.0;
};

inline RingElement evaluate_in_ring(const FreeQuadratic& q, const RingFamily& family) {
  return DegreeTwoEvaluator(family).evaluate(q);
}

struct Relation {
  int i = 0, j = 0;
  int row = 1;  ///< 1..4
  FreeQuadratic expression;
  double residual = 0.0;
};

struct RelationSet {
  PeriodMatrix period;
  ThetaConstants constants;
  DeformationMatrix deformation;
  std::vector<Relation> relations;  ///< (i, j) lexicographic, then row

  double max_residual() const {
    double m = 0.0;
    for (const auto& r : relations) m = std::max(m, r.residual);
    return m;
  }
};

/// (Z_ij^-)_r - sum_c M_rc (Z_ij^+)_c.
inline FreeQuadratic relation_expression(const ComplexMatrix& m, int i, int j, int row) {
  const auto minus = commutator_vector(i, j);
  const auto plus = anticommutator_vector(i, j);
  FreeQuadratic out = minus[row - 1];
  for (int c = 0; c < 5; ++c)
    if (m(row - 1, c) != Complex{}) out = out - m(row - 1, c) * plus[c];
  return out;
}

inline constexpr double kRelationTolerance = 1e-9;

/// Builds M, settles each row's sign by evaluating the relations in the
/// torus ring, and returns all 36 relations with their residuals.
inline RelationSet generate_and_verify(const PeriodMatrix& period, double b1, double b2,
                                       const Tolerance& tol = {}) {
  period.validate();
  RelationSet out;
  out.period = period;
  out.constants = theta_constants(period, b1, b2, tol);
  out.deformation = build_deformation_matrix(out.constants);
  const DegreeTwoEvaluator ring(RingFamily{RingKind::TorusShear3, period, b1, b2, tol});
  const double scale = ring.max_structure_constant();

  const auto row_residuals = [&](int row) {
    std::array<double, 9> res{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        res[i * 3 + j] =
            ring.evaluate(relation_expression(out.deformation.M, i, j, row)).sup_norm() / scale;
    return res;
  };
  const auto worst = [](const std::array<double, 9>& r) { return *std::max_element(r.begin(), r.end()); };

  std::array<std::array<double, 9>, 4> residuals{};
  for (int row = 1; row <= 4; ++row) {
    residuals[row - 1] = row_residuals(row);
    if (worst(residuals[row - 1]) <= kRelationTolerance) continue;
    const double first_sign = worst(residuals[row - 1]);
    out.deformation.M.row(row - 1) *= -1.0;
    out.deformation.log[row - 1].sign = -1;
    residuals[row - 1] = row_residuals(row);
    if (worst(residuals[row - 1]) > kRelationTolerance) {
      std::ostringstream msg;
      msg << "relation row " << row << " fails with both signs: residuals " << first_sign
          << " and " << worst(residuals[row - 1]) << ", rcond(V_" << row
          << ") = " << out.deformation.log[row - 1].rcond;
      throw ModelError(msg.str(), std::min(first_sign, worst(residuals[row - 1])));
    }
  }

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int row = 1; row <= 4; ++row)
        out.relations.push_back(Relation{i, j, row, relation_expression(out.deformation.M, i, j, row),
                                         residuals[row - 1][i * 3 + j]});
  return out;
}

/// Rank of the relations as vectors over the 81 ordered pairs Z_a Z_c.
inline int relation_rank(const std::vector<Relation>& relations, double threshold = 1e-9) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(relations.size()), 81);
  for (std::size_t r = 0; r < relations.size(); ++r)
    for (const auto& [mono, c] : relations[r].expression.terms())
      m(static_cast<Eigen::Index>(r), mono.flat_index()) = c;
  return rank(m, threshold);
}

inline std::string generator_name(int a, int b) { return "Z" + std::to_string(a) + std::to_string(b); }

} // namespace thetaring

#endif // THETARING_SKLYANIN_HPP
