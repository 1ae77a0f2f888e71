#ifndef THETARING_FUKAYA_RING_HPP
#define THETARING_FUKAYA_RING_HPP

// Graded rings spanned by intersection points Y_{l;a1,a2} of a Lagrangian
// with its images under a sheared symplectomorphism.
//
//   TorusShear2, TorusShear3 : indices (a1, a2) mod s*l, product
//       Y_{l;a} Y_{l;c} = sum_{i,j in {0,1}} theta(c - a + s l (i,j), l) Y_{2l; a + c + s l (i,j)}
//   Kummer : orbits {(a1,a2), (-a1,-a2)} mod 2l of the shear-2 torus indices.
//
// The Kummer product is computed on the involution-invariant lift: an orbit
// maps to the sum of its preimages, the lifts are multiplied in the torus
// ring, and each orbit of the (invariant) result reads its coefficient off
// one preimage.

#include "thetaring/error.hpp"
#include "thetaring/theta.hpp"

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace thetaring {

enum class RingKind { TorusShear2, TorusShear3, Kummer };

inline std::string_view to_string(RingKind kind) {
  switch (kind) {
  case RingKind::TorusShear2: return "torus-shear2";
  case RingKind::TorusShear3: return "torus-shear3";
  case RingKind::Kummer: return "kummer";
  }
  return "unknown";
}

inline RingKind ring_kind_from_string(std::string_view name) {
  if (name == "torus-shear2") return RingKind::TorusShear2;
  if (name == "torus-shear3") return RingKind::TorusShear3;
  if (name == "kummer") return RingKind::Kummer;
  throw UsageError("unknown ring family '" + std::string(name) + "'");
}

struct RingFamily {
  RingKind kind = RingKind::TorusShear2;
  PeriodMatrix period{};
  double b1 = 0.0;
  double b2 = 0.0;
  Tolerance tol{};

  /// Shear of the symplectomorphism; the Kummer ring inherits shear 2.
  int shear() const { return kind == RingKind::TorusShear3 ? 3 : 2; }

  bool is_torus() const { return kind != RingKind::Kummer; }

  void validate() const {
    period.validate();
    if (kind != RingKind::TorusShear3 && (b1 != 0.0 || b2 != 0.0))
      throw UsageError("translations are only supported by the shear-3 torus family");
  }

  friend bool operator==(const RingFamily& x, const RingFamily& y) {
    return x.kind == y.kind && x.period == y.period && x.b1 == y.b1 && x.b2 == y.b2 &&
           x.tol.abs_eps == y.tol.abs_eps;
  }
};

struct GeneratorIndex {
  long long a1 = 0;
  long long a2 = 0;
  int degree = 1;

  friend auto operator<=>(const GeneratorIndex&, const GeneratorIndex&) = default;
};

namespace detail {

inline long long index_modulus(const RingFamily& family, int degree) {
  return static_cast<long long>(family.shear()) * degree;
}

} // namespace detail

/// Canonical representative of a generator index in the given family.
inline GeneratorIndex canonical(const RingFamily& family, GeneratorIndex idx) {
  if (idx.degree < 1) throw UsageError("generator degree must be >= 1");
  const long long n = detail::index_modulus(family, idx.degree);
  GeneratorIndex p{detail::floor_mod(idx.a1, n), detail::floor_mod(idx.a2, n), idx.degree};
  if (family.kind != RingKind::Kummer) return p;
  GeneratorIndex q{detail::floor_mod(-idx.a1, n), detail::floor_mod(-idx.a2, n), idx.degree};
  return std::min(p, q);
}

/// Number of torus generators identified with this Kummer orbit (1 or 2).
inline int orbit_size(GeneratorIndex idx) {
  const long long n = 2LL * idx.degree;
  const bool fixed = detail::floor_mod(2 * idx.a1, n) == 0 && detail::floor_mod(2 * idx.a2, n) == 0;
  return fixed ? 1 : 2;
}

/// Generators in degree l, sorted: (s l)^2 for torus families, 2(l^2 + 1)
/// orbit representatives for the Kummer family.
inline std::vector<GeneratorIndex> generators(const RingFamily& family, int l) {
  if (l < 1) throw UsageError("degree must be >= 1");
  const long long n = detail::index_modulus(family, l);
  std::vector<GeneratorIndex> out;
  for (long long a1 = 0; a1 < n; ++a1)
    for (long long a2 = 0; a2 < n; ++a2) {
      const GeneratorIndex idx{a1, a2, l};
      if (canonical(family, idx) == idx) out.push_back(idx);
    }
  return out;
}

class RingElement {
public:
  using Terms = std::map<GeneratorIndex, Complex>;

  /// Coefficients below this fraction of the largest one are dropped.
  static constexpr double kZeroThreshold = 1e-12;

  RingElement(RingFamily family, int degree) : family_(std::move(family)), degree_(degree) {
    if (degree_ < 1) throw UsageError("ring element degree must be >= 1");
  }

  /// Builds an element from (index, coefficient) pairs; indices are
  /// canonicalized and repeated indices accumulate.
  RingElement(RingFamily family, int degree,
              const std::vector<std::pair<GeneratorIndex, Complex>>& terms)
      : RingElement(std::move(family), degree) {
    for (const auto& [idx, c] : terms) accumulate(idx, c);
    prune();
  }

  static RingElement generator(const RingFamily& family, long long a1, long long a2, int degree) {
    return RingElement(family, degree, {{GeneratorIndex{a1, a2, degree}, Complex{1.0, 0.0}}});
  }

  const RingFamily& family() const { return family_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Complex coeff(GeneratorIndex idx) const {
    idx.degree = degree_;
    const auto it = terms_.find(canonical(family_, idx));
    return it == terms_.end() ? Complex{} : it->second;
  }

  Complex coeff(long long a1, long long a2) const { return coeff(GeneratorIndex{a1, a2, degree_}); }

  double sup_norm() const {
    double m = 0.0;
    for (const auto& [idx, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  friend RingElement operator+(const RingElement& x, const RingElement& y) {
    return combine(x, Complex{1.0}, y, Complex{1.0});
  }
  friend RingElement operator-(const RingElement& x, const RingElement& y) {
    return combine(x, Complex{1.0}, y, Complex{-1.0});
  }
  friend RingElement operator*(Complex s, const RingElement& x) {
    RingElement out(x.family_, x.degree_);
    for (const auto& [idx, c] : x.terms_) out.terms_[idx] = s * c;
    out.prune();
    return out;
  }

  /// x * cx + y * cy, for elements of the same family and degree.
  static RingElement combine(const RingElement& x, Complex cx, const RingElement& y, Complex cy) {
    x.require_compatible(y, "linear combination");
    RingElement out(x.family_, x.degree_);
    for (const auto& [idx, c] : x.terms_) out.terms_[idx] += cx * c;
    for (const auto& [idx, c] : y.terms_) out.terms_[idx] += cy * c;
    out.prune();
    return out;
  }

  void require_compatible(const RingElement& other, std::string_view op) const {
    if (!(family_ == other.family_))
      throw UsageError(std::string(op) + ": operands belong to different ring families");
    if (degree_ != other.degree_)
      throw UsageError(std::string(op) + ": operands have different degrees");
  }

private:
  friend RingElement product_torus(const RingElement&, const RingElement&);
  friend RingElement kummer_project(const RingElement&);
  friend RingElement kummer_lift(const RingElement&);
  friend RingElement product_kummer(const RingElement&, const RingElement&);

  void accumulate(GeneratorIndex idx, Complex c) {
    idx.degree = degree_;
    terms_[canonical(family_, idx)] += c;
  }

  void prune() {
    const double cutoff = kZeroThreshold * sup_norm();
    std::erase_if(terms_, [cutoff](const auto& kv) {
      const double mag = std::abs(kv.second);
      return mag == 0.0 || mag < cutoff;
    });
  }

  RingFamily family_;
  int degree_;
  Terms terms_;
};

/// Torus-ring product of two elements of equal degree l (result degree 2l).
inline RingElement product_torus(const RingElement& u, const RingElement& v) {
  u.require_compatible(v, "product_torus");
  const RingFamily& family = u.family();
  if (!family.is_torus()) throw UsageError("product_torus: operands are not torus elements");
  family.validate();

  const int l = u.degree();
  const int s = family.shear();
  const long long shift = static_cast<long long>(s) * l;
  const long long theta_period = 2 * shift;

  std::map<std::pair<long long, long long>, Complex> cache;
  const auto structure_constant = [&](long long a1, long long a2) {
    const auto key = std::make_pair(detail::floor_mod(a1, theta_period),
                                    detail::floor_mod(a2, theta_period));
    auto it = cache.find(key);
    if (it == cache.end()) {
      const ThetaArgs args{key.first, key.second, family.b1, family.b2, l, s};
      it = cache.emplace(key, theta_general(family.period, args, family.tol)).first;
    }
    return it->second;
  };

  RingElement out(family, 2 * l);
  for (const auto& [x, cx] : u.terms())
    for (const auto& [y, cy] : v.terms())
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const Complex theta =
              structure_constant(y.a1 - x.a1 + shift * i, y.a2 - x.a2 + shift * j);
          out.accumulate(GeneratorIndex{x.a1 + y.a1 + shift * i, x.a2 + y.a2 + shift * j, 2 * l},
                         cx * cy * theta);
        }
  out.prune();
  return out;
}

namespace detail {

inline RingFamily with_kind(RingFamily family, RingKind kind) {
  family.kind = kind;
  return family;
}

} // namespace detail

/// Identifies torus generators in the same orbit of (a1, a2) -> (-a1, -a2);
/// coefficients of identified generators add.
inline RingElement kummer_project(const RingElement& u) {
  if (u.family().kind != RingKind::TorusShear2)
    throw UsageError("kummer_project: operand is not a shear-2 torus element");
  RingElement out(detail::with_kind(u.family(), RingKind::Kummer), u.degree());
  for (const auto& [idx, c] : u.terms()) out.accumulate(idx, c);
  out.prune();
  return out;
}

/// Sends each orbit generator to the sum of its torus preimages.
inline RingElement kummer_lift(const RingElement& x) {
  if (x.family().kind != RingKind::Kummer)
    throw UsageError("kummer_lift: operand is not a Kummer element");
  RingElement out(detail::with_kind(x.family(), RingKind::TorusShear2), x.degree());
  for (const auto& [idx, c] : x.terms()) {
    out.accumulate(idx, c);
    if (orbit_size(idx) == 2) out.accumulate(GeneratorIndex{-idx.a1, -idx.a2, idx.degree}, c);
  }
  out.prune();
  return out;
}

/// Product in the Kummer ring of two elements of equal degree.
inline RingElement product_kummer(const RingElement& x, const RingElement& y) {
  x.require_compatible(y, "product_kummer");
  if (x.family().kind != RingKind::Kummer)
    throw UsageError("product_kummer: operands are not Kummer elements");
  x.family().validate();

  const RingElement lifted = product_torus(kummer_lift(x), kummer_lift(y));
  RingElement out = kummer_project(lifted);
  for (auto& [idx, c] : out.terms_) c /= static_cast<double>(orbit_size(idx));
  return out;
}

/// Dispatches to the torus or Kummer product.
inline RingElement multiply(const RingElement& x, const RingElement& y) {
  return x.family().kind == RingKind::Kummer ? product_kummer(x, y) : product_torus(x, y);
}

/// Max coefficient difference relative to the larger operand norm.
inline double relative_distance(const RingElement& x, const RingElement& y) {
  const RingElement diff = RingElement::combine(x, Complex{1.0}, y, Complex{-1.0});
  const double scale = std::max(x.sup_norm(), y.sup_norm());
  return scale == 0.0 ? diff.sup_norm() : diff.sup_norm() / scale;
}

} // namespace thetaring

#endif // THETARING_FUKAYA_RING_HPP
