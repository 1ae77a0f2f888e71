#ifndef THETARING_JSON_IO_HPP
#define THETARING_JSON_IO_HPP

// JSON records for ring elements, quartic data and relation sets.
//
// Documents are assembled as nlohmann::ordered_json (field order is
// insertion order) and printed by dump_json, which writes every floating
// point number as %.16e: 17 significant digits, lowercase exponent.

#include "thetaring/error.hpp"
#include "thetaring/fukaya_ring.hpp"
#include "thetaring/kummer_mirror.hpp"
#include "thetaring/sklyanin.hpp"

#include <json.hpp>

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>

namespace thetaring {

using Json = nlohmann::ordered_json;

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

namespace detail {

inline void dump_json(std::ostream& os, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
  case Json::value_t::object: {
    if (j.empty()) { os << "{}"; return; }
    os << "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) os << ",\n";
      first = false;
      os << pad << Json(key).dump() << ": ";
      dump_json(os, value, indent, depth + 1);
    }
    os << '\n' << close << '}';
    return;
  }
  case Json::value_t::array: {
    if (j.empty()) { os << "[]"; return; }
    // Arrays of scalars, and arrays of such arrays, stay on one line.
    bool flat = true;
    for (const auto& v : j) {
      if (v.is_primitive()) continue;
      if (!v.is_array()) { flat = false; break; }
      for (const auto& w : v) flat = flat && w.is_primitive();
    }
    if (flat) {
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ", ";
        dump_json(os, j[i], indent, depth + 1);
      }
      os << ']';
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) os << ",\n";
      os << pad;
      dump_json(os, j[i], indent, depth + 1);
    }
    os << '\n' << close << ']';
    return;
  }
  case Json::value_t::number_float:
    os << format_double(j.get<double>());
    return;
  default:
    os << j.dump();
  }
}

} // namespace detail

inline void dump_json(std::ostream& os, const Json& j) {
  detail::dump_json(os, j, 2, 0);
  os << '\n';
}

inline std::string dump_json(const Json& j) {
  std::ostringstream os;
  dump_json(os, j);
  return os.str();
}

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw UsageError("complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Json to_json(const PeriodMatrix& p) {
  return Json::array({to_json(p.tau1), to_json(p.tau2), to_json(p.tau3)});
}

inline Json to_json(const RingFamily& f) {
  Json j;
  j["kind"] = std::string(to_string(f.kind));
  j["tau"] = to_json(f.period);
  j["b"] = Json::array({f.b1, f.b2});
  j["eps"] = f.tol.abs_eps;
  return j;
}

inline RingFamily ring_family_from_json(const Json& j) {
  RingFamily f;
  f.kind = ring_kind_from_string(j.at("kind").get<std::string>());
  const Json& tau = j.at("tau");
  if (!tau.is_array() || tau.size() != 3) throw UsageError("family tau must hold three complex values");
  f.period = {complex_from_json(tau[0]), complex_from_json(tau[1]), complex_from_json(tau[2])};
  if (j.contains("b")) {
    f.b1 = j["b"].at(0).get<double>();
    f.b2 = j["b"].at(1).get<double>();
  }
  if (j.contains("eps")) f.tol.abs_eps = j["eps"].get<double>();
  return f;
}

/// {family, degree, entries: [[a1, a2, re, im], ...]} with entries in index order.
inline Json to_json(const RingElement& x) {
  Json j;
  j["family"] = to_json(x.family());
  j["degree"] = x.degree();
  Json entries = Json::array();
  for (const auto& [idx, c] : x.terms())
    entries.push_back(Json::array({idx.a1, idx.a2, c.real(), c.imag()}));
  j["entries"] = std::move(entries);
  return j;
}

inline RingElement ring_element_from_json(const Json& j) {
  const RingFamily family = ring_family_from_json(j.at("family"));
  const int degree = j.at("degree").get<int>();
  std::vector<std::pair<GeneratorIndex, Complex>> terms;
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 4) throw UsageError("ring entry must be [a1, a2, re, im]");
    terms.emplace_back(GeneratorIndex{e[0].get<long long>(), e[1].get<long long>(), degree},
                       Complex{e[2].get<double>(), e[3].get<double>()});
  }
  return RingElement(family, degree, terms);
}

inline Json to_json(const GenericityReport& report) {
  Json j = Json::object();
  for (const auto& c : report) j[c.name] = c.passed;
  return j;
}

inline Json to_json(const QuarticPolynomial& poly) {
  Json j = Json::array();
  for (const auto& m : normal_form_monomials())
    if (poly.coefficients.contains(m)) j.push_back(Json::array({monomial_name(m), to_json(poly.coeff(m))}));
  return j;
}

inline Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const QuarticData& d) {
  Json j;
  j["tau"] = to_json(d.period);
  j["g"] = to_json(d.ghjk.g);
  j["h"] = to_json(d.ghjk.h);
  j["j"] = to_json(d.ghjk.j);
  j["k"] = to_json(d.ghjk.k);
  j["A"] = to_json(d.coefficients.A);
  j["B"] = to_json(d.coefficients.B);
  j["C"] = to_json(d.coefficients.C);
  j["D"] = to_json(d.coefficients.D);
  j["genericity"] = to_json(d.genericity);
  j["kernel_residual"] = d.kernel_residual;
  j["route_discrepancy"] = d.route_discrepancy;
  j["expansion_matrix"] = to_json(d.expansion_matrix);
  j["quartic"] = to_json(emit_quartic(d));
  return j;
}

inline Json to_json(const FreeQuadratic& q) {
  Json terms = Json::array();
  for (const auto& [m, c] : q.terms())
    terms.push_back(Json::array({m.a1, m.a2, m.c1, m.c2, c.real(), c.imag()}));
  return terms;
}

inline Json to_json(const RelationSet& set) {
  Json j;
  j["tau"] = to_json(set.period);
  j["b"] = Json::array({set.constants.b1, set.constants.b2});
  Json a = Json::array();
  for (const auto& row : set.constants.values) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_json(v));
    a.push_back(std::move(r));
  }
  j["A"] = std::move(a);
  j["M"] = to_json(set.deformation.M);
  Json log = Json::array();
  for (const auto& row : set.deformation.log) {
    Json e;
    e["rcond"] = row.rcond;
    e["sign"] = row.sign;
    e["trivial"] = row.trivial;
    log.push_back(std::move(e));
  }
  j["construction_log"] = std::move(log);
  Json rels = Json::array();
  Json residuals = Json::array();
  for (const auto& r : set.relations) {
    Json e;
    e["i"] = r.i;
    e["j"] = r.j;
    e["row"] = r.row;
    e["terms"] = to_json(r.expression);
    rels.push_back(std::move(e));
    residuals.push_back(r.residual);
  }
  j["relations"] = std::move(rels);
  j["residuals"] = std::move(residuals);
  return j;
}

} // namespace thetaring

#endif // THETARING_JSON_IO_HPP
