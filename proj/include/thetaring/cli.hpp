#ifndef THETARING_CLI_HPP
#define THETARING_CLI_HPP

// Command dispatch for the thetaring executable. Exit codes:
//   0 success, 1 usage error, 2 invalid period or unreachable tolerance,
//   3 degenerate input, 4 residual check failed.

#include "thetaring/error.hpp"
#include "thetaring/fukaya_ring.hpp"
#include "thetaring/json_io.hpp"
#include "thetaring/kummer_mirror.hpp"
#include "thetaring/sklyanin.hpp"
#include "thetaring/theta.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace thetaring::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInvalidPeriod = 2,
  kDegenerate = 3,
  kResidualFailure = 4,
};

enum class Command { Theta, KummerQuartic, SklyaninRelations, VerifyKummer, VerifySklyanin, RingProduct };

inline Command command_from_string(const std::string& name) {
  if (name == "theta") return Command::Theta;
  if (name == "kummer-quartic") return Command::KummerQuartic;
  if (name == "sklyanin-relations") return Command::SklyaninRelations;
  if (name == "verify-kummer") return Command::VerifyKummer;
  if (name == "verify-sklyanin") return Command::VerifySklyanin;
  if (name == "ring-product") return Command::RingProduct;
  throw UsageError("unknown command '" + name + "'");
}

enum class Format { Json, Text };

struct JobConfig {
  Command command = Command::KummerQuartic;
  PeriodMatrix period{{0.0, 1.1}, {0.0, 1.3}, {0.0, 0.1}};
  double b1 = 0.0;
  double b2 = 0.0;
  double eps = 1e-14;
  std::string output;  ///< empty: stdout
  Format format = Format::Json;

  // theta
  long long a1 = 0;
  long long a2 = 0;
  int l = 1;
  int s = 2;

  // ring-product operands: paths to serialized ring elements
  std::string lhs;
  std::string rhs;
};

/// Parses "re+im" / "re-im" (two decimal fields; the separator is the sign
/// that is neither leading nor part of an exponent).
inline Complex parse_complex(const std::string& text) {
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < text.size(); ++i) {
    const char c = text[i];
    if ((c == '+' || c == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos)
    throw UsageError("complex value '" + text + "' must be written re+im");
  const auto parse = [&](const std::string& field) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != field.size() || field.empty())
      throw UsageError("malformed complex value '" + text + "'");
    return v;
  };
  std::string im = text.substr(split);
  if (im.front() == '+') im.erase(0, 1);
  return {parse(text.substr(0, split)), parse(im)};
}

/// Applies keys of a JSON config object (same names as the flags).
inline void apply_config(JobConfig& cfg, const Json& j) {
  const auto complex_field = [](const Json& v) {
    return v.is_string() ? parse_complex(v.get<std::string>()) : complex_from_json(v);
  };
  if (j.contains("command")) cfg.command = command_from_string(j["command"].get<std::string>());
  if (j.contains("tau1")) cfg.period.tau1 = complex_field(j["tau1"]);
  if (j.contains("tau2")) cfg.period.tau2 = complex_field(j["tau2"]);
  if (j.contains("tau3")) cfg.period.tau3 = complex_field(j["tau3"]);
  if (j.contains("b1")) cfg.b1 = j["b1"].get<double>();
  if (j.contains("b2")) cfg.b2 = j["b2"].get<double>();
  if (j.contains("eps")) cfg.eps = j["eps"].get<double>();
  if (j.contains("output")) cfg.output = j["output"].get<std::string>();
  if (j.contains("format")) {
    const auto f = j["format"].get<std::string>();
    if (f != "json" && f != "text") throw UsageError("format must be json or text");
    cfg.format = f == "json" ? Format::Json : Format::Text;
  }
  if (j.contains("a1")) cfg.a1 = j["a1"].get<long long>();
  if (j.contains("a2")) cfg.a2 = j["a2"].get<long long>();
  if (j.contains("l")) cfg.l = j["l"].get<int>();
  if (j.contains("s")) cfg.s = j["s"].get<int>();
  if (j.contains("lhs")) cfg.lhs = j["lhs"].get<std::string>();
  if (j.contains("rhs")) cfg.rhs = j["rhs"].get<std::string>();
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError("invalid JSON in '" + path + "': " + e.what());
  }
}

namespace detail {

inline std::string format_complex(Complex z) {
  std::ostringstream os;
  os << format_double(z.real()) << (std::signbit(z.imag()) ? " - " : " + ")
     << format_double(std::abs(z.imag())) << "i";
  return os.str();
}

inline std::string quadratic_text(const FreeQuadratic& q) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : q.terms()) {
    if (!first) os << " + ";
    first = false;
    const std::string pair = generator_name(m.a1, m.a2) + "*" + generator_name(m.c1, m.c2);
    if (c == Complex{1.0}) os << pair;
    else if (c == Complex{-1.0}) os << "-" << pair;
    else os << "(" << format_complex(c) << ")*" << pair;
  }
  return first ? "0" : os.str();
}

inline void write_quartic_text(std::ostream& os, const QuarticData& d) {
  os << "tau1 = " << format_complex(d.period.tau1) << "\n"
     << "tau2 = " << format_complex(d.period.tau2) << "\n"
     << "tau3 = " << format_complex(d.period.tau3) << "\n"
     << "(g : h : j : k) = (" << format_complex(d.ghjk.g) << " : " << format_complex(d.ghjk.h)
     << " : " << format_complex(d.ghjk.j) << " : " << format_complex(d.ghjk.k) << ")\n"
     << "A = " << format_complex(d.coefficients.A) << "\n"
     << "B = " << format_complex(d.coefficients.B) << "\n"
     << "C = " << format_complex(d.coefficients.C) << "\n"
     << "D = " << format_complex(d.coefficients.D) << "\n"
     << "kernel residual = " << format_double(d.kernel_residual) << "\n"
     << "route discrepancy = " << format_double(d.route_discrepancy) << "\n";
  for (const auto& c : d.genericity) os << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.name << "\n";
  os << "quartic:\n";
  const auto poly = emit_quartic(d);
  bool first = true;
  for (const auto& m : normal_form_monomials()) {
    if (!poly.coefficients.contains(m)) continue;
    os << (first ? "    " : "  + ") << "(" << format_complex(poly.coeff(m)) << ")*" << monomial_name(m) << "\n";
    first = false;
  }
  os << "  = 0\n";
}

inline void write_relations_text(std::ostream& os, const RelationSet& set, bool residuals_only) {
  os << "b = (" << format_double(set.constants.b1) << ", " << format_double(set.constants.b2) << ")\n";
  if (!residuals_only) {
    os << "M =\n";
    for (Eigen::Index r = 0; r < 4; ++r) {
      os << "  [";
      for (Eigen::Index c = 0; c < 5; ++c) os << (c ? ", " : "") << format_complex(set.deformation.M(r, c));
      os << "]\n";
    }
  }
  for (const auto& rel : set.relations) {
    os << "(" << rel.i << "," << rel.j << ") row " << rel.row << ": residual " << format_double(rel.residual);
    if (!residuals_only) {
      const auto minus = commutator_vector(rel.i, rel.j)[static_cast<std::size_t>(rel.row - 1)];
      FreeQuadratic rhs = minus - rel.expression;
      os << "\n    " << quadratic_text(minus) << " = " << quadratic_text(rhs);
    }
    os << "\n";
  }
  os << "max residual = " << format_double(set.max_residual()) << "\n";
}

inline double sup_abs(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

} // namespace detail

/// Runs one job, writing the report to `out` and diagnostics to `err`.
inline int run(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  const Tolerance tol{cfg.eps};
  const bool json = cfg.format == Format::Json;
  try {
    if (!(cfg.eps > 0.0)) throw UsageError("--eps must be positive");
    if (cfg.command != Command::RingProduct) cfg.period.validate();

    switch (cfg.command) {
    case Command::Theta: {
      const ThetaArgs args{cfg.a1, cfg.a2, cfg.b1, cfg.b2, cfg.l, cfg.s};
      const Complex value = theta_general(cfg.period, args, tol);
      if (json) {
        Json j;
        j["tau"] = to_json(cfg.period);
        j["a1"] = cfg.a1;
        j["a2"] = cfg.a2;
        j["b"] = Json::array({cfg.b1, cfg.b2});
        j["l"] = cfg.l;
        j["s"] = cfg.s;
        j["eps"] = cfg.eps;
        j["radius"] = truncation_radius(cfg.period, args, tol);
        j["value"] = to_json(value);
        dump_json(out, j);
      } else {
        out << "theta(" << cfg.a1 << ", " << cfg.a2 << ", " << format_double(cfg.b1) << ", "
            << format_double(cfg.b2) << ", l=" << cfg.l << ", s=" << cfg.s
            << ") = " << detail::format_complex(value) << "\n";
      }
      return kOk;
    }
    case Command::KummerQuartic: {
      const QuarticData d = quartic_coefficients(cfg.period, tol);
      if (json) dump_json(out, to_json(d));
      else detail::write_quartic_text(out, d);
      return kOk;
    }
    case Command::VerifyKummer: {
      const CentralRelation rel = central_relation(cfg.period, tol);
      const bool pass = rel.residual <= 1e-9 && rel.quartic.kernel_residual <= 1e-9 &&
                        rel.quartic.route_discrepancy <= 1e-9;
      if (json) {
        Json j;
        j["tau"] = to_json(cfg.period);
        j["relation_residual"] = rel.residual;
        j["kernel_residual"] = rel.quartic.kernel_residual;
        j["route_discrepancy"] = rel.quartic.route_discrepancy;
        j["pass"] = pass;
        dump_json(out, j);
      } else {
        out << "relation residual = " << format_double(rel.residual) << "\n"
            << "kernel residual = " << format_double(rel.quartic.kernel_residual) << "\n"
            << "route discrepancy = " << format_double(rel.quartic.route_discrepancy) << "\n"
            << (pass ? "PASS" : "FAIL") << "\n";
      }
      if (!pass) {
        err << "residual check failed: max residual "
            << format_double(std::max({rel.residual, rel.quartic.kernel_residual,
                                       rel.quartic.route_discrepancy}))
            << "\n";
        return kResidualFailure;
      }
      return kOk;
    }
    case Command::SklyaninRelations:
    case Command::VerifySklyanin: {
      const RelationSet set = generate_and_verify(cfg.period, cfg.b1, cfg.b2, tol);
      const bool full = cfg.command == Command::SklyaninRelations;
      if (json) {
        if (full) {
          dump_json(out, to_json(set));
        } else {
          Json j;
          j["tau"] = to_json(cfg.period);
          j["b"] = Json::array({cfg.b1, cfg.b2});
          j["M_norm"] = detail::sup_abs(set.deformation.M);
          Json res = Json::array();
          for (const auto& r : set.relations) res.push_back(r.residual);
          j["residuals"] = std::move(res);
          j["max_residual"] = set.max_residual();
          j["rank"] = relation_rank(set.relations);
          dump_json(out, j);
        }
      } else {
        detail::write_relations_text(out, set, !full);
      }
      return kOk;
    }
    case Command::RingProduct: {
      if (cfg.lhs.empty() || cfg.rhs.empty()) throw UsageError("ring-product needs --lhs and --rhs");
      const RingElement x = ring_element_from_json(read_json_file(cfg.lhs));
      const RingElement y = ring_element_from_json(read_json_file(cfg.rhs));
      x.family().validate();
      const RingElement z = multiply(x, y);
      if (json) {
        dump_json(out, to_json(z));
      } else {
        out << "degree " << z.degree() << " (" << to_string(z.family().kind) << ")\n";
        for (const auto& [idx, c] : z.terms())
          out << "  Y(" << idx.a1 << "," << idx.a2 << "): " << detail::format_complex(c) << "\n";
      }
      return kOk;
    }
    }
  } catch (const DomainError& e) {
    err << "invalid period: " << e.what() << "\n";
    return kInvalidPeriod;
  } catch (const PrecisionError& e) {
    err << "unreachable tolerance: " << e.what() << "\n";
    return kInvalidPeriod;
  } catch (const DegeneracyError& e) {
    err << "degenerate input: violated condition '" << e.condition() << "': " << e.what() << "\n";
    return kDegenerate;
  } catch (const ModelError& e) {
    err << "residual check failed: " << e.what() << " (max residual " << format_double(e.residual()) << ")\n";
    return kResidualFailure;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

/// Runs and routes the report to cfg.output (stdout when empty).
inline int run(const JobConfig& cfg) {
  if (cfg.output.empty()) return run(cfg, std::cout, std::cerr);
  std::ostringstream buf;
  const int code = run(cfg, buf, std::cerr);
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) {
    std::cerr << "cannot write '" << cfg.output << "'\n";
    return kUsage;
  }
  file << buf.str();
  return code;
}

} // namespace thetaring::cli

#endif // THETARING_CLI_HPP
