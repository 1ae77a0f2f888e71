#include "thetaring/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

using thetaring::cli::JobConfig;

struct RawFlags {
  std::string tau1, tau2, tau3;
  double b1 = 0.0, b2 = 0.0, eps = 1e-14;
  std::string output, format, config;
  long long a1 = 0, a2 = 0;
  int l = 1, s = 2;
  std::string lhs, rhs;
};

struct Options {
  CLI::Option *tau1, *tau2, *tau3, *b1, *b2, *eps, *output, *format, *a1, *a2, *l, *s, *lhs, *rhs;
};

Options add_options(CLI::App* app, RawFlags& raw) {
  Options o{};
  o.tau1 = app->add_option("--tau1", raw.tau1, "tau1 as re+im");
  o.tau2 = app->add_option("--tau2", raw.tau2, "tau2 as re+im");
  o.tau3 = app->add_option("--tau3", raw.tau3, "tau3 as re+im");
  o.b1 = app->add_option("--b1", raw.b1, "translation b1");
  o.b2 = app->add_option("--b2", raw.b2, "translation b2");
  o.eps = app->add_option("--eps", raw.eps, "absolute theta truncation error");
  o.output = app->add_option("--output,-o", raw.output, "output file (default stdout)");
  o.format = app->add_option("--format", raw.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  o.a1 = app->add_option("--a1", raw.a1, "theta index a1");
  o.a2 = app->add_option("--a2", raw.a2, "theta index a2");
  o.l = app->add_option("--l", raw.l, "theta degree");
  o.s = app->add_option("--s", raw.s, "theta shear");
  o.lhs = app->add_option("--lhs", raw.lhs, "left ring element (JSON file)");
  o.rhs = app->add_option("--rhs", raw.rhs, "right ring element (JSON file)");
  app->add_option("--config", raw.config, "JSON file whose keys mirror the flags");
  return o;
}

void apply_flags(JobConfig& cfg, const RawFlags& raw, const Options& o) {
  using thetaring::cli::parse_complex;
  if (o.tau1->count()) cfg.period.tau1 = parse_complex(raw.tau1);
  if (o.tau2->count()) cfg.period.tau2 = parse_complex(raw.tau2);
  if (o.tau3->count()) cfg.period.tau3 = parse_complex(raw.tau3);
  if (o.b1->count()) cfg.b1 = raw.b1;
  if (o.b2->count()) cfg.b2 = raw.b2;
  if (o.eps->count()) cfg.eps = raw.eps;
  if (o.output->count()) cfg.output = raw.output;
  if (o.format->count())
    cfg.format = raw.format == "text" ? thetaring::cli::Format::Text : thetaring::cli::Format::Json;
  if (o.a1->count()) cfg.a1 = raw.a1;
  if (o.a2->count()) cfg.a2 = raw.a2;
  if (o.l->count()) cfg.l = raw.l;
  if (o.s->count()) cfg.s = raw.s;
  if (o.lhs->count()) cfg.lhs = raw.lhs;
  if (o.rhs->count()) cfg.rhs = raw.rhs;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta-function structure constants for abelian and Kummer surface rings"};
  app.require_subcommand(1);

  const char* names[] = {"theta", "kummer-quartic", "sklyanin-relations",
                         "verify-kummer", "verify-sklyanin", "ring-product"};
  const char* help[] = {
      "evaluate one theta series value",
      "compute the Kummer quartic coefficients",
      "generate the 36 quadratic relations",
      "check the degree-4 Kummer relation",
      "check the 36 quadratic relations",
      "multiply two serialized ring elements",
  };

  RawFlags raw;
  std::vector<std::pair<CLI::App*, Options>> subs;
  for (std::size_t i = 0; i < std::size(names); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], help[i]);
    subs.emplace_back(sub, add_options(sub, raw));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : thetaring::cli::kUsage;
  }

  try {
    for (const auto& [sub, opts] : subs) {
      if (!sub->parsed()) continue;
      JobConfig cfg;
      if (!raw.config.empty()) thetaring::cli::apply_config(cfg, thetaring::cli::read_json_file(raw.config));
      cfg.command = thetaring::cli::command_from_string(sub->get_name());
      apply_flags(cfg, raw, opts);
      return thetaring::cli::run(cfg);
    }
  } catch (const thetaring::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return thetaring::cli::kUsage;
  }
  return thetaring::cli::kUsage;
}
