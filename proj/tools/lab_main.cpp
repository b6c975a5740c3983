// growthlab command-line laboratory: growth scans, BFS diameters, torus
// coverage dichotomy, Cayley spectra and mod-m surjectivity checks over
// small SL/GL/PSL groups.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "growthlab/experiments.hpp"
#include "growthlab/report_io.hpp"
#include "growthlab/spectral.hpp"

using namespace growthlab;

namespace {

constexpr const char* kVersion = "0.1.0";

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Options {
  std::string config_file;
  std::string spec;
  std::string gens_file;
  std::string moduli;
  std::string out_dir = "out";
  uint32_t dim = 2;
  uint32_t samples = 100;
  uint64_t seed = 0;
  double delta = 0.05;
  uint64_t cap = 1ull << 20;
  double tol = 1e-8;
  uint64_t max_iters = 200000;
  bool full_tori = false;
};

struct ConfigError : Error {
  using Error::Error;
};

// flat key=value file; values here override command-line flags
void apply_config(Options& o, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + " has no '='");
    auto trim = [](std::string s) {
      size_t x = s.find_first_not_of(" \t\r");
      if (x == std::string::npos) return std::string();
      size_t y = s.find_last_not_of(" \t\r");
      return s.substr(x, y - x + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "spec") o.spec = val;
      else if (key == "gens") o.gens_file = val;
      else if (key == "moduli") o.moduli = val;
      else if (key == "out") o.out_dir = val;
      else if (key == "dim") o.dim = std::stoul(val);
      else if (key == "samples") o.samples = std::stoul(val);
      else if (key == "seed") o.seed = std::stoull(val);
      else if (key == "delta") o.delta = std::stod(val);
      else if (key == "cap") o.cap = std::stoull(val);
      else if (key == "tol") o.tol = std::stod(val);
      else if (key == "max_iters") o.max_iters = std::stoull(val);
      else throw ConfigError("unknown config key '" + key + "'");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("bad value for config key '" + key + "' (line " +
                        std::to_string(lineno) + ")");
    }
  }
}

std::shared_ptr<const GroupSpec> parse_spec(const std::string& text) {
  std::istringstream ss(text);
  std::string fam, dims, ring;
  if (!std::getline(ss, fam, ':') || !std::getline(ss, dims, ':') ||
      !std::getline(ss, ring))
    throw ConfigError("spec must look like FAMILY:d:q (got '" + text + "')");
  Family family;
  if (fam == "SL") family = Family::SL;
  else if (fam == "GL") family = Family::GL;
  else if (fam == "PSL") family = Family::PSL;
  else throw ConfigError("unknown family '" + fam + "'");
  uint32_t d;
  try {
    d = std::stoul(dims);
  } catch (const std::exception&) {
    throw ConfigError("bad dimension '" + dims + "'");
  }
  // ring literal: "p^f" or an integer (prime / prime power -> field,
  // square-free composite -> Z/mZ)
  size_t caret = ring.find('^');
  try {
    if (caret != std::string::npos) {
      uint32_t p = std::stoul(ring.substr(0, caret));
      uint32_t f = std::stoul(ring.substr(caret + 1));
      return GroupSpec::make(family, d, make_field(p, f));
    }
    uint32_t n = std::stoul(ring);
    if (is_prime_u32(n)) return GroupSpec::make(family, d, make_field(n, 1));
    for (uint32_t p = 2; uint64_t(p) * p <= n; ++p) {
      if (n % p) continue;
      uint32_t f = 0;
      uint32_t m = n;
      while (m % p == 0) {
        m /= p;
        ++f;
      }
      if (m == 1) return GroupSpec::make(family, d, make_field(p, f));
      break;
    }
    return GroupSpec::make(family, d, make_zmod(n));
  } catch (const Error& e) {
    throw ConfigError("bad ring literal '" + ring + "': " + e.what());
  } catch (const std::exception&) {
    throw ConfigError("bad ring literal '" + ring + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string default_pair(uint32_t d) {
  if (d == 2) return "1,1;0,1\n1,0;1,1";
  throw ConfigError("no built-in generator pair for d > 2; pass --gens");
}

RunManifest make_manifest(const std::string& command, const Options& o) {
  RunManifest m;
  m.tool_version = kVersion;
  m.command = command;
  m.master_seed = o.seed;
  m.started_at = iso8601_now();
  m.config["spec"] = o.spec;
  m.config["gens"] = o.gens_file;
  m.config["moduli"] = o.moduli;
  m.config["out"] = o.out_dir;
  m.config["dim"] = std::to_string(o.dim);
  m.config["samples"] = std::to_string(o.samples);
  m.config["delta"] = std::to_string(o.delta);
  m.config["cap"] = std::to_string(o.cap);
  m.config["tol"] = std::to_string(o.tol);
  m.config["max_iters"] = std::to_string(o.max_iters);
  return m;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(12);
  ss << v;
  return ss.str();
}

int cmd_growth(const Options& o) {
  if (o.spec.empty()) throw ConfigError("growth requires --spec");
  ExperimentConfig cfg;
  cfg.spec = parse_spec(o.spec);
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.delta_nongrowth = o.delta;
  cfg.group_cap = o.cap;
  cfg.validate();

  RunManifest manifest = make_manifest("growth", o);
  ReportWriter writer(o.out_dir, manifest);
  writer.write_csv_header({"sample", "size_a", "size_a2", "size_a3", "K",
                           "epsilon_hat", "a3_is_group", "nongrowth"});

  auto t0 = Clock::now();
  TrichotomyScan scan = growth_trichotomy_scan(cfg);
  double wall = ms_since(t0);

  for (const auto& s : scan.samples) {
    manifest.task_seeds.push_back(s.task_seed);
    bool sat = s.report.a3_is_group.value_or(false);
    long double ngbound =
        std::pow((long double)s.report.size_a, 1.0L + (long double)o.delta);
    bool nongrowth = (long double)s.report.size_a3 <= ngbound;
    nlohmann::json row{
        {"experiment", "growth"},
        {"spec", s.report.spec_key},
        {"sample", s.index},
        {"task_seed", s.task_seed},
        {"sizes", {{"a", s.report.size_a}, {"a2", s.report.size_a2}, {"a3", s.report.size_a3}}},
        {"K", s.report.tripling()},
        {"epsilon_hat", s.report.epsilon_hat()},
        {"flags",
         {{"a3_is_group", sat}, {"is_symmetric", s.report.is_symmetric},
          {"nongrowth", nongrowth}}},
        {"generators", s.generators},
        {"seed", o.seed},
        {"wall_time_ms", wall / scan.samples.size()},
    };
    writer.write_row(std::move(row));
    writer.write_csv_row({std::to_string(s.index), std::to_string(s.report.size_a),
                          std::to_string(s.report.size_a2),
                          std::to_string(s.report.size_a3), fmt(s.report.tripling()),
                          fmt(s.report.epsilon_hat()), sat ? "1" : "0",
                          nongrowth ? "1" : "0"});
  }
  nlohmann::json summary{
      {"experiment", "growth_summary"},
      {"spec", cfg.spec->key()},
      {"samples", o.samples},
      {"saturating_count", scan.saturating_count},
      {"seed", o.seed},
      {"wall_time_ms", wall},
  };
  if (scan.min_epsilon) {
    summary["min_epsilon"] = *scan.min_epsilon;
    summary["min_epsilon_sample"] = *scan.min_epsilon_index;
  }
  writer.write_row(std::move(summary));
  manifest.finished_at = iso8601_now();
  writer.finish(manifest);
  return 0;
}

int cmd_diameter(const Options& o) {
  if (o.spec.empty()) throw ConfigError("diameter requires --spec");
  auto spec_names = split_list(o.spec);
  std::string gens_text =
      o.gens_file.empty() ? std::string() : read_file(o.gens_file);

  RunManifest manifest = make_manifest("diameter", o);
  ReportWriter writer(o.out_dir, manifest);
  writer.write_csv_header(
      {"spec", "group_order", "diameter", "log_order", "generators"});

  int task_errors = 0;
  std::vector<std::pair<double, double>> fit_points;  // (loglog|G|, log diam)
  for (const auto& name : spec_names) {
    auto t0 = Clock::now();
    nlohmann::json row{{"experiment", "diameter"}, {"spec", name}};
    try {
      auto spec = parse_spec(name);
      std::string text =
          o.gens_file.empty() ? default_pair(spec->dim()) : gens_text;
      auto gens = parse_generators(text, spec);
      if (gens.empty()) throw PreconditionError("generator file is empty");
      ElementSet s = symmetrize(ElementSet::from_elements(gens), true);
      BfsResult bfs = bfs_layers(s, o.cap);
      uint64_t order = group_order(*spec);
      row["group_order"] = order;
      row["set_size"] = s.size();
      row["ball_sizes"] = bfs.ball_sizes;
      row["closure_size"] = bfs.closure_size;
      if (bfs.diameter) {
        row["diameter"] = *bfs.diameter;
        double lg = std::log(double(order));
        fit_points.emplace_back(std::log(lg), std::log(double(*bfs.diameter)));
        writer.write_csv_row({name, std::to_string(order),
                              std::to_string(*bfs.diameter), fmt(lg),
                              std::to_string(gens.size())});
      } else {
        row["diameter"] = nullptr;
        row["error"] = "generators do not generate the group";
        ++task_errors;
      }
    } catch (const Error& e) {
      row["error"] = e.what();
      ++task_errors;
    }
    row["wall_time_ms"] = ms_since(t0);
    writer.write_row(std::move(row));
  }
  // descriptive least-squares fit diam ~ C (log|G|)^c
  if (fit_points.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : fit_points) {
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    double n = double(fit_points.size());
    double c = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double logC = (sy - c * sx) / n;
    writer.write_row(nlohmann::json{{"experiment", "diameter_fit"},
                                    {"C", std::exp(logC)},
                                    {"c", c},
                                    {"points", fit_points.size()}});
  }
  manifest.finished_at = iso8601_now();
  writer.finish(manifest);
  return task_errors ? 2 : 0;
}

int cmd_dichotomy(const Options& o) {
  if (o.spec.empty()) throw ConfigError("dichotomy requires --spec");
  if (o.gens_file.empty()) throw ConfigError("dichotomy requires --gens");
  auto spec = parse_spec(o.spec);
  auto gens = parse_generators(read_file(o.gens_file), spec);
  if (gens.empty()) throw ConfigError("generator file is empty");

  RunManifest manifest = make_manifest("dichotomy", o);
  ReportWriter writer(o.out_dir, manifest);
  writer.write_csv_header({"torus_id", "covered", "torus_order", "regular_order",
                           "t_cap_b", "tr_cap_bb", "threshold_uncovered",
                           "threshold_covered", "ratio"});

  auto t0 = Clock::now();
  ElementSet a = symmetrize(ElementSet::from_elements(gens), true);
  DichotomyReport rep = dichotomy_scan(a, o.delta, o.cap);
  double wall = ms_since(t0);

  for (const auto& r : rep.rows) {
    writer.write_row(nlohmann::json{
        {"experiment", "dichotomy"},
        {"spec", rep.spec_key},
        {"torus_id", r.torus_id},
        {"covered", r.covered},
        {"torus_order", r.torus_order},
        {"regular_order", r.regular_order},
        {"t_cap_b", r.t_cap_b},
        {"tr_cap_bb", r.tr_cap_bb},
        {"threshold_uncovered", r.threshold_uncovered},
        {"threshold_covered", r.threshold_covered},
        {"ratio", r.ratio},
        {"split", split_name(r.split_type)},
        {"defining", r.defining},
        {"seed", o.seed},
        {"wall_time_ms", wall / rep.rows.size()},
    });
    writer.write_csv_row({std::to_string(r.torus_id), r.covered ? "1" : "0",
                          std::to_string(r.torus_order),
                          std::to_string(r.regular_order),
                          std::to_string(r.t_cap_b), std::to_string(r.tr_cap_bb),
                          fmt(r.threshold_uncovered), fmt(r.threshold_covered),
                          fmt(r.ratio)});
  }
  if (o.full_tori) {
    for (const auto& t : enumerate_maximal_tori(spec, o.cap)) {
      nlohmann::json row = torus_record_json(t, /*include_members=*/true);
      row["experiment"] = "torus";
      row["spec"] = spec->key();
      writer.write_row(std::move(row));
    }
  }
  writer.write_row(nlohmann::json{{"experiment", "dichotomy_summary"},
                                  {"spec", rep.spec_key},
                                  {"size_a", rep.size_a},
                                  {"size_a3", rep.size_a3},
                                  {"K", rep.tripling},
                                  {"nongrowth", rep.nongrowth},
                                  {"delta", rep.delta},
                                  {"tori", rep.rows.size()},
                                  {"wall_time_ms", wall}});
  manifest.finished_at = iso8601_now();
  writer.finish(manifest);
  return 0;
}

int cmd_spectra(const Options& o) {
  if (o.spec.empty()) throw ConfigError("spectra requires --spec");
  if (o.gens_file.empty()) throw ConfigError("spectra requires --gens");
  auto spec = parse_spec(o.spec);
  auto gens = parse_generators(read_file(o.gens_file), spec);
  if (gens.empty()) throw ConfigError("generator file is empty");

  RunManifest manifest = make_manifest("spectra", o);
  ReportWriter writer(o.out_dir, manifest);
  writer.write_csv_header(
      {"spec", "graph_order", "s_size", "lambda_hat", "gap", "cheeger", "iterations"});

  auto t0 = Clock::now();
  int rc = 0;
  ElementSet s = symmetrize(ElementSet::from_elements(gens), false);
  nlohmann::json row{{"experiment", "spectra"}, {"spec", spec->key()}};
  try {
    SpectralReport rep = second_eigenvalue(s, o.tol, o.max_iters, o.seed, o.cap);
    row["graph_order"] = rep.graph_order;
    row["s_size"] = rep.s_size;
    row["lambda_hat"] = rep.lambda_hat;
    row["gap"] = rep.gap();
    row["cheeger_lower"] = rep.cheeger_lower();
    row["iterations"] = rep.iterations;
    row["tol"] = rep.tol;
    row["seed"] = rep.seed;
    writer.write_csv_row({spec->key(), std::to_string(rep.graph_order),
                          std::to_string(rep.s_size), fmt(rep.lambda_hat),
                          fmt(rep.gap()), fmt(rep.cheeger_lower()),
                          std::to_string(rep.iterations)});
  } catch (const Error& e) {
    row["error"] = e.what();
    rc = 2;
  }
  row["wall_time_ms"] = ms_since(t0);
  writer.write_row(std::move(row));
  manifest.finished_at = iso8601_now();
  writer.finish(manifest);
  return rc;
}

int cmd_mvw(const Options& o) {
  if (o.gens_file.empty()) throw ConfigError("mvw requires --gens");
  if (o.moduli.empty()) throw ConfigError("mvw requires --moduli");
  std::vector<uint32_t> moduli;
  for (const auto& tok : split_list(o.moduli)) {
    try {
      moduli.push_back(std::stoul(tok));
    } catch (const std::exception&) {
      throw ConfigError("bad modulus '" + tok + "'");
    }
  }
  auto mats = parse_integer_matrices(read_file(o.gens_file), o.dim);
  if (mats.empty()) throw ConfigError("generator file is empty");

  RunManifest manifest = make_manifest("mvw", o);
  ReportWriter writer(o.out_dir, manifest);
  writer.write_csv_header(
      {"modulus", "surjective", "closure_size", "group_order", "lambda_hat", "gap"});

  auto t0 = Clock::now();
  int rc = 0;
  FamilyScan scan;
  try {
    scan = family_scan(mats, o.dim, moduli, o.tol, o.max_iters, o.cap, o.seed);
  } catch (const Error& e) {
    writer.write_row(nlohmann::json{{"experiment", "mvw"}, {"error", e.what()}});
    manifest.finished_at = iso8601_now();
    writer.finish(manifest);
    return 2;
  }
  for (const auto& e : scan.entries) {
    nlohmann::json per_prime = nlohmann::json::array();
    for (const auto& v : e.mvw.per_prime)
      per_prime.push_back(nlohmann::json{{"prime", v.prime},
                                         {"closure_size", v.closure_size},
                                         {"order", v.order},
                                         {"surjective", v.surjective}});
    nlohmann::json row{{"experiment", "mvw"},
                       {"modulus", e.modulus},
                       {"dim", e.mvw.dim},
                       {"surjective", e.mvw.surjective},
                       {"closure_size", e.mvw.closure_size},
                       {"group_order", e.mvw.order},
                       {"per_prime", per_prime},
                       {"seed", o.seed}};
    std::string lam = "", gap = "";
    if (e.spectral) {
      row["lambda_hat"] = e.spectral->lambda_hat;
      row["gap"] = e.spectral->gap();
      row["iterations"] = e.spectral->iterations;
      lam = fmt(e.spectral->lambda_hat);
      gap = fmt(e.spectral->gap());
    } else {
      row["skipped"] = "reduction is not surjective";
    }
    writer.write_row(std::move(row));
    writer.write_csv_row({std::to_string(e.modulus), e.mvw.surjective ? "1" : "0",
                          std::to_string(e.mvw.closure_size),
                          std::to_string(e.mvw.order), lam, gap});
  }
  nlohmann::json summary{{"experiment", "mvw_summary"},
                         {"moduli", moduli},
                         {"wall_time_ms", ms_since(t0)}};
  if (scan.min_gap) summary["min_gap"] = *scan.min_gap;
  writer.write_row(std::move(summary));
  manifest.finished_at = iso8601_now();
  writer.finish(manifest);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"growthlab: a desk-scale lab for growth, diameters, tori and "
               "expansion in small matrix groups"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config_file,
                    "flat key=value config file; overrides flags");
    cmd->add_option("--spec", opt.spec, "group spec FAMILY:d:q|m, e.g. SL:2:5");
    cmd->add_option("--gens", opt.gens_file, "generator matrix file");
    cmd->add_option("--moduli", opt.moduli, "comma-separated moduli list");
    cmd->add_option("--dim", opt.dim, "matrix dimension for integer generators");
    cmd->add_option("--samples", opt.samples, "number of sampled sets");
    cmd->add_option("--seed", opt.seed, "master seed");
    cmd->add_option("--delta", opt.delta, "non-growth exponent knob");
    cmd->add_option("--cap", opt.cap, "group order / expansion cap");
    cmd->add_option("--tol", opt.tol, "eigenvalue tolerance");
    cmd->add_option("--max-iters", opt.max_iters, "power iteration limit");
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_flag("--full-tori", opt.full_tori,
                  "emit full torus member lists (dichotomy)");
  };

  CLI::App* growth = app.add_subcommand("growth", "sampled growth trichotomy scan");
  CLI::App* diameter = app.add_subcommand("diameter", "BFS diameters and polylog fit");
  CLI::App* dichotomy = app.add_subcommand("dichotomy", "torus coverage dichotomy scan");
  CLI::App* spectra = app.add_subcommand("spectra", "Cayley graph second eigenvalue");
  CLI::App* mvw = app.add_subcommand("mvw", "mod-m surjectivity and expander family scan");
  for (auto* c : {growth, diameter, dichotomy, spectra, mvw}) add_common(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 1 : 0;
  }

  try {
    if (!opt.config_file.empty()) apply_config(opt, opt.config_file);
    if (growth->parsed()) return cmd_growth(opt);
    if (diameter->parsed()) return cmd_diameter(opt);
    if (dichotomy->parsed()) return cmd_dichotomy(opt);
    if (spectra->parsed()) return cmd_spectra(opt);
    if (mvw->parsed()) return cmd_mvw(opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "task error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
