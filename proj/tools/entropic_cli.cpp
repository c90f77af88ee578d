#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "entropic/acceptance.hpp"
#include "entropic/entropic.hpp"
#include "entropic/error.hpp"
#include "entropic/io.hpp"
#include "entropic/metrics.hpp"
#include "entropic/transport.hpp"

namespace fs = std::filesystem;
using namespace entropic;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;
constexpr int kExitUsage = 64;

struct Config {
  std::string domain = "interval";
  double beta = 0.0;
  std::optional<std::uint64_t> seed;
  int count = 1;
  int grid_n = 256;
  double truncation_remainder = 1e-10;
  std::size_t max_terms = Truncation::kMaxTerms;
  std::size_t samples = 100000;
  std::string out = "out";
  std::vector<std::string> emit{"json", "csv"};
  bool verify_involution = false;
  std::vector<int> only;
  bool canary = false;
  std::string input;
};

bool emits(const Config& c, const char* what) {
  return std::find(c.emit.begin(), c.emit.end(), what) != c.emit.end();
}

fs::path out_dir(const Config& c) {
  if (const char* env = std::getenv("ENTROPIC_OUT"); env && *env) return env;
  return c.out;
}

std::string index_name(const char* stem, int k) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%05d", stem, k);
  return buf;
}

Json config_json(const Config& c, const std::string& command) {
  Json j{{"command", command}, {"domain", c.domain}};
  if (c.seed) j["seed"] = *c.seed;
  if (c.beta > 0.0) j["beta"] = c.beta;
  j["count"] = c.count;
  j["grid_n"] = c.grid_n;
  j["truncation_remainder"] = c.truncation_remainder;
  j["max_terms"] = c.max_terms;
  j["samples"] = c.samples;
  j["emit"] = c.emit;
  return j;
}

Truncation truncation(const Config& c) { return {c.truncation_remainder, c.max_terms}; }

void write_measure(const fs::path& dir, const std::string& stem, const Measure& mu, const Config& c,
                   std::vector<std::string>& files) {
  if (emits(c, "json")) {
    write_json(dir / (stem + ".json"), to_json(mu));
    files.push_back(stem + ".json");
  }
  if (!emits(c, "csv")) return;
  if (const auto* d = mu.get_if<DiscreteMeasure>()) {
    write_points_csv(dir / (stem + ".csv"), d->atoms, d->weights);
  } else if (const auto* e = mu.get_if<EmpiricalMeasure>()) {
    write_points_csv(dir / (stem + ".csv"), e->points);
  } else {
    // Distribution function breakpoints for plotting.
    std::string s = "x,F\n";
    for (const auto& p : to_line_measure(mu).curve()) s += format_double(p.x) + "," + format_double(p.y) + "\n";
    write_text(dir / (stem + ".csv"), s);
  }
  files.push_back(stem + ".csv");
}

int cmd_sample_dirichlet(const Config& c) {
  const auto domain = parse_domain(c.domain);
  const fs::path dir = out_dir(c);
  std::vector<std::string> files;
  for (int k = 0; k < c.count; ++k) {
    Rng rng(Rng::derive(*c.seed, k));
    const auto s = sample_dirichlet_ferguson(c.beta, domain, rng, truncation(c));
    write_measure(dir, index_name("nu", k), s.nu, c, files);
  }
  Json m{{"config", config_json(c, "sample-dirichlet")}, {"domain_hash", domain_hash(*domain)}, {"files", files}};
  write_json(dir / "manifest.json", m);
  std::cout << "wrote " << c.count << " samples to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_sample_entropic(const Config& c) {
  const auto domain = parse_domain(c.domain);
  const fs::path dir = out_dir(c);
  EntropicOptions opt;
  opt.cloud_points = c.samples;
  const double buffer = build_grid(domain, c.grid_n)->eps;
  std::vector<std::string> files;
  Json failures = Json::array();
  for (int k = 0; k < c.count; ++k) {
    const std::string name = index_name("sample", k);
    const fs::path sd = dir / name;
    try {
      const auto s = sample_entropic(c.beta, domain, Rng::derive(*c.seed, k), truncation(c), opt);
      write_measure(sd, "nu", s.nu.nu, c, files);
      write_measure(sd, "mu", s.mu, c, files);
      if (s.tessellation) {
        write_json(sd / "tessellation.json", to_json(*s.tessellation));
        files.push_back(name + "/tessellation.json");
      }
      Json holes = to_json(s);
      holes["probe_buffer"] = buffer;
      holes["probes"] = hole_report(s, buffer);
      write_json(sd / "holes.json", holes);
      files.push_back(name + "/holes.json");
    } catch (const SampleError& e) {
      Json f = e.replay();
      f["sample"] = k;
      f["error"] = e.what();
      f["residual"] = e.residual();
      write_json(sd / "replay.json", f);
      failures.push_back(f);
      std::cerr << name << ": " << e.what() << " (residual " << e.residual() << ")\n";
    }
  }
  Json m{{"config", config_json(c, "sample-entropic")},
         {"domain_hash", domain_hash(*domain)},
         {"files", files},
         {"failures", failures}};
  write_json(dir / "manifest.json", m);
  std::cout << "wrote " << (c.count - static_cast<int>(failures.size())) << " of " << c.count << " samples to "
            << dir.string() << "\n";
  return failures.empty() ? kExitOk : kExitSolver;
}

int cmd_conjugate(const Config& c) {
  const Measure mu = measure_from_json(read_json(c.input));
  const fs::path dir = out_dir(c);
  std::vector<std::string> files;
  Json m{{"config", config_json(c, "conjugate")}, {"input", c.input}, {"domain_hash", domain_hash(mu.domain())}};
  if (mu.domain().is_one_dimensional()) {
    const Measure conj = conjugate_measure_1d(mu);
    write_measure(dir, "conjugate", conj, c, files);
    if (c.verify_involution) {
      const double gap = wasserstein_1d(conjugate_measure_1d(conj), mu);
      m["involution_gap"] = gap;
      std::cout << "involution gap: " << format_double(gap) << "\n";
    }
  } else {
    if (!c.seed) throw CLI::RequiredError("--seed");
    Rng rng(*c.seed);
    const auto b = brenier_map_discrete(mu);
    const Measure conj = conjugate_measure_2d(*b.tessellation, c.samples, rng);
    write_measure(dir, "conjugate", conj, c, files);
    write_json(dir / "tessellation.json", to_json(*b.tessellation));
    files.push_back("tessellation.json");
    if (c.verify_involution) {
      // No exact second conjugation in 2D; report how well the cells carry the input weights.
      m["cell_mass_residual"] = b.tessellation->residual;
      std::cout << "cell mass residual: " << format_double(b.tessellation->residual) << "\n";
    }
  }
  m["files"] = files;
  write_json(dir / "manifest.json", m);
  return kExitOk;
}

int cmd_tessellate(const Config& c) {
  const Json in = read_json(c.input);
  const auto domain = domain_from_json(in.at("domain"));
  std::vector<Point> sites;
  for (const auto& p : in.at("sites")) sites.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  const auto masses = in.at("masses").get<std::vector<double>>();
  const fs::path dir = out_dir(c);
  Json report{{"input", c.input}, {"domain_hash", domain_hash(*domain)}};
  try {
    const auto t = semidiscrete_weights(domain, sites, masses);
    write_json(dir / "tessellation.json", to_json(t));
    report["converged"] = true;
    report["residual"] = t.residual;
    report["iterations"] = t.iterations;
    write_json(dir / "report.json", report);
    std::cout << "residual " << format_double(t.residual) << " after " << t.iterations << " iterations\n";
    return kExitOk;
  } catch (const SolverError& e) {
    report["converged"] = false;
    report["residual"] = e.residual();
    report["iterations"] = e.iterations();
    write_json(dir / "report.json", report);
    std::cerr << e.what() << ": residual " << format_double(e.residual()) << "\n";
    return kExitSolver;
  }
}

int cmd_validate(const Config& c) {
  AcceptanceOptions opt;
  if (c.seed) opt.seed = *c.seed;
  opt.canary = c.canary;
  std::vector<TestReport> reports;
  bool ok = true;
  std::vector<int> ids = c.only;
  if (ids.empty())
    for (int k = 1; k <= kCriteria; ++k) ids.push_back(k);
  for (int id : ids) {
    const auto r = run_criterion(id, opt);
    std::cout << format_result(r) << std::endl;
    if (!r.pass) {
      ok = false;
      std::cout << "     replay: entropic validate --only " << id << " --seed " << opt.seed << "\n";
    }
    reports.push_back(to_report(r, opt.seed));
  }
  const fs::path dir = out_dir(c);
  write_text(dir / "reports.json", reports_to_json(reports) + "\n");
  write_text(dir / "reports.xml", reports_to_junit(reports, "acceptance"));
  return ok ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic measure toolkit"};
  app.require_subcommand(1);
  Config c;

  auto common = [&](CLI::App* s, bool stochastic) {
    s->add_option("--domain", c.domain, "interval, circle, square, or a domain JSON file");
    auto* seed = s->add_option("--seed", c.seed, "random seed");
    if (stochastic) seed->required();
    s->add_option("--out", c.out, "output directory (ENTROPIC_OUT overrides)");
    s->add_option("--emit", c.emit, "output formats")->delimiter(',')->check(CLI::IsMember({"json", "csv"}));
  };
  auto sampling = [&](CLI::App* s) {
    common(s, true);
    s->add_option("--beta", c.beta, "intensity of the Dirichlet process")->required();
    s->add_option("--count", c.count, "number of samples")->check(CLI::PositiveNumber);
    s->add_option("--truncation-remainder", c.truncation_remainder, "stop when the unbroken stick is below this");
    s->add_option("--max-terms", c.max_terms, "maximal number of sticks");
  };

  auto* sd = app.add_subcommand("sample-dirichlet", "draw Dirichlet-Ferguson measures");
  sampling(sd);
  auto* se = app.add_subcommand("sample-entropic", "draw entropic measures");
  sampling(se);
  se->add_option("--samples", c.samples, "points in 2D clouds")->check(CLI::PositiveNumber);
  se->add_option("--grid-n", c.grid_n, "grid resolution for the hole probe buffer")->check(CLI::PositiveNumber);

  auto* cj = app.add_subcommand("conjugate", "conjugate a measure given as JSON");
  common(cj, false);
  cj->add_option("measure", c.input, "measure JSON file")->required()->check(CLI::ExistingFile);
  cj->add_option("--samples", c.samples, "points in 2D clouds")->check(CLI::PositiveNumber);
  cj->add_flag("--verify-involution", c.verify_involution, "conjugate twice and report the gap");

  auto* ts = app.add_subcommand("tessellate", "semi-discrete transport onto sites with masses");
  ts->add_option("input", c.input, "JSON with domain, sites and masses")->required()->check(CLI::ExistingFile);
  ts->add_option("--out", c.out, "output directory (ENTROPIC_OUT overrides)");

  auto* va = app.add_subcommand("validate", "run the acceptance battery");
  va->add_option("--only", c.only, "criteria to run")->delimiter(',')->check(CLI::Range(1, kCriteria));
  va->add_option("--seed", c.seed, "base seed");
  va->add_option("--out", c.out, "report directory (ENTROPIC_OUT overrides)");
  va->add_flag("--canary", c.canary)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sd) return cmd_sample_dirichlet(c);
    if (*se) return cmd_sample_entropic(c);
    if (*cj) return cmd_conjugate(c);
    if (*ts) return cmd_tessellate(c);
    if (*va) return cmd_validate(c);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << " (residual " << e.residual() << ")\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
