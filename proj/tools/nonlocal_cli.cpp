// Command-line front end: simulate counts from the qutrit model, analyze
// counts files, sweep the gamma grid, and dump local-polytope vertices.
//
// Exit codes: 0 success; 2 schema/parse error; 3 numerical non-convergence;
// 4 precondition violation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nonlocal/bell.hpp"
#include "nonlocal/bootstrap.hpp"
#include "nonlocal/capacity.hpp"
#include "nonlocal/counts_io.hpp"
#include "nonlocal/polytope.hpp"
#include "nonlocal/quantum.hpp"
#include "nonlocal/rng.hpp"
#include "nonlocal/sweep.hpp"
#include "nonlocal/version.hpp"

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitPrecondition = 4;

struct MeasureList {
  bool i2 = false;
  bool i3 = false;
  bool dist_local = false;
  bool dist_ns = false;
  bool capacity = false;
};

MeasureList parse_measures(const std::string& list) {
  MeasureList m;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    for (char& ch : tok) ch = static_cast<char>(std::tolower(ch));
    if (tok == "i2")
      m.i2 = true;
    else if (tok == "i3")
      m.i3 = true;
    else if (tok == "dist_local")
      m.dist_local = true;
    else if (tok == "dist_ns")
      m.dist_ns = true;
    else if (tok == "capacity")
      m.capacity = true;
    else if (!tok.empty())
      throw nonlocal::InvalidParameter("unknown measure '" + tok +
                                       "' (use i2,i3,dist_local,dist_ns,capacity)");
  }
  if (!m.i2 && !m.i3 && !m.dist_local && !m.dist_ns && !m.capacity)
    throw nonlocal::InvalidParameter("no measures requested");
  return m;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw nonlocal::ParseError("cannot write '" + path + "'");
  out << text;
}

int run_simulate(double gamma, double lambda, const std::string& out,
                 long long per_block, bool seeded, std::uint64_t seed) {
  const nonlocal::BehaviorTable p = nonlocal::born_behavior(gamma, lambda);
  nonlocal::CountsRecord rec;
  rec.dims = p.dims();
  rec.counts.resize(rec.dims.entries());
  if (seeded) {
    nonlocal::Rng rng(seed);
    for (int e = 0; e < rec.dims.entries(); ++e)
      rec.counts[e] =
          rng.poisson(p.entries()[e] * static_cast<double>(per_block));
  } else {
    for (int e = 0; e < rec.dims.entries(); ++e)
      rec.counts[e] =
          std::llround(p.entries()[e] * static_cast<double>(per_block));
  }
  write_text(out, nonlocal::counts_to_json(rec) + "\n");
  return 0;
}

int run_analyze(const std::string& path, const std::string& measures,
                bool project_ns, int n_bootstrap, std::uint64_t seed,
                double cap_tol, double lp_tol, const std::string& out,
                int jobs) {
  const MeasureList want = parse_measures(measures);
  const nonlocal::CountsRecord rec = nonlocal::load_counts(path);
  const nonlocal::BehaviorTable raw = nonlocal::normalize_counts(rec);

  nonlocal::BehaviorTable working = raw;
  if (project_ns)
    working = nonlocal::project_nonsignaling(raw, lp_tol).nearest;

  nonlocal::BootstrapOptions bopts;
  bopts.capacity_tol = cap_tol;
  bopts.lp_tol = lp_tol;
  bopts.jobs = jobs;

  std::ostringstream csv;
  csv << "measure,value";
  if (n_bootstrap > 0) csv << ",err_2sigma";
  csv << "\n";
  auto emit = [&](const std::string& name, double value, double err,
                  bool have_err) {
    csv << name << "," << value;
    if (n_bootstrap > 0) {
      csv << ",";
      if (have_err) csv << err;
    }
    csv << "\n";
  };

  int stream = 0;
  auto boot = [&](nonlocal::Statistic st) {
    return nonlocal::bootstrap_uncertainty(
        rec, st, n_bootstrap, nonlocal::Rng::substream(seed, stream++), bopts);
  };

  if (want.i2) emit("i2", nonlocal::i2(working).value, 0, false);
  if (want.i3) {
    const double v = nonlocal::i3(working).value;
    if (n_bootstrap > 0)
      emit("i3", v, boot(nonlocal::Statistic::I3).half_width, true);
    else
      emit("i3", v, 0, false);
  }
  if (want.dist_local) {
    const double v =
        nonlocal::distance_to_local_polytope(working, lp_tol).distance;
    if (n_bootstrap > 0)
      emit("dist_local", v, boot(nonlocal::Statistic::DistLocal).half_width,
           true);
    else
      emit("dist_local", v, 0, false);
  }
  if (want.dist_ns)
    emit("dist_ns", nonlocal::project_nonsignaling(raw, lp_tol).distance, 0,
         false);
  if (want.capacity) {
    // Precondition: the capacity needs a non-signaling behavior.
    const auto cert = nonlocal::nonlocal_capacity_asym(working, cap_tol);
    if (cert.gap > cap_tol)
      throw nonlocal::NonConvergence(
          "capacity gap " + std::to_string(cert.gap) + " above tolerance",
          cert.value - cert.gap, cert.value);
    if (n_bootstrap > 0)
      emit("capacity", cert.value,
           boot(nonlocal::Statistic::Capacity).half_width, true);
    else
      emit("capacity", cert.value, 0, false);
  }

  write_text(out, csv.str());
  return 0;
}

int run_sweep_cmd(double gamma_start, double gamma_stop, int gamma_steps,
                  double lambda, const std::string& measures, int n_bootstrap,
                  std::uint64_t seed, double cap_tol, double lp_tol,
                  const std::string& out, long long per_block, int jobs) {
  if (gamma_steps < 1)
    throw nonlocal::InvalidParameter("sweep: --gamma-steps must be >= 1");
  const MeasureList want = parse_measures(measures);

  nonlocal::SweepConfig cfg;
  for (int i = 0; i < gamma_steps; ++i) {
    const double t = gamma_steps == 1 ? 0.0
                                      : static_cast<double>(i) / (gamma_steps - 1);
    cfg.gamma_grid.push_back(gamma_start + t * (gamma_stop - gamma_start));
  }
  cfg.lambda = lambda;
  cfg.capacity_tol = cap_tol;
  cfg.lp_tol = lp_tol;
  cfg.n_bootstrap = n_bootstrap;
  cfg.seed = seed;
  cfg.counts_per_block = per_block;
  cfg.jobs = jobs;
  cfg.measures.clear();
  if (want.i3) cfg.measures.insert(nonlocal::Measure::I3);
  if (want.dist_local) cfg.measures.insert(nonlocal::Measure::DistLocal);
  if (want.dist_ns) cfg.measures.insert(nonlocal::Measure::DistNs);
  if (want.capacity) cfg.measures.insert(nonlocal::Measure::Capacity);
  if (want.i2)
    throw nonlocal::InvalidParameter("sweep: i2 is not a sweep measure");

  const nonlocal::ResultsTable table = nonlocal::run_sweep(cfg);
  nonlocal::write_csv(table, out);
  nonlocal::write_provenance(cfg, out + ".meta.json");
  std::cout << "wrote " << out << " and " << out << ".meta.json\n";
  return 0;
}

int run_vertices(const std::string& dims_str, const std::string& out) {
  nonlocal::Dims d;
  if (std::sscanf(dims_str.c_str(), "%d,%d,%d,%d", &d.nx, &d.ny, &d.na,
                  &d.nb) != 4)
    throw nonlocal::InvalidParameter("vertices: --dims wants NX,NY,NA,NB");
  const nonlocal::LocalVertexSet set = nonlocal::enumerate_local_vertices(d);

  nlohmann::json j;
  j["dims"] = {{"nx", d.nx}, {"ny", d.ny}, {"na", d.na}, {"nb", d.nb}};
  j["count"] = set.vertices.size();
  nlohmann::json verts = nlohmann::json::array();
  // Re-derive the (f, g) encodings in enumeration order.
  const int ng = static_cast<int>(std::pow(d.nb, d.ny) + 0.5);
  for (std::size_t i = 0; i < set.vertices.size(); ++i) {
    const int fc = static_cast<int>(i) / ng;
    const int gc = static_cast<int>(i) % ng;
    std::vector<int> f(d.nx), g(d.ny);
    int rem = fc;
    for (int x = d.nx - 1; x >= 0; --x) {
      f[x] = rem % d.na;
      rem /= d.na;
    }
    rem = gc;
    for (int y = d.ny - 1; y >= 0; --y) {
      g[y] = rem % d.nb;
      rem /= d.nb;
    }
    verts.push_back({{"f", f}, {"g", g}});
  }
  j["vertices"] = verts;
  write_text(out, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bipartite behavior toolkit: Bell parameters, polytope "
               "distances, and non-local capacity"};
  app.set_version_flag("--version", nonlocal::kVersion);
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate",
                                 "Emit model counts for (gamma, lambda)");
  double gamma = 1.0, lambda = 1.0;
  std::string sim_out = "-";
  long long sim_per_block = 1000000;
  std::uint64_t sim_seed = 0;
  bool sim_seeded = false;
  sim->add_option("--gamma", gamma, "state parameter gamma (>= 0)")->required();
  sim->add_option("--lambda", lambda, "mixing parameter in [0,1]")->required();
  sim->add_option("--out", sim_out, "output path (default stdout)");
  sim->add_option("--counts-per-block", sim_per_block,
                  "expected counts per setting pair");
  auto* seed_opt =
      sim->add_option("--seed", sim_seed, "Poisson-sample counts with this seed");

  // analyze
  auto* ana = app.add_subcommand("analyze", "Analyze a counts file");
  std::string ana_path, ana_measures = "i3", ana_out = "-";
  bool project_ns = false;
  int ana_bootstrap = 0;
  std::uint64_t ana_seed = 0;
  double ana_tol = 1e-6, ana_lp_tol = 1e-9;
  int ana_jobs = 1;
  ana->add_option("path", ana_path, "counts JSON file")->required();
  ana->add_option("--measures", ana_measures,
                  "comma list: i2,i3,dist_local,dist_ns,capacity");
  ana->add_flag("--project-ns", project_ns,
                "remove the signaling part before computing measures");
  ana->add_option("--bootstrap", ana_bootstrap, "number of Poisson resamples");
  ana->add_option("--seed", ana_seed, "bootstrap seed");
  ana->add_option("--tol", ana_tol, "capacity tolerance (default 1e-6)");
  ana->add_option("--lp-tol", ana_lp_tol, "LP tolerance (default 1e-9)");
  ana->add_option("--out", ana_out, "output path (default stdout)");
  ana->add_option("--jobs", ana_jobs, "parallel bootstrap workers");

  // sweep
  auto* swp = app.add_subcommand("sweep", "Sweep the gamma grid");
  double g0 = 0.0, g1 = 1.0;
  int steps = 11;
  double swp_lambda = 1.0;
  std::string swp_measures = "i3", swp_out;
  int swp_bootstrap = 0;
  std::uint64_t swp_seed = 0;
  double swp_tol = 1e-6, swp_lp_tol = 1e-9;
  long long swp_per_block = 1000000;
  int swp_jobs = 1;
  swp->add_option("--gamma-start", g0)->required();
  swp->add_option("--gamma-stop", g1)->required();
  swp->add_option("--gamma-steps", steps)->required();
  swp->add_option("--lambda", swp_lambda)->required();
  swp->add_option("--measures", swp_measures,
                  "comma list: i3,dist_local,dist_ns,capacity");
  swp->add_option("--bootstrap", swp_bootstrap, "resamples per grid point");
  swp->add_option("--seed", swp_seed, "bootstrap seed");
  swp->add_option("--tol", swp_tol, "capacity tolerance (default 1e-6)");
  swp->add_option("--lp-tol", swp_lp_tol, "LP tolerance (default 1e-9)");
  swp->add_option("--counts-per-block", swp_per_block,
                  "bootstrap count intensity per setting pair");
  swp->add_option("--jobs", swp_jobs, "parallel grid workers");
  swp->add_option("--out", swp_out, "output CSV path")->required();

  // vertices
  auto* ver = app.add_subcommand("vertices", "Dump local deterministic vertices");
  std::string ver_dims, ver_out;
  ver->add_option("--dims", ver_dims, "NX,NY,NA,NB")->required();
  ver->add_option("--out", ver_out, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      sim_seeded = seed_opt->count() > 0;
      return run_simulate(gamma, lambda, sim_out, sim_per_block, sim_seeded,
                          sim_seed);
    }
    if (ana->parsed())
      return run_analyze(ana_path, ana_measures, project_ns, ana_bootstrap,
                         ana_seed, ana_tol, ana_lp_tol, ana_out, ana_jobs);
    if (swp->parsed())
      return run_sweep_cmd(g0, g1, steps, swp_lambda, swp_measures,
                           swp_bootstrap, swp_seed, swp_tol, swp_lp_tol,
                           swp_out, swp_per_block, swp_jobs);
    if (ver->parsed()) return run_vertices(ver_dims, ver_out);
  } catch (const nonlocal::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const nonlocal::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const nonlocal::NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const nonlocal::LpFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const nonlocal::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
