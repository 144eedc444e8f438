#include "nonlocal/sweep.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>

#include "json.hpp"
#include "nonlocal/bell.hpp"
#include "nonlocal/bootstrap.hpp"
#include "nonlocal/capacity.hpp"
#include "nonlocal/polytope.hpp"
#include "nonlocal/quantum.hpp"
#include "nonlocal/rng.hpp"
#include "nonlocal/version.hpp"

namespace nonlocal {

namespace {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

CountsRecord synthesize_counts(const BehaviorTable& p, std::int64_t per_block) {
  CountsRecord rec;
  rec.dims = p.dims();
  rec.counts.resize(rec.dims.entries());
  for (int e = 0; e < rec.dims.entries(); ++e)
    rec.counts[e] =
        std::llround(p.entries()[e] * static_cast<double>(per_block));
  return rec;
}

struct PointResult {
  std::vector<double> row;
};

}  // namespace

ResultsTable run_sweep(const SweepConfig& cfg) {
  if (cfg.gamma_grid.empty())
    throw InvalidParameter("run_sweep: gamma grid is empty");
  for (double g : cfg.gamma_grid)
    if (g < 0.0)
      throw InvalidParameter("run_sweep: gamma must be >= 0, got " +
                             std::to_string(g));
  if (cfg.measures.empty())
    throw InvalidParameter("run_sweep: no measures requested");

  const bool boot = cfg.n_bootstrap > 0;
  ResultsTable table;
  table.columns.push_back("gamma");
  if (cfg.measures.count(Measure::I3)) {
    table.columns.push_back("i3");
    table.columns.push_back("i3_ns");
    if (boot) table.columns.push_back("i3_err");
  }
  if (cfg.measures.count(Measure::DistLocal)) {
    table.columns.push_back("dist_local_raw");
    table.columns.push_back("dist_local_ns");
    if (boot) table.columns.push_back("dist_local_err");
  }
  if (cfg.measures.count(Measure::DistNs)) table.columns.push_back("dist_ns");
  if (cfg.measures.count(Measure::Capacity)) {
    table.columns.push_back("capacity_ns");
    if (boot) table.columns.push_back("capacity_err");
  }

  auto run_point = [&](std::size_t idx) {
    const double gamma = cfg.gamma_grid[idx];
    const BehaviorTable p = born_behavior(gamma, cfg.lambda);
    const PolytopeResult proj = project_nonsignaling(p, cfg.lp_tol);

    CountsRecord counts;
    if (boot) counts = synthesize_counts(p, cfg.counts_per_block);
    BootstrapOptions bopts;
    bopts.capacity_tol = cfg.capacity_tol;
    bopts.lp_tol = cfg.lp_tol;

    PointResult out;
    out.row.push_back(gamma);
    if (cfg.measures.count(Measure::I3)) {
      out.row.push_back(i3(p).value);
      out.row.push_back(i3(proj.nearest).value);
      if (boot)
        out.row.push_back(bootstrap_uncertainty(counts, Statistic::I3,
                                                cfg.n_bootstrap,
                                                Rng::substream(cfg.seed, idx * 8),
                                                bopts)
                              .half_width);
    }
    if (cfg.measures.count(Measure::DistLocal)) {
      out.row.push_back(distance_to_local_polytope(p, cfg.lp_tol).distance);
      out.row.push_back(
          distance_to_local_polytope(proj.nearest, cfg.lp_tol).distance);
      if (boot)
        out.row.push_back(bootstrap_uncertainty(counts, Statistic::DistLocal,
                                                cfg.n_bootstrap,
                                                Rng::substream(cfg.seed, idx * 8 + 1),
                                                bopts)
                              .half_width);
    }
    if (cfg.measures.count(Measure::DistNs)) out.row.push_back(proj.distance);
    if (cfg.measures.count(Measure::Capacity)) {
      out.row.push_back(
          nonlocal_capacity_asym(proj.nearest, cfg.capacity_tol).value);
      if (boot)
        out.row.push_back(bootstrap_uncertainty(counts, Statistic::Capacity,
                                                cfg.n_bootstrap,
                                                Rng::substream(cfg.seed, idx * 8 + 2),
                                                bopts)
                              .half_width);
    }
    return out;
  };

  const std::size_t npts = cfg.gamma_grid.size();
  std::vector<PointResult> results(npts);
  if (cfg.jobs > 1) {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), npts);
    std::vector<std::future<void>> futures;
    futures.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      futures.push_back(std::async(std::launch::async, [&, w]() {
        for (std::size_t i = w; i < npts; i += workers) results[i] = run_point(i);
      }));
    for (auto& f : futures) f.get();
  } else {
    for (std::size_t i = 0; i < npts; ++i) results[i] = run_point(i);
  }

  for (std::size_t i = 0; i < npts; ++i)  // deterministic grid order
    table.rows.push_back(std::move(results[i].row));
  return table;
}

std::string table_to_csv(const ResultsTable& table) {
  std::ostringstream out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ",";
    out << table.columns[c];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ",";
      out << format_double(row[c]);
    }
    out << "\n";
  }
  return out.str();
}

ResultsTable table_from_csv(const std::string& text) {
  ResultsTable table;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("results csv: empty input");
  std::stringstream header(line);
  std::string tok;
  while (std::getline(header, tok, ',')) table.columns.push_back(tok);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t next = line.find(',', pos);
      if (next == std::string::npos) next = line.size();
      double v = 0.0;
      auto res = std::from_chars(line.data() + pos, line.data() + next, v);
      if (res.ec != std::errc() || res.ptr != line.data() + next)
        throw ParseError("results csv: line " + std::to_string(lineno) +
                         ": bad number '" + line.substr(pos, next - pos) + "'");
      row.push_back(v);
      pos = next + 1;
    }
    if (row.size() != table.columns.size())
      throw ParseError("results csv: line " + std::to_string(lineno) +
                       " has " + std::to_string(row.size()) + " fields, header has " +
                       std::to_string(table.columns.size()));
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_csv(const ResultsTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("results csv: cannot write '" + path + "'");
  out << table_to_csv(table);
}

ResultsTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("results csv: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return table_from_csv(buf.str());
}

std::string sweep_provenance(const SweepConfig& cfg) {
  nlohmann::json j;
  j["tool"] = "nonlocal";
  j["version"] = kVersion;
  j["config"]["gamma_grid"] = cfg.gamma_grid;
  j["config"]["lambda"] = cfg.lambda;
  j["config"]["n_bootstrap"] = cfg.n_bootstrap;
  j["config"]["seed"] = cfg.seed;
  j["config"]["counts_per_block"] = cfg.counts_per_block;
  std::vector<std::string> measures;
  if (cfg.measures.count(Measure::I3)) measures.push_back("i3");
  if (cfg.measures.count(Measure::DistLocal)) measures.push_back("dist_local");
  if (cfg.measures.count(Measure::DistNs)) measures.push_back("dist_ns");
  if (cfg.measures.count(Measure::Capacity)) measures.push_back("capacity");
  j["config"]["measures"] = measures;
  j["tolerances"]["lp"] = cfg.lp_tol;
  j["tolerances"]["capacity"] = cfg.capacity_tol;
  return j.dump(2);
}

void write_provenance(const SweepConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("provenance: cannot write '" + path + "'");
  out << sweep_provenance(cfg) << "\n";
}

}  // namespace nonlocal
