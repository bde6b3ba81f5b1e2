#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "mmc/io.hpp"

namespace mmc {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool within(double value, double bound) { return value <= bound * (1.0 + 1e-9); }

struct InvariantOutcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& what) {
    if (ok) detail = what;
    ok = false;
  }
};

void check_family_shape_uniform(const ServerFamily& family, InvariantOutcome& out) {
  const int k = family.k;
  const int l = family.l;
  if (static_cast<int>(family.entries.size()) != k)
    out.fail("uniform family does not have exactly k subsets");
  for (int i = k; i > l; --i) {
    if (!family.find(i, SubsetKind::Shared)) out.fail("missing shared subset at level " + std::to_string(i));
    if (!family.find(i, SubsetKind::Private)) out.fail("missing private subset at level " + std::to_string(i));
  }
  if (k % 2 == 1 && !family.find(l, SubsetKind::Private))
    out.fail("odd k but no private subset at level l");
  if (!family_pairwise_disjoint(family)) out.fail("family subsets are not pairwise disjoint");
}

void check_family_shape_nonuniform(const ServerFamily& family, InvariantOutcome& out) {
  const int k = family.k;
  const int l = family.l;
  if (static_cast<int>(family.entries.size()) != k)
    out.fail("non-uniform family does not have exactly kmax subsets");
  for (int i = 1; i < l; ++i) {
    if (!family.find(i, SubsetKind::Shared)) out.fail("missing shared subset at level " + std::to_string(i));
    if (!family.find(i, SubsetKind::Private)) out.fail("missing private subset at level " + std::to_string(i));
  }
  if (k % 2 == 0 && !family.find(l, SubsetKind::Shared))
    out.fail("even kmax but no shared subset at level l");
  if (family.find(l, SubsetKind::Shared) && k % 2 == 1)
    out.fail("odd kmax but a shared subset at level l");
  if (!family.find(l, SubsetKind::Private)) out.fail("missing private subset at level l");
  if (!family_pairwise_disjoint(family)) out.fail("family subsets are not pairwise disjoint");
}

void check_bundle(const MetricInstance& inst, const NeighborhoodIndex& idx,
                  const OuterCoverBundle& bundle, double optimum_cost, InvariantOutcome& out) {
  if (!within(bundle.total_balls_cost(), optimum_cost))
    out.fail("disjoint ball rounds cost more than the cover they came from");
  std::vector<char> seen(static_cast<size_t>(inst.num_servers()), 0);
  for (const auto& lvl : bundle.levels) {
    for (size_t a = 0; a < lvl.balls.size(); ++a) {
      int server = lvl.balls[a].center - inst.num_clients();
      if (seen[server]) out.fail("a server's ball appears in two extraction rounds");
      seen[server] = 1;
      for (size_t b = a + 1; b < lvl.balls.size(); ++b)
        if (lvl.balls[a].intersects(inst, lvl.balls[b]))
          out.fail("intersecting balls within one extraction round");
    }
    if (!validate_outer_cover(inst, idx, lvl.expanded).valid)
      out.fail("expanded round " + std::to_string(lvl.peel) + " is not an outer cover");
  }
}

// Family/hitting/audit/extraction/hosting certification for one instance under
// a uniform demand k (shared by the uniform and tmmc modes).
InvariantOutcome certify_uniform(const MetricInstance& inst, int k,
                                 const RadiusAssignment& optimum, double optimum_cost) {
  InvariantOutcome out;
  auto idx = build_neighborhood_index(inst);
  auto part = compute_server_subsets_uniform(inst, idx, k);
  check_family_shape_uniform(part.family, out);

  for (const auto& entry : part.family.entries) {
    const IntersectionGraph* g = nullptr;
    for (const auto& graph : part.graphs)
      if (graph.level == entry.level) g = &graph;
    if (!g) {
      out.fail("no intersection graph at level " + std::to_string(entry.level));
      continue;
    }
    if (auto bad = uniform_hitting_violation(inst, idx, entry, *g))
      out.fail("hitting property fails for client " + std::to_string(*bad) + " at level " +
               std::to_string(entry.level));
  }

  auto audit = audit_availability(part.log, idx, DemandProfile::uniform(k, inst.num_clients()));
  if (!audit.ok) out.fail("availability audit: " + audit.violations.front());

  auto bundle = extract_outer_covers(inst, idx, optimum, k);
  check_bundle(inst, idx, bundle, optimum_cost, out);

  const double host_bound_factor = std::pow(12.0, inst.alpha());
  std::vector<int> targets(static_cast<size_t>(inst.num_clients()));
  std::iota(targets.begin(), targets.end(), 0);
  for (const auto& entry : part.family.entries) {
    const BundleLevel* lvl = nullptr;
    for (const auto& candidate : bundle.levels)
      if (candidate.level && *candidate.level == entry.level) lvl = &candidate;
    const IntersectionGraph* g = nullptr;
    for (const auto& graph : part.graphs)
      if (graph.level == entry.level) g = &graph;
    if (!lvl || !g) continue;
    auto hosted = host_outer_cover(inst, idx, lvl->expanded, entry.servers, targets, 2, 6, *g);
    if (!within(hosted.cost(inst.alpha()), host_bound_factor * lvl->mu_hat))
      out.fail("hosting bound exceeded at level " + std::to_string(entry.level));
  }
  return out;
}

InvariantOutcome certify_nonuniform(const MetricInstance& inst, const DemandProfile& dem,
                                    const RadiusAssignment& optimum, double optimum_cost) {
  InvariantOutcome out;
  auto idx = build_neighborhood_index(inst);
  auto part = compute_server_subsets_nonuniform(inst, idx, dem);
  check_family_shape_nonuniform(part.family, out);

  for (int c = 0; c < inst.num_clients(); ++c) {
    if (part.filtered.is_kept(c)) {
      for (int other : part.filtered.kept)
        if (other != c && threatens(idx, dem, c, other))
          out.fail("kept client threatens a kept client");
    } else {
      auto it = part.filtered.representative.find(c);
      if (it == part.filtered.representative.end() || !part.filtered.is_kept(it->second) ||
          !threatens(idx, dem, c, it->second))
        out.fail("dropped client lacks a threatened representative");
    }
  }

  std::vector<IntersectionGraph> gtildes;
  for (int i = 1; i <= dem.kmax(); ++i) gtildes.push_back(build_gtilde(inst, idx, dem, i));
  for (const auto& entry : part.family.entries)
    if (auto bad = nonuniform_hitting_violation(inst, idx, dem, entry, gtildes[entry.level - 1]))
      out.fail("hitting property fails for client " + std::to_string(*bad) + " at level " +
               std::to_string(entry.level));

  auto audit = audit_availability(part.log, idx, dem);
  if (!audit.ok) out.fail("availability audit: " + audit.violations.front());

  auto bundle = extract_outer_covers(inst, idx, optimum, dem);
  check_bundle(inst, idx, bundle, optimum_cost, out);

  const double host_bound_factor = std::pow(16.0, inst.alpha());
  for (const auto& entry : part.family.entries) {
    const BundleLevel* lvl = nullptr;
    for (const auto& candidate : bundle.levels)
      if (candidate.peel == entry.level) lvl = &candidate;
    if (!lvl) continue;
    const int gate = entry.kind == SubsetKind::Shared ? 2 * entry.level : 2 * entry.level - 1;
    std::vector<int> targets;
    for (int c = 0; c < inst.num_clients(); ++c)
      if (dem.demand(c) >= gate) targets.push_back(c);
    if (targets.empty()) continue;
    auto hosted = host_outer_cover(inst, idx, lvl->expanded, entry.servers, targets, 3, 8,
                                   gtildes[entry.level - 1]);
    if (!within(hosted.cost(inst.alpha()), host_bound_factor * lvl->mu_hat))
      out.fail("hosting bound exceeded at level " + std::to_string(entry.level));
  }
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::string ExperimentReport::to_json(bool include_timings) const {
  json j;
  j["config"] = json::parse(serialize_config(config));
  json rows_json = json::array();
  for (const auto& row : rows) {
    json r;
    r["trial"] = row.trial;
    r["digest"] = row.digest;
    r["mode"] = row.mode;
    r["subroutine"] = row.subroutine;
    r["alpha"] = row.alpha;
    r["clients"] = row.num_clients;
    r["servers"] = row.num_servers;
    r["k"] = row.k;
    if (row.t) r["t"] = *row.t;
    r["solver_cost"] = row.solver_cost;
    r["oracle_cost"] = row.oracle_cost;
    r["ratio"] = row.ratio;
    r["bound"] = row.bound;
    r["invariants_ok"] = row.invariants_ok;
    if (include_timings) {
      r["solve_ms"] = row.solve_ms;
      r["oracle_ms"] = row.oracle_ms;
    }
    rows_json.push_back(std::move(r));
  }
  j["rows"] = std::move(rows_json);
  j["max_ratio"] = max_ratio;
  j["mean_ratio"] = mean_ratio;
  return j.dump(2) + "\n";
}

std::string ExperimentReport::to_csv(bool include_timings) const {
  std::ostringstream os;
  os << "trial,digest,mode,subroutine,alpha,clients,servers,k,t,solver_cost,oracle_cost,ratio,"
        "bound,invariants_ok";
  if (include_timings) os << ",solve_ms,oracle_ms";
  os << "\n";
  for (const auto& row : rows) {
    os << row.trial << ',' << row.digest << ',' << row.mode << ',' << row.subroutine << ','
       << format_double(row.alpha) << ',' << row.num_clients << ',' << row.num_servers << ','
       << row.k << ',' << (row.t ? std::to_string(*row.t) : "") << ','
       << format_double(row.solver_cost) << ',' << format_double(row.oracle_cost) << ','
       << format_double(row.ratio) << ',' << format_double(row.bound) << ','
       << (row.invariants_ok ? "1" : "0");
    if (include_timings) os << ',' << format_double(row.solve_ms) << ',' << format_double(row.oracle_ms);
    os << "\n";
  }
  return os.str();
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, const std::string& failure_dir) {
  ExperimentReport report;
  report.config = cfg;
  OracleGuard oracle_guard{cfg.oracle_guard};

  auto dump_failure = [&](const std::string& content, const std::string& digest) {
    if (failure_dir.empty()) return std::string();
    std::filesystem::create_directories(failure_dir);
    auto path = (std::filesystem::path(failure_dir) / ("failure_" + digest + ".json")).string();
    std::ofstream(path, std::ios::binary) << content;
    return path;
  };

  for (int trial = 0; trial < cfg.trials; ++trial) {
    auto generated = generate_instance(cfg, trial);
    auto digest = content_digest(generated.content);
    auto li = parse_instance(generated.content);
    const auto& inst = li.instance;

    // Invariant certification and the oracle both depend only on the instance
    // and the demand shape, so run them once per demand shape and reuse.
    std::optional<OracleResult> oracle_uniform, oracle_nonuniform, oracle_tmmc;
    std::optional<InvariantOutcome> certified_uniform, certified_nonuniform;
    double oracle_uniform_ms = 0.0, oracle_nonuniform_ms = 0.0, oracle_tmmc_ms = 0.0;
    const int k = li.demands.kmax();

    for (const auto& mode_name : cfg.modes) {
      SolveMode mode = parse_mode(mode_name);
      for (const auto& sub_name : cfg.subroutines) {
        Subroutine sub = sub_name == "exact" ? Subroutine::Exact : Subroutine::Greedy;
        TrialRow row;
        row.trial = trial;
        row.digest = digest;
        row.mode = mode_name;
        row.subroutine = sub_name;
        row.alpha = inst.alpha();
        row.num_clients = inst.num_clients();
        row.num_servers = inst.num_servers();
        row.k = k;
        row.bound = ratio_bound(mode, inst.alpha());

        auto started = Clock::now();
        SolveReport solved;
        switch (mode) {
          case SolveMode::Uniform:
            solved = solve_mmc(inst, k, sub);
            break;
          case SolveMode::Nonuniform:
            solved = solve_nonuniform(inst, li.demands, sub);
            break;
          case SolveMode::Tmmc:
            if (!li.t) throw_input("schema", "generated instance lacks t");
            row.t = li.t;
            solved = solve_tmmc(inst, k, *li.t, sub);
            break;
        }
        row.solve_ms = ms_since(started);
        row.solver_cost = solved.cost;

        started = Clock::now();
        const OracleResult* oracle = nullptr;
        switch (mode) {
          case SolveMode::Uniform:
            if (!oracle_uniform) {
              oracle_uniform =
                  exact_mmc(inst, DemandProfile::uniform(k, inst.num_clients()), oracle_guard);
              oracle_uniform_ms = ms_since(started);
            }
            oracle = &*oracle_uniform;
            row.oracle_ms = oracle_uniform_ms;
            break;
          case SolveMode::Nonuniform:
            if (!oracle_nonuniform) {
              oracle_nonuniform = exact_mmc(inst, li.demands, oracle_guard);
              oracle_nonuniform_ms = ms_since(started);
            }
            oracle = &*oracle_nonuniform;
            row.oracle_ms = oracle_nonuniform_ms;
            break;
          case SolveMode::Tmmc:
            if (!oracle_tmmc) {
              oracle_tmmc = exact_tmmc(inst, k, *li.t, oracle_guard);
              oracle_tmmc_ms = ms_since(started);
            }
            oracle = &*oracle_tmmc;
            row.oracle_ms = oracle_tmmc_ms;
            break;
        }
        row.oracle_cost = oracle->cost;
        row.ratio = row.oracle_cost > 0.0 ? row.solver_cost / row.oracle_cost
                                          : (row.solver_cost > 0.0
                                                 ? std::numeric_limits<double>::infinity()
                                                 : 1.0);

        InvariantOutcome* certified = nullptr;
        if (mode == SolveMode::Nonuniform) {
          if (!certified_nonuniform)
            certified_nonuniform =
                certify_nonuniform(inst, li.demands, oracle->assignment, oracle->cost);
          certified = &*certified_nonuniform;
        } else {
          if (!certified_uniform) {
            if (!oracle_uniform)
              oracle_uniform =
                  exact_mmc(inst, DemandProfile::uniform(k, inst.num_clients()), oracle_guard);
            certified_uniform =
                certify_uniform(inst, k, oracle_uniform->assignment, oracle_uniform->cost);
          }
          certified = &*certified_uniform;
        }
        row.invariants_ok = certified->ok;

        std::string problem;
        if (!certified->ok) problem = certified->detail;
        if (problem.empty() && row.solver_cost < row.oracle_cost * (1.0 - 1e-9))
          problem = "solver undercut the oracle optimum";
        if (problem.empty() && !within(row.ratio, row.bound))
          problem = "approximation ratio " + format_double(row.ratio) + " exceeds the bound " +
                    format_double(row.bound);
        if (!problem.empty()) {
          row.invariants_ok = false;
          report.rows.push_back(row);
          auto dumped = dump_failure(generated.content, digest);
          throw_invariant("experiment",
                          "trial " + std::to_string(trial) + " (" + mode_name + "/" + sub_name +
                              ", instance " + digest + "): " + problem +
                              (dumped.empty() ? "" : "; instance dumped to " + dumped));
        }
        report.rows.push_back(row);
      }
    }
  }

  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const TrialRow& a, const TrialRow& b) { return a.trial < b.trial; });
  double sum = 0.0;
  for (const auto& row : report.rows) {
    report.max_ratio = std::max(report.max_ratio, row.ratio);
    sum += row.ratio;
  }
  report.mean_ratio = report.rows.empty() ? 0.0 : sum / static_cast<double>(report.rows.size());
  return report;
}

}  // namespace mmc
