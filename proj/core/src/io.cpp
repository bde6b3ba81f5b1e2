#include "mmc/io.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace mmc {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw_input("schema", "malformed JSON");
  return j;
}

std::vector<std::string> parse_names(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw_input("schema", std::string("missing or non-array '") + key + "'");
  std::vector<std::string> out;
  for (const auto& v : j[key]) {
    if (!v.is_string()) throw_input("schema", std::string("non-string entry in '") + key + "'");
    out.push_back(v.get<std::string>());
  }
  return out;
}

double parse_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw_input("schema", std::string("missing or non-numeric '") + key + "'");
  return j[key].get<double>();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_input("schema", "cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_input("schema", "cannot write file: " + path);
  out << content;
}

}  // namespace

LoadedInstance parse_instance(const std::string& json_text) {
  json j = parse_json(json_text);
  if (!j.is_object()) throw_input("schema", "instance file must be a JSON object");

  auto clients = parse_names(j, "clients");
  auto servers = parse_names(j, "servers");
  double alpha = parse_number(j, "alpha");

  if (!j.contains("metric") || !j["metric"].is_object())
    throw_input("schema", "missing or non-object 'metric'");
  const json& m = j["metric"];
  std::string type = m.contains("type") && m["type"].is_string() ? m["type"].get<std::string>() : "";

  std::optional<MetricInstance> inst;
  if (type == "euclidean") {
    if (!m.contains("coords") || !m["coords"].is_object())
      throw_input("schema", "euclidean metric needs a 'coords' object");
    std::vector<std::vector<double>> coords;
    auto read_point = [&](const std::string& name) {
      if (!m["coords"].contains(name))
        throw_input("schema", "no coordinates for point '" + name + "'");
      const json& c = m["coords"][name];
      if (!c.is_array() || c.empty()) throw_input("schema", "bad coordinates for '" + name + "'");
      std::vector<double> p;
      for (const auto& v : c) {
        if (!v.is_number()) throw_input("schema", "non-numeric coordinate for '" + name + "'");
        p.push_back(v.get<double>());
      }
      coords.push_back(std::move(p));
    };
    for (const auto& name : clients) read_point(name);
    for (const auto& name : servers) read_point(name);
    inst = MetricInstance::from_euclidean(clients, servers, std::move(coords), alpha);
  } else if (type == "matrix") {
    if (!m.contains("d") || !m["d"].is_array())
      throw_input("schema", "matrix metric needs a 'd' array");
    std::vector<std::vector<double>> d;
    for (const auto& row : m["d"]) {
      if (!row.is_array()) throw_input("schema", "matrix rows must be arrays");
      std::vector<double> r;
      for (const auto& v : row) {
        if (!v.is_number()) throw_input("schema", "non-numeric matrix entry");
        r.push_back(v.get<double>());
      }
      d.push_back(std::move(r));
    }
    inst = MetricInstance::from_matrix(clients, servers, std::move(d), alpha);
  } else if (type == "graph") {
    if (!m.contains("edges") || !m["edges"].is_array())
      throw_input("schema", "graph metric needs an 'edges' array");
    std::vector<std::tuple<int, int, double>> edges;
    auto point_of = [&](const json& v) -> int {
      if (!v.is_string()) throw_input("schema", "edge endpoints must be point names");
      auto name = v.get<std::string>();
      for (int i = 0; i < static_cast<int>(clients.size()); ++i)
        if (clients[i] == name) return i;
      for (int i = 0; i < static_cast<int>(servers.size()); ++i)
        if (servers[i] == name) return static_cast<int>(clients.size()) + i;
      throw_input("schema", "edge references unknown point '" + name + "'");
    };
    for (const auto& e : m["edges"]) {
      if (!e.is_array() || e.size() != 3 || !e[2].is_number())
        throw_input("schema", "edges must be [point, point, weight] triples");
      edges.emplace_back(point_of(e[0]), point_of(e[1]), e[2].get<double>());
    }
    inst = MetricInstance::from_graph(clients, servers, std::move(edges), alpha);
  } else {
    throw_input("schema", "metric type must be euclidean, matrix or graph");
  }

  LoadedInstance out{std::move(*inst), DemandProfile::uniform(1, static_cast<int>(clients.size())),
                     std::nullopt, false};
  if (!j.contains("demands")) throw_input("schema", "missing 'demands'");
  if (j["demands"].is_number_integer()) {
    out.demands = DemandProfile::uniform(j["demands"].get<int>(), out.instance.num_clients());
    out.demands_scalar = true;
  } else if (j["demands"].is_array()) {
    std::vector<int> d;
    for (const auto& v : j["demands"]) {
      if (!v.is_number_integer()) throw_input("schema", "demand entries must be integers");
      d.push_back(v.get<int>());
    }
    if (static_cast<int>(d.size()) != out.instance.num_clients())
      throw_input("demand", "demand array size does not match client count");
    out.demands = DemandProfile(std::move(d));
  } else {
    throw_input("schema", "'demands' must be an integer or an array of integers");
  }
  out.demands.validate(out.instance);

  if (j.contains("t") && !j["t"].is_null()) {
    if (!j["t"].is_number_integer()) throw_input("schema", "'t' must be an integer");
    out.t = j["t"].get<int>();
    if (*out.t < 1) throw_input("schema", "'t' must be >= 1");
  }
  return out;
}

LoadedInstance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

std::string serialize_instance(const LoadedInstance& li) {
  const auto& inst = li.instance;
  json j;
  j["alpha"] = inst.alpha();
  j["clients"] = inst.client_names();
  j["servers"] = inst.server_names();

  const auto& src = inst.source();
  json m;
  switch (src.kind) {
    case MetricKind::Euclidean: {
      m["type"] = "euclidean";
      json coords = json::object();
      for (int c = 0; c < inst.num_clients(); ++c) coords[inst.client_name(c)] = src.coords[c];
      for (int s = 0; s < inst.num_servers(); ++s)
        coords[inst.server_name(s)] = src.coords[inst.num_clients() + s];
      m["coords"] = std::move(coords);
      break;
    }
    case MetricKind::Matrix: {
      m["type"] = "matrix";
      json d = json::array();
      for (int p = 0; p < inst.num_points(); ++p) {
        json row = json::array();
        for (int q = 0; q < inst.num_points(); ++q) row.push_back(inst.dist(p, q));
        d.push_back(std::move(row));
      }
      m["d"] = std::move(d);
      break;
    }
    case MetricKind::Graph: {
      m["type"] = "graph";
      json edges = json::array();
      auto name_of = [&](int p) {
        return p < inst.num_clients() ? inst.client_name(p)
                                      : inst.server_name(p - inst.num_clients());
      };
      for (const auto& [u, v, w] : src.edges) edges.push_back(json::array({name_of(u), name_of(v), w}));
      m["edges"] = std::move(edges);
      break;
    }
  }
  j["metric"] = std::move(m);

  if (li.demands_scalar && li.demands.is_uniform())
    j["demands"] = li.demands.kmax();
  else
    j["demands"] = li.demands.demands();
  if (li.t) j["t"] = *li.t;
  return j.dump(2) + "\n";
}

void save_instance(const std::string& path, const LoadedInstance& li) {
  write_file(path, serialize_instance(li));
}

SolveMode parse_mode(const std::string& name) {
  if (name == "uniform") return SolveMode::Uniform;
  if (name == "nonuniform") return SolveMode::Nonuniform;
  if (name == "tmmc") return SolveMode::Tmmc;
  throw_input("schema", "unknown mode '" + name + "' (expected uniform, nonuniform or tmmc)");
}

const char* to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::Uniform: return "uniform";
    case SolveMode::Nonuniform: return "nonuniform";
    case SolveMode::Tmmc: return "tmmc";
  }
  return "?";
}

std::string serialize_solution(const MetricInstance& inst, const SolveReport& report,
                               SolveMode mode) {
  json j;
  j["mode"] = to_string(mode);
  j["k"] = report.k;
  if (report.t) j["t"] = *report.t;
  j["alpha"] = inst.alpha();
  j["cost"] = report.cost;
  json radii = json::object();
  for (const auto& [s, r] : report.assignment.entries()) radii[inst.server_name(s)] = r;
  j["radii"] = std::move(radii);

  json breakdown = json::array();
  for (const auto& piece : report.breakdown) {
    json p;
    p["level"] = piece.level;
    p["kind"] = to_string(piece.kind);
    p["cost"] = piece.cost;
    p["used"] = piece.used;
    json servers = json::array();
    for (int s : piece.servers) servers.push_back(inst.server_name(s));
    p["servers"] = std::move(servers);
    json clients = json::array();
    for (int c : piece.clients) clients.push_back(inst.client_name(c));
    p["clients"] = std::move(clients);
    breakdown.push_back(std::move(p));
  }
  j["breakdown"] = std::move(breakdown);

  if (report.plan) {
    json plan;
    plan["budget"] = report.plan->budget;
    plan["chosen"] = report.plan->chosen;
    plan["cost_table"] = report.plan->cost_table;
    j["plan"] = std::move(plan);
  }
  j["audit"] = {{"ok", report.audit.ok}, {"decisions", report.audit.decisions_checked}};
  j["wall_ms"] = report.wall_ms;
  return j.dump(2) + "\n";
}

ParsedSolution parse_solution(const MetricInstance& inst, const std::string& json_text) {
  json j = parse_json(json_text);
  if (!j.is_object()) throw_input("schema", "solution file must be a JSON object");
  ParsedSolution out;
  if (!j.contains("mode") || !j["mode"].is_string())
    throw_input("schema", "solution needs a 'mode'");
  out.mode = parse_mode(j["mode"].get<std::string>());
  if (!j.contains("k") || !j["k"].is_number_integer())
    throw_input("schema", "solution needs an integer 'k'");
  out.k = j["k"].get<int>();
  if (j.contains("t") && !j["t"].is_null()) out.t = j["t"].get<int>();
  out.cost = parse_number(j, "cost");
  if (!j.contains("radii") || !j["radii"].is_object())
    throw_input("schema", "solution needs a 'radii' object");
  for (const auto& [name, v] : j["radii"].items()) {
    int s = inst.server_index(name);
    if (s < 0) throw_input("schema", "radii mention unknown server '" + name + "'");
    if (!v.is_number() || v.get<double>() < 0.0)
      throw_input("schema", "bad radius for server '" + name + "'");
    out.assignment.set(s, v.get<double>());
  }
  return out;
}

VerifyOutcome verify_solution(const MetricInstance& inst, const DemandProfile& dem,
                              const ParsedSolution& sol) {
  VerifyOutcome out;
  out.recomputed_cost = sol.assignment.cost(inst.alpha());
  double scale = std::max({1.0, std::abs(out.recomputed_cost), std::abs(sol.cost)});
  out.cost_matches = std::abs(out.recomputed_cost - sol.cost) <= 1e-9 * scale;

  out.feasible = true;
  switch (sol.mode) {
    case SolveMode::Uniform:
      for (int c = 0; c < inst.num_clients() && out.feasible; ++c)
        if (coverage_count(inst, sol.assignment, c) < sol.k) {
          out.feasible = false;
          out.detail = "client " + inst.client_name(c) + " covered fewer than k times";
        }
      break;
    case SolveMode::Nonuniform:
      for (int c = 0; c < inst.num_clients() && out.feasible; ++c)
        if (coverage_count(inst, sol.assignment, c) < dem.demand(c)) {
          out.feasible = false;
          out.detail = "client " + inst.client_name(c) + " covered below its demand";
        }
      break;
    case SolveMode::Tmmc: {
      if (!sol.t) throw_input("schema", "tmmc solution needs 't'");
      if (sol.assignment.support_size() > *sol.t) {
        out.feasible = false;
        out.detail = "solution opens more than t servers";
        break;
      }
      for (int c = 0; c < inst.num_clients() && out.feasible; ++c)
        if (support_coverage_count(inst, sol.assignment, c) < sol.k) {
          out.feasible = false;
          out.detail = "client " + inst.client_name(c) + " covered fewer than k times by open servers";
        }
      break;
    }
  }
  if (out.feasible && !out.cost_matches) out.detail = "stated cost does not match the radii";
  return out;
}

std::string serialize_oracle_result(const MetricInstance& inst, const OracleResult& res,
                                    SolveMode mode) {
  json j;
  j["mode"] = to_string(mode);
  j["optimal_cost"] = res.cost;
  json radii = json::object();
  for (const auto& [s, r] : res.assignment.entries()) radii[inst.server_name(s)] = r;
  j["radii"] = std::move(radii);
  j["nodes"] = res.nodes;
  j["near_guard"] = res.near_guard;
  return j.dump(2) + "\n";
}

std::string dump_structures(const MetricInstance& inst, const PartitionResult& part) {
  json j;
  json graphs = json::array();
  for (const auto& g : part.graphs) {
    json item;
    item["level"] = g.level;
    json vertices = json::array();
    for (int v : g.vertices) vertices.push_back(inst.client_name(v));
    item["vertices"] = std::move(vertices);
    json edges = json::array();
    for (int u : g.vertices)
      for (int v : g.adj[u])
        if (u < v) edges.push_back(json::array({inst.client_name(u), inst.client_name(v)}));
    item["edges"] = std::move(edges);
    graphs.push_back(std::move(item));
  }
  j["graphs"] = std::move(graphs);

  json nets = json::array();
  for (size_t i = 0; i < part.nets.levels.size(); ++i) {
    json item;
    item["level"] = part.nets.levels[i];
    json members = json::array();
    for (int v : part.nets.nets[i]) members.push_back(inst.client_name(v));
    item["clients"] = std::move(members);
    nets.push_back(std::move(item));
  }
  j["nets"] = std::move(nets);

  json thresholds = json::object();
  for (const auto& [c, level] : part.nets.threshold) thresholds[inst.client_name(c)] = level;
  j["thresholds"] = std::move(thresholds);

  json family = json::array();
  for (const auto& e : part.family.entries) {
    json item;
    item["level"] = e.level;
    item["kind"] = to_string(e.kind);
    json servers = json::array();
    for (int s : e.servers) servers.push_back(inst.server_name(s));
    item["servers"] = std::move(servers);
    family.push_back(std::move(item));
  }
  j["family"] = std::move(family);

  json kept = json::array();
  for (int c : part.filtered.kept) kept.push_back(inst.client_name(c));
  j["kept_clients"] = std::move(kept);
  json reps = json::object();
  for (const auto& [dropped, keeper] : part.filtered.representative)
    reps[inst.client_name(dropped)] = inst.client_name(keeper);
  j["representatives"] = std::move(reps);
  return j.dump(2) + "\n";
}

std::string dump_audit(const MetricInstance& inst, const PartitionLog& log,
                       const AuditVerdict& verdict) {
  json j;
  j["mode"] = log.nonuniform ? "nonuniform" : "uniform";
  j["k"] = log.k;
  j["l"] = log.l;
  json records = json::array();
  for (const auto& r : log.records) {
    json item;
    item["iteration"] = r.iteration;
    item["client"] = inst.client_name(r.client);
    item["server"] = inst.server_name(r.server);
    item["kind"] = to_string(r.kind);
    item["neighborhood"] = r.neighborhood;
    records.push_back(std::move(item));
  }
  j["records"] = std::move(records);
  j["verdict"] = {{"ok", verdict.ok},
                  {"decisions", verdict.decisions_checked},
                  {"violations", verdict.violations}};
  return j.dump(2) + "\n";
}

std::string dump_bundle(const MetricInstance& inst, const OuterCoverBundle& bundle) {
  json j;
  json levels = json::array();
  for (const auto& lvl : bundle.levels) {
    json item;
    item["peel"] = lvl.peel;
    if (lvl.level) item["level"] = *lvl.level;
    item["requirement"] = lvl.requirement;
    json balls = json::array();
    for (const auto& b : lvl.balls) {
      json ball;
      ball["server"] = inst.server_name(b.center - inst.num_clients());
      ball["radius"] = b.radius;
      balls.push_back(std::move(ball));
    }
    item["balls"] = std::move(balls);
    item["balls_cost"] = lvl.balls_cost;
    item["mu_hat"] = lvl.mu_hat;
    levels.push_back(std::move(item));
  }
  j["levels"] = std::move(levels);
  j["total_balls_cost"] = bundle.total_balls_cost();
  return j.dump(2) + "\n";
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j = parse_json(json_text);
  if (!j.is_object()) throw_input("schema", "config must be a JSON object");
  ExperimentConfig cfg;
  auto range = [&](const char* key, std::array<int, 2>& out) {
    if (!j.contains(key)) return;
    const json& v = j[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
      throw_input("schema", std::string("'") + key + "' must be [lo, hi]");
    out = {v[0].get<int>(), v[1].get<int>()};
    if (out[0] < 1 || out[1] < out[0])
      throw_input("schema", std::string("bad range for '") + key + "'");
  };
  if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
  if (cfg.trials < 0) throw_input("schema", "'trials' must be >= 0");
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  range("clients", cfg.clients);
  range("servers", cfg.servers);
  range("demand", cfg.demand);
  if (j.contains("alphas")) {
    cfg.alphas.clear();
    for (const auto& a : j["alphas"]) cfg.alphas.push_back(a.get<double>());
    if (cfg.alphas.empty()) throw_input("schema", "'alphas' must not be empty");
  }
  if (j.contains("metric")) cfg.metric = j["metric"].get<std::string>();
  if (cfg.metric != "euclidean2d" && cfg.metric != "graph")
    throw_input("schema", "metric must be euclidean2d or graph");
  if (j.contains("modes")) {
    cfg.modes.clear();
    for (const auto& m : j["modes"]) {
      parse_mode(m.get<std::string>());  // validation only
      cfg.modes.push_back(m.get<std::string>());
    }
  }
  if (j.contains("subroutines")) {
    cfg.subroutines.clear();
    for (const auto& s : j["subroutines"]) {
      auto name = s.get<std::string>();
      if (name != "greedy" && name != "exact")
        throw_input("schema", "subroutines must be greedy or exact");
      cfg.subroutines.push_back(name);
    }
  }
  if (j.contains("oracle_guard")) cfg.oracle_guard = j["oracle_guard"].get<long long>();
  if (cfg.oracle_guard < 1) throw_input("schema", "'oracle_guard' must be >= 1");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

std::string serialize_config(const ExperimentConfig& cfg) {
  json j;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["clients"] = cfg.clients;
  j["servers"] = cfg.servers;
  j["demand"] = cfg.demand;
  j["alphas"] = cfg.alphas;
  j["metric"] = cfg.metric;
  j["modes"] = cfg.modes;
  j["subroutines"] = cfg.subroutines;
  j["oracle_guard"] = cfg.oracle_guard;
  return j.dump(2) + "\n";
}

GeneratedInstance generate_instance(const ExperimentConfig& cfg, int trial_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(trial_index)};
  std::mt19937_64 rng(seq);
  auto draw_int = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  auto draw_real = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };

  GeneratedInstance out;
  const int nx = draw_int(cfg.clients[0], cfg.clients[1]);
  const int ny = draw_int(cfg.servers[0], cfg.servers[1]);
  const double alpha = cfg.alphas[static_cast<size_t>(draw_int(0, static_cast<int>(cfg.alphas.size()) - 1))];

  int dlo = cfg.demand[0];
  int dhi = cfg.demand[1];
  if (dhi > ny || dlo > ny) {
    out.demand_clamped = true;
    dhi = std::min(dhi, ny);
    dlo = std::min(dlo, ny);
  }
  std::vector<int> demands;
  int kmax = 1;
  for (int c = 0; c < nx; ++c) {
    demands.push_back(draw_int(dlo, dhi));
    kmax = std::max(kmax, demands.back());
  }
  const int t = draw_int(kmax, ny);

  json j;
  j["alpha"] = alpha;
  std::vector<std::string> clients, servers;
  for (int c = 0; c < nx; ++c) clients.push_back("x" + std::to_string(c));
  for (int s = 0; s < ny; ++s) servers.push_back("y" + std::to_string(s));
  j["clients"] = clients;
  j["servers"] = servers;

  json m;
  const int n = nx + ny;
  auto name_of = [&](int p) { return p < nx ? clients[p] : servers[p - nx]; };
  if (cfg.metric == "euclidean2d") {
    m["type"] = "euclidean";
    json coords = json::object();
    for (int p = 0; p < n; ++p)
      coords[name_of(p)] = json::array({draw_real(0.0, 1.0), draw_real(0.0, 1.0)});
    m["coords"] = std::move(coords);
  } else {
    m["type"] = "graph";
    json edges = json::array();
    for (int p = 1; p < n; ++p) {
      int parent = draw_int(0, p - 1);
      edges.push_back(json::array({name_of(parent), name_of(p), draw_real(0.0, 1.0)}));
    }
    int extras = draw_int(0, n);
    for (int e = 0; e < extras && n >= 2; ++e) {
      int a = draw_int(0, n - 1);
      int b = draw_int(0, n - 2);
      if (b >= a) ++b;
      edges.push_back(json::array({name_of(a), name_of(b), draw_real(0.0, 1.0)}));
    }
    m["edges"] = std::move(edges);
  }
  j["metric"] = std::move(m);
  j["demands"] = demands;
  j["t"] = t;
  out.content = j.dump(2) + "\n";
  return out;
}

std::string content_digest(const std::string& content) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char byte : content) {
    h ^= byte;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

double ratio_bound(SolveMode mode, double alpha) {
  switch (mode) {
    case SolveMode::Uniform: return 2.0 * std::pow(12.0 * 9.0, alpha);
    case SolveMode::Nonuniform: return 2.0 * std::pow(16.0 * 9.0, alpha);
    case SolveMode::Tmmc: return 4.0 * std::pow(540.0, alpha);
  }
  return 0.0;
}

}  // namespace mmc
