#include "mmc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace mmc {
namespace {

void check_names(const std::vector<std::string>& clients, const std::vector<std::string>& servers) {
  if (servers.empty()) throw_input("schema", "instance has no servers");
  if (clients.empty()) throw_input("schema", "instance has no clients");
  std::set<std::string> seen;
  for (const auto& n : clients)
    if (!seen.insert(n).second) throw_input("schema", "duplicate point name: " + n);
  for (const auto& n : servers)
    if (!seen.insert(n).second) throw_input("schema", "duplicate point name: " + n);
}

void check_alpha(double alpha) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw_input("schema", "alpha must be >= 1");
}

// Exact checks on the stored doubles; the triangle inequality is required to
// hold under double addition since that is the arithmetic used downstream.
void validate_metric(const std::vector<double>& d, int n) {
  for (int i = 0; i < n; ++i) {
    if (d[static_cast<size_t>(i) * n + i] != 0.0)
      throw_input("metric", "nonzero self-distance at point " + std::to_string(i));
    for (int j = 0; j < n; ++j) {
      double dij = d[static_cast<size_t>(i) * n + j];
      if (!(dij >= 0.0) || !std::isfinite(dij))
        throw_input("metric", "negative or non-finite distance");
      if (dij != d[static_cast<size_t>(j) * n + i])
        throw_input("metric", "asymmetric distance between points " + std::to_string(i) + " and " +
                                  std::to_string(j));
    }
  }
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        double via = d[static_cast<size_t>(i) * n + k] + d[static_cast<size_t>(k) * n + j];
        if (d[static_cast<size_t>(i) * n + j] > via) {
          std::ostringstream os;
          os << "triangle inequality violated: d(" << i << "," << j << ") > d(" << i << "," << k
             << ") + d(" << k << "," << j << ")";
          throw_input("metric", os.str());
        }
      }
}

}  // namespace

int MetricInstance::client_index(const std::string& name) const {
  auto it = std::find(client_names_.begin(), client_names_.end(), name);
  return it == client_names_.end() ? -1 : static_cast<int>(it - client_names_.begin());
}

int MetricInstance::server_index(const std::string& name) const {
  auto it = std::find(server_names_.begin(), server_names_.end(), name);
  return it == server_names_.end() ? -1 : static_cast<int>(it - server_names_.begin());
}

MetricInstance MetricInstance::from_euclidean(std::vector<std::string> clients,
                                              std::vector<std::string> servers,
                                              std::vector<std::vector<double>> coords,
                                              double alpha) {
  check_names(clients, servers);
  check_alpha(alpha);
  const int n = static_cast<int>(clients.size() + servers.size());
  if (static_cast<int>(coords.size()) != n)
    throw_input("schema", "coordinate count does not match point count");
  const size_t dim = coords.front().size();
  if (dim == 0) throw_input("schema", "zero-dimensional coordinates");
  for (const auto& c : coords) {
    if (c.size() != dim) throw_input("schema", "inconsistent coordinate dimensions");
    for (double v : c)
      if (!std::isfinite(v)) throw_input("schema", "non-finite coordinate");
  }

  MetricInstance inst;
  inst.client_names_ = std::move(clients);
  inst.server_names_ = std::move(servers);
  inst.alpha_ = alpha;
  inst.d_.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (size_t t = 0; t < dim; ++t) {
        double diff = coords[i][t] - coords[j][t];
        s += diff * diff;
      }
      double dij = std::sqrt(s);
      inst.d_[static_cast<size_t>(i) * n + j] = dij;
      inst.d_[static_cast<size_t>(j) * n + i] = dij;
    }
  inst.source_.kind = MetricKind::Euclidean;
  inst.source_.dim = static_cast<int>(dim);
  inst.source_.coords = std::move(coords);
  return inst;
}

MetricInstance MetricInstance::from_matrix(std::vector<std::string> clients,
                                           std::vector<std::string> servers,
                                           std::vector<std::vector<double>> matrix, double alpha) {
  check_names(clients, servers);
  check_alpha(alpha);
  const int n = static_cast<int>(clients.size() + servers.size());
  if (static_cast<int>(matrix.size()) != n)
    throw_input("schema", "distance matrix size does not match point count");
  for (const auto& row : matrix)
    if (static_cast<int>(row.size()) != n) throw_input("schema", "non-square distance matrix");

  MetricInstance inst;
  inst.client_names_ = std::move(clients);
  inst.server_names_ = std::move(servers);
  inst.alpha_ = alpha;
  inst.d_.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : matrix)
    for (double v : row) inst.d_.push_back(v);
  validate_metric(inst.d_, n);
  inst.source_.kind = MetricKind::Matrix;
  return inst;
}

MetricInstance MetricInstance::from_graph(std::vector<std::string> clients,
                                          std::vector<std::string> servers,
                                          std::vector<std::tuple<int, int, double>> edges,
                                          double alpha) {
  check_names(clients, servers);
  check_alpha(alpha);
  const int n = static_cast<int>(clients.size() + servers.size());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> d(static_cast<size_t>(n) * n, kInf);
  for (int i = 0; i < n; ++i) d[static_cast<size_t>(i) * n + i] = 0.0;
  for (const auto& [u, v, w] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw_input("schema", "edge endpoint out of range");
    if (!(w >= 0.0) || !std::isfinite(w)) throw_input("schema", "edge weight must be >= 0");
    if (u == v) continue;
    auto& duv = d[static_cast<size_t>(u) * n + v];
    auto& dvu = d[static_cast<size_t>(v) * n + u];
    if (w < duv) duv = dvu = w;
  }

  // Min-plus closure iterated to a fixpoint, so the result satisfies the
  // triangle inequality exactly under double addition.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        double dik = d[static_cast<size_t>(i) * n + k];
        if (dik == kInf) continue;
        for (int j = 0; j < n; ++j) {
          double via = dik + d[static_cast<size_t>(k) * n + j];
          auto& dij = d[static_cast<size_t>(i) * n + j];
          if (via < dij) {
            dij = via;
            changed = true;
          }
        }
      }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        auto& a = d[static_cast<size_t>(i) * n + j];
        auto& b = d[static_cast<size_t>(j) * n + i];
        double m = std::min(a, b);
        if (a != m || b != m) {
          a = b = m;
          changed = true;
        }
      }
  }
  for (double v : d)
    if (v == kInf) throw_input("metric", "graph metric is disconnected");
  validate_metric(d, n);

  MetricInstance inst;
  inst.client_names_ = std::move(clients);
  inst.server_names_ = std::move(servers);
  inst.alpha_ = alpha;
  inst.d_ = std::move(d);
  inst.source_.kind = MetricKind::Graph;
  inst.source_.edges = std::move(edges);
  return inst;
}

DemandProfile DemandProfile::uniform(int k, int num_clients) {
  if (k < 1) throw_input("demand", "coverage demand must be >= 1");
  return DemandProfile(std::vector<int>(static_cast<size_t>(num_clients), k));
}

DemandProfile::DemandProfile(std::vector<int> demands) : demands_(std::move(demands)) {
  if (demands_.empty()) throw_input("demand", "empty demand profile");
  kmax_ = *std::max_element(demands_.begin(), demands_.end());
  uniform_ = std::all_of(demands_.begin(), demands_.end(),
                         [this](int k) { return k == demands_.front(); });
}

void DemandProfile::validate(const MetricInstance& inst) const {
  if (size() != inst.num_clients())
    throw_input("demand", "demand profile size does not match client count");
  for (int c = 0; c < size(); ++c) {
    int k = demands_[c];
    if (k < 1 || k > inst.num_servers())
      throw_input("demand", "demand for client " + inst.client_name(c) +
                                " outside [1, |Y|]: " + std::to_string(k));
  }
}

}  // namespace mmc
