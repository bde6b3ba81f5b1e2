#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "mmc/errors.hpp"

namespace mmc {

enum class MetricKind { Euclidean, Matrix, Graph };

// The form a metric was supplied in, retained so an instance can be
// re-serialized in its original representation.
struct MetricSource {
  MetricKind kind = MetricKind::Matrix;
  int dim = 0;                                      // Euclidean only
  std::vector<std::vector<double>> coords;          // Euclidean: per point, clients then servers
  std::vector<std::tuple<int, int, double>> edges;  // Graph: (point, point, weight)
};

// Clients, servers and the metric over their union. Distances live in a dense
// matrix over the combined point set (clients first, then servers); everything
// is immutable after construction, so instances are freely shared across
// threads. Matrix inputs are validated (symmetry, zero diagonal, nonnegativity,
// triangle inequality, all checked exactly on the stored doubles); Euclidean
// inputs are metrics by construction; graph inputs are closed under all-pairs
// shortest paths and then validated like a matrix.
class MetricInstance {
 public:
  static MetricInstance from_euclidean(std::vector<std::string> clients,
                                       std::vector<std::string> servers,
                                       std::vector<std::vector<double>> coords, double alpha);
  static MetricInstance from_matrix(std::vector<std::string> clients,
                                    std::vector<std::string> servers,
                                    std::vector<std::vector<double>> matrix, double alpha);
  static MetricInstance from_graph(std::vector<std::string> clients,
                                   std::vector<std::string> servers,
                                   std::vector<std::tuple<int, int, double>> edges, double alpha);

  int num_clients() const { return static_cast<int>(client_names_.size()); }
  int num_servers() const { return static_cast<int>(server_names_.size()); }
  int num_points() const { return num_clients() + num_servers(); }
  double alpha() const { return alpha_; }

  // Combined point ids: clients are 0..|X|-1, servers are |X|..|X|+|Y|-1.
  int client_point(int c) const { return c; }
  int server_point(int s) const { return num_clients() + s; }

  double dist(int p, int q) const { return d_[static_cast<size_t>(p) * num_points() + q]; }
  double dist_cs(int client, int server) const { return dist(client, server_point(server)); }
  double dist_ss(int s1, int s2) const { return dist(server_point(s1), server_point(s2)); }
  double dist_cc(int c1, int c2) const { return dist(c1, c2); }

  const std::string& client_name(int c) const { return client_names_[c]; }
  const std::string& server_name(int s) const { return server_names_[s]; }
  const std::vector<std::string>& client_names() const { return client_names_; }
  const std::vector<std::string>& server_names() const { return server_names_; }
  int client_index(const std::string& name) const;  // -1 if unknown
  int server_index(const std::string& name) const;

  const MetricSource& source() const { return source_; }

  void check_client(int c) const {
    if (c < 0 || c >= num_clients()) throw_input("client", "unknown client id");
  }
  void check_server(int s) const {
    if (s < 0 || s >= num_servers()) throw_input("server", "unknown server id");
  }

 private:
  MetricInstance() = default;

  std::vector<std::string> client_names_;
  std::vector<std::string> server_names_;
  double alpha_ = 1.0;
  std::vector<double> d_;  // row-major (|X|+|Y|)^2
  MetricSource source_;
};

// Per-client coverage demands; uniform k is the constant special case.
class DemandProfile {
 public:
  static DemandProfile uniform(int k, int num_clients);
  explicit DemandProfile(std::vector<int> demands);

  int demand(int c) const { return demands_[c]; }
  int kmax() const { return kmax_; }
  bool is_uniform() const { return uniform_; }
  int size() const { return static_cast<int>(demands_.size()); }
  const std::vector<int>& demands() const { return demands_; }

  // Feasibility assumption: 1 <= demand(x) <= |Y| for every client.
  void validate(const MetricInstance& inst) const;

 private:
  std::vector<int> demands_;
  int kmax_ = 0;
  bool uniform_ = true;
};

// Closed ball around a combined point id.
struct Ball {
  int center = 0;
  double radius = 0.0;

  bool contains(const MetricInstance& inst, int point) const {
    return inst.dist(center, point) <= radius;
  }
  bool intersects(const MetricInstance& inst, const Ball& other) const {
    return inst.dist(center, other.center) <= radius + other.radius;
  }
};

}  // namespace mmc
