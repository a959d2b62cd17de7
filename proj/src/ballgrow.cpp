#include "mfsteiner/ballgrow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mfsteiner/errors.hpp"
#include "mfsteiner/steiner.hpp"

namespace mfsteiner {

namespace {

std::vector<Vertex> sorted_members(const Instance& inst,
                                   std::span<const Vertex> vs,
                                   const char* what) {
  std::vector<Vertex> out(vs.begin(), vs.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (!out.empty() && out.back() >= inst.size()) {
    throw InvalidArgument(std::string(what) + ": vertex out of range");
  }
  return out;
}

struct StageRates {
  std::vector<double> stage1;
  std::vector<double> stage2;
};

StageRates stage_rates(std::size_t n, std::size_t k) {
  const double c = static_cast<double>(ball_size(n, k));
  const double n_prime = static_cast<double>(n) - static_cast<double>(k) + 1.0;
  StageRates rates;
  for (double i = 1.0; i < c; i += 1.0) {
    rates.stage1.push_back(i * (n_prime - i));
  }
  for (double i = 1.0; i <= c; i += 1.0) {
    rates.stage2.push_back(c * (n_prime - static_cast<double>(k) * c - i + 1.0));
  }
  for (const auto* stage : {&rates.stage1, &rates.stage2}) {
    for (double r : *stage) {
      if (!(r > 0.0)) {
        throw InfeasibleSize("stage rates: n = " + std::to_string(n) +
                             " is too small for k = " + std::to_string(k) +
                             " and c = " + std::to_string(ball_size(n, k)));
      }
    }
  }
  return rates;
}

// Union-find for pruning the path union to a forest.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), Vertex{0});
  }
  Vertex find(Vertex v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<Vertex> parent_;
};

}  // namespace

double c_kn(std::size_t n, std::size_t k) {
  if (n < 2) throw DomainError("c_kn: need n >= 2");
  if (k < 1) throw DomainError("c_kn: need k >= 1");
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return std::pow(nd, (kd - 1.0) / kd) *
         std::pow((kd + 1.0) * std::log(nd), 1.0 / kd);
}

std::size_t ball_size(std::size_t n, std::size_t k) {
  return static_cast<std::size_t>(std::ceil(c_kn(n, k)));
}

const char* to_string(BallGrowthStatus status) noexcept {
  switch (status) {
    case BallGrowthStatus::success:
      return "success";
    case BallGrowthStatus::failed_intersection:
      return "failed-intersection";
    case BallGrowthStatus::infeasible_size:
      return "infeasible-size";
  }
  return "unknown";
}

Ball grow_ball(const Instance& inst, Vertex root,
               std::span<const Vertex> domain, std::size_t m) {
  const std::vector<Vertex> members = sorted_members(inst, domain, "grow_ball");
  const auto root_at = std::lower_bound(members.begin(), members.end(), root);
  if (root_at == members.end() || *root_at != root) {
    throw InvalidArgument("grow_ball: root not in domain");
  }
  if (m == 0) throw InvalidArgument("grow_ball: target size must be >= 1");
  if (m > members.size()) {
    throw InfeasibleSize("grow_ball: target size " + std::to_string(m) +
                         " exceeds domain size " +
                         std::to_string(members.size()));
  }

  const std::size_t d = members.size();
  std::vector<double> dist(d, kUnreached);
  std::vector<Vertex> parent(d, kNoVertex);
  std::vector<char> settled(d, 0);
  dist[static_cast<std::size_t>(root_at - members.begin())] = 0.0;

  Ball ball;
  ball.root = root;
  ball.vertices.reserve(m);
  ball.arrival.reserve(m);
  ball.parent.reserve(m);
  while (ball.vertices.size() < m) {
    std::size_t best = d;
    for (std::size_t p = 0; p < d; ++p) {
      if (!settled[p] && (best == d || dist[p] < dist[best])) best = p;
    }
    settled[best] = 1;
    const Vertex u = members[best];
    ball.vertices.push_back(u);
    ball.arrival.push_back(dist[best]);
    ball.parent.push_back(parent[best]);
    for (std::size_t p = 0; p < d; ++p) {
      if (settled[p]) continue;
      const double cand = dist[best] + inst(u, members[p]);
      if (cand < dist[p]) {
        dist[p] = cand;
        parent[p] = u;
      }
    }
  }
  ball.duration = ball.arrival.back();
  return ball;
}

Annulus grow_annulus(const Instance& inst, const Ball& ball,
                     std::span<const Vertex> eligible, std::size_t m) {
  const std::vector<Vertex> pool =
      sorted_members(inst, eligible, "grow_annulus");
  if (m == 0) throw InvalidArgument("grow_annulus: target size must be >= 1");
  if (m > pool.size()) {
    throw InfeasibleSize("grow_annulus: target size " + std::to_string(m) +
                         " exceeds eligible size " +
                         std::to_string(pool.size()));
  }
  for (Vertex u : ball.vertices) {
    if (std::binary_search(pool.begin(), pool.end(), u)) {
      throw InvalidArgument("grow_annulus: eligible set overlaps the ball");
    }
  }

  std::vector<double> arrival(pool.size(), kUnreached);
  std::vector<Vertex> parent(pool.size(), kNoVertex);
  for (std::size_t p = 0; p < pool.size(); ++p) {
    for (std::size_t b = 0; b < ball.vertices.size(); ++b) {
      const Vertex u = ball.vertices[b];
      const double cand = ball.arrival[b] + inst(u, pool[p]);
      if (cand < arrival[p] || (cand == arrival[p] && u < parent[p])) {
        arrival[p] = cand;
        parent[p] = u;
      }
    }
    if (arrival[p] < ball.duration) {
      throw std::logic_error(
          "grow_annulus: arrival precedes the end of stage 1");
    }
  }

  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(m),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      return arrival[a] < arrival[b] ||
                             (arrival[a] == arrival[b] && pool[a] < pool[b]);
                    });

  Annulus annulus;
  annulus.start = ball.duration;
  for (std::size_t i = 0; i < m; ++i) {
    annulus.vertices.push_back(pool[order[i]]);
    annulus.arrival.push_back(arrival[order[i]]);
    annulus.parent.push_back(parent[order[i]]);
  }
  annulus.duration = annulus.arrival.back() - annulus.start;
  return annulus;
}

BallGrowthOutcome ball_growth_tree(const Instance& inst, std::size_t k,
                                   const BallGrowthOptions& options) {
  const std::size_t n = inst.size();
  if (k == 0) throw InvalidArgument("ball_growth_tree: need k >= 1");
  if (k > n) throw InvalidArgument("ball_growth_tree: need k <= n");

  BallGrowthOutcome outcome;
  if (k == 1) {
    outcome.status = BallGrowthStatus::success;
    outcome.meeting = 0;
    outcome.path_lengths = {0.0};
    return outcome;
  }

  const std::size_t m = options.m.value_or(ball_size(n, k));
  outcome.trace.m = m;
  if (m == 0 || 2 * k * m > n) {
    outcome.status = BallGrowthStatus::infeasible_size;
    return outcome;
  }

  // Stage 1: the domain starts as V minus the later roots; each stage
  // admits its own root and drops the ball just grown.
  std::vector<char> in_domain(n, 1);
  std::vector<char> claimed(n, 0);
  for (Vertex r = 1; r < k; ++r) in_domain[r] = 0;
  std::vector<Vertex> domain;
  for (Vertex i = 0; i < k; ++i) {
    in_domain[i] = 1;
    if (i > 0) {
      for (Vertex u : outcome.trace.roots.back().ball.vertices) in_domain[u] = 0;
    }
    domain.clear();
    for (Vertex v = 0; v < n; ++v) {
      if (in_domain[v]) domain.push_back(v);
    }
    RootTrace root;
    root.ball = grow_ball(inst, i, domain, m);
    root.z1 = root.ball.duration;
    for (Vertex u : root.ball.vertices) claimed[u] = 1;
    outcome.trace.roots.push_back(std::move(root));
  }

  // Stage 2: every annulus grows in the same pool of unclaimed vertices.
  std::vector<Vertex> eligible;
  for (Vertex v = 0; v < n; ++v) {
    if (!claimed[v]) eligible.push_back(v);
  }
  std::vector<std::size_t> hits(n, 0);
  std::vector<std::vector<std::size_t>> slot(k, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < k; ++i) {
    RootTrace& root = outcome.trace.roots[i];
    root.annulus = grow_annulus(inst, root.ball, eligible, m);
    root.z2 = root.annulus.duration;
    outcome.certificate += root.z1 + root.z2;
    for (std::size_t p = 0; p < m; ++p) {
      ++hits[root.annulus.vertices[p]];
      slot[i][root.annulus.vertices[p]] = p;
    }
  }

  Vertex meeting = kNoVertex;
  double meeting_total = kUnreached;
  for (Vertex v = 0; v < n; ++v) {
    if (hits[v] != k) continue;
    if (options.meeting == MeetingRule::lowest_index) {
      meeting = v;
      break;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      total += outcome.trace.roots[i].annulus.arrival[slot[i][v]];
    }
    if (total < meeting_total) {
      meeting_total = total;
      meeting = v;
    }
  }
  if (meeting == kNoVertex) {
    outcome.status = BallGrowthStatus::failed_intersection;
    return outcome;
  }
  outcome.meeting = meeting;

  std::vector<Edge> path_union;
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < k; ++i) {
    const RootTrace& root = outcome.trace.roots[i];
    const std::size_t at = slot[i][meeting];
    outcome.path_lengths.push_back(root.annulus.arrival[at]);
    Vertex u = root.annulus.parent[at];
    path_union.push_back(make_edge(u, meeting));
    for (std::size_t p = 0; p < root.ball.vertices.size(); ++p) {
      position[root.ball.vertices[p]] = p;
    }
    while (root.ball.parent[position[u]] != kNoVertex) {
      const Vertex up = root.ball.parent[position[u]];
      path_union.push_back(make_edge(up, u));
      u = up;
    }
  }
  std::sort(path_union.begin(), path_union.end());
  path_union.erase(std::unique(path_union.begin(), path_union.end()),
                   path_union.end());

  // Kruskal over the union keeps a spanning forest of it, dropping the
  // heaviest edge of every cycle.
  std::stable_sort(path_union.begin(), path_union.end(),
                   [&](const Edge& a, const Edge& b) {
                     return inst(a.first, a.second) < inst(b.first, b.second);
                   });
  DisjointSets sets(n);
  for (const Edge& e : path_union) {
    if (sets.unite(e.first, e.second)) outcome.tree.push_back(e);
  }
  std::sort(outcome.tree.begin(), outcome.tree.end());
  for (const Edge& e : outcome.tree) {
    outcome.tree_weight += inst(e.first, e.second);
  }
  outcome.status = BallGrowthStatus::success;
  return outcome;
}

StageTimes simulate_stage_times(std::size_t n, std::size_t k, Stream& stream) {
  const StageRates rates = stage_rates(n, k);
  StageTimes times;
  for (double r : rates.stage1) times.z1 += sample_exp(stream.uniform()) / r;
  for (double r : rates.stage2) times.z2 += sample_exp(stream.uniform()) / r;
  return times;
}

double stage1_mean(std::size_t n, std::size_t k) {
  double total = 0.0;
  for (double r : stage_rates(n, k).stage1) total += 1.0 / r;
  return total;
}

double stage1_variance(std::size_t n, std::size_t k) {
  double total = 0.0;
  for (double r : stage_rates(n, k).stage1) total += 1.0 / (r * r);
  return total;
}

double mgf_exact(std::size_t n, std::size_t k, double t) {
  const StageRates rates = stage_rates(n, k);
  const double nt = static_cast<double>(n) * t;
  double log_value = 0.0;
  for (const auto* stage : {&rates.stage1, &rates.stage2}) {
    for (double r : *stage) {
      if (nt >= r) {
        throw DivergenceError("mgf_exact: n t = " + std::to_string(nt) +
                              " reaches the rate " + std::to_string(r));
      }
      log_value -= std::log1p(-nt / r);
    }
  }
  return std::exp(log_value);
}

}  // namespace mfsteiner
