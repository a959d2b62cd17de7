#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct UnionFind {
  std::vector<std::size_t> up;
  explicit UnionFind(std::size_t n) : up(n) {
    std::iota(up.begin(), up.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  bool join(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    up[a] = b;
    return true;
  }
};

// Calls visit(subset) for every r-subset of pool, in lexicographic order.
template <class F>
void for_each_subset(const std::vector<Vertex>& pool, std::size_t r, F visit) {
  if (r > pool.size()) return;
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<Vertex> pick(r);
  while (true) {
    for (std::size_t i = 0; i < r; ++i) pick[i] = pool[idx[i]];
    visit(pick);
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == pool.size() - r + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Instance hand_instance(std::size_t n,
                       const std::vector<std::tuple<Vertex, Vertex, double>>& w,
                       double fill) {
  std::vector<double> weights(n * (n - 1) / 2, fill);
  for (const auto& [i, j, value] : w) {
    const Vertex a = std::min(i, j);
    const Vertex b = std::max(i, j);
    weights[Instance::edge_index(n, a, b)] = value;
  }
  return Instance(n, std::move(weights));
}

std::vector<std::vector<double>> floyd_warshall(const Instance& inst) {
  const std::size_t n = inst.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) d[i][j] = inst.weight(i, j);
    }
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
      }
    }
  }
  return d;
}

double kruskal(const Instance& inst, const std::vector<Vertex>& X) {
  std::vector<std::tuple<double, Vertex, Vertex>> edges;
  for (std::size_t a = 0; a < X.size(); ++a) {
    for (std::size_t b = a + 1; b < X.size(); ++b) {
      edges.emplace_back(inst.weight(X[a], X[b]), X[a], X[b]);
    }
  }
  std::sort(edges.begin(), edges.end());
  UnionFind uf(inst.size());
  double total = 0.0;
  for (const auto& [w, a, b] : edges) {
    if (uf.join(a, b)) total += w;
  }
  return total;
}

double steiner_by_supersets(const Instance& inst, const std::vector<Vertex>& S) {
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < inst.size(); ++v) {
    if (std::find(S.begin(), S.end(), v) == S.end()) rest.push_back(v);
  }
  double best = kInf;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << rest.size());
       ++bits) {
    std::vector<Vertex> X = S;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (bits >> i & 1) X.push_back(rest[i]);
    }
    best = std::min(best, kruskal(inst, X));
  }
  return best;
}

double w_max_by_enumeration(const Instance& inst, std::size_t k,
                            std::size_t l) {
  std::vector<Vertex> fixed(k);
  std::iota(fixed.begin(), fixed.end(), Vertex{0});
  std::vector<Vertex> pool;
  for (Vertex v = k; v < inst.size(); ++v) pool.push_back(v);
  double best = 0.0;
  for_each_subset(pool, l, [&](const std::vector<Vertex>& L) {
    std::vector<Vertex> S = fixed;
    S.insert(S.end(), L.begin(), L.end());
    best = std::max(best, steiner_by_supersets(inst, S));
  });
  return best;
}

bool is_steiner_tree(std::size_t n, const std::vector<Edge>& edges,
                     const std::vector<Vertex>& terminals,
                     bool leaves_terminal) {
  if (terminals.empty()) return edges.empty();
  std::vector<std::size_t> degree(n, 0);
  UnionFind uf(n);
  for (const Edge& e : edges) {
    if (e.first >= n || e.second >= n || e.first == e.second) return false;
    if (!uf.join(e.first, e.second)) return false;  // cycle or duplicate
    ++degree[e.first];
    ++degree[e.second];
  }
  const std::size_t root = uf.find(terminals.front());
  for (Vertex t : terminals) {
    if (uf.find(t) != root) return false;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (degree[v] == 0) continue;
    if (uf.find(v) != root) return false;  // stray component
    if (leaves_terminal && degree[v] == 1 &&
        std::find(terminals.begin(), terminals.end(), v) == terminals.end()) {
      return false;
    }
  }
  return true;
}

double lazy_first_ball_duration(std::size_t n, std::size_t k, std::size_t m,
                                const mfsteiner::Seed& seed) {
  const mfsteiner::Stream stream(seed);
  auto weight = [&](Vertex i, Vertex j) {
    if (i > j) std::swap(i, j);
    const std::uint64_t bits = stream.at(Instance::edge_index(n, i, j));
    const double u = (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
    return -std::log1p(-u);
  };
  // Domain: vertex 0 and k..n-1.
  std::vector<Vertex> domain{0};
  for (Vertex v = k; v < n; ++v) domain.push_back(v);
  const std::size_t d = domain.size();
  std::vector<double> dist(d, kInf);
  std::vector<char> done(d, 0);
  dist[0] = 0.0;
  double last = 0.0;
  for (std::size_t settled = 0; settled < m; ++settled) {
    std::size_t best = d;
    for (std::size_t p = 0; p < d; ++p) {
      if (!done[p] && (best == d || dist[p] < dist[best])) best = p;
    }
    done[best] = 1;
    last = dist[best];
    for (std::size_t p = 0; p < d; ++p) {
      if (done[p]) continue;
      const double alt = dist[best] + weight(domain[best], domain[p]);
      if (alt < dist[p]) dist[p] = alt;
    }
  }
  return last;
}

}  // namespace oracle
