#include "mfsteiner/steiner.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "mfsteiner/errors.hpp"

namespace mfsteiner {

namespace {

std::vector<Vertex> sorted_unique(std::span<const Vertex> vs) {
  std::vector<Vertex> out(vs.begin(), vs.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void check_range(const Instance& inst, std::span<const Vertex> vs,
                 const char* what) {
  for (Vertex v : vs) {
    if (v >= inst.size()) {
      throw InvalidArgument(std::string(what) + ": vertex " +
                            std::to_string(v) + " out of range");
    }
  }
}

// Dense Dijkstra over `members` (sorted) with caller-provided initial labels.
// Labels and predecessors are indexed by vertex.
void dense_dijkstra(const Instance& inst, const std::vector<Vertex>& members,
                    std::span<double> dist, std::span<Vertex> pred) {
  const std::size_t m = members.size();
  std::vector<char> settled(m, 0);
  for (std::size_t round = 0; round < m; ++round) {
    std::size_t best = m;
    double best_dist = kUnreached;
    for (std::size_t p = 0; p < m; ++p) {
      if (!settled[p] && dist[members[p]] < best_dist) {
        best = p;
        best_dist = dist[members[p]];
      }
    }
    if (best == m) break;
    settled[best] = 1;
    const Vertex u = members[best];
    for (std::size_t p = 0; p < m; ++p) {
      if (settled[p]) continue;
      const Vertex v = members[p];
      const double cand = best_dist + inst(u, v);
      if (cand < dist[v]) {
        dist[v] = cand;
        pred[v] = u;
      }
    }
  }
}

std::vector<Vertex> all_vertices(std::size_t n) {
  std::vector<Vertex> vs(n);
  for (Vertex v = 0; v < n; ++v) vs[v] = v;
  return vs;
}

}  // namespace

std::vector<Vertex> DistanceMap::path_to(Vertex v) const {
  std::vector<Vertex> path;
  if (v >= dist.size() || !reached(v)) return path;
  for (Vertex cur = v; cur != kNoVertex; cur = parent[cur]) path.push_back(cur);
  std::reverse(path.begin(), path.end());
  return path;
}

DistanceMap shortest_paths(const Instance& inst, Vertex source,
                           std::span<const Vertex> allowed) {
  check_range(inst, allowed, "shortest_paths");
  std::vector<Vertex> members = sorted_unique(allowed);
  if (!std::binary_search(members.begin(), members.end(), source)) {
    throw InvalidArgument("shortest_paths: source not in allowed set");
  }
  DistanceMap dm;
  dm.source = source;
  dm.dist.assign(inst.size(), kUnreached);
  dm.parent.assign(inst.size(), kNoVertex);
  dm.dist[source] = 0.0;
  dense_dijkstra(inst, members, dm.dist, dm.parent);
  return dm;
}

DistanceMap shortest_paths(const Instance& inst, Vertex source) {
  const std::vector<Vertex> members = all_vertices(inst.size());
  return shortest_paths(inst, source, members);
}

SteinerTable::SteinerTable(const Instance& inst,
                           std::span<const Vertex> terminals,
                           const SteinerOptions& options)
    : n_(inst.size()), terminals_(sorted_unique(terminals)) {
  if (terminals_.empty()) {
    throw InvalidArgument("steiner: terminal set must be nonempty");
  }
  check_range(inst, terminals_, "steiner");
  if (terminals_.size() > options.k_max) {
    throw CapabilityError("steiner: " + std::to_string(terminals_.size()) +
                          " terminals exceed k_max = " +
                          std::to_string(options.k_max));
  }
  if (terminals_.size() > 31) {
    throw CapabilityError("steiner: at most 31 terminals are representable");
  }

  const std::uint32_t full = full_mask();
  const std::size_t cells = (static_cast<std::size_t>(full) + 1) * n_;
  cost_.assign(cells, kUnreached);
  split_.assign(cells, 0);
  pred_.assign(cells, kNoVertex);
  const std::vector<Vertex> everyone = all_vertices(n_);

  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    double* row = cost_.data() + index(mask, 0);
    std::uint32_t* split_row = split_.data() + index(mask, 0);
    if (std::has_single_bit(mask)) {
      row[terminals_[std::countr_zero(mask)]] = 0.0;
    } else {
      // Every unordered split {sub, mask ^ sub} once: sub keeps the low bit.
      const std::uint32_t low = mask & (~mask + 1);
      for (std::uint32_t sub = (mask - 1) & mask; sub != 0;
           sub = (sub - 1) & mask) {
        if (!(sub & low)) continue;
        const double* a = cost_.data() + index(sub, 0);
        const double* b = cost_.data() + index(mask ^ sub, 0);
        for (std::size_t v = 0; v < n_; ++v) {
          const double merged = a[v] + b[v];
          if (merged < row[v]) {
            row[v] = merged;
            split_row[v] = sub;
          }
        }
      }
    }
    dense_dijkstra(inst, everyone,
                   std::span<double>(row, n_),
                   std::span<Vertex>(pred_.data() + index(mask, 0), n_));
  }
}

void SteinerTable::collect(std::uint32_t mask, Vertex v,
                           std::vector<Edge>& out) const {
  // Follow path extensions iteratively; recurse only on merges.
  for (;;) {
    const std::size_t at = index(mask, v);
    if (pred_[at] != kNoVertex) {
      out.push_back(make_edge(pred_[at], v));
      v = pred_[at];
      continue;
    }
    if (split_[at] != 0) {
      collect(split_[at], v, out);
      collect(mask ^ split_[at], v, out);
    }
    return;
  }
}

std::vector<Edge> SteinerTable::tree(std::uint32_t mask, Vertex v) const {
  std::vector<Edge> edges;
  collect(mask, v, edges);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

SteinerResult steiner_exact(const Instance& inst, std::span<const Vertex> S,
                            const SteinerOptions& options) {
  SteinerTable table(inst, S, options);
  SteinerResult result;
  result.terminals = table.terminals();
  result.weight = table.optimum();
  result.edges = table.tree(table.full_mask(), table.terminals().front());
  return result;
}

double mst(const Instance& inst, std::span<const Vertex> X) {
  check_range(inst, X, "mst");
  const std::vector<Vertex> members = sorted_unique(X);
  if (members.empty()) throw InvalidArgument("mst: empty vertex set");
  const std::size_t m = members.size();
  std::vector<double> link(m, kUnreached);
  std::vector<char> in_tree(m, 0);
  link[0] = 0.0;
  double total = 0.0;
  for (std::size_t round = 0; round < m; ++round) {
    std::size_t best = m;
    for (std::size_t p = 0; p < m; ++p) {
      if (!in_tree[p] && (best == m || link[p] < link[best])) best = p;
    }
    in_tree[best] = 1;
    total += link[best];
    for (std::size_t p = 0; p < m; ++p) {
      if (in_tree[p]) continue;
      const double w = inst(members[best], members[p]);
      if (w < link[p]) link[p] = w;
    }
  }
  return total;
}

double mst(const Instance& inst) {
  const std::vector<Vertex> everyone = all_vertices(inst.size());
  return mst(inst, everyone);
}

double steiner_bruteforce(const Instance& inst, std::span<const Vertex> S) {
  const std::size_t n = inst.size();
  if (n > kBruteforceMaxVertices) {
    throw CapabilityError("steiner_bruteforce: n = " + std::to_string(n) +
                          " exceeds " + std::to_string(kBruteforceMaxVertices));
  }
  check_range(inst, S, "steiner_bruteforce");
  const std::vector<Vertex> terminals = sorted_unique(S);
  if (terminals.empty()) {
    throw InvalidArgument("steiner_bruteforce: terminal set must be nonempty");
  }
  std::vector<Vertex> others;
  for (Vertex v = 0; v < n; ++v) {
    if (!std::binary_search(terminals.begin(), terminals.end(), v)) {
      others.push_back(v);
    }
  }
  double best = kUnreached;
  std::vector<Vertex> X;
  for (std::uint32_t pick = 0; pick < (std::uint32_t{1} << others.size());
       ++pick) {
    X = terminals;
    for (std::size_t b = 0; b < others.size(); ++b) {
      if (pick & (std::uint32_t{1} << b)) X.push_back(others[b]);
    }
    best = std::min(best, mst(inst, X));
  }
  return best;
}

double metric_closure_mst(const Instance& inst, std::span<const Vertex> S) {
  check_range(inst, S, "metric_closure_mst");
  const std::vector<Vertex> terminals = sorted_unique(S);
  if (terminals.empty()) {
    throw InvalidArgument("metric_closure_mst: empty terminal set");
  }
  const std::size_t t = terminals.size();
  std::vector<DistanceMap> maps;
  maps.reserve(t);
  for (Vertex s : terminals) maps.push_back(shortest_paths(inst, s));
  std::vector<double> link(t, kUnreached);
  std::vector<char> in_tree(t, 0);
  link[0] = 0.0;
  double total = 0.0;
  for (std::size_t round = 0; round < t; ++round) {
    std::size_t best = t;
    for (std::size_t p = 0; p < t; ++p) {
      if (!in_tree[p] && (best == t || link[p] < link[best])) best = p;
    }
    in_tree[best] = 1;
    total += link[best];
    for (std::size_t p = 0; p < t; ++p) {
      if (!in_tree[p]) {
        link[p] = std::min(link[p], maps[best].dist[terminals[p]]);
      }
    }
  }
  return total;
}

}  // namespace mfsteiner
