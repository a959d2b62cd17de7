#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "mfsteiner/errors.hpp"
#include "mfsteiner/steiner.hpp"
#include "oracles.hpp"

using namespace mfsteiner;

namespace {

// v1-v2 = 1, v1-v3 = 2, v2-v3 = 4
Instance small_triangle() { return oracle::hand_instance(3, {{0, 1, 1.0}, {0, 2, 2.0}, {1, 2, 4.0}}); }

double edge_sum(const Instance& inst, const std::vector<Edge>& edges) {
  double total = 0.0;
  for (const Edge& e : edges) total += inst(e.first, e.second);
  return total;
}

}  // namespace

TEST_CASE("shortest_paths hand example") {
  const Instance inst = small_triangle();
  const DistanceMap d = shortest_paths(inst, 1);
  CHECK(d.dist[1] == 0.0);
  CHECK(d.dist[0] == 1.0);
  CHECK(d.dist[2] == 3.0);
  CHECK(d.path_to(2) == std::vector<Vertex>{1, 0, 2});
  CHECK(d.parent[1] == kNoVertex);
}

TEST_CASE("shortest_paths restricted to the source") {
  const Instance inst = gen_instance(6, {1, 0, 0});
  const std::vector<Vertex> only{3};
  const DistanceMap d = shortest_paths(inst, 3, only);
  for (Vertex v = 0; v < 6; ++v) {
    CHECK(d.reached(v) == (v == 3));
  }
  const std::vector<Vertex> without_source{0, 1};
  CHECK_THROWS_AS(shortest_paths(inst, 3, without_source), InvalidArgument);
}

TEST_CASE("shortest_paths agrees with Floyd-Warshall and its own parents") {
  for (std::uint64_t t = 0; t < 5; ++t) {
    const Instance inst = gen_instance(30, {2, 0, t});
    const auto fw = oracle::floyd_warshall(inst);
    for (Vertex s = 0; s < 30; s += 7) {
      const DistanceMap d = shortest_paths(inst, s);
      for (Vertex v = 0; v < 30; ++v) {
        CHECK(d.dist[v] == doctest::Approx(fw[s][v]).epsilon(1e-12));
        const auto path = d.path_to(v);
        REQUIRE(path.front() == s);
        double len = 0.0;
        for (std::size_t i = 1; i < path.size(); ++i) len += inst(path[i - 1], path[i]);
        CHECK(len == doctest::Approx(d.dist[v]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("restricted shortest_paths satisfies the relaxation fixpoint") {
  const Instance inst = gen_instance(25, {3, 0, 0});
  std::vector<Vertex> allowed;
  for (Vertex v = 0; v < 25; v += 2) allowed.push_back(v);
  const DistanceMap d = shortest_paths(inst, 4, allowed);
  for (Vertex a : allowed) {
    CHECK(d.reached(a));
    for (Vertex b : allowed) {
      if (a != b) CHECK(d.dist[b] <= d.dist[a] + inst(a, b) + 1e-15);
    }
  }
  for (Vertex v = 1; v < 25; v += 2) CHECK_FALSE(d.reached(v));
}

TEST_CASE("steiner_exact hand examples") {
  const Instance tri = oracle::hand_instance(3, {{0, 1, 5.0}, {0, 2, 1.0}, {1, 2, 1.0}});
  const std::vector<Vertex> s{0, 1};
  const SteinerResult r = steiner_exact(tri, s);
  CHECK(r.weight == 2.0);
  CHECK(r.edges == std::vector<Edge>{{0, 2}, {1, 2}});
  CHECK(steiner_bruteforce(tri, s) == 2.0);

  const std::vector<Vertex> single{2};
  const SteinerResult one = steiner_exact(tri, single);
  CHECK(one.weight == 0.0);
  CHECK(one.edges.empty());
}

TEST_CASE("steiner_exact spanning all vertices is the MST") {
  for (std::uint64_t t = 0; t < 5; ++t) {
    const Instance inst = gen_instance(7, {4, 0, t});
    std::vector<Vertex> all(7);
    std::iota(all.begin(), all.end(), Vertex{0});
    const double m = mst(inst);
    CHECK(steiner_exact(inst, all).weight == doctest::Approx(m).epsilon(1e-12));
    CHECK(steiner_bruteforce(inst, all) == doctest::Approx(m).epsilon(1e-12));
    CHECK(oracle::kruskal(inst, all) == doctest::Approx(m).epsilon(1e-12));
  }
}

TEST_CASE("two terminals give the geodesic") {
  const Instance inst = gen_instance(10, {5, 0, 0});
  const std::vector<Vertex> s{2, 7};
  const double geodesic = shortest_paths(inst, 2).dist[7];
  CHECK(steiner_exact(inst, s).weight == doctest::Approx(geodesic).epsilon(1e-12));
  CHECK(steiner_bruteforce(inst, s) == doctest::Approx(geodesic).epsilon(1e-12));
}

TEST_CASE("steiner_exact result invariants and oracle agreement") {
  Stream pick({6, 0, 0});
  for (std::uint64_t t = 0; t < 40; ++t) {
    const std::size_t n = 4 + pick.below(7);
    const Instance inst = gen_instance(n, {6, 1, t});
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), Vertex{0});
    const std::size_t size = 1 + pick.below(std::min<std::size_t>(n, 5));
    for (std::size_t i = 0; i < size; ++i) std::swap(all[i], all[i + pick.below(n - i)]);
    std::vector<Vertex> S(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size));
    const SteinerResult r = steiner_exact(inst, S);
    CHECK(std::is_sorted(r.terminals.begin(), r.terminals.end()));
    CHECK(oracle::is_steiner_tree(n, r.edges, r.terminals, true));
    CHECK(edge_sum(inst, r.edges) == doctest::Approx(r.weight).epsilon(1e-12));
    CHECK(r.weight == doctest::Approx(oracle::steiner_by_supersets(inst, S)).epsilon(1e-12));
    CHECK(r.weight <= metric_closure_mst(inst, S) + 1e-12);
  }
}

TEST_CASE("SteinerTable cost_with is the Steiner weight with one more vertex") {
  const Instance inst = gen_instance(9, {7, 0, 0});
  const std::vector<Vertex> S{0, 1, 2};
  const SteinerTable table(inst, S);
  CHECK(table.optimum() == doctest::Approx(steiner_exact(inst, S).weight).epsilon(1e-12));
  for (Vertex v = 3; v < 9; ++v) {
    std::vector<Vertex> plus = S;
    plus.push_back(v);
    CHECK(table.cost_with(v) == doctest::Approx(steiner_bruteforce(inst, plus)).epsilon(1e-12));
    CHECK(edge_sum(inst, table.tree(table.full_mask(), v)) ==
          doctest::Approx(table.cost_with(v)).epsilon(1e-12));
  }
}

TEST_CASE("mst of tiny vertex sets") {
  const Instance inst = small_triangle();
  const std::vector<Vertex> one{1};
  const std::vector<Vertex> two{1, 2};
  CHECK(mst(inst, one) == 0.0);
  CHECK(mst(inst, two) == 4.0);
  CHECK(mst(inst) == 3.0);
  const std::vector<Vertex> none;
  CHECK_THROWS_AS(mst(inst, none), InvalidArgument);
}

TEST_CASE("steiner errors") {
  const Instance inst = gen_instance(12, {8, 0, 0});
  const std::vector<Vertex> none;
  const std::vector<Vertex> out_of_range{0, 12};
  CHECK_THROWS_AS(steiner_exact(inst, none), InvalidArgument);
  CHECK_THROWS_AS(steiner_exact(inst, out_of_range), InvalidArgument);
  std::vector<Vertex> nine(9);
  std::iota(nine.begin(), nine.end(), Vertex{0});
  CHECK_THROWS_AS(steiner_exact(inst, nine), CapabilityError);
  SteinerOptions wide;
  wide.k_max = 9;
  CHECK_NOTHROW(steiner_exact(inst, nine, wide));

  const Instance big = gen_instance(13, {8, 0, 0});
  const std::vector<Vertex> s{0, 1};
  CHECK_THROWS_AS(steiner_bruteforce(big, s), CapabilityError);
}

TEST_CASE("duplicate terminals collapse") {
  const Instance inst = gen_instance(8, {9, 0, 0});
  const std::vector<Vertex> dup{3, 1, 3};
  const std::vector<Vertex> clean{1, 3};
  const SteinerResult r = steiner_exact(inst, dup);
  CHECK(r.terminals == clean);
  CHECK(r.weight == steiner_exact(inst, clean).weight);
}
