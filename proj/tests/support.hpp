#pragma once

// Independent reference computations and random instance generators shared
// by the unit tests and the acceptance runner.

#include <algorithm>
#include <functional>
#include <optional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tropical/tropical.hpp"

namespace testsupport {

using namespace tropical;

// --- generators -----------------------------------------------------------

class Random {
 public:
  explicit Random(unsigned seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  // Small integers, sometimes halves or thirds: many ties.
  Rational small() {
    Rational q(integer(-4, 4), integer(1, 2) == 1 ? 1 : integer(2, 3));
    q.canonicalize();
    return q;
  }

  // Wide range with denominators: ties are unlikely.
  Rational wide() {
    Rational q(integer(-1000, 1000), integer(1, 7));
    q.canonicalize();
    return q;
  }

  ExtendedRational extended(int inf_percent = 15) {
    if (integer(0, 99) < inf_percent) return ExtendedRational::infinity();
    return small();
  }

  TropicalMatrix matrix(std::size_t d, bool wide_entries = false) {
    TropicalMatrix m(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) m(i, j) = wide_entries ? wide() : small();
    return m;
  }

  PointConfiguration configuration(std::size_t n, std::size_t d, bool wide_entries = false) {
    std::vector<TropicalPoint> pts;
    for (Index i = 0; i < n; ++i) {
      std::vector<Rational> c;
      for (Index j = 0; j < d; ++j) c.push_back(wide_entries ? wide() : small());
      pts.emplace_back(std::move(c));
    }
    return PointConfiguration(std::move(pts));
  }

  TropicalPoint point(std::size_t d) {
    std::vector<Rational> c;
    for (Index j = 0; j < d; ++j) c.push_back(small());
    return TropicalPoint(std::move(c));
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

// --- oracles --------------------------------------------------------------

struct BruteDet {
  ExtendedRational value = ExtendedRational::infinity();
  std::size_t realizers = 0;
  bool even = false, odd = false;
};

// All d! permutations.
inline BruteDet brute_det(const TropicalMatrix& m) {
  BruteDet r;
  std::vector<Index> p(m.rows());
  std::iota(p.begin(), p.end(), 0);
  do {
    ExtendedRational s(0);
    for (Index i = 0; i < p.size(); ++i) s = s + m(i, p[i]);
    if (s.is_infinite()) continue;
    std::size_t inv = 0;
    for (Index i = 0; i < p.size(); ++i)
      for (Index j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
    const bool even = inv % 2 == 0;
    if (s < r.value) {
      r = BruteDet{s, 1, even, !even};
    } else if (s == r.value) {
      ++r.realizers;
      (even ? r.even : r.odd) = true;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return r;
}

// Tropical projection onto tconv(V): x lies in the polytope iff it equals
// min_i (lambda_i + v_i) with lambda_i = max_j (x_j - v_ij).
inline bool brute_contains(const PointConfiguration& v, const TropicalPoint& x) {
  std::vector<Rational> proj(v.dim());
  for (Index i = 0; i < v.size(); ++i) {
    Rational lambda = x[0] - v.entry(i, 0);
    for (Index j = 1; j < v.dim(); ++j) lambda = std::max(lambda, Rational(x[j] - v.entry(i, j)));
    for (Index j = 0; j < v.dim(); ++j) {
      Rational c = lambda + v.entry(i, j);
      if (i == 0 || c < proj[j]) proj[j] = c;
    }
  }
  return TropicalPoint(proj) == x;
}

// Bipartite graph on points and coordinates with edges i -- k for i in T_k.
inline bool type_graph_connected(const TypeVector& t, std::size_t n) {
  const std::size_t d = t.size();
  std::vector<Index> parent(n + d);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (Index k = 0; k < d; ++k)
    for (Index i : t[k]) parent[find(i)] = find(n + k);
  const Index root = find(n);
  for (Index a = 0; a < n + d; ++a)
    if (find(a) != root) return false;
  return true;
}

// Pseudo-vertices from scratch: every vertex x satisfies d-1 tight relations
// x_k - x_j = v_ik - v_ij along a spanning tree on the coordinates. Enumerate
// all such trees with all point labels and keep the candidates with a
// connected type graph.
inline std::set<TropicalPoint> brute_pseudo_vertices(const PointConfiguration& v) {
  const std::size_t n = v.size(), d = v.dim();
  std::set<TropicalPoint> out;
  // Spanning trees as parent arrays: coordinate k > 0 attaches to parent[k],
  // edge labelled label[k]. Every labelled tree on {0..d-1} rooted at 0 arises.
  std::vector<Index> parent(d, 0), label(d, 0);
  std::function<void(Index)> rec = [&](Index k) {
    if (k == d) {
      // Resolve coordinates in dependency order; cycles are skipped.
      std::vector<std::optional<Rational>> x(d);
      x[0] = Rational(0);
      for (std::size_t round = 0; round < d; ++round)
        for (Index c = 1; c < d; ++c)
          if (!x[c] && x[parent[c]]) x[c] = *x[parent[c]] + v.entry(label[c], c) - v.entry(label[c], parent[c]);
      std::vector<Rational> coords;
      for (const auto& c : x) {
        if (!c) return;
        coords.push_back(*c);
      }
      TropicalPoint p(coords);
      const auto t = type_of(v, p);
      if (!t.has_empty_entry() && type_graph_connected(t, n)) out.insert(normalize(p));
      return;
    }
    for (Index par = 0; par < d; ++par) {
      if (par == k) continue;
      for (Index i = 0; i < n; ++i) {
        parent[k] = par;
        label[k] = i;
        rec(k + 1);
      }
    }
  };
  if (d == 1) return out;
  rec(1);
  return out;
}

// v_i is a tropical vertex iff it is not in the hull of the other points;
// among equal points only the first counts.
inline std::vector<Index> brute_vertex_indices(const PointConfiguration& v) {
  std::vector<Index> out;
  for (Index i = 0; i < v.size(); ++i) {
    bool dup = false;
    for (Index j = 0; j < i; ++j) dup = dup || v[j] == v[i];
    if (dup) continue;
    std::vector<TropicalPoint> others;
    for (Index j = 0; j < v.size(); ++j)
      if (!(v[j] == v[i])) others.push_back(v[j]);
    if (others.empty() || !brute_contains(PointConfiguration(others), v[i])) out.push_back(i);
  }
  return out;
}

// Translation of every point by c.
inline PointConfiguration translate(const PointConfiguration& v, const TropicalPoint& c) {
  std::vector<TropicalPoint> pts;
  for (const auto& p : v.points()) pts.push_back(p + c);
  return PointConfiguration(std::move(pts));
}

inline std::set<TropicalPoint> translate(const std::vector<TropicalPoint>& pts, const TropicalPoint& c) {
  std::set<TropicalPoint> out;
  for (const auto& p : pts) out.insert(normalize(p + c));
  return out;
}

// Random tree with positive lengths on the given leaves, returned as its
// leaf metric and split set.
struct RandomTree {
  MetricOnLeaves metric;
  std::set<std::set<Index>> splits;  // sides not containing the smallest leaf, nontrivial only
};

inline RandomTree random_tree(Random& r, std::size_t leaves) {
  // Grow by subdividing a random edge and adding a pendant leaf.
  struct E {
    Index u, v;
    Rational len;
  };
  std::vector<E> edges{{0, 1, Rational(r.integer(1, 6), r.integer(1, 3))}};
  for (auto& e : edges) e.len.canonicalize();
  std::vector<Index> leaf_node{0, 1};
  Index next = 2;
  for (std::size_t l = 2; l < leaves; ++l) {
    const Index pick = static_cast<Index>(r.integer(0, static_cast<long>(edges.size()) - 1));
    const E e = edges[pick];
    const Index mid = next++;
    Rational a(r.integer(1, 5), 2);
    a.canonicalize();
    // Split the edge at a random interior point.
    Rational t(r.integer(1, 4), 5);
    t.canonicalize();
    Rational first = e.len * t, second = e.len - first;
    edges[pick] = {e.u, mid, first};
    edges.push_back({mid, e.v, second});
    const Index leaf = next++;
    edges.push_back({mid, leaf, a});
    leaf_node.push_back(leaf);
  }
  // Distances by DFS from every leaf.
  std::vector<std::vector<std::pair<Index, Rational>>> adj(next);
  for (const auto& e : edges) {
    adj[e.u].emplace_back(e.v, e.len);
    adj[e.v].emplace_back(e.u, e.len);
  }
  auto dist_from = [&](Index s) {
    std::vector<std::optional<Rational>> dist(next);
    std::vector<Index> stack{s};
    dist[s] = Rational(0);
    while (!stack.empty()) {
      Index u = stack.back();
      stack.pop_back();
      for (const auto& [w, len] : adj[u])
        if (!dist[w]) {
          dist[w] = *dist[u] + len;
          stack.push_back(w);
        }
    }
    return dist;
  };
  std::vector<Index> labels(leaves);
  std::iota(labels.begin(), labels.end(), 10);
  std::vector<std::vector<Rational>> m(leaves, std::vector<Rational>(leaves));
  for (Index a = 0; a < leaves; ++a) {
    const auto dist = dist_from(leaf_node[a]);
    for (Index b = 0; b < leaves; ++b) m[a][b] = *dist[leaf_node[b]];
  }
  // Splits: remove each edge, collect leaves on the far side from leaf 0.
  std::set<std::set<Index>> splits;
  for (Index k = 0; k < edges.size(); ++k) {
    std::vector<bool> seen(next, false);
    std::vector<Index> stack{leaf_node[0]};
    seen[leaf_node[0]] = true;
    while (!stack.empty()) {
      Index u = stack.back();
      stack.pop_back();
      for (const auto& [w, len] : adj[u]) {
        if ((u == edges[k].u && w == edges[k].v) || (u == edges[k].v && w == edges[k].u)) continue;
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::set<Index> side;
    for (Index a = 0; a < leaves; ++a)
      if (!seen[leaf_node[a]]) side.insert(labels[a]);
    if (side.size() >= 2 && side.size() + 2 <= leaves) splits.insert(side);
  }
  return {MetricOnLeaves(labels, m), splits};
}

inline std::set<std::set<Index>> nontrivial_splits(const WeightedTree& t, std::size_t leaves) {
  std::set<std::set<Index>> out;
  for (const auto& [side, len] : t.splits())
    if (side.size() >= 2 && side.size() + 2 <= leaves && sgn(len) > 0) out.insert(side);
  return out;
}

// Matroid cells restricted to the contraction facet x_i = 1.
inline bool facet_coherent(const PlueckerVector& p, Index i, std::string& why) {
  const auto full = matroid_subdivision(p);
  const auto pi = contraction_restriction(p, i);
  const auto facet = matroid_subdivision(pi);
  std::set<std::set<Subset>> restricted;
  for (const auto& c : full) {
    std::set<Subset> r;
    for (Subset s : c.bases)
      if (s >> i & 1) r.insert(s & ~(Subset{1} << i));
    if (!r.empty()) restricted.insert(r);
  }
  std::vector<std::set<Subset>> facet_sets;
  for (const auto& c : facet) facet_sets.emplace_back(c.bases.begin(), c.bases.end());
  for (const auto& f : facet_sets)
    if (!restricted.contains(f)) {
      why = "a contraction cell is not the restriction of a cell";
      return false;
    }
  for (const auto& r : restricted)
    if (std::none_of(facet_sets.begin(), facet_sets.end(),
                     [&](const auto& f) { return std::includes(f.begin(), f.end(), r.begin(), r.end()); })) {
      why = "a restricted cell lies in no contraction cell";
      return false;
    }
  return true;
}

}  // namespace testsupport
