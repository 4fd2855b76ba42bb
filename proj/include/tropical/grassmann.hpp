#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tropical/linalg.hpp"
#include "tropical/polyhedra.hpp"

// Tropical Pluecker vectors of point configurations, matroid subdivisions of
// hypersimplices, contractions, tree metrics and tree arrangements.
namespace tropical {

// Subsets of a ground set of at most 64 zero-based labels. Numeric order of
// the masks is colexicographic order.
using Subset = std::uint64_t;

inline std::vector<Index> elements(Subset s) {
  std::vector<Index> out;
  for (Index i = 0; s; ++i, s >>= 1)
    if (s & 1) out.push_back(i);
  return out;
}

inline Subset make_subset(std::span<const Index> elems) {
  Subset s = 0;
  for (Index e : elems) {
    if (e >= 64) throw PreconditionError("subset labels are limited to 64 elements");
    s |= Subset{1} << e;
  }
  return s;
}

inline Subset make_subset(std::initializer_list<Index> elems) {
  return make_subset(std::span<const Index>(elems.begin(), elems.size()));
}

// Lexicographic order of the sorted element lists ("123" < "124" < "134").
inline bool lex_less(Subset a, Subset b) {
  const auto ea = elements(a), eb = elements(b);
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

// "123" style when every label is a single digit, "1,2,10" otherwise.
inline std::string subset_label(Subset s, bool zero_based = false) {
  const auto e = elements(s);
  const Index offset = zero_based ? 0 : 1;
  const bool digits = std::all_of(e.begin(), e.end(), [&](Index x) { return x + offset <= 9; });
  std::string out;
  for (Index k = 0; k < e.size(); ++k) {
    if (!digits && k) out += ",";
    out += std::to_string(e[k] + offset);
  }
  return out;
}

// All r-subsets of the ground set, in colexicographic order.
inline std::vector<Subset> subsets_of_size(std::span<const Index> ground, std::size_t r) {
  std::vector<Subset> out;
  const std::size_t m = ground.size();
  if (r > m) return out;
  std::vector<Index> pick(r);
  for (Index k = 0; k < r; ++k) pick[k] = k;
  while (true) {
    Subset s = 0;
    for (Index k : pick) s |= Subset{1} << ground[k];
    out.push_back(s);
    Index k = r;
    while (k > 0 && pick[k - 1] == m - r + (k - 1)) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (Index q = k; q < r; ++q) pick[q] = pick[q - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Height function on the rank-subsets of a labelled ground set.
class PlueckerVector {
 public:
  PlueckerVector() = default;
  PlueckerVector(std::size_t rank, std::vector<Index> ground) : rank_(rank), ground_(std::move(ground)) {
    std::sort(ground_.begin(), ground_.end());
    if (std::adjacent_find(ground_.begin(), ground_.end()) != ground_.end())
      throw PreconditionError("ground set labels must be distinct");
    if (!ground_.empty() && ground_.back() >= 64) throw PreconditionError("ground set limited to 64 labels");
    if (rank_ > ground_.size()) throw PreconditionError("rank exceeds ground set size");
    for (Subset s : subsets_of_size(ground_, rank_)) values_.emplace(s, ExtendedRational::infinity());
  }

  std::size_t rank() const noexcept { return rank_; }
  std::span<const Index> ground() const noexcept { return ground_; }
  const std::map<Subset, ExtendedRational>& values() const noexcept { return values_; }

  const ExtendedRational& operator[](Subset s) const {
    const auto it = values_.find(s);
    if (it == values_.end()) throw PreconditionError("not a basis-size subset of the ground set");
    return it->second;
  }

  void set(Subset s, ExtendedRational value) {
    const auto it = values_.find(s);
    if (it == values_.end()) throw PreconditionError("not a basis-size subset of the ground set");
    it->second = std::move(value);
  }

  // Subsets in the order "123", "124", ...
  std::vector<Subset> lex_subsets() const {
    std::vector<Subset> out;
    for (const auto& [s, v] : values_) out.push_back(s);
    std::sort(out.begin(), out.end(), [](Subset a, Subset b) { return lex_less(a, b); });
    return out;
  }

  friend bool operator==(const PlueckerVector&, const PlueckerVector&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<Index> ground_;
  std::map<Subset, ExtendedRational> values_;
};

// d x (n+d): the points as columns followed by the tropical identity
// (zeros on the diagonal, infinity elsewhere).
inline TropicalMatrix extend_with_identity(std::span<const TropicalPoint> points, std::size_t d) {
  const std::size_t n = points.size();
  TropicalMatrix m(d, n + d, ExtendedRational::infinity());
  for (Index i = 0; i < n; ++i) {
    if (points[i].dim() != d) throw DimensionError("points of different dimension");
    for (Index j = 0; j < d; ++j) m(j, i) = points[i][j];
  }
  for (Index j = 0; j < d; ++j) m(j, n + j) = ExtendedRational(0);
  return m;
}

inline TropicalMatrix extend_with_identity(const PointConfiguration& v) {
  return extend_with_identity(v.points(), v.dim());
}

struct PlueckerWitness {
  Subset base = 0;  // the (d-2)-subset T
  Index i = 0, j = 0, k = 0, l = 0;
};

// Three-term relations: for each (d-2)-set T and distinct i<j<k<l outside T
// the minimum of pi(Tij)+pi(Tkl), pi(Tik)+pi(Tjl), pi(Til)+pi(Tjk) is
// attained twice. An all-infinite triple passes.
inline std::optional<PlueckerWitness> pluecker_violation(const PlueckerVector& p) {
  const std::size_t d = p.rank();
  if (d < 2) return std::nullopt;
  const auto ground = p.ground();
  for (Subset t : subsets_of_size(ground, d - 2)) {
    std::vector<Index> rest;
    for (Index g : ground)
      if (!(t >> g & 1)) rest.push_back(g);
    for (Subset q : subsets_of_size(rest, 4)) {
      const auto e = elements(q);
      auto pi = [&](Index a, Index b) { return p[t | Subset{1} << a | Subset{1} << b]; };
      const ExtendedRational s[3] = {pi(e[0], e[1]) + pi(e[2], e[3]), pi(e[0], e[2]) + pi(e[1], e[3]),
                                     pi(e[0], e[3]) + pi(e[1], e[2])};
      const auto low = std::min({s[0], s[1], s[2]});
      if (low.is_infinite()) continue;
      if (std::count(std::begin(s), std::end(s), low) < 2) return PlueckerWitness{t, e[0], e[1], e[2], e[3]};
    }
  }
  return std::nullopt;
}

inline bool check_pluecker(const PlueckerVector& p) { return !pluecker_violation(p); }

// S -> tdet of the columns S of the extended matrix.
inline PlueckerVector pluecker_vector(const PointConfiguration& v) {
  const std::size_t d = v.dim(), m = v.size() + d;
  const auto vbar = extend_with_identity(v);
  std::vector<Index> ground(m);
  for (Index i = 0; i < m; ++i) ground[i] = i;
  PlueckerVector p(d, ground);
  for (const auto& [s, val] : p.values()) {
    const auto cols = elements(s);
    p.set(s, detail::solve_assignment(vbar.columns(cols)).value);
  }
  if (!check_pluecker(p)) throw std::logic_error("extended matrix produced an invalid Pluecker vector");
  return p;
}

// Basis exchange: for A, B and a in A\B some b in B\A has A-a+b a basis.
inline bool is_matroid(std::span<const Subset> bases) {
  if (bases.empty()) throw PreconditionError("a matroid needs at least one basis");
  const std::set<Subset> family(bases.begin(), bases.end());
  const int r = std::popcount(*family.begin());
  for (Subset a : family)
    if (std::popcount(a) != r) return false;
  for (Subset a : family) {
    for (Subset b : family) {
      for (Index x : elements(a & ~b)) {
        bool found = false;
        for (Index y : elements(b & ~a))
          if (family.contains((a & ~(Subset{1} << x)) | Subset{1} << y)) {
            found = true;
            break;
          }
        if (!found) return false;
      }
    }
  }
  return true;
}

struct MatroidCell {
  std::vector<Subset> bases;  // lexicographically sorted
  friend bool operator==(const MatroidCell&, const MatroidCell&) = default;
};

inline bool cell_less(const MatroidCell& a, const MatroidCell& b) {
  return std::lexicographical_compare(a.bases.begin(), a.bases.end(), b.bases.begin(), b.bases.end(), lex_less);
}

// Regular subdivision of the hypersimplex (of the support of p) lifted by p.
inline std::vector<MatroidCell> matroid_subdivision(const PlueckerVector& p) {
  if (!check_pluecker(p)) throw PreconditionError("not a tropical Pluecker vector");
  const auto ground = p.ground();
  std::vector<Subset> support;
  std::vector<polyhedra::RationalVector> points;
  std::vector<Rational> heights;
  for (const auto& [s, val] : p.values()) {
    if (val.is_infinite()) continue;
    polyhedra::RationalVector x;
    for (Index g : ground) x.emplace_back(static_cast<long>(s >> g & 1));
    support.push_back(s);
    points.push_back(std::move(x));
    heights.push_back(val.value());
  }
  if (support.empty()) throw PreconditionError("Pluecker vector has no finite value");
  std::vector<MatroidCell> cells;
  for (const auto& idx : polyhedra::lower_hull_subdivision(points, heights)) {
    MatroidCell c;
    for (Index i : idx) c.bases.push_back(support[i]);
    std::sort(c.bases.begin(), c.bases.end(), lex_less);
    if (!is_matroid(c.bases)) throw std::logic_error("subdivision cell violates basis exchange");
    cells.push_back(std::move(c));
  }
  std::sort(cells.begin(), cells.end(), cell_less);
  return cells;
}

// pi_i(S) = pi(S + i) on the ground set without i.
inline PlueckerVector contraction_restriction(const PlueckerVector& p, Index i) {
  if (p.rank() < 2) throw PreconditionError("contraction needs rank at least 2");
  const auto g = p.ground();
  if (std::find(g.begin(), g.end(), i) == g.end()) throw PreconditionError("contraction element not in ground set");
  std::vector<Index> ground;
  for (Index x : g)
    if (x != i) ground.push_back(x);
  PlueckerVector out(p.rank() - 1, ground);
  for (const auto& [s, val] : out.values()) out.set(s, p[s | Subset{1} << i]);
  return out;
}

// Symmetric distances on labelled leaves.
class MetricOnLeaves {
 public:
  MetricOnLeaves() = default;
  MetricOnLeaves(std::vector<Index> leaves, std::vector<std::vector<Rational>> dist)
      : leaves_(std::move(leaves)), dist_(std::move(dist)) {
    if (dist_.size() != leaves_.size()) throw DimensionError("distance matrix size does not match leaves");
    for (const auto& row : dist_)
      if (row.size() != leaves_.size()) throw DimensionError("distance matrix must be square");
    for (Index a = 0; a < leaves_.size(); ++a) {
      if (dist_[a][a] != 0) throw PreconditionError("metric needs a zero diagonal");
      for (Index b = 0; b < a; ++b)
        if (dist_[a][b] != dist_[b][a]) throw PreconditionError("metric must be symmetric");
    }
  }

  std::span<const Index> leaves() const noexcept { return leaves_; }
  std::size_t size() const noexcept { return leaves_.size(); }
  // By position.
  const Rational& at(Index a, Index b) const { return dist_[a][b]; }
  // By leaf label.
  const Rational& operator()(Index x, Index y) const { return dist_[position(x)][position(y)]; }

  Index position(Index label) const {
    const auto it = std::find(leaves_.begin(), leaves_.end(), label);
    if (it == leaves_.end()) throw PreconditionError("unknown leaf label");
    return static_cast<Index>(it - leaves_.begin());
  }

  friend bool operator==(const MetricOnLeaves&, const MetricOnLeaves&) = default;

 private:
  std::vector<Index> leaves_;
  std::vector<std::vector<Rational>> dist_;
};

struct Normalization {
  Rational offset;
  Rational scale;
};

// scale = value range (1 if constant), offset chosen so that the resulting
// distances fill [2, 3].
inline Normalization default_normalization(const PlueckerVector& p) {
  std::optional<Rational> lo, hi;
  for (const auto& [s, v] : p.values()) {
    if (v.is_infinite()) throw PreconditionError("normalization needs finite Pluecker values");
    if (!lo || v.value() < *lo) lo = v.value();
    if (!hi || v.value() > *hi) hi = v.value();
  }
  if (!lo) throw PreconditionError("empty Pluecker vector");
  Rational range = *hi - *lo;
  Normalization n;
  n.scale = sgn(range) > 0 ? range : Rational(1);
  n.offset = 2 + *hi / n.scale;
  return n;
}

// delta(j, k) = offset - pi_i(jk) / scale.
inline MetricOnLeaves metric_from_restriction(const PlueckerVector& pi, std::optional<Normalization> norm = {}) {
  if (pi.rank() != 2) throw PreconditionError("metric needs a rank-2 Pluecker vector");
  const Normalization nz = norm ? *norm : default_normalization(pi);
  if (sgn(nz.scale) <= 0) throw PreconditionError("scale must be positive");
  std::vector<Index> leaves(pi.ground().begin(), pi.ground().end());
  const std::size_t n = leaves.size();
  std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n, Rational(0)));
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      const auto& v = pi[Subset{1} << leaves[a] | Subset{1} << leaves[b]];
      if (v.is_infinite()) throw PreconditionError("metric needs finite Pluecker values");
      Rational x = nz.offset - v.value() / nz.scale;
      if (sgn(x) <= 0) throw PreconditionError("normalization yields a nonpositive distance");
      dist[a][b] = dist[b][a] = x;
    }
  return MetricOnLeaves(std::move(leaves), std::move(dist));
}

// Positive off the diagonal, triangle inequality, and for every quadruple the
// two largest of the three pair sums agree.
inline bool is_tree_metric(const MetricOnLeaves& m) {
  const std::size_t n = m.size();
  if (n < 3) throw PreconditionError("tree metric test needs at least three leaves");
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      if (a != b && sgn(m.at(a, b)) <= 0) return false;
      for (Index c = 0; c < n; ++c)
        if (m.at(a, c) > m.at(a, b) + m.at(b, c)) return false;
    }
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b)
      for (Index c = b + 1; c < n; ++c)
        for (Index d = c + 1; d < n; ++d) {
          Rational s[3] = {m.at(a, b) + m.at(c, d), m.at(a, c) + m.at(b, d), m.at(a, d) + m.at(b, c)};
          std::sort(std::begin(s), std::end(s), [](const Rational& x, const Rational& y) { return cmp(x, y) < 0; });
          if (s[1] != s[2]) return false;
        }
  return true;
}

class WeightedTree {
 public:
  struct Edge {
    Index u, v;
    Rational length;
  };

  std::size_t node_count() const noexcept { return adj_.size(); }
  const std::map<Index, Index>& leaf_nodes() const noexcept { return leaf_node_; }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Index u = 0; u < adj_.size(); ++u)
      for (const auto& [v, len] : adj_[u])
        if (u < v) out.push_back({u, v, len});
    return out;
  }

  // Edge lengths along the path between two leaves, starting at x.
  std::vector<Rational> path(Index x, Index y) const {
    std::vector<Rational> out;
    for (const auto& [node, len] : node_path(leaf_node_.at(x), leaf_node_.at(y)))
      if (node != leaf_node_.at(x)) out.push_back(len);
    return out;
  }

  Rational distance(Index x, Index y) const {
    Rational s = 0;
    for (const auto& l : path(x, y)) s += l;
    return s;
  }

  // For every edge, the leaf labels separated from the smallest leaf label.
  std::vector<std::pair<std::set<Index>, Rational>> splits() const {
    std::vector<std::pair<std::set<Index>, Rational>> out;
    const Index root = leaf_node_.begin()->second;
    for (const auto& e : edges()) {
      // Side of e not containing root.
      std::vector<Index> parent(adj_.size(), adj_.size());
      std::vector<Index> stack{root};
      parent[root] = root;
      while (!stack.empty()) {
        const Index u = stack.back();
        stack.pop_back();
        for (const auto& [v, len] : adj_[u]) {
          if (parent[v] != adj_.size()) continue;
          if ((u == e.u && v == e.v) || (u == e.v && v == e.u)) continue;
          parent[v] = u;
          stack.push_back(v);
        }
      }
      std::set<Index> side;
      for (const auto& [label, node] : leaf_node_)
        if (parent[node] == adj_.size()) side.insert(label);
      out.emplace_back(std::move(side), e.length);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  Index add_node() {
    adj_.emplace_back();
    return adj_.size() - 1;
  }
  void add_edge(Index u, Index v, const Rational& len) {
    adj_[u].emplace_back(v, len);
    adj_[v].emplace_back(u, len);
  }
  void remove_edge(Index u, Index v) {
    std::erase_if(adj_[u], [v](const auto& e) { return e.first == v; });
    std::erase_if(adj_[v], [u](const auto& e) { return e.first == u; });
  }
  void label_leaf(Index label, Index node) { leaf_node_[label] = node; }

  // Nodes from a to b with the length of the edge used to enter each.
  std::vector<std::pair<Index, Rational>> node_path(Index a, Index b) const {
    std::vector<Index> parent(adj_.size(), adj_.size());
    std::vector<Rational> in_len(adj_.size());
    std::vector<Index> stack{a};
    parent[a] = a;
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      for (const auto& [v, len] : adj_[u])
        if (parent[v] == adj_.size()) {
          parent[v] = u;
          in_len[v] = len;
          stack.push_back(v);
        }
    }
    std::vector<std::pair<Index, Rational>> out;
    for (Index u = b; u != a; u = parent[u]) out.emplace_back(u, in_len[u]);
    out.emplace_back(a, Rational(0));
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<std::vector<std::pair<Index, Rational>>> adj_;
  std::map<Index, Index> leaf_node_;
};

// Leaf-by-leaf insertion: a new leaf c hangs off the current tree at distance
// min_{a,b} (a|b)_c, on the path between the minimizing leaves.
inline WeightedTree tree_from_metric(const MetricOnLeaves& m) {
  if (!is_tree_metric(m)) throw PreconditionError("not a tree metric");
  const auto leaves = m.leaves();
  WeightedTree t;
  t.label_leaf(leaves[0], t.add_node());
  t.label_leaf(leaves[1], t.add_node());
  t.add_edge(0, 1, m.at(0, 1));
  for (Index c = 2; c < leaves.size(); ++c) {
    std::optional<Rational> best;
    Index ba = 0, bb = 0;
    for (Index a = 0; a < c; ++a)
      for (Index b = a + 1; b < c; ++b) {
        Rational g = (m.at(a, c) + m.at(b, c) - m.at(a, b)) / 2;
        if (!best || g < *best) {
          best = g;
          ba = a;
          bb = b;
        }
      }
    const Rational pendant = *best;
    const Rational offset = m.at(ba, c) - pendant;  // from leaf ba towards bb
    const auto path = t.node_path(t.leaf_nodes().at(leaves[ba]), t.leaf_nodes().at(leaves[bb]));
    Rational walked = 0;
    Index attach = path.front().first;
    for (Index s = 1; s < path.size(); ++s) {
      const Rational next = walked + path[s].second;
      if (offset == walked) break;
      if (offset < next) {
        const Index u = path[s - 1].first, v = path[s].first;
        attach = t.add_node();
        t.remove_edge(u, v);
        t.add_edge(u, attach, offset - walked);
        t.add_edge(attach, v, next - offset);
        break;
      }
      walked = next;
      attach = path[s].first;
    }
    if (sgn(pendant) > 0) {
      const Index leaf = t.add_node();
      t.add_edge(attach, leaf, pendant);
      t.label_leaf(leaves[c], leaf);
    } else {
      t.label_leaf(leaves[c], attach);
    }
  }
  for (Index a = 0; a < leaves.size(); ++a)
    for (Index b = a + 1; b < leaves.size(); ++b)
      if (t.distance(leaves[a], leaves[b]) != m.at(a, b))
        throw std::logic_error("reconstructed tree does not realize the metric");
  return t;
}

struct TreeArrangement {
  Normalization normalization;
  std::vector<Index> labels;  // the contracted element of each tree
  std::vector<MetricOnLeaves> metrics;
  std::vector<WeightedTree> trees;
  bool compatible = true;  // delta_i(j,k) = delta_j(k,i) = delta_k(i,j)
};

// One tree metric per contraction facet of the rank-3 hypersimplex, all with
// the same normalization.
inline TreeArrangement tree_arrangement(const PointConfiguration& v, std::optional<Normalization> norm = {}) {
  if (v.dim() != 3) throw PreconditionError("tree arrangements need points in dimension 3");
  const auto p = pluecker_vector(v);
  TreeArrangement ta;
  ta.normalization = norm ? *norm : default_normalization(p);
  for (Index i : p.ground()) {
    ta.labels.push_back(i);
    ta.metrics.push_back(metric_from_restriction(contraction_restriction(p, i), ta.normalization));
    ta.trees.push_back(tree_from_metric(ta.metrics.back()));
  }
  const std::size_t m = ta.labels.size();
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k) {
        if (i == j || j == k || i == k) continue;
        const Index li = ta.labels[i], lj = ta.labels[j], lk = ta.labels[k];
        const Rational& a = ta.metrics[i](lj, lk);
        if (a != ta.metrics[j](lk, li) || a != ta.metrics[k](li, lj)) ta.compatible = false;
      }
  return ta;
}

}  // namespace tropical
