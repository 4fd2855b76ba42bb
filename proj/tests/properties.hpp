#pragma once

// Randomized property checks. Each returns an empty string on success and a
// description of the first counterexample otherwise.

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

namespace testsupport {

struct Property {
  const char* name;
  std::string (*check)(unsigned seed, int instances);
};

inline std::string describe(const PointConfiguration& v) {
  std::ostringstream o;
  o << "[";
  for (Index i = 0; i < v.size(); ++i) o << (i ? "," : "") << v[i].to_string();
  o << "]";
  return o.str();
}

inline std::string semiring_laws(unsigned seed, int instances) {
  Random r(seed);
  const ExtendedRational inf = ExtendedRational::infinity(), one(0);
  for (int k = 0; k < instances; ++k) {
    const auto a = r.extended(), b = r.extended(), c = r.extended();
    const bool ok = trop_add(a, b) == trop_add(b, a) && trop_mul(a, b) == trop_mul(b, a) &&
                    trop_add(trop_add(a, b), c) == trop_add(a, trop_add(b, c)) &&
                    trop_mul(trop_mul(a, b), c) == trop_mul(a, trop_mul(b, c)) &&
                    trop_mul(a, trop_add(b, c)) == trop_add(trop_mul(a, b), trop_mul(a, c)) &&
                    trop_add(a, inf) == a && trop_mul(a, one) == a && trop_mul(a, inf) == inf &&
                    trop_add(a, a) == a;
    if (!ok) return "semiring law fails for " + a.to_string() + ", " + b.to_string() + ", " + c.to_string();
  }
  return {};
}

inline std::string normalize_idempotent(unsigned seed, int instances) {
  Random r(seed);
  for (int k = 0; k < instances; ++k) {
    const auto x = r.point(static_cast<std::size_t>(r.integer(2, 5)));
    const auto n = normalize(x);
    const auto t = r.small();
    auto same = [](const TropicalPoint& a, const TropicalPoint& b) { return std::ranges::equal(a.coords(), b.coords()); };
    if (!same(normalize(n), n)) return "normalize not idempotent at " + x.to_string();
    if (*std::min_element(n.begin(), n.end()) != 0) return "normalized point has nonzero minimum";
    if (!same(normalize(x.shifted(t)), n) || !(x.shifted(t) == x))
      return "shift changes the class of " + x.to_string();
  }
  return {};
}

inline std::string translation_equivariance(unsigned seed, int instances) {
  Random r(seed);
  for (int k = 0; k < instances; ++k) {
    const std::size_t d = static_cast<std::size_t>(r.integer(2, 4));
    const std::size_t n = static_cast<std::size_t>(r.integer(1, d == 4 ? 4 : 6));
    const auto v = r.configuration(n, d);
    const auto c = r.point(d);
    const auto w = translate(v, c);
    const auto pv = pseudo_vertices(w);
    if (std::set<TropicalPoint>(pv.begin(), pv.end()) != translate(pseudo_vertices(v), c))
      return "pseudo-vertices not equivariant for " + describe(v);
    if (tropical_vertex_indices(v) != tropical_vertex_indices(w)) return "vertices not equivariant for " + describe(v);
    for (Index j = 0; j < d; ++j)
      if (!(corner(w, j) == corner(v, j) + c)) return "corner not equivariant for " + describe(v);
  }
  return {};
}

// Pseudo-vertices and tropical vertices against the independent oracles.
inline std::string pseudo_vertex_oracle(unsigned seed, int instances) {
  Random r(seed);
  for (int k = 0; k < instances; ++k) {
    const std::size_t d = static_cast<std::size_t>(r.integer(2, 4));
    const std::size_t n = static_cast<std::size_t>(r.integer(1, d == 4 ? 4 : 6));
    const auto v = r.configuration(n, d);
    const auto pv = pseudo_vertices(v);
    if (std::set<TropicalPoint>(pv.begin(), pv.end()) != brute_pseudo_vertices(v))
      return "pseudo-vertices differ from the spanning-tree oracle for " + describe(v);
    if (tropical_vertex_indices(v) != brute_vertex_indices(v))
      return "tropical vertices differ from the projection oracle for " + describe(v);
  }
  return {};
}

inline std::string type_round_trip(unsigned seed, int instances) {
  Random r(seed);
  for (int k = 0; k < instances; ++k) {
    const std::size_t d = static_cast<std::size_t>(r.integer(2, 4));
    const auto v = r.configuration(static_cast<std::size_t>(r.integer(1, d == 4 ? 5 : 6)), d);
    for (const auto& x : pseudo_vertices(v))
      if (!(coords_from_type(v, type_of(v, x)) == x)) return "round trip fails at " + x.to_string();
  }
  return {};
}

inline std::string halfspace_antichain(unsigned seed, int instances) {
  Random r(seed);
  for (int k = 0; k < instances; ++k) {
    const std::size_t d = static_cast<std::size_t>(r.integer(2, 4));
    const auto v = r.configuration(static_cast<std::size_t>(r.integer(1, d == 4 ? 4 : 6)), d);
    const auto hs = minimal_halfspaces(v);
    for (const auto& h : hs) {
      for (const auto& p : v.points())
        if (!halfspace_contains(h, p)) return "minimal halfspace misses a generator of " + describe(v);
      for (const auto& g : hs)
        if (!(g == h) && halfspace_included(g, h)) return "minimal halfspaces not an antichain for " + describe(v);
    }
    // The halfspaces cut out the polytope: sample pseudo-vertices, generators
    // and random points.
    std::vector<TropicalPoint> probes = pseudo_vertices(v);
    for (int s = 0; s < 10; ++s) probes.push_back(r.point(d));
    for (const auto& x : probes) {
      bool inside = true;
      for (const auto& h : hs) inside = inside && halfspace_contains(h, x);
      if (hs.empty()) inside = brute_contains(v, x);
      if (inside != brute_contains(v, x))
        return "halfspace intersection differs from the polytope at " + x.to_string() + " for " + describe(v);
    }
  }
  return {};
}

inline std::vector<Rational> heights(const PlueckerVector& p) {
  std::vector<Rational> h;
  for (const auto& [s, val] : p.values()) h.push_back(val.value());
  return h;
}

// lambda * pi + c + <w, e_S> induces the same matroid cells.
inline std::string pluecker_lift_invariance(unsigned seed, int instances) {
  Random r(seed);
  for (int k = 0; k < instances; ++k) {
    const std::size_t d = static_cast<std::size_t>(r.integer(2, 3));
    const auto v = r.configuration(static_cast<std::size_t>(r.integer(1, 6 - d)), d);
    const auto p = pluecker_vector(v);
    Rational lambda(r.integer(1, 5), r.integer(1, 3));
    lambda.canonicalize();
    const Rational c = r.small();
    std::vector<Rational> w;
    for (std::size_t g = 0; g < p.ground().size(); ++g) w.push_back(r.small());
    PlueckerVector q = p;
    for (const auto& [s, val] : p.values()) {
      Rational h = lambda * val.value() + c;
      for (Index e : elements(s)) h += w[e];
      q.set(s, ExtendedRational(h));
    }
    if (!check_pluecker(q)) return "affine change of heights breaks the Pluecker relations for " + describe(v);
    if (matroid_subdivision(p) != matroid_subdivision(q)) return "matroid cells change under an affine lift for " + describe(v);
  }
  return {};
}

inline std::string matroid_facet_coherence(unsigned seed, int instances) {
  Random r(seed);
  for (int k = 0; k < instances; ++k) {
    const std::size_t d = static_cast<std::size_t>(r.integer(3, 4));
    const auto v = r.configuration(static_cast<std::size_t>(r.integer(1, d == 4 ? 3 : 4)), d);
    const auto p = pluecker_vector(v);
    for (const auto& cell : matroid_subdivision(p))
      if (!is_matroid(cell.bases)) return "cell violates basis exchange for " + describe(v);
    const Index i = static_cast<Index>(r.integer(0, static_cast<long>(p.ground().size()) - 1));
    std::string why;
    if (!facet_coherent(p, i, why)) return why + " for " + describe(v) + " at element " + std::to_string(i);
  }
  return {};
}

// Genericity against the minors criterion: no square submatrix singular.
inline std::string genericity_minors(unsigned seed, int instances) {
  Random r(seed);
  for (int k = 0; k < instances; ++k) {
    const std::size_t d = static_cast<std::size_t>(r.integer(2, 3));
    const std::size_t n = static_cast<std::size_t>(r.integer(1, 4));
    const auto v = r.configuration(n, d, r.integer(0, 1) == 1);
    bool any_singular = false;
    for (std::uint64_t rows = 1; rows < (1u << n); ++rows)
      for (std::uint64_t cols = 1; cols < (1u << d); ++cols) {
        if (std::popcount(rows) != std::popcount(cols) || std::popcount(rows) < 2) continue;
        const auto ri = elements(rows), ci = elements(cols);
        TropicalMatrix m(ri.size(), ci.size());
        for (Index a = 0; a < ri.size(); ++a)
          for (Index b = 0; b < ci.size(); ++b) m(a, b) = v.entry(ri[a], ci[b]);
        any_singular = any_singular || brute_det(m).realizers >= 2;
      }
    if (is_sufficiently_generic(v) == any_singular) return "genericity differs from the minors test for " + describe(v);
  }
  return {};
}

inline std::string tree_reconstruction(unsigned seed, int instances) {
  Random r(seed);
  for (int k = 0; k < instances; ++k) {
    const auto t = random_tree(r, static_cast<std::size_t>(r.integer(3, 7)));
    if (!is_tree_metric(t.metric)) return "tree metric rejected by the four-point test";
    const auto rebuilt = tree_from_metric(t.metric);
    if (nontrivial_splits(rebuilt, t.metric.size()) != t.splits) return "reconstructed tree has different splits";
  }
  return {};
}

// Contractions of rank-3 Pluecker vectors of points give tree metrics.
inline std::string contraction_trees(unsigned seed, int instances) {
  Random r(seed);
  for (int k = 0; k < instances; ++k) {
    const auto v = r.configuration(static_cast<std::size_t>(r.integer(1, 4)), 3);
    const auto ta = tree_arrangement(v);
    if (!ta.compatible) return "arrangement relation fails for " + describe(v);
    for (Index i = 0; i < ta.trees.size(); ++i) {
      const auto leaves = ta.metrics[i].leaves();
      for (Index a = 0; a < leaves.size(); ++a)
        for (Index b = a + 1; b < leaves.size(); ++b)
          if (ta.trees[i].distance(leaves[a], leaves[b]) != ta.metrics[i](leaves[a], leaves[b]))
            return "tree does not realize its metric for " + describe(v);
    }
  }
  return {};
}

inline std::string singularity_oracle(unsigned seed, int instances) {
  Random r(seed);
  for (int k = 0; k < instances; ++k) {
    const std::size_t d = static_cast<std::size_t>(r.integer(3, 4));
    const auto m = r.matrix(d, r.integer(0, 3) == 0);
    const auto brute = brute_det(m);
    const auto det = trop_det(m);
    if (det.value != brute.value) return "tdet differs from permutation enumeration";
    if (is_singular(m) != (brute.realizers >= 2)) return "singularity differs from realizer counting";
    const int sign = brute.even && brute.odd ? 0 : brute.even ? 1 : -1;
    if (trop_sign(m) != sign) return "tropical sign differs from permutation enumeration";
  }
  return {};
}

inline const std::vector<Property>& properties() {
  static const std::vector<Property> all = {
      {"semiring laws", semiring_laws},
      {"normalize idempotence", normalize_idempotent},
      {"translation equivariance", translation_equivariance},
      {"pseudo-vertex and vertex oracles", pseudo_vertex_oracle},
      {"type round trip", type_round_trip},
      {"minimal halfspace antichain", halfspace_antichain},
      {"Pluecker lift invariance", pluecker_lift_invariance},
      {"matroid facet coherence", matroid_facet_coherence},
      {"genericity vs minors", genericity_minors},
      {"tree reconstruction", tree_reconstruction},
      {"contraction trees", contraction_trees},
  };
  return all;
}

}  // namespace testsupport
