#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "tropical/core.hpp"

// Exact ordinary polyhedra: double description, bounded faces and regular
// subdivisions via lower hulls.
namespace tropical::polyhedra {

using Bitset = boost::dynamic_bitset<>;
using RationalVector = std::vector<Rational>;
using IntVector = std::vector<Integer>;

// Rows (b | A) mean A x <= b, rows (d | C) mean C x = d.
struct HDescription {
  std::size_t dim = 0;
  std::vector<RationalVector> inequalities;
  std::vector<RationalVector> equations;

  void validate() const {
    for (const auto& r : inequalities)
      if (r.size() != dim + 1) throw DimensionError("inequality row has wrong width");
    for (const auto& r : equations)
      if (r.size() != dim + 1) throw DimensionError("equation row has wrong width");
  }
};

struct VDescription {
  std::size_t ambient_dim = 0;
  std::size_t dimension = 0;
  std::vector<RationalVector> vertices;  // lexicographically sorted
  std::vector<RationalVector> rays;      // primitive integer vectors, sorted
  // Per input inequality: generators on which it is tight.
  std::vector<Bitset> vertex_incidence;
  std::vector<Bitset> ray_incidence;
  // Irredundant inequalities, one representative per facet.
  std::vector<Index> facets;
};

struct BoundedComplex {
  // faces[k] holds the k-dimensional bounded faces as vertex sets.
  std::vector<std::vector<IndexSet>> faces;
  std::vector<IndexSet> maximal;

  std::vector<std::size_t> f_vector() const {
    std::vector<std::size_t> f;
    for (const auto& level : faces) f.push_back(level.size());
    return f;
  }
};

namespace detail {

inline bool lex_less(const RationalVector& a, const RationalVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const Rational& x, const Rational& y) { return cmp(x, y) < 0; });
}

inline void make_primitive(IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// Positive multiple with integer entries and content one.
inline IntVector integral_primitive(const RationalVector& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(Integer(x.get_num() * (l / x.get_den())));
  make_primitive(out);
  return out;
}

inline RationalVector to_rational(const IntVector& v) { return RationalVector(v.begin(), v.end()); }

inline Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (Index k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (Index k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

struct Echelon {
  std::vector<RationalVector> rows;  // reduced rows
  std::vector<Index> pivots;

  // Reduces r against the basis; appends it when independent.
  bool insert(RationalVector r) {
    for (Index b = 0; b < rows.size(); ++b) {
      const Index p = pivots[b];
      if (sgn(r[p]) == 0) continue;
      const Rational f = r[p] / rows[b][p];
      for (Index k = 0; k < r.size(); ++k) r[k] -= f * rows[b][k];
    }
    for (Index k = 0; k < r.size(); ++k) {
      if (sgn(r[k]) != 0) {
        rows.push_back(std::move(r));
        pivots.push_back(k);
        return true;
      }
    }
    return false;
  }
};

inline std::size_t rank(const std::vector<RationalVector>& rows) {
  Echelon e;
  for (const auto& r : rows) e.insert(r);
  return e.rows.size();
}

// Reduced row echelon form; returns pivot columns, rows are replaced.
inline std::vector<Index> rref(std::vector<RationalVector>& m, std::size_t cols) {
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < cols && row < m.size(); ++col) {
    Index sel = row;
    while (sel < m.size() && sgn(m[sel][col]) == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (Index r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col];
      for (Index k = 0; k < cols; ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

// Basis of { x : r.x = 0 for all rows r }.
inline std::vector<RationalVector> null_space(std::vector<RationalVector> m, std::size_t cols) {
  const auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(cols, Rational(0));
    v[f] = 1;
    for (Index r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

struct Cone {
  std::vector<IntVector> rays;
  std::vector<Bitset> zeros;  // constraints tight at each ray
};

// Extreme rays of { x in R^k : c.x >= 0 for all constraint rows c } by the
// double description method. Rows are inserted in index order after an
// initial basis; adjacency uses the combinatorial test. The constraint
// matrix must have rank k.
inline Cone extreme_rays(const std::vector<IntVector>& constraints, std::size_t k) {
  const std::size_t m = constraints.size();
  Echelon e;
  std::vector<Index> basis;
  for (Index i = 0; i < m && basis.size() < k; ++i)
    if (e.insert(to_rational(constraints[i]))) basis.push_back(i);
  if (basis.size() < k) throw LinealityError("polyhedron contains a line");

  // Columns of the inverse of the basis rows span the initial simplicial cone.
  std::vector<RationalVector> aug(k, RationalVector(2 * k, Rational(0)));
  for (Index r = 0; r < k; ++r) {
    for (Index c = 0; c < k; ++c) aug[r][c] = constraints[basis[r]][c];
    aug[r][k + r] = 1;
  }
  rref(aug, 2 * k);

  struct Ray {
    IntVector x;
    Bitset zeros;
  };
  std::vector<Ray> rays;
  std::vector<bool> processed(m, false);
  for (auto b : basis) processed[b] = true;
  for (Index j = 0; j < k; ++j) {
    RationalVector col(k);
    for (Index r = 0; r < k; ++r) col[r] = aug[r][k + j];
    Ray ray{integral_primitive(col), Bitset(m)};
    for (Index r = 0; r < k; ++r)
      if (r != j) ray.zeros.set(basis[r]);
    rays.push_back(std::move(ray));
  }

  for (Index i = 0; i < m; ++i) {
    if (processed[i]) continue;
    processed[i] = true;
    std::vector<Integer> val(rays.size());
    std::vector<Index> plus, minus;
    std::vector<Ray> next;
    for (Index r = 0; r < rays.size(); ++r) {
      val[r] = dot(constraints[i], rays[r].x);
      const int s = sgn(val[r]);
      if (s > 0) {
        plus.push_back(r);
        next.push_back(rays[r]);
      } else if (s < 0) {
        minus.push_back(r);
      } else {
        Ray z = rays[r];
        z.zeros.set(i);
        next.push_back(std::move(z));
      }
    }
    for (auto p : plus) {
      for (auto n : minus) {
        Bitset common = rays[p].zeros & rays[n].zeros;
        if (common.count() + 2 < k) continue;
        bool adjacent = true;
        for (Index r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != n && common.is_subset_of(rays[r].zeros)) adjacent = false;
        if (!adjacent) continue;
        IntVector x(k);
        const Integer& sp = val[p];
        const Integer& sn = val[n];
        for (Index c = 0; c < k; ++c) x[c] = sp * rays[n].x[c] - sn * rays[p].x[c];
        make_primitive(x);
        common.set(i);
        next.push_back({std::move(x), std::move(common)});
      }
    }
    rays = std::move(next);
  }

  Cone out;
  for (auto& r : rays) {
    out.rays.push_back(std::move(r.x));
    out.zeros.push_back(std::move(r.zeros));
  }
  return out;
}

// Facet normals a (a.g >= 0 on all generators, one per facet) and the
// equations (a.g = 0) of the cone spanned by the generators.
struct ConeFacets {
  std::vector<RationalVector> normals;
  std::vector<RationalVector> equations;
};

inline ConeFacets cone_facets(const std::vector<RationalVector>& gens, std::size_t width) {
  std::vector<RationalVector> m = gens;
  const auto pivots = rref(m, width);
  ConeFacets out;
  out.equations = null_space(gens, width);
  // Projecting onto the pivot coordinates is injective on the span of the
  // generators, so the projected cone is full-dimensional.
  std::vector<IntVector> rows;
  for (const auto& g : gens) {
    RationalVector proj;
    for (auto p : pivots) proj.push_back(g[p]);
    rows.push_back(integral_primitive(proj));
  }
  const auto cone = extreme_rays(rows, pivots.size());
  for (Index r = 0; r < cone.rays.size(); ++r) {
    if (cone.zeros[r].none()) continue;  // only for a single ray: no proper facet
    RationalVector a(width, Rational(0));
    for (Index c = 0; c < pivots.size(); ++c) a[pivots[c]] = cone.rays[r][c];
    out.normals.push_back(std::move(a));
  }
  return out;
}

}  // namespace detail

// Vertices and rays of a pointed nonempty polyhedron with incidences.
inline VDescription dd_enumerate(const HDescription& h) {
  h.validate();
  const std::size_t k = h.dim + 1;  // homogenizing coordinate t first
  std::vector<IntVector> rows;
  auto homogenized = [&](const RationalVector& row, bool negate) {
    RationalVector out(k);
    out[0] = negate ? Rational(-row[0]) : row[0];
    for (Index c = 1; c < k; ++c) out[c] = negate ? row[c] : Rational(-row[c]);
    return detail::integral_primitive(out);
  };
  for (const auto& r : h.inequalities) rows.push_back(homogenized(r, false));
  for (const auto& r : h.equations) {
    rows.push_back(homogenized(r, false));
    rows.push_back(homogenized(r, true));
  }
  IntVector t_row(k, Integer(0));
  t_row[0] = 1;
  rows.push_back(t_row);

  const auto cone = detail::extreme_rays(rows, k);
  VDescription v;
  v.ambient_dim = h.dim;
  for (const auto& x : cone.rays) {
    if (sgn(x[0]) > 0) {
      RationalVector p;
      for (Index c = 1; c < k; ++c) p.emplace_back(Rational(x[c], x[0]));
      for (auto& q : p) q.canonicalize();
      v.vertices.push_back(std::move(p));
    } else {
      v.rays.emplace_back(x.begin() + 1, x.end());
    }
  }
  if (v.vertices.empty()) throw EmptyPolyhedronError("polyhedron is empty");
  std::sort(v.vertices.begin(), v.vertices.end(), detail::lex_less);
  std::sort(v.rays.begin(), v.rays.end(), detail::lex_less);

  const std::size_t nv = v.vertices.size(), nr = v.rays.size();
  for (const auto& row : h.inequalities) {
    std::span<const Rational> a(row.data() + 1, h.dim);
    Bitset vi(nv), ri(nr);
    for (Index i = 0; i < nv; ++i)
      if (detail::dot(a, v.vertices[i]) == row[0]) vi.set(i);
    for (Index i = 0; i < nr; ++i)
      if (sgn(detail::dot(a, v.rays[i])) == 0) ri.set(i);
    v.vertex_incidence.push_back(std::move(vi));
    v.ray_incidence.push_back(std::move(ri));
  }

  auto homogeneous_generators = [&](const Bitset* vs, const Bitset* rs) {
    std::vector<RationalVector> g;
    for (Index i = 0; i < nv; ++i) {
      if (vs && !vs->test(i)) continue;
      RationalVector x{Rational(1)};
      x.insert(x.end(), v.vertices[i].begin(), v.vertices[i].end());
      g.push_back(std::move(x));
    }
    for (Index i = 0; i < nr; ++i) {
      if (rs && !rs->test(i)) continue;
      RationalVector x{Rational(0)};
      x.insert(x.end(), v.rays[i].begin(), v.rays[i].end());
      g.push_back(std::move(x));
    }
    return g;
  };
  const std::size_t cone_rank = detail::rank(homogeneous_generators(nullptr, nullptr));
  v.dimension = cone_rank - 1;

  std::set<std::pair<Bitset, Bitset>> seen;
  for (Index i = 0; i < h.inequalities.size(); ++i) {
    const auto& vi = v.vertex_incidence[i];
    const auto& ri = v.ray_incidence[i];
    if (vi.all() && ri.all()) continue;  // implicit equation
    if (detail::rank(homogeneous_generators(&vi, &ri)) + 1 != cone_rank) continue;
    if (!seen.emplace(vi, ri).second) continue;
    v.facets.push_back(i);
  }
  return v;
}

// Every vertex lies on exactly dim facets.
inline bool is_simple(const VDescription& v, std::size_t dim) {
  for (Index i = 0; i < v.vertices.size(); ++i) {
    std::size_t count = 0;
    for (auto f : v.facets)
      if (v.vertex_incidence[f].test(i)) ++count;
    if (count != dim) return false;
  }
  return true;
}

// Dimension of the affine hull; 0 for an empty list.
inline std::size_t affine_rank(const std::vector<RationalVector>& points) {
  if (points.empty()) return 0;
  std::vector<RationalVector> rows;
  for (const auto& p : points) {
    RationalVector r{Rational(1)};
    r.insert(r.end(), p.begin(), p.end());
    rows.push_back(std::move(r));
  }
  return detail::rank(rows) - 1;
}

// Faces spanned by vertices only, found by closing vertex sets upwards:
// every bounded face is reached from a vertex by repeatedly taking the
// smallest face containing one more vertex.
inline BoundedComplex bounded_faces(const VDescription& v) {
  const std::size_t nv = v.vertices.size(), nr = v.rays.size();
  auto closure = [&](const Bitset& s) {
    Bitset verts(nv), rays(nr);
    verts.set();
    rays.set();
    for (auto f : v.facets) {
      if (!s.is_subset_of(v.vertex_incidence[f])) continue;
      verts &= v.vertex_incidence[f];
      rays &= v.ray_incidence[f];
    }
    return std::make_pair(verts, rays);
  };

  std::set<Bitset> found;
  std::vector<Bitset> queue;
  for (Index i = 0; i < nv; ++i) {
    Bitset s(nv);
    s.set(i);
    auto [verts, rays] = closure(s);
    if (rays.any()) continue;
    if (found.insert(verts).second) queue.push_back(verts);
  }
  while (!queue.empty()) {
    Bitset face = std::move(queue.back());
    queue.pop_back();
    for (Index i = 0; i < nv; ++i) {
      if (face.test(i)) continue;
      Bitset s = face;
      s.set(i);
      auto [verts, rays] = closure(s);
      if (rays.any()) continue;
      if (found.insert(verts).second) queue.push_back(verts);
    }
  }

  BoundedComplex bc;
  std::vector<std::pair<std::size_t, IndexSet>> graded;
  for (const auto& f : found) {
    std::vector<RationalVector> pts;
    IndexSet idx;
    for (Index i = 0; i < nv; ++i)
      if (f.test(i)) {
        pts.push_back(v.vertices[i]);
        idx.insert(i);
      }
    graded.emplace_back(affine_rank(pts), std::move(idx));
  }
  std::sort(graded.begin(), graded.end());
  for (auto& [dim, idx] : graded) {
    if (bc.faces.size() <= dim) bc.faces.resize(dim + 1);
    bc.faces[dim].push_back(idx);
  }
  for (const auto& f : found) {
    bool maximal = true;
    for (const auto& g : found)
      if (f != g && f.is_proper_subset_of(g)) {
        maximal = false;
        break;
      }
    if (!maximal) continue;
    IndexSet idx;
    for (Index i = 0; i < nv; ++i)
      if (f.test(i)) idx.insert(i);
    bc.maximal.push_back(std::move(idx));
  }
  std::sort(bc.maximal.begin(), bc.maximal.end());
  return bc;
}

// Inequalities and equations of the convex hull of finitely many points.
inline HDescription hull_description(const std::vector<RationalVector>& points) {
  if (points.empty()) throw PreconditionError("convex hull of no points");
  const std::size_t dim = points.front().size();
  std::vector<RationalVector> gens;
  for (const auto& p : points) {
    if (p.size() != dim) throw DimensionError("points of different dimension");
    RationalVector g{Rational(1)};
    g.insert(g.end(), p.begin(), p.end());
    gens.push_back(std::move(g));
  }
  const auto facets = detail::cone_facets(gens, dim + 1);
  HDescription h;
  h.dim = dim;
  // a0 + a.x >= 0  <=>  (-a).x <= a0
  for (const auto& a : facets.normals) {
    RationalVector row{a[0]};
    for (Index c = 1; c <= dim; ++c) row.emplace_back(-a[c]);
    h.inequalities.push_back(std::move(row));
  }
  for (const auto& e : facets.equations) {
    RationalVector row{Rational(-e[0])};
    row.insert(row.end(), e.begin() + 1, e.end());
    h.equations.push_back(std::move(row));
  }
  return h;
}

// Maximal cells of the regular subdivision induced by lifting point i to
// height heights[i]: point sets on the lower facets of the lifted hull.
inline std::vector<IndexSet> lower_hull_subdivision(const std::vector<RationalVector>& points,
                                                    const std::vector<Rational>& heights) {
  if (points.empty()) throw PreconditionError("lower hull of no points");
  if (points.size() != heights.size()) throw DimensionError("one height per point required");
  const std::size_t dim = points.front().size();
  for (const auto& p : points)
    if (p.size() != dim) throw DimensionError("points of different dimension");
  {
    std::set<RationalVector, decltype(&detail::lex_less)> distinct(&detail::lex_less);
    for (const auto& p : points)
      if (!distinct.insert(p).second) throw PreconditionError("lower hull points must be distinct");
  }
  // Generators (1, p, h) plus the upward direction; facets not containing the
  // upward direction in their span are exactly the lower facets.
  const std::size_t width = dim + 2;
  std::vector<RationalVector> gens;
  for (Index i = 0; i < points.size(); ++i) {
    RationalVector g{Rational(1)};
    g.insert(g.end(), points[i].begin(), points[i].end());
    g.push_back(heights[i]);
    gens.push_back(std::move(g));
  }
  RationalVector up(width, Rational(0));
  up.back() = 1;
  gens.push_back(up);

  const auto facets = detail::cone_facets(gens, width);
  std::set<IndexSet> cells;
  for (const auto& a : facets.normals) {
    if (sgn(a.back()) <= 0) continue;
    IndexSet cell;
    for (Index i = 0; i < points.size(); ++i)
      if (sgn(detail::dot(a, gens[i])) == 0) cell.insert(i);
    cells.insert(std::move(cell));
  }
  return {cells.begin(), cells.end()};
}

}  // namespace tropical::polyhedra
