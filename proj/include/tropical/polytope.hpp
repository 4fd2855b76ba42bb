#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tropical/core.hpp"
#include "tropical/polyhedra.hpp"

// Tropical polytopes tconv(V): types, envelope, pseudo-vertices, bounded
// complex, dual subdivision of a product of simplices, corners and minimal
// tropical halfspaces.
namespace tropical {

// (T_1, ..., T_d): T_k holds the generators in the k-th closed sector at x.
struct TypeVector {
  std::vector<IndexSet> entries;

  std::size_t size() const noexcept { return entries.size(); }
  const IndexSet& operator[](Index k) const { return entries[k]; }
  bool has_empty_entry() const {
    return std::any_of(entries.begin(), entries.end(), [](const IndexSet& s) { return s.empty(); });
  }
  friend auto operator<=>(const TypeVector&, const TypeVector&) = default;
};

inline TypeVector type_of(const PointConfiguration& v, const TropicalPoint& x) {
  if (x.dim() != v.dim()) throw DimensionError("type_of: point and configuration differ in dimension");
  TypeVector t{std::vector<IndexSet>(v.dim())};
  for (Index i = 0; i < v.size(); ++i)
    for (Index k : sector_set(v[i], x)) t.entries[k].insert(i);
  return t;
}

// x lies in tconv V iff no type entry of x is empty.
inline bool contains(const PointConfiguration& v, const TropicalPoint& x) {
  return !type_of(v, x).has_empty_entry();
}

// { (y, z) : y_i + z_j <= v_ij } in the chart y_1 = 0, variables
// (y_2, ..., y_n, z_1, ..., z_d).
struct Envelope {
  std::size_t n = 0;
  std::size_t d = 0;
  polyhedra::HDescription h;
  polyhedra::VDescription v;

  // Image of an envelope vertex under (y, z) -> z.
  TropicalPoint pseudo_vertex(Index vertex) const {
    const auto& p = v.vertices[vertex];
    return normalize(TropicalPoint(std::vector<Rational>(p.begin() + static_cast<long>(n - 1), p.end())));
  }
};

inline Envelope envelope(const PointConfiguration& v) {
  Envelope e;
  e.n = v.size();
  e.d = v.dim();
  e.h.dim = e.n - 1 + e.d;
  for (Index i = 0; i < e.n; ++i) {
    for (Index j = 0; j < e.d; ++j) {
      polyhedra::RationalVector row(e.h.dim + 1, Rational(0));
      row[0] = v.entry(i, j);
      if (i > 0) row[1 + (i - 1)] = 1;
      row[1 + (e.n - 1) + j] = 1;
      e.h.inequalities.push_back(std::move(row));
    }
  }
  e.v = polyhedra::dd_enumerate(e.h);
  if (e.v.dimension != e.h.dim) throw PreconditionError("envelope is not full-dimensional");
  return e;
}

// Canonical (normalized, sorted, distinct) pseudo-vertices.
inline std::vector<TropicalPoint> pseudo_vertices(const Envelope& e) {
  std::set<TropicalPoint> pts;
  for (Index i = 0; i < e.v.vertices.size(); ++i) pts.insert(e.pseudo_vertex(i));
  return {pts.begin(), pts.end()};
}

inline std::vector<TropicalPoint> pseudo_vertices(const PointConfiguration& v) {
  return pseudo_vertices(envelope(v));
}

// Recovers a pseudo-vertex from its type: w_k - w_j = v_ik - v_ij whenever
// i lies in both T_j and T_k.
inline TropicalPoint coords_from_type(const PointConfiguration& v, const TypeVector& t) {
  const std::size_t d = v.dim();
  if (t.size() != d) throw DimensionError("type vector has wrong length");
  std::vector<std::optional<Rational>> w(d);
  w[0] = Rational(0);
  std::queue<Index> todo;
  todo.push(0);
  while (!todo.empty()) {
    const Index j = todo.front();
    todo.pop();
    for (Index i : t[j]) {
      if (i >= v.size()) throw PreconditionError("type refers to a missing generator");
      for (Index k = 0; k < d; ++k) {
        if (k == j || !t[k].contains(i)) continue;
        Rational wk = *w[j] + v.entry(i, k) - v.entry(i, j);
        if (!w[k]) {
          w[k] = wk;
          todo.push(k);
        } else if (*w[k] != wk) {
          throw PreconditionError("type is inconsistent with the generators");
        }
      }
    }
  }
  std::vector<Rational> coords;
  for (const auto& c : w) {
    if (!c) throw PreconditionError("type does not determine a point");
    coords.push_back(*c);
  }
  TropicalPoint x(std::move(coords));
  if (type_of(v, x) != t) throw PreconditionError("type is inconsistent with the generators");
  return normalize(x);
}

// Indices of the unique minimal generating subset. Of equal generators only
// the lowest index is kept.
inline std::vector<Index> tropical_vertex_indices(const PointConfiguration& v) {
  std::vector<Index> out;
  for (Index m = 0; m < v.size(); ++m) {
    bool earlier_copy = false;
    std::vector<TropicalPoint> others;
    for (Index i = 0; i < v.size(); ++i) {
      if (v[i] == v[m]) {
        earlier_copy = earlier_copy || i < m;
        continue;
      }
      others.push_back(v[i]);
    }
    if (earlier_copy) continue;
    if (others.empty()) {
      out.push_back(m);
      continue;
    }
    if (type_of(PointConfiguration(others), v[m]).has_empty_entry()) out.push_back(m);
  }
  return out;
}

inline std::vector<TropicalPoint> tropical_vertices(const PointConfiguration& v) {
  std::vector<TropicalPoint> out;
  for (Index i : tropical_vertex_indices(v)) out.push_back(v[i]);
  return out;
}

// Bounded faces of the envelope mapped to sets of pseudo-vertices.
struct TropicalComplex {
  std::vector<TropicalPoint> pseudo_vertices;
  std::vector<std::vector<IndexSet>> faces;  // by dimension, indices into pseudo_vertices
  std::vector<IndexSet> maximal;

  std::vector<std::size_t> f_vector() const {
    std::vector<std::size_t> f;
    for (const auto& level : faces) f.push_back(level.size());
    return f;
  }

  std::vector<TropicalPoint> points(const IndexSet& cell) const {
    std::vector<TropicalPoint> out;
    for (Index i : cell) out.push_back(pseudo_vertices[i]);
    return out;
  }
};

inline TropicalComplex bounded_complex(const PointConfiguration& v) {
  const auto e = envelope(v);
  TropicalComplex c;
  c.pseudo_vertices = pseudo_vertices(e);
  std::vector<Index> to_pv(e.v.vertices.size());
  for (Index i = 0; i < to_pv.size(); ++i)
    to_pv[i] = static_cast<Index>(
        std::lower_bound(c.pseudo_vertices.begin(), c.pseudo_vertices.end(), e.pseudo_vertex(i)) -
        c.pseudo_vertices.begin());
  auto image = [&](const IndexSet& s) {
    IndexSet out;
    for (Index i : s) out.insert(to_pv[i]);
    return out;
  };
  const auto bc = polyhedra::bounded_faces(e.v);
  for (const auto& level : bc.faces) {
    std::set<IndexSet> mapped;
    for (const auto& f : level) mapped.insert(image(f));
    c.faces.emplace_back(mapped.begin(), mapped.end());
  }
  std::set<IndexSet> maximal;
  for (const auto& f : bc.maximal) maximal.insert(image(f));
  c.maximal.assign(maximal.begin(), maximal.end());
  return c;
}

// Type of the barycenter (in the affine chart) of a bounded cell.
inline TypeVector cell_type(const PointConfiguration& v, const TropicalComplex& complex,
                            std::span<const TropicalPoint> cell) {
  IndexSet idx;
  for (const auto& p : cell) {
    const auto it = std::lower_bound(complex.pseudo_vertices.begin(), complex.pseudo_vertices.end(), p);
    if (it == complex.pseudo_vertices.end() || !(*it == p))
      throw PreconditionError("cell vertex is not a pseudo-vertex");
    idx.insert(static_cast<Index>(it - complex.pseudo_vertices.begin()));
  }
  bool is_face = false;
  for (const auto& level : complex.faces)
    is_face = is_face || std::find(level.begin(), level.end(), idx) != level.end();
  if (!is_face) throw PreconditionError("point set is not a cell of the bounded complex");
  std::vector<Rational> center(v.dim() - 1, Rational(0));
  for (Index i : idx) {
    const auto c = affine_chart(complex.pseudo_vertices[i]);
    for (Index k = 0; k < c.size(); ++k) center[k] += c[k];
  }
  for (auto& c : center) c /= static_cast<long>(idx.size());
  return type_of(v, from_affine_chart(center));
}

inline TypeVector cell_type(const PointConfiguration& v, std::span<const TropicalPoint> cell) {
  return cell_type(v, bounded_complex(v), cell);
}

// Vertices (i, j) of the product of simplices, zero-based.
using DualCell = std::set<std::pair<Index, Index>>;

inline DualCell dual_cell(const TypeVector& t) {
  DualCell cell;
  for (Index j = 0; j < t.size(); ++j)
    for (Index i : t[j]) cell.emplace(i, j);
  return cell;
}

// One maximal cell per pseudo-vertex, in pseudo-vertex order.
inline std::vector<DualCell> dual_subdivision(const PointConfiguration& v) {
  std::vector<DualCell> cells;
  for (const auto& w : pseudo_vertices(v)) cells.push_back(dual_cell(type_of(v, w)));
  return cells;
}

// Triangulation test on the dual cells, cross-checked against simplicity of
// the envelope.
inline bool is_sufficiently_generic(const PointConfiguration& v) {
  const auto e = envelope(v);
  bool triangulation = true;
  for (const auto& w : pseudo_vertices(e))
    if (dual_cell(type_of(v, w)).size() != v.size() + v.dim() - 1) triangulation = false;
  const bool simple = polyhedra::is_simple(e.v, e.v.dimension);
  if (triangulation != simple)
    throw std::logic_error("genericity criteria disagree: dual triangulation vs. simple envelope");
  return triangulation;
}

// Complements of the maximal dual cells in [n] x [d].
inline std::vector<DualCell> alexander_dual_generators(const PointConfiguration& v) {
  if (!is_sufficiently_generic(v)) throw PreconditionError("Alexander dual needs sufficiently generic points");
  std::vector<DualCell> out;
  for (const auto& cell : dual_subdivision(v)) {
    DualCell comp;
    for (Index i = 0; i < v.size(); ++i)
      for (Index j = 0; j < v.dim(); ++j)
        if (!cell.contains({i, j})) comp.emplace(i, j);
    out.push_back(std::move(comp));
  }
  return out;
}

// f-vector of the simplicial complex generated by the given cells.
inline std::vector<std::size_t> simplicial_f_vector(const std::vector<DualCell>& cells) {
  std::set<DualCell> faces;
  for (const auto& cell : cells) {
    const std::vector<std::pair<Index, Index>> elems(cell.begin(), cell.end());
    if (elems.size() >= 63) throw PreconditionError("cell too large for face enumeration");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << elems.size()); ++mask) {
      DualCell f;
      for (Index b = 0; b < elems.size(); ++b)
        if (mask >> b & 1) f.insert(elems[b]);
      faces.insert(std::move(f));
    }
  }
  std::vector<std::size_t> fv;
  for (const auto& f : faces) {
    if (fv.size() < f.size()) fv.resize(f.size(), 0);
    ++fv[f.size() - 1];
  }
  return fv;
}

// c_k(V) = min_i (v_i - v_ik * 1), normalized.
inline TropicalPoint corner(const PointConfiguration& v, Index k) {
  if (k >= v.dim()) throw DimensionError("corner index out of range");
  std::vector<Rational> c(v.dim());
  for (Index i = 0; i < v.size(); ++i)
    for (Index j = 0; j < v.dim(); ++j) {
      Rational x = v.entry(i, j) - v.entry(i, k);
      if (i == 0 || x < c[j]) c[j] = x;
    }
  return normalize(TropicalPoint(std::move(c)));
}

// Intersection of the d cornered halfspaces in the chart (x_2 - x_1, ...).
struct CorneredHull {
  polyhedra::HDescription h;
  std::vector<TropicalPoint> vertices;  // sorted
};

inline CorneredHull cornered_hull(const PointConfiguration& v) {
  const std::size_t d = v.dim();
  CorneredHull ch;
  ch.h.dim = d - 1;
  for (Index k = 0; k < d; ++k) {
    const auto c = corner(v, k);
    // x_k - x_j <= c_k - c_j
    for (Index j = 0; j < d; ++j) {
      if (j == k) continue;
      polyhedra::RationalVector row(d, Rational(0));
      row[0] = c[k] - c[j];
      if (k > 0) row[k] += 1;
      if (j > 0) row[j] -= 1;
      ch.h.inequalities.push_back(std::move(row));
    }
  }
  const auto vd = polyhedra::dd_enumerate(ch.h);
  std::set<TropicalPoint> verts;
  for (const auto& p : vd.vertices) verts.insert(normalize(from_affine_chart(p)));
  ch.vertices.assign(verts.begin(), verts.end());
  return ch;
}

// Closed tropical halfspace: union of the sectors H at apex a.
class TropicalHalfspace {
 public:
  TropicalHalfspace(TropicalPoint apex, IndexSet sectors) : apex_(normalize(apex)), sectors_(std::move(sectors)) {
    if (sectors_.empty() || sectors_.size() >= apex_.dim())
      throw PreconditionError("halfspace needs between 1 and d-1 sectors");
    if (*sectors_.rbegin() >= apex_.dim()) throw DimensionError("sector index out of range");
  }

  const TropicalPoint& apex() const noexcept { return apex_; }
  const IndexSet& sectors() const noexcept { return sectors_; }

  friend bool operator==(const TropicalHalfspace& a, const TropicalHalfspace& b) {
    return a.apex_ == b.apex_ && a.sectors_ == b.sectors_;
  }
  friend auto operator<=>(const TropicalHalfspace& a, const TropicalHalfspace& b) {
    if (auto c = a.apex_ <=> b.apex_; c != 0) return c;
    return a.sectors_ <=> b.sectors_;
  }

 private:
  TropicalPoint apex_;
  IndexSet sectors_;
};

inline bool halfspace_contains(const TropicalHalfspace& h, const TropicalPoint& x) {
  for (Index k : sector_set(x, h.apex()))
    if (h.sectors().contains(k)) return true;
  return false;
}

// (a, H) is contained in (b, K) iff H is a subset of K and
// max_{i in H} (a - b)_i <= min_{j not in K} (a - b)_j.
inline bool halfspace_included(const TropicalHalfspace& inner, const TropicalHalfspace& outer) {
  const auto& a = inner.apex();
  const auto& b = outer.apex();
  if (a.dim() != b.dim()) throw DimensionError("halfspaces of different dimension");
  if (!std::includes(outer.sectors().begin(), outer.sectors().end(), inner.sectors().begin(),
                     inner.sectors().end()))
    return false;
  std::optional<Rational> max_in, min_out;
  for (Index i = 0; i < a.dim(); ++i) {
    Rational c = a[i] - b[i];
    if (inner.sectors().contains(i) && (!max_in || c > *max_in)) max_in = c;
    if (!outer.sectors().contains(i) && (!min_out || c < *min_out)) min_out = c;
  }
  return *max_in <= *min_out;
}

// All inclusion-minimal covers of [n] by type entries of x, as halfspaces
// with apex x. Covers by all d sectors are not halfspaces and are dropped.
inline std::vector<TropicalHalfspace> local_minimal_halfspaces(const PointConfiguration& v, const TropicalPoint& x) {
  const auto t = type_of(v, x);
  if (t.has_empty_entry()) throw PreconditionError("point does not lie in the tropical polytope");
  const std::size_t d = v.dim();
  if (d >= 63) throw PreconditionError("too many sectors for cover enumeration");
  std::vector<std::uint64_t> covers;
  // Subsets by increasing size, so any cover containing an earlier one is not minimal.
  std::vector<std::uint64_t> masks;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << d); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b); });
  for (auto m : masks) {
    if (std::any_of(covers.begin(), covers.end(), [m](std::uint64_t c) { return (c & m) == c; })) continue;
    IndexSet covered;
    for (Index j = 0; j < d; ++j)
      if (m >> j & 1) covered.insert(t[j].begin(), t[j].end());
    if (covered.size() == v.size()) covers.push_back(m);
  }
  std::vector<TropicalHalfspace> out;
  for (auto m : covers) {
    if (std::popcount(m) == static_cast<int>(d)) continue;
    IndexSet sectors;
    for (Index j = 0; j < d; ++j)
      if (m >> j & 1) sectors.insert(j);
    out.emplace_back(x, std::move(sectors));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Locally minimal halfspaces at every pseudo-vertex, filtered pairwise by
// inclusion.
inline std::vector<TropicalHalfspace> minimal_halfspaces(const PointConfiguration& v) {
  std::vector<TropicalHalfspace> result;
  for (const auto& x : pseudo_vertices(v)) {
    auto local = local_minimal_halfspaces(v, x);
    std::vector<TropicalHalfspace> kept;
    for (const auto& candidate : local) {
      bool dominated = false;
      for (auto it = result.begin(); it != result.end();) {
        if (halfspace_included(candidate, *it)) {
          it = result.erase(it);
        } else if (halfspace_included(*it, candidate)) {
          dominated = true;
          break;
        } else {
          ++it;
        }
      }
      if (!dominated) kept.push_back(candidate);
    }
    result.insert(result.end(), kept.begin(), kept.end());
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

}  // namespace tropical
