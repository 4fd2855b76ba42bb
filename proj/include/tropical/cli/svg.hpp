#pragma once

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tropical/polytope.hpp"

// Rendering of planar tropical polytopes (d = 3) in the chart
// (x_2 - x_1, x_3 - x_1), y axis pointing up.
namespace tropical::cli {

struct SvgLayers {
  bool generators = true;
  bool pseudovertices = true;
  bool cells = true;
  bool cornered_hull = false;
  bool lines = false;

  // Comma-separated layer names; "all" enables everything.
  static SvgLayers parse(const std::string& spec) {
    SvgLayers l{false, false, false, false, false};
    std::stringstream ss(spec);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name == "generators") l.generators = true;
      else if (name == "pseudovertices") l.pseudovertices = true;
      else if (name == "cells") l.cells = true;
      else if (name == "cornered-hull") l.cornered_hull = true;
      else if (name == "lines") l.lines = true;
      else if (name == "all") l = SvgLayers{true, true, true, true, true};
      else if (!name.empty()) throw ParseError("unknown svg layer \"" + name + "\"");
    }
    return l;
  }
};

struct SvgSummary {
  std::size_t markers = 0;
  std::size_t cells = 0;  // two-dimensional bounded cells drawn
  std::string text;
};

namespace detail {

struct Point2 {
  Rational x, y;
};

inline Point2 chart2(const TropicalPoint& p) { return {p[1] - p[0], p[2] - p[0]}; }

// Counter-clockwise order around the barycenter, by exact half-plane and
// cross-product comparisons.
inline std::vector<Point2> angular_order(std::vector<Point2> pts) {
  Rational cx = 0, cy = 0;
  for (const auto& p : pts) {
    cx += p.x;
    cy += p.y;
  }
  cx /= static_cast<long>(pts.size());
  cy /= static_cast<long>(pts.size());
  auto upper = [&](const Point2& p) {
    const Rational dy = p.y - cy, dx = p.x - cx;
    return sgn(dy) > 0 || (sgn(dy) == 0 && sgn(dx) > 0);
  };
  std::sort(pts.begin(), pts.end(), [&](const Point2& a, const Point2& b) {
    const bool ua = upper(a), ub = upper(b);
    if (ua != ub) return ua;
    const Rational cross = (a.x - cx) * (b.y - cy) - (a.y - cy) * (b.x - cx);
    return sgn(cross) > 0;
  });
  return pts;
}

inline std::string num(const Rational& q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", q.get_d());
  std::string s(buf);
  return s == "-0" ? "0" : s;
}

}  // namespace detail

inline SvgSummary emit_svg(const PointConfiguration& v, const SvgLayers& layers = {}) {
  using detail::num;
  using detail::Point2;
  if (v.dim() != 3) throw PreconditionError("svg rendering needs points in dimension 3");
  const auto complex = bounded_complex(v);
  std::vector<TropicalPoint> hull;
  if (layers.cornered_hull) hull = cornered_hull(v).vertices;

  // Bounding box over everything that has a position.
  std::vector<Point2> all;
  for (const auto& p : v.points()) all.push_back(detail::chart2(p));
  for (const auto& p : complex.pseudo_vertices) all.push_back(detail::chart2(p));
  for (const auto& p : hull) all.push_back(detail::chart2(p));
  Rational x0 = all[0].x, x1 = all[0].x, y0 = all[0].y, y1 = all[0].y;
  for (const auto& p : all) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  Rational span = std::max(x1 - x0, y1 - y0);
  if (sgn(span) == 0) span = 1;
  const Rational margin = span / 20;
  x0 -= margin;
  x1 += margin;
  y0 -= margin;
  y1 += margin;
  const Rational r = span / 60;

  std::ostringstream o;
  SvgSummary summary;
  // y is flipped: the drawing uses (x, -y).
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(x0) << " " << num(-y1) << " "
    << num(x1 - x0) << " " << num(y1 - y0) << "\">\n";
  o << "<g stroke-width=\"" << num(r / 3) << "\">\n";

  if (layers.cornered_hull && hull.size() >= 3) {
    std::vector<Point2> pts;
    for (const auto& p : hull) pts.push_back(detail::chart2(p));
    o << "<polygon class=\"cornered-hull\" fill=\"none\" stroke=\"#888\" stroke-dasharray=\"" << num(r) << "\" points=\"";
    bool first = true;
    for (const auto& p : detail::angular_order(pts)) {
      o << (first ? "" : " ") << num(p.x) << "," << num(-p.y);
      first = false;
    }
    o << "\"/>\n";
  }

  if (layers.cells) {
    for (const auto& cell : complex.maximal) {
      std::vector<Point2> pts;
      for (Index i : cell) pts.push_back(detail::chart2(complex.pseudo_vertices[i]));
      std::vector<polyhedra::RationalVector> rv;
      for (const auto& p : pts) rv.push_back({p.x, p.y});
      const auto dim = polyhedra::affine_rank(rv);
      if (dim == 2) {
        ++summary.cells;
        o << "<polygon class=\"cell\" fill=\"#cde\" stroke=\"#246\" points=\"";
        bool first = true;
        for (const auto& p : detail::angular_order(pts)) {
          o << (first ? "" : " ") << num(p.x) << "," << num(-p.y);
          first = false;
        }
        o << "\"/>\n";
      }
    }
    // Edges of the complex that bound no 2-cell are drawn as segments.
    if (complex.faces.size() > 1) {
      for (const auto& e : complex.faces[1]) {
        const bool in_2cell = complex.faces.size() > 2 &&
                              std::any_of(complex.faces[2].begin(), complex.faces[2].end(), [&](const IndexSet& f) {
                                return std::includes(f.begin(), f.end(), e.begin(), e.end());
                              });
        if (in_2cell) continue;
        const auto a = detail::chart2(complex.pseudo_vertices[*e.begin()]);
        const auto b = detail::chart2(complex.pseudo_vertices[*e.rbegin()]);
        o << "<line class=\"edge\" stroke=\"#246\" x1=\"" << num(a.x) << "\" y1=\"" << num(-a.y) << "\" x2=\""
          << num(b.x) << "\" y2=\"" << num(-b.y) << "\"/>\n";
      }
    }
  }

  if (layers.lines) {
    // Max-tropical line with apex v_i: rays towards -e_1, -e_2, -e_3, which in
    // the chart point along (1,1), (-1,0), (0,-1).
    const Rational len = 2 * span;
    for (const auto& p : v.points()) {
      const auto a = detail::chart2(p);
      const Point2 dirs[3] = {{Rational(1), Rational(1)}, {Rational(-1), Rational(0)}, {Rational(0), Rational(-1)}};
      for (const auto& dv : dirs) {
        const Point2 b{a.x + len * dv.x, a.y + len * dv.y};
        o << "<line class=\"dual-line\" stroke=\"#c60\" x1=\"" << num(a.x) << "\" y1=\"" << num(-a.y) << "\" x2=\""
          << num(b.x) << "\" y2=\"" << num(-b.y) << "\"/>\n";
      }
    }
  }

  // One marker per distinct position.
  std::set<TropicalPoint> gens;
  if (layers.generators)
    for (const auto& p : v.points()) gens.insert(normalize(p));
  std::set<TropicalPoint> marked(gens.begin(), gens.end());
  if (layers.pseudovertices) marked.insert(complex.pseudo_vertices.begin(), complex.pseudo_vertices.end());
  for (const auto& p : marked) {
    const auto c = detail::chart2(p);
    const bool g = gens.contains(p);
    const bool pv = layers.pseudovertices &&
                    std::binary_search(complex.pseudo_vertices.begin(), complex.pseudo_vertices.end(), p);
    std::string cls = g && pv ? "generator pseudovertex" : g ? "generator" : "pseudovertex";
    o << "<circle class=\"" << cls << "\" cx=\"" << num(c.x) << "\" cy=\"" << num(-c.y) << "\" r=\""
      << num(g ? 2 * r : r) << "\" fill=\"" << (g ? "#000" : "#fff") << "\" stroke=\"#000\"/>\n";
    ++summary.markers;
  }
  o << "</g>\n</svg>\n";
  summary.text = o.str();
  return summary;
}

}  // namespace tropical::cli
