#pragma once

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tropical/cli/json_io.hpp"
#include "tropical/cli/svg.hpp"
#include "tropical/grassmann.hpp"
#include "tropical/polytope.hpp"

// tropcvx COMMAND [INPUT] [flags]: reads one JSON document, writes one.
namespace tropical::cli {

enum ExitCode : int { kOk = 0, kParse = 1, kPrecondition = 2 };

struct Options {
  std::string command;
  std::string input = "-";
  std::optional<std::string> point;
  std::optional<long> index;
  std::optional<std::string> offset;
  std::optional<std::string> scale;
  std::optional<std::size_t> sign_cap;
  bool zero_based = false;
  bool no_timing = false;
  std::string layers = "generators,pseudovertices,cells";
  std::optional<std::string> out;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"tdet",
                                                 "tsgn",
                                                 "singular",
                                                 "pseudovertices",
                                                 "vertices",
                                                 "type",
                                                 "contains",
                                                 "bounded-complex",
                                                 "halfspaces",
                                                 "cornered-hull",
                                                 "dual-subdivision",
                                                 "alexander-dual",
                                                 "generic",
                                                 "pluecker",
                                                 "matroid-subdivision",
                                                 "contraction",
                                                 "tree-metric",
                                                 "tree",
                                                 "arrangement",
                                                 "svg"};
  return names;
}

namespace detail {

// Builds an object from key/value arguments. The values are computed
// before any node exists, so a throwing computation leaks nothing.
inline void fill(Json&) {}
template <class V, class... Rest>
void fill(Json& j, const char* key, V&& value, Rest&&... rest) {
  j[key] = std::forward<V>(value);
  fill(j, std::forward<Rest>(rest)...);
}
template <class... Ts>
Json record(Ts&&... kv) {
  Json j = Json::object();
  fill(j, std::forward<Ts>(kv)...);
  return j;
}

struct Context {
  const Options& opt;
  InputDocument input;
  Index base;
};

inline Json points_json(std::span<const TropicalPoint> pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

inline Json type_json(const TypeVector& t, Index base) {
  Json a = Json::array();
  for (const auto& s : t.entries) a.push_back(to_json(s, base));
  return a;
}

inline Json pairs_json(const DualCell& c, Index base) {
  Json a = Json::array();
  for (const auto& [i, j] : c) a.push_back(Json::array({i + base, j + base}));
  return a;
}

inline std::string monomial(const DualCell& c, Index base) {
  std::string s;
  for (const auto& [i, j] : c) {
    s += "x" + std::to_string(i + base);
    if (i + base > 9 || j + base > 9) s += "_";
    s += std::to_string(j + base);
  }
  return s;
}

inline Json pluecker_json(const PlueckerVector& p, Index base) {
  Json values = Json::object();
  for (Subset s : p.lex_subsets()) values[subset_label(s, base == 0)] = to_json(p[s]);
  return values;
}

inline TropicalMatrix matrix_of(const InputDocument& in) { return TropicalMatrix::from_rows(in.rows); }

inline TropicalPoint point_flag(const Context& c, std::size_t d) {
  if (!c.opt.point) throw ParseError("this command needs --point");
  auto coords = parse_coordinate_list(*c.opt.point);
  // d-1 coordinates are read in the chart x_1 = 0.
  if (coords.size() + 1 == d) coords.insert(coords.begin(), Rational(0));
  if (coords.size() != d)
    throw DimensionError("--point has " + std::to_string(coords.size()) + " coordinates, expected " +
                         std::to_string(d) + " (or " + std::to_string(d - 1) + " in the chart)");
  return TropicalPoint(std::move(coords));
}

inline Index index_flag(const Context& c, const PlueckerVector& p) {
  if (!c.opt.index) throw ParseError("this command needs --index");
  const long i = *c.opt.index - static_cast<long>(c.base);
  const auto g = p.ground();
  if (i < 0 || std::find(g.begin(), g.end(), static_cast<Index>(i)) == g.end())
    throw PreconditionError("--index " + std::to_string(*c.opt.index) + " is not in the ground set");
  return static_cast<Index>(i);
}

inline std::optional<Rational> rational_option(const std::optional<std::string>& flag, const Json& options,
                                               const char* key) {
  if (flag) return parse_rational(*flag);
  if (options.contains(key)) {
    std::string why;
    const auto v = scalar_value(options[key], false, why);
    if (!v) throw ParseError(std::string("option \"") + key + "\": " + why);
    return v->value();
  }
  return std::nullopt;
}

inline std::optional<Normalization> normalization(const Context& c) {
  const auto off = rational_option(c.opt.offset, c.input.options, "offset");
  const auto sc = rational_option(c.opt.scale, c.input.options, "scale");
  if (!off && !sc) return std::nullopt;
  return Normalization{off ? *off : Rational(0), sc ? *sc : Rational(1)};
}

inline std::size_t sign_cap(const Context& c) {
  if (c.opt.sign_cap) return *c.opt.sign_cap;
  if (c.input.options.contains("sign_cap")) {
    const auto& v = c.input.options["sign_cap"];
    if (!v.is_number_unsigned()) throw ParseError("option \"sign_cap\" must be a nonnegative integer");
    return v.get<std::size_t>();
  }
  return kDefaultSignCap;
}

// Fills in either a missing scale or offset from the default.
inline Normalization complete(const std::optional<Normalization>& partial, const Context& c, const PlueckerVector& p) {
  const auto def = default_normalization(p);
  if (!partial) return def;
  Normalization n = *partial;
  if (!c.opt.offset && !c.input.options.contains("offset")) n.offset = def.offset;
  if (!c.opt.scale && !c.input.options.contains("scale")) n.scale = def.scale;
  return n;
}

inline Json metric_json(const MetricOnLeaves& m, Index base) {
  Json leaves = Json::array(), rows = Json::array();
  for (Index l : m.leaves()) leaves.push_back(l + base);
  for (Index a = 0; a < m.size(); ++a) {
    Json row = Json::array();
    for (Index b = 0; b < m.size(); ++b) row.push_back(to_json(m.at(a, b)));
    rows.push_back(row);
  }
  return record("leaves", leaves, "matrix", rows);
}

inline Json tree_json(const WeightedTree& t, const MetricOnLeaves& m, Index base) {
  Json nodes = Json::object();
  for (const auto& [label, node] : t.leaf_nodes()) nodes[std::to_string(label + base)] = node;
  Json edges = Json::array();
  for (const auto& e : t.edges())
    edges.push_back(record("nodes", Json::array({e.u, e.v}), "length", to_json(e.length)));
  Json splits = Json::array();
  for (const auto& [side, len] : t.splits())
    splits.push_back(record("leaves", to_json(side, base), "length", to_json(len)));
  Json paths = Json::array();
  const auto leaves = m.leaves();
  for (Index a = 0; a < leaves.size(); ++a)
    for (Index b = a + 1; b < leaves.size(); ++b) {
      Json lens = Json::array();
      for (const auto& l : t.path(leaves[a], leaves[b])) lens.push_back(to_json(l));
      paths.push_back(record("leaves", Json::array({leaves[a] + base, leaves[b] + base}), "edges", lens, "length",
                             to_json(t.distance(leaves[a], leaves[b]))));
    }
  return record("node_count", t.node_count(), "leaf_nodes", nodes, "edges", edges, "splits", splits, "paths", paths);
}

inline Json bounded_complex_json(const PointConfiguration& v, const TropicalComplex& bc, Index base) {
  Json cells = Json::array();
  for (const auto& cell : bc.maximal) {
    const auto pts = bc.points(cell);
    cells.push_back(record("vertices", to_json(cell, base), "points", points_json(pts), "type",
                           type_json(cell_type(v, bc, pts), base)));
  }
  Json f = Json::array();
  for (auto x : bc.f_vector()) f.push_back(x);
  return record("pseudovertices", points_json(bc.pseudo_vertices), "maximal_cells", cells, "f_vector", f);
}

inline Json dispatch(Context& c, std::string& svg_text) {
  const std::string& cmd = c.opt.command;
  const Index base = c.base;

  if (cmd == "tdet") {
    const auto r = trop_det(matrix_of(c.input));
    Json out{{"value", to_json(r.value)}};
    if (r.realizer) {
      Json sigma = Json::array();
      for (Index j : *r.realizer) sigma.push_back(j + base);
      out["realizer"] = sigma;
      out["regular"] = *r.regular;
    } else {
      out["realizer"] = nullptr;
      out["regular"] = nullptr;
    }
    return out;
  }
  if (cmd == "tsgn") return record("sign", trop_sign(matrix_of(c.input), sign_cap(c)));
  if (cmd == "singular") return record("singular", is_singular(matrix_of(c.input)));

  const auto v = c.input.configuration();
  if (cmd == "pseudovertices") return record("pseudovertices", points_json(pseudo_vertices(v)));
  if (cmd == "vertices") {
    Json idx = Json::array();
    const auto ids = tropical_vertex_indices(v);
    for (Index i : ids) idx.push_back(i + base);
    return record("indices", idx, "vertices", points_json(tropical_vertices(v)));
  }
  if (cmd == "type") {
    const auto x = point_flag(c, v.dim());
    const auto t = type_of(v, x);
    return record("point", to_json(normalize(x)), "type", type_json(t, base), "contains", !t.has_empty_entry());
  }
  if (cmd == "contains") {
    const auto x = point_flag(c, v.dim());
    return record("point", to_json(normalize(x)), "contains", contains(v, x));
  }
  if (cmd == "bounded-complex") return bounded_complex_json(v, bounded_complex(v), base);
  if (cmd == "halfspaces") {
    Json hs = Json::array();
    for (const auto& h : minimal_halfspaces(v))
      hs.push_back(record("apex", to_json(h.apex()), "sectors", to_json(h.sectors(), base)));
    return record("halfspaces", hs);
  }
  if (cmd == "cornered-hull") {
    std::vector<TropicalPoint> corners;
    for (Index k = 0; k < v.dim(); ++k) corners.push_back(corner(v, k));
    return record("corners", points_json(corners), "vertices", points_json(cornered_hull(v).vertices));
  }
  if (cmd == "dual-subdivision") {
    const auto pvs = pseudo_vertices(v);
    const auto cells = dual_subdivision(v);
    Json out = Json::array();
    for (Index k = 0; k < cells.size(); ++k)
      out.push_back(record("pseudovertex", to_json(pvs[k]), "cell", pairs_json(cells[k], base)));
    const bool generic = is_sufficiently_generic(v);
    Json res{{"cells", out}, {"generic", generic}};
    if (generic) {
      Json f = Json::array();
      for (auto x : simplicial_f_vector(cells)) f.push_back(x);
      res["f_vector"] = f;
    }
    return res;
  }
  if (cmd == "alexander-dual") {
    const auto pvs = pseudo_vertices(v);
    const auto gens = alexander_dual_generators(v);
    Json out = Json::array();
    for (Index k = 0; k < gens.size(); ++k)
      out.push_back(record("pseudovertex", to_json(pvs[k]), "monomial", monomial(gens[k], base), "support",
                           pairs_json(gens[k], base)));
    return record("generators", out);
  }
  if (cmd == "generic") return record("generic", is_sufficiently_generic(v));

  const auto p = pluecker_vector(v);
  if (cmd == "pluecker")
    return record("rank", p.rank(), "ground_size", p.ground().size(), "values", pluecker_json(p, base));
  if (cmd == "matroid-subdivision") {
    Json cells = Json::array();
    for (const auto& cell : matroid_subdivision(p)) {
      Json bases = Json::array();
      for (Subset s : cell.bases) bases.push_back(subset_label(s, base == 0));
      cells.push_back(bases);
    }
    return record("cells", cells);
  }
  if (cmd == "contraction") {
    const Index i = index_flag(c, p);
    return record("index", i + base, "values", pluecker_json(contraction_restriction(p, i), base));
  }
  if (cmd == "tree-metric" || cmd == "tree") {
    const Index i = index_flag(c, p);
    const auto pi = contraction_restriction(p, i);
    const auto n = complete(normalization(c), c, p);
    const auto m = metric_from_restriction(pi, n);
    Json out{{"index", i + base}, {"offset", to_json(n.offset)}, {"scale", to_json(n.scale)}};
    out["metric"] = metric_json(m, base);
    const bool tree = m.size() >= 3 ? is_tree_metric(m) : false;
    out["tree_metric"] = tree;
    if (cmd == "tree") {
      if (!tree) throw PreconditionError("restriction does not induce a tree metric");
      out["tree"] = tree_json(tree_from_metric(m), m, base);
    }
    return out;
  }
  if (cmd == "arrangement") {
    const auto ta = tree_arrangement(v, complete(normalization(c), c, p));
    Json trees = Json::array();
    for (Index k = 0; k < ta.labels.size(); ++k)
      trees.push_back(record("index", ta.labels[k] + base, "metric", metric_json(ta.metrics[k], base), "tree",
                             tree_json(ta.trees[k], ta.metrics[k], base)));
    // For each pair of trees, the third labels k with delta_i(j,k) = delta_j(i,k).
    Json shared = Json::array();
    for (Index a = 0; a < ta.labels.size(); ++a)
      for (Index b = a + 1; b < ta.labels.size(); ++b) {
        IndexSet ks;
        for (Index k : ta.labels) {
          if (k == ta.labels[a] || k == ta.labels[b]) continue;
          if (ta.metrics[a](ta.labels[b], k) == ta.metrics[b](ta.labels[a], k)) ks.insert(k);
        }
        shared.push_back(
            record("trees", Json::array({ta.labels[a] + base, ta.labels[b] + base}), "agree_on", to_json(ks, base)));
      }
    return record("offset", to_json(ta.normalization.offset), "scale", to_json(ta.normalization.scale), "compatible",
                  ta.compatible, "trees", trees, "shared_support", shared);
  }
  if (cmd == "svg") {
    const auto s = emit_svg(v, SvgLayers::parse(c.opt.layers));
    svg_text = s.text;
    return record("markers", s.markers, "cells", s.cells);
  }
  throw ParseError("unknown command \"" + cmd + "\"");
}

inline Json error_json(const std::string& kind, const std::string& message, std::size_t line = 0,
                       std::size_t column = 0) {
  Json e{{"kind", kind}, {"message", message}};
  if (line) {
    e["line"] = line;
    e["column"] = column;
  }
  return record("error", e);
}

}  // namespace detail

// Entry point shared by the executable and the tests. args excludes argv[0].
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Exact tropical convexity computations on JSON point configurations", "tropcvx"};
  app.add_option("command", opt.command, "subcommand")->required()->check(CLI::IsMember(command_names()));
  app.add_option("input", opt.input, "input JSON file, - for stdin");
  app.add_option("--point", opt.point, "point as comma-separated rationals (d, or d-1 chart coordinates)");
  app.add_option("--index", opt.index, "ground-set element for contraction, tree-metric, tree");
  app.add_option("--offset", opt.offset, "tree metric offset C");
  app.add_option("--scale", opt.scale, "tree metric scale s");
  app.add_option("--sign-cap", opt.sign_cap, "largest dimension for tsgn");
  app.add_flag("--zero-based", opt.zero_based, "0-based indices in input flags and output");
  app.add_flag("--no-timing", opt.no_timing, "omit the timing field");
  app.add_option("--layers", opt.layers, "svg layers: generators,pseudovertices,cells,cornered-hull,lines,all");
  app.add_option("--out", opt.out, "svg output file (default: stdout)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    out << detail::error_json("usage", e.what()).dump(2) << "\n";
    err << "tropcvx: " << e.what() << "\n";
    return kParse;
  }

  try {
    std::string text;
    if (opt.input == "-") {
      text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
      std::ifstream f(opt.input, std::ios::binary);
      if (!f) throw ParseError("cannot open input file " + opt.input);
      text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    const bool matrix_cmd = opt.command == "tdet" || opt.command == "tsgn" || opt.command == "singular";
    const auto start = std::chrono::steady_clock::now();
    detail::Context ctx{opt, parse_input(text, matrix_cmd), opt.zero_based ? Index{0} : Index{1}};
    std::string svg;
    Json result = detail::dispatch(ctx, svg);
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    Json doc{{"command", opt.command}, {"index_base", ctx.base}, {"result", result}};
    if (!opt.no_timing) doc["timing_ms"] = ms;
    if (opt.command == "svg") {
      if (opt.out) {
        std::ofstream f(*opt.out, std::ios::binary);
        if (!f) throw ParseError("cannot open output file " + *opt.out);
        f << svg;
        out << doc.dump(2) << "\n";
      } else {
        out << svg;
      }
    } else {
      out << doc.dump(2) << "\n";
    }
    return kOk;
  } catch (const ParseError& e) {
    out << detail::error_json(e.kind(), e.what(), e.line(), e.column()).dump(2) << "\n";
    err << "tropcvx: " << e.what() << "\n";
    return kParse;
  } catch (const DimensionError& e) {
    out << detail::error_json(e.kind(), e.what()).dump(2) << "\n";
    err << "tropcvx: " << e.what() << "\n";
    return kParse;
  } catch (const Error& e) {
    out << detail::error_json(e.kind(), e.what()).dump(2) << "\n";
    err << "tropcvx: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    out << detail::error_json("internal", e.what()).dump(2) << "\n";
    err << "tropcvx: internal error: " << e.what() << "\n";
    return kPrecondition;
  }
}

}  // namespace tropical::cli
