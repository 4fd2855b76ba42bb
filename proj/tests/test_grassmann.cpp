#include <gtest/gtest.h>

#include <set>

#include "properties.hpp"
#include "reference_data.hpp"
#include "support.hpp"
#include "tropical/grassmann.hpp"

using namespace tropical;
namespace ref = reference;
namespace ts = testsupport;

namespace {

PlueckerVector table_pluecker() {
  PlueckerVector p(3, {0, 1, 2, 3, 4, 5, 6});
  for (const auto& [label, value] : ref::pluecker_table()) p.set(ref::subset_of(label), ExtendedRational(value));
  return p;
}

}  // namespace

TEST(Subsets, LabelsAndOrder) {
  const Subset s = make_subset({0, 2, 3});
  EXPECT_EQ(subset_label(s), "134");
  EXPECT_EQ(subset_label(s, true), "023");
  EXPECT_EQ(subset_label(make_subset({0, 9})), "1,10");
  EXPECT_EQ(elements(s), (std::vector<Index>{0, 2, 3}));
  EXPECT_TRUE(lex_less(make_subset({0, 1, 4}), make_subset({0, 2, 3})));
  EXPECT_LT(make_subset({0, 2, 3}), make_subset({0, 1, 4}));  // colex
  const std::vector<Index> ground{0, 1, 2, 3, 4};
  EXPECT_EQ(subsets_of_size(ground, 2).size(), 10u);
  const auto triples = subsets_of_size(ground, 3);
  EXPECT_EQ(triples.size(), 10u);
  EXPECT_TRUE(std::is_sorted(triples.begin(), triples.end()));
}

TEST(Pluecker, ExtendedMatrixShape) {
  const auto vbar = extend_with_identity(ref::running_example());
  EXPECT_EQ(vbar.rows(), 3u);
  EXPECT_EQ(vbar.cols(), 7u);
  EXPECT_EQ(vbar(2, 0), ExtendedRational(6));
  EXPECT_EQ(vbar(1, 5), ExtendedRational(0));
  EXPECT_TRUE(vbar(0, 5).is_infinite());
}

TEST(Pluecker, RunningExampleValuesAndBruteForce) {
  const auto v = ref::running_example();
  const auto p = pluecker_vector(v);
  const auto vbar = extend_with_identity(v);
  EXPECT_EQ(p.values().size(), 35u);
  for (const auto& [label, value] : ref::pluecker_table()) {
    const Subset s = ref::subset_of(label);
    EXPECT_EQ(p[s], ExtendedRational(value)) << label;
    EXPECT_EQ(ts::brute_det(vbar.columns(elements(s))).value, p[s]) << label;
  }
  EXPECT_EQ(p, table_pluecker());
  EXPECT_TRUE(check_pluecker(p));
  // Reporting order follows the digit notation.
  const auto order = p.lex_subsets();
  EXPECT_EQ(subset_label(order.front()), "123");
  EXPECT_EQ(subset_label(order[5]), "134");
  EXPECT_EQ(subset_label(order.back()), "567");
}

TEST(Pluecker, ViolationHasWitness) {
  PlueckerVector p(2, {0, 1, 2, 3});
  for (const auto& [s, v] : p.values()) p.set(s, ExtendedRational(0));
  EXPECT_TRUE(check_pluecker(p));
  p.set(make_subset({0, 1}), ExtendedRational(-1));
  p.set(make_subset({2, 3}), ExtendedRational(-1));
  const auto w = pluecker_violation(p);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->i, 0u);
  EXPECT_EQ(w->l, 3u);
  EXPECT_THROW(matroid_subdivision(p), PreconditionError);
}

TEST(Pluecker, RandomConfigurationsSatisfyRelations) {
  ts::Random r(21);
  for (int k = 0; k < 100; ++k) {
    const std::size_t d = static_cast<std::size_t>(r.integer(2, 4));
    const auto v = r.configuration(static_cast<std::size_t>(r.integer(1, 6)), d);
    EXPECT_TRUE(check_pluecker(pluecker_vector(v)));
  }
}

TEST(Matroids, ExchangeAxiom) {
  const std::vector<Subset> uniform = subsets_of_size(std::vector<Index>{0, 1, 2, 3}, 2);
  EXPECT_TRUE(is_matroid(uniform));
  const std::vector<Subset> bad{make_subset({0, 1}), make_subset({2, 3})};
  EXPECT_FALSE(is_matroid(bad));
  const std::vector<Subset> mixed{make_subset({0, 1}), make_subset({2})};
  EXPECT_FALSE(is_matroid(mixed));
  EXPECT_THROW(is_matroid(std::vector<Subset>{}), PreconditionError);
}

TEST(Matroids, RunningExampleSubdivision) {
  const auto cells = matroid_subdivision(table_pluecker());
  std::set<std::set<Subset>> got, expected;
  for (const auto& c : cells) {
    EXPECT_TRUE(is_matroid(c.bases));
    got.emplace(c.bases.begin(), c.bases.end());
  }
  for (const auto& line : ref::matroid_cells()) {
    std::set<Subset> s;
    for (const auto& w : ref::words(line)) s.insert(ref::subset_of(w));
    expected.insert(s);
  }
  EXPECT_EQ(got, expected);
}

TEST(Matroids, ConstantHeightsGiveOneCell) {
  PlueckerVector p(2, {0, 1, 2, 3});
  for (const auto& [s, v] : p.values()) p.set(s, ExtendedRational(0));
  const auto cells = matroid_subdivision(p);
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].bases.size(), 6u);
}

TEST(Matroids, InfiniteHeightsAreSkipped) {
  PlueckerVector p(2, {0, 1, 2});
  p.set(make_subset({0, 1}), ExtendedRational(0));
  p.set(make_subset({0, 2}), ExtendedRational(0));
  // {1,2} stays infinite: the support {01, 02} is a matroid (0 a coloop).
  const auto cells = matroid_subdivision(p);
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].bases.size(), 2u);
}

TEST(Matroids, LiftInvariance) { EXPECT_EQ(ts::pluecker_lift_invariance(22, 100), ""); }

TEST(Matroids, FacetCoherence) { EXPECT_EQ(ts::matroid_facet_coherence(23, 100), ""); }

TEST(Contraction, RunningExample) {
  const auto p1 = contraction_restriction(table_pluecker(), 0);
  EXPECT_EQ(p1.rank(), 2u);
  EXPECT_EQ(p1.values().size(), 15u);
  for (const auto& [label, value] : ref::contraction_table())
    EXPECT_EQ(p1[ref::subset_of(label)], ExtendedRational(value)) << label;
  EXPECT_THROW(contraction_restriction(table_pluecker(), 9), PreconditionError);
  EXPECT_THROW(contraction_restriction(p1, 1).rank() == 1 ? contraction_restriction(contraction_restriction(p1, 1), 2)
                                                          : p1,
               PreconditionError);
}

TEST(TreeMetric, DeltaOneMatrix) {
  const auto p1 = contraction_restriction(table_pluecker(), 0);
  const auto norm = default_normalization(p1);
  EXPECT_EQ(norm.offset, 3);
  EXPECT_EQ(norm.scale, 6);
  const auto delta = metric_from_restriction(p1);
  const auto upper = ref::delta1_upper();
  for (Index a = 0; a < 5; ++a)
    for (Index b = a + 1; b < 6; ++b) EXPECT_EQ(delta.at(a, b), parse_rational(upper[a][b - a - 1]));
  EXPECT_EQ(delta(1, 2), Rational(8, 3));
  EXPECT_TRUE(is_tree_metric(delta));
  for (Index a = 0; a < 6; ++a)
    for (Index b = 0; b < 6; ++b) {
      EXPECT_GE(delta.at(a, b), a == b ? 0 : 2);
      EXPECT_LE(delta.at(a, b), 3);
    }
}

TEST(TreeMetric, NegativeCases) {
  // Quartet 01|23 with unit pendants and an inner edge of length 1.
  const MetricOnLeaves quartet({0, 1, 2, 3}, {{0, 2, 3, 3}, {2, 0, 3, 3}, {3, 3, 0, 2}, {3, 3, 2, 0}});
  EXPECT_TRUE(is_tree_metric(quartet));
  // Square with unit sides: sums 1+1, 2+2, 1+1 have a unique maximum.
  const MetricOnLeaves square({0, 1, 2, 3}, {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}});
  EXPECT_FALSE(is_tree_metric(square));
  const MetricOnLeaves cycle({0, 1, 2, 3}, {{0, 2, 3, 2}, {2, 0, 2, 3}, {3, 2, 0, 2}, {2, 3, 2, 0}});
  EXPECT_FALSE(is_tree_metric(cycle));
  const MetricOnLeaves triangle({0, 1, 2}, {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}});
  EXPECT_FALSE(is_tree_metric(triangle));
  EXPECT_THROW(MetricOnLeaves({0, 1}, {{0, 1}, {2, 0}}), PreconditionError);
  EXPECT_THROW(is_tree_metric(MetricOnLeaves({0, 1}, {{0, 1}, {1, 0}})), PreconditionError);
  EXPECT_THROW(tree_from_metric(cycle), PreconditionError);
}

TEST(Tree, DeltaOnePath) {
  const auto delta = metric_from_restriction(contraction_restriction(table_pluecker(), 0), Normalization{3, 6});
  const auto tree = tree_from_metric(delta);
  const auto path = tree.path(1, 2);
  const auto expected = ref::path23();
  ASSERT_EQ(path.size(), expected.size());
  for (Index k = 0; k < path.size(); ++k) EXPECT_EQ(path[k], parse_rational(expected[k]));
  for (Index a : delta.leaves())
    for (Index b : delta.leaves()) EXPECT_EQ(tree.distance(a, b), delta(a, b));
}

TEST(Tree, RandomTreesReconstructed) { EXPECT_EQ(ts::tree_reconstruction(24, 200), ""); }

TEST(Arrangement, RunningExample) {
  const auto ta = tree_arrangement(ref::running_example());
  EXPECT_EQ(ta.trees.size(), 7u);
  EXPECT_TRUE(ta.compatible);
  EXPECT_EQ(ta.normalization.offset, 3);
  EXPECT_EQ(ta.normalization.scale, 6);
  for (Index k = 0; k < 7; ++k) {
    EXPECT_TRUE(is_tree_metric(ta.metrics[k]));
    EXPECT_EQ(ta.metrics[k].size(), 6u);
  }
  // The first tree is delta_1.
  const auto delta = metric_from_restriction(contraction_restriction(table_pluecker(), 0));
  EXPECT_EQ(ta.metrics[0], delta);
  EXPECT_THROW(tree_arrangement(PointConfiguration{{0, 0}, {0, 1}}), PreconditionError);
}

TEST(Arrangement, RandomPlanarConfigurations) { EXPECT_EQ(ts::contraction_trees(25, 100), ""); }
