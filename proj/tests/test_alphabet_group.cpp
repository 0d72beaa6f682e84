#include <gtest/gtest.h>

#include <random>
#include <set>

#include "biauto/alphabet.hpp"
#include "biauto/group.hpp"
#include "oracles.hpp"

using namespace biauto;

namespace {

GroupBackend const& z2() {
  static GroupBackend const g = standard_free_abelian(2);
  return g;
}
GroupBackend const& z1() {
  static GroupBackend const g = standard_free_abelian(1);
  return g;
}
GroupBackend const& f2() {
  static GroupBackend const g = standard_free_group(2);
  return g;
}

// Cyclic group of order 4 generated by x with x⁻¹ = X.
GroupBackend cyclic4() {
  std::vector<std::vector<std::size_t>> table(4, std::vector<std::size_t>(4));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) table[i][j] = (i + j) % 4;
  }
  return GroupBackend::finite_table(Alphabet("xX", "Xx"), table, 0, {1, 3});
}

}  // namespace

TEST(Alphabet, RejectsNonInvolutivePairing) {
  EXPECT_THROW(Alphabet("xyz", "yzx"), AlphabetError);
  EXPECT_THROW(Alphabet("xx", "xx"), AlphabetError);
  EXPECT_NO_THROW(Alphabet("ab", "ab"));
}

TEST(Alphabet, UppercaseInverses) {
  Alphabet a = Alphabet::with_uppercase_inverses("xy");
  EXPECT_EQ(a.size(), 4u);
  EXPECT_EQ(a.format(a.parse("xyXY")), "xyXY");
  EXPECT_EQ(a.symbol(a.inverse(a.letter('y'))), 'Y');
  EXPECT_THROW(a.parse("xq"), AlphabetError);
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(z2().serialize(z2().evaluate(z2().alphabet().parse("xyXY"))), "(0,0)");
  EXPECT_EQ(z2().serialize(z2().evaluate(z2().alphabet().parse("xxy"))), "(2,1)");
  EXPECT_EQ(f2().serialize(f2().evaluate(f2().alphabet().parse("xXy"))), "y");
  EXPECT_EQ(z2().evaluate({}), z2().identity());
  EXPECT_THROW(z2().evaluate(Word{17}), AlphabetError);
}

TEST(WordMetric, Examples) {
  GroupElement g = z2().evaluate(z2().alphabet().parse("xxxYY"));
  EXPECT_EQ(z2().word_metric(z2().identity(), g), 5);
  for (auto const* b : {&z2(), &f2()}) {
    GroupElement h = b->evaluate(b->alphabet().parse("xyXyy"));
    EXPECT_EQ(b->word_metric(h, h), 0);
  }
  EXPECT_EQ(f2().word_metric(f2().identity(), f2().parse_free_word("xyX")), 3);
}

TEST(WordMetric, FiniteTableByBreadthFirstSearch) {
  GroupBackend c4 = cyclic4();
  EXPECT_EQ(c4.word_metric(c4.identity(), GroupElement{2}), 2);
  EXPECT_EQ(c4.word_metric(c4.identity(), GroupElement{3}), 1);
}

TEST(WordMetric, UnreachableElementInTable) {
  // Z/4 with only the identity as image: 1, 2, 3 are not generated.
  std::vector<std::vector<std::size_t>> table(4, std::vector<std::size_t>(4));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) table[i][j] = (i + j) % 4;
  }
  GroupBackend g = GroupBackend::finite_table(Alphabet("e", "e"), table, 0, {0});
  EXPECT_THROW(g.word_metric(g.identity(), GroupElement{1}), UnreachableError);
}

TEST(FiniteTable, ValidatesGroupAxioms) {
  std::vector<std::vector<std::size_t>> not_assoc{{0, 1, 2}, {1, 0, 0}, {2, 0, 0}};
  EXPECT_THROW(GroupBackend::finite_table(Alphabet("a", "a"), not_assoc, 0, {1}), ValidationError);
  std::vector<std::vector<std::size_t>> z2t{{0, 1}, {1, 0}};
  EXPECT_THROW(GroupBackend::finite_table(Alphabet("a", "a"), z2t, 1, {1}), ValidationError);
  // Images must respect the inversion pairing.
  EXPECT_THROW(GroupBackend::finite_table(Alphabet("xX", "Xx"), {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, 0, {1, 1}),
               ValidationError);
}

TEST(Ball, Examples) {
  EXPECT_EQ(z2().ball(1).elements.size(), 5u);
  EXPECT_EQ(z2().ball(2).elements.size(), 13u);
  EXPECT_EQ(f2().ball(2).elements.size(), 17u);
}

TEST(Ball, FreeGroupAgreesWithBruteForce) {
  for (std::size_t r = 0; r <= 4; ++r) {
    std::set<std::string> reduced;
    for (auto const& w : oracle::all_words("xyXY", r)) reduced.insert(oracle::reduce(w));
    std::set<std::string> ours;
    for (auto const& g : f2().ball(r).elements) ours.insert(f2().serialize(g));
    EXPECT_EQ(ours, reduced) << "radius " << r;
  }
}

TEST(Ball, SortedBySerialization) {
  auto b = z2().ball(3);
  for (std::size_t i = 1; i < b.elements.size(); ++i) {
    EXPECT_LT(z2().serialize(b.elements[i - 1]), z2().serialize(b.elements[i]));
  }
}

TEST(Ball, ClosedFormForZ2) {
  for (std::int64_t k = 0; k <= 6; ++k) {
    EXPECT_EQ(z2().ball(static_cast<std::size_t>(k)).elements.size(), static_cast<std::size_t>(2 * k * (k + 1) + 1));
  }
}

TEST(Ball, MembershipMatchesMetricAndIsMonotone) {
  for (auto const* g : {&z2(), &z1(), &f2()}) {
    for (std::size_t r = 0; r < 4; ++r) {
      auto inner = g->ball(r).elements;
      auto outer = g->ball(r + 1).elements;
      ElementSet outer_set(outer.begin(), outer.end());
      for (auto const& e : inner) {
        EXPECT_LE(g->norm(e), static_cast<std::int64_t>(r));
        EXPECT_TRUE(outer_set.contains(e));
      }
      for (auto const& e : outer) {
        if (g->norm(e) <= static_cast<std::int64_t>(r)) {
          EXPECT_NE(std::find(inner.begin(), inner.end(), e), inner.end());
        }
      }
    }
  }
}

TEST(FreeReduce, Examples) {
  Alphabet const& a = f2().alphabet();
  EXPECT_EQ(a.format(free_reduce(a, a.parse("xX"))), "");
  EXPECT_EQ(a.format(free_reduce(a, a.parse("xyYX"))), "");
  EXPECT_EQ(a.format(free_reduce(a, a.parse("xxY"))), "xxY");
}

TEST(FreeReduce, AgreesWithOracleIdempotentAndEvaluationInvariant) {
  Alphabet const& a = f2().alphabet();
  for (auto const& w : oracle::all_words("xyXY", 6)) {
    Word r = free_reduce(a, a.parse(w));
    EXPECT_EQ(a.format(r), oracle::reduce(w));
    EXPECT_EQ(free_reduce(a, r), r);
    EXPECT_EQ(f2().evaluate(r), f2().evaluate(a.parse(w)));
  }
}

TEST(Properties, HomomorphismOnRandomWords) {
  std::mt19937 rng(7);
  for (auto const* g : {&z2(), &z1(), &f2()}) {
    std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(g->alphabet().size() - 1));
    std::uniform_int_distribution<int> len(0, 20);
    for (int trial = 0; trial < 500; ++trial) {
      Word u, v;
      for (int i = len(rng); i > 0; --i) u.push_back(letter(rng));
      for (int i = len(rng); i > 0; --i) v.push_back(letter(rng));
      EXPECT_EQ(g->evaluate(concat(u, v)), g->multiply(g->evaluate(u), g->evaluate(v)));
      EXPECT_EQ(g->evaluate(reverse_invert_word(g->alphabet(), u)), g->inverse(g->evaluate(u)));
    }
  }
}

TEST(Properties, TriangleInequalityOnBallOfRadius3) {
  for (auto const* g : {&z2(), &z1(), &f2()}) {
    auto b = g->ball(3).elements;
    for (auto const& p : b) {
      for (auto const& q : b) {
        std::int64_t pq = g->word_metric(p, q);
        EXPECT_EQ(pq, g->word_metric(q, p));
        EXPECT_EQ(pq == 0, p == q);
        for (auto const& r : b) ASSERT_LE(g->word_metric(p, r), pq + g->word_metric(q, r));
      }
    }
  }
}

TEST(Properties, NonStandardImagesUseSearch) {
  // Z with generators 2 and 3: |1| = 2 (3 - 2), |5| = 2.
  GroupBackend g = GroupBackend::free_abelian(Alphabet("abAB", "ABab"), 1, {{2}, {3}, {-2}, {-3}});
  EXPECT_FALSE(g.has_standard_metric());
  EXPECT_EQ(g.norm(GroupElement(GroupElement::Storage{1})), 2);
  EXPECT_EQ(g.norm(GroupElement(GroupElement::Storage{5})), 2);
  EXPECT_EQ(g.norm(GroupElement(GroupElement::Storage{6})), 2);
  EXPECT_EQ(g.norm(GroupElement(GroupElement::Storage{7})), 3);
}

TEST(Serialize, CanonicalForms) {
  EXPECT_EQ(z2().serialize(z2().identity()), "(0,0)");
  EXPECT_EQ(f2().serialize(f2().identity()), "");
  EXPECT_EQ(cyclic4().serialize(GroupElement{3}), "3");
}
