#include <gtest/gtest.h>

#include "biauto/certify.hpp"
#include "biauto/checkers.hpp"
#include "biauto/fixtures.hpp"
#include "oracles.hpp"

using namespace biauto;

namespace {

Structure lattice(std::size_t rank, char const* regex) {
  GroupBackend g = standard_free_abelian(rank);
  return Structure(g, compile_regex(g.alphabet(), regex));
}

Structure cyclic4(char const* regex) {
  std::vector<std::vector<std::size_t>> table(4, std::vector<std::size_t>(4));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) table[i][j] = (i + j) % 4;
  }
  GroupBackend g = GroupBackend::finite_table(Alphabet("xX", "Xx"), table, 0, {1, 3});
  return Structure(g, compile_regex(g.alphabet(), regex));
}

}  // namespace

TEST(CertifyFt, CertifiesStraightLanguage) {
  Structure s = lattice(1, "x*");
  Verdict v = certify_ft(s, 1, 4, Sidedness::right);
  ASSERT_TRUE(v.holds());
  EXPECT_EQ(v.evidence, "certified");
  ASSERT_TRUE(v.certificate);
  EXPECT_TRUE(v.certificate->boundary.empty());
  for (auto const& d : v.certificate->differences) {
    EXPECT_TRUE(d == "(-1)" || d == "(0)" || d == "(1)") << d;
  }
  EXPECT_TRUE(check_right_ft_bounded(s, 1, 12).holds());
}

TEST(CertifyFt, FindsBacktrackWitness) {
  Structure s = lattice(1, "x*(xX)*");
  Verdict v = certify_ft(s, 0, 3, Sidedness::right);
  ASSERT_TRUE(v.fails());
  FtWitness const& w = *v.witness;
  EXPECT_EQ(s.format(w.w1), "xX");
  EXPECT_EQ(s.format(w.a), "");
  EXPECT_EQ(s.format(w.w2), "");
  EXPECT_EQ(w.distance, 1);
  EXPECT_EQ(w.time, 1u);
  oracle::Max m = oracle::lattice_distance("xX", "");
  EXPECT_EQ(m.distance, 1);
  EXPECT_EQ(m.time, 1u);
  EXPECT_TRUE(verify_witness(s, w, 0));
}

TEST(CertifyFt, Z2IsUnknownWithBoundary) {
  Structure s = fixture_z2().structure;
  Verdict v = certify_ft(s, 3, 6, Sidedness::right);
  EXPECT_EQ(v.status, Status::unknown);
  ASSERT_TRUE(v.certificate);
  EXPECT_FALSE(v.certificate->boundary.empty());
  EXPECT_EQ(v.certificate->cutoff, 6u);
  for (auto const& b : v.certificate->boundary) EXPECT_EQ(b.front(), '(') << b;
}

TEST(CertifyFt, RejectsCutoffBelowK) {
  EXPECT_THROW(certify_ft(lattice(1, "x*"), 3, 2, Sidedness::right), ValidationError);
}

TEST(CertifyFt, FiniteGroupIsDecidedExactly) {
  Structure s = cyclic4("x*");
  EXPECT_TRUE(certify_ft(s, 2, 2, Sidedness::right).holds());
  Verdict v = certify_ft(s, 1, 1, Sidedness::right);
  ASSERT_TRUE(v.fails());
  EXPECT_TRUE(verify_witness(s, *v.witness, 1));
}

TEST(CertifyFt, TwoSidedStraightLanguage) {
  Structure s = lattice(1, "x*");
  // X·x^m·x against x^m is 2 apart from t = 1 on.
  Verdict v = certify_ft(s, 1, 4, Sidedness::two_sided);
  ASSERT_TRUE(v.fails());
  EXPECT_TRUE(verify_witness(s, *v.witness, 1));
  EXPECT_TRUE(certify_ft(s, 2, 6, Sidedness::two_sided).holds());
}

TEST(Properties, CertifierAgreesWithBoundedSearch) {
  std::vector<Structure> cases{lattice(1, "x*"),          lattice(1, "x*(xX)*"),       lattice(1, "(x*|X*)(xX)*"),
                               lattice(1, "(xx)*|X*"),    lattice(2, "(x*|X*)(y*|Y*)"), fixture_z2().structure,
                               lattice(2, "(xy)*(x|)"),   cyclic4("x*"),               cyclic4("(xX)*x*")};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    Structure const& s = cases[i];
    for (std::int64_t k = 0; k <= 3; ++k) {
      for (auto side : {Sidedness::right, Sidedness::two_sided}) {
        Verdict c = certify_ft(s, k, static_cast<std::size_t>(2 * k + 2), side);
        bool two = side == Sidedness::two_sided;
        if (c.holds()) {
          for (std::size_t len : {6u, 10u}) {
            Verdict b = two ? check_two_sided_ft_bounded(s, k, len) : check_right_ft_bounded(s, k, len);
            EXPECT_TRUE(b.holds()) << "case " << i << " k=" << k << " two=" << two;
          }
        } else if (c.fails()) {
          ASSERT_TRUE(c.witness);
          EXPECT_TRUE(verify_witness(s, *c.witness, k));
          std::size_t len = std::max(c.witness->w1.size(), c.witness->w2.size());
          Verdict b = two ? check_two_sided_ft_bounded(s, k, len) : check_right_ft_bounded(s, k, len);
          EXPECT_TRUE(b.fails()) << "case " << i << " k=" << k << " two=" << two;
        } else {
          EXPECT_FALSE(c.certificate->boundary.empty());
        }
      }
    }
  }
}

TEST(Properties, CertifierReportIsDeterministic) {
  Structure s = fixture_z2().structure;
  Verdict a = certify_ft(s, 3, 6, Sidedness::right);
  Verdict b = certify_ft(s, 3, 6, Sidedness::right);
  EXPECT_EQ(a.certificate->boundary, b.certificate->boundary);
  EXPECT_EQ(a.certificate->differences, b.certificate->differences);
  EXPECT_EQ(a.certificate->explored, b.certificate->explored);
}
