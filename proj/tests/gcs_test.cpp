#include <gtest/gtest.h>

#include <random>

#include "lamina/gcs.hpp"
#include "lamina/symbolic.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace lamina;

TEST(Leaves, Examples) {
  Circle c(2, Angle(1, 6));
  auto l0 = leaves(c, 0);
  ASSERT_EQ(l0.size(), 1u);
  EXPECT_EQ(std::minmax(l0[0].a, l0[0].b), std::minmax(Angle(1, 12), Angle(7, 12)));
  auto l1 = leaves(c, 1);
  ASSERT_EQ(l1.size(), 2u);
  for (const Leaf& f : l1) {
    int i = f.u[0];
    EXPECT_EQ(std::minmax(f.a, f.b), std::minmax(c.branch(i, c.star(1)), c.branch(i, c.star(2))));
  }
  EXPECT_EQ(code_of([] { leaves(Circle(2, Angle(2, 7)), 3); }), ErrorCode::kIllDefinedLeaf);
}

TEST(Leaves, NonCrossingAcrossDepths) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    Circle c(2, oracle::random_angle(rng, 5, 80));
    std::vector<Leaf> all;
    try {
      for (long n = 0; n <= 5; ++n) {
        auto l = leaves(c, n);
        all.insert(all.end(), l.begin(), l.end());
      }
    } catch (const Error&) {
      continue;
    }
    for (size_t i = 0; i < all.size(); ++i)
      for (size_t j = i + 1; j < all.size(); ++j)
        EXPECT_FALSE(leaves_cross(all[i], all[j])) << c.alpha().str();
  }
}

TEST(GCSPartition, DepthZeroIsTheSemicircles) {
  Circle c(2, Angle(1, 6));
  auto p = gcs_partition(c, 0);
  ASSERT_EQ(p.links.size(), 2u);
  EXPECT_EQ(p.links[0], cylinder(c, W("L")));
  EXPECT_EQ(p.links[1], cylinder(c, W("R")));
}

TEST(GCSPartition, TwoSeventhsDepthTwo) {
  Circle c(2, Angle(2, 7));
  auto p = gcs_partition(c, 2);
  std::vector<std::string> labels;
  for (const Word& w : p.words) labels.push_back(word_str(2, w));
  std::sort(labels.begin(), labels.end());
  EXPECT_EQ(labels, (std::vector<std::string>{"**L", "LLR", "LRR", "RLR", "RRR"}));
  for (size_t i = 0; i < p.words.size(); ++i)
    if (word_str(2, p.words[i]) == "**L") {
      ArcSet want = cylinder(c, W("LLL"))
                        .unite(cylinder(c, W("LRL")))
                        .unite(cylinder(c, W("RRL")))
                        .unite(cylinder(c, W("RLL")));
      EXPECT_EQ(p.links[i], want);
    }
}

TEST(GCSPartition, TilesTheCircle) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    Circle c(2, oracle::random_angle(rng, 3, 60));
    long n = std::uniform_int_distribution<long>(0, 5)(rng);
    GCSPartition p;
    try {
      p = gcs_partition(c, n);
    } catch (const Error&) {
      continue;
    }
    mpq_class total = 0;
    ArcSet u;
    for (const auto& l : p.links) {
      total += l.measure();
      u = u.unite(l);
    }
    EXPECT_EQ(total, 1);
    EXPECT_TRUE(u.is_full());
    for (size_t i = 0; i < p.links.size(); ++i)
      for (size_t j = i + 1; j < p.links.size(); ++j)
        EXPECT_EQ(p.links[i].intersect(p.links[j]).measure(), 0);
  }
}

TEST(GCSOfPoint, Examples) {
  Circle c(2, Angle(2, 7));
  auto m = gcs_of_point(c, 2, Angle(1, 5));
  EXPECT_EQ(m.word, W("LLR"));
  EXPECT_EQ(m.link, cylinder(c, W("LLR")));
  EXPECT_EQ(gcs_of_point(c, 0, Angle(1, 3)).link, cylinder(c, W("L")));
  // hop^3(1/28) = 2/7 = alpha.
  EXPECT_EQ(code_of([&] { gcs_of_point(c, 2, Angle(1, 28)); }), ErrorCode::kAmbiguousAtBoundary);
}

TEST(GCSProperty, PointFormulaAgreesWithPartition) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    Circle c(2, oracle::random_angle(rng, 3, 60));
    long n = std::uniform_int_distribution<long>(0, 4)(rng);
    GCSPartition p;
    try {
      p = gcs_partition(c, n);
    } catch (const Error&) {
      continue;
    }
    for (int probe = 0; probe < 20; ++probe) {
      Angle x = oracle::random_angle(rng, 3, 200);
      GCSMember m;
      try {
        m = gcs_of_point(c, n, x);
      } catch (const Error&) {
        continue;
      }
      EXPECT_EQ(m.link, p.links[p.locate(x)]) << c.alpha().str() << " n=" << n << " x=" << x.str();
    }
  }
}

TEST(GCSProperty, PullbackIdentity) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    Circle c(2, oracle::random_angle(rng, 3, 60));
    Angle x = oracle::random_angle(rng, 3, 200);
    long i = std::uniform_int_distribution<long>(0, 2)(rng);
    try {
      EXPECT_TRUE(gcs_pullback_identity_check(c, 2, i, x)) << c.alpha().str() << " " << x.str();
    } catch (const Error&) {
    }
  }
}

TEST(StarLink, OneSixth) {
  Circle c(2, Angle(1, 6));
  auto s = star_link(c);
  if (s.degenerate) {
    EXPECT_EQ(s.link, ArcSet::point(c.star(1)).unite(ArcSet::point(c.star(2))));
  } else {
    ASSERT_EQ(s.link.size(), 2u);
    EXPECT_EQ(s.link.arcs()[0].length, s.link.arcs()[1].length);
  }
}

TEST(CKCovering, AssignmentIsTotalAndSeparated) {
  for (const Angle& alpha : {Angle(1, 6), Angle(1, 10), Angle(3, 10), Angle(5, 12), Angle(7, 30)}) {
    Circle c(2, alpha);
    for (long K = 1; K <= 4; ++K) {
      CKCovering cov(c, K);
      EXPECT_GT(cov.delta(), 0);
      for (const auto& piece : cov.pieces()) {
        const GCSPartition& p = piece.choice.deep ? cov.deep() : cov.shallow();
        EXPECT_TRUE(p.links[piece.choice.index].contains(piece.at));
        for (size_t li : p.boundary[piece.choice.index])
          EXPECT_GT(cov.bad_set(p.leaf_list[li].u).distance(piece.at), cov.delta())
              << alpha.str() << " K=" << K << " " << piece.at.str();
      }
    }
  }
}

TEST(CKCovering, DeltaFromBruteForceSeparation) {
  Circle c(2, Angle(1, 6));
  CKCovering cov(c, 1);
  // The star class of 1/6 is the star pair, so bad sets are leaf endpoints;
  // the closest two are 1/48 and 1/24.
  std::vector<Angle> ends;
  for (long n : {1L, 2L})
    for (const Leaf& f : leaves(c, n)) {
      ends.push_back(f.a);
      ends.push_back(f.b);
    }
  mpq_class best = 1;
  for (size_t i = 0; i < ends.size(); ++i)
    for (size_t j = i + 1; j < ends.size(); ++j) best = std::min(best, circle_dist(ends[i], ends[j]));
  EXPECT_EQ(best, mpq_class(1, 48));
  EXPECT_EQ(cov.delta(), best / 3);
}

TEST(DigitFixing, ZeroSpanCertifiesVacuously) {
  auto v = digit_fixing_check(Circle(2, Angle(1, 6)), 1, 0, 6);
  EXPECT_EQ(v.kind, DigitFixingKind::kCertified);
  EXPECT_EQ(v.L_alpha, 0);
}

TEST(DigitFixing, CounterexampleIsAGenuineMembership) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 40; ++trial) {
    Circle c(2, oracle::random_angle(rng, 3, 40));
    DigitFixingVerdict v;
    try {
      v = digit_fixing_check(c, 1, 2, 6);
    } catch (const Error&) {
      continue;
    }
    if (v.kind != DigitFixingKind::kCounterexample) continue;
    auto link = gcs_of_point(c, v.m, c.alpha()).link;
    EXPECT_TRUE(link.contains(c.hop(c.alpha(), v.i))) << c.alpha().str();
  }
}
