#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "lamina/symbolic.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace lamina;

namespace {

EventuallyPeriodicWord E(const char* s) { return EventuallyPeriodicWord::parse(2, s); }

// x lies in the cylinder of w when its itinerary matches w up to stars.
bool oracle_cylinder_contains(const Circle& c, const Word& w, const Angle& x) {
  Word it = oracle::itinerary(c.degree(), c.alpha().value(), x.value(), w.size());
  for (size_t i = 0; i < w.size(); ++i)
    if (!letters_match(w[i], it[i])) return false;
  return true;
}

}  // namespace

TEST(Word, ParseAndPrint) {
  EXPECT_EQ(word_str(2, W("L*R")), "L*R");
  EXPECT_EQ(word_str(3, parse_word(3, "13*2")), "13*2");
  EXPECT_EQ(code_of([] { parse_word(2, "LX"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(slice(W("LRRL"), 2, 3), W("RR"));
  EXPECT_TRUE(slice(W("LRRL"), 3, 2).empty());
}

TEST(Word, EventuallyPeriodicNormalForm) {
  EXPECT_EQ(E("L(LR)"), E("LL(RL)"));
  EXPECT_EQ(E("(LRLR)"), E("(LR)"));
  EXPECT_EQ(E("LL(RL)").str(2), "LL(RL)");
  EXPECT_EQ(E("(LL*)").str(2), "(LL*)");
  EXPECT_EQ(code_of([] { E("LL"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(E("LL(RL)").prefix(6), W("LLRLRL"));
}

TEST(Kneading, Examples) {
  EXPECT_EQ(kneading(2, Angle(1, 6)).str(2), "LL(RL)");
  EXPECT_EQ(kneading(2, Angle(2, 7)), E("(LL*)"));
  EXPECT_EQ(kneading(2, Angle(0, 1)), E("(*)"));
}

TEST(Itinerary, Examples) {
  EXPECT_EQ(itinerary(2, Angle(2, 7), Angle(1, 5), 3), W("LLR"));
  EXPECT_EQ(itinerary(2, Angle(1, 6), Angle(1, 12), 3), W("*LL"));
  EXPECT_TRUE(itinerary(2, Angle(1, 6), Angle(1, 5), 0).empty());
}

TEST(ItineraryOracle, MatchesArcScan) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    int d = std::uniform_int_distribution<int>(2, 4)(rng);
    Angle alpha = oracle::random_angle(rng, 2, 50);
    Angle x = oracle::random_angle(rng, 2, 80);
    EXPECT_EQ(itinerary(d, alpha, x, 12), oracle::itinerary(d, alpha.value(), x.value(), 12));
  }
}

TEST(Kneading, FullItineraryAgreesWithPrefix) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    Angle alpha = oracle::random_angle(rng, 2, 60);
    Circle c(2, alpha);
    EXPECT_EQ(kneading(c).prefix(40), itinerary(c, alpha, 40));
  }
}

TEST(Duplicating, Examples) {
  Word nu = E("(LR)").prefix(20);
  EXPECT_TRUE(is_duplicating(W("LRLR"), 1, 4, {}, nu));
  EXPECT_FALSE(is_duplicating(W("LRLR"), 2, 3, {2}, nu));
  EXPECT_TRUE(is_duplicating(W("LRLR"), 3, 2, {}, nu));
}

TEST(Rare, Examples) {
  EXPECT_TRUE(is_rare({}, 4));
  EXPECT_FALSE(is_rare({1, 2, 3, 4}, 3));
  EXPECT_TRUE(is_rare({1, 5, 9}, 3));
}

TEST(DuplicatingDigits, Examples) {
  Word nu = E("L(RRL)").prefix(30);
  IndexSet all;
  for (long i = 1; i <= 10; ++i) all.push_back(i);
  EXPECT_EQ(duplicating_digits(slice(nu, 1, 10), 5, {}, nu), all);
  EXPECT_EQ(duplicating_digits(W("LLLL"), 2, {}, E("(L)").prefix(10)), (IndexSet{1, 2, 3, 4}));
}

TEST(SRSearch, ConstantKneadingCertifies) {
  auto cert = sr_search(E("(L)"), 10, mpq_class(9, 10), 20, SRMode::kExhaustive);
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->n, 11);
  EXPECT_TRUE(cert->rare.empty());
  EXPECT_EQ(cert->duplicating_count, 11);
  EXPECT_TRUE(verify_sr(*cert, E("(L)").prefix(20)));
}

TEST(SRSearch, GreedyResultsVerify) {
  for (const char* s : {"(LLR)", "L(RRL)", "LL(RL)", "(LRRLR)"}) {
    auto nu = E(s);
    auto cert = sr_search(nu, 2, mpq_class(1, 2), 30, SRMode::kGreedy);
    if (cert) EXPECT_TRUE(verify_sr(*cert, nu.prefix(30))) << s;
  }
}

TEST(WeakPreperiodicity, Examples) {
  auto w = weak_preperiodicity(E("LL(RL)"));
  EXPECT_EQ(w.m, 3);
  EXPECT_EQ(w.k, 2);
  EXPECT_EQ(w.letter, kR);
  w = weak_preperiodicity(E("(LR)"));
  EXPECT_EQ(w.m, 1);
  EXPECT_EQ(w.k, 2);
  EXPECT_EQ(w.letter, kL);
  w = weak_preperiodicity(E("(L)"));
  EXPECT_EQ(w.m, 1);
  EXPECT_EQ(w.k, 1);
  EXPECT_EQ(w.letter, kL);
}

TEST(WeakPreperiodicity, WitnessVerifiesOnRandomWords) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    Word pre = oracle::random_word(rng, std::uniform_int_distribution<size_t>(0, 5)(rng));
    Word per = oracle::random_word(rng, std::uniform_int_distribution<size_t>(1, 6)(rng));
    EventuallyPeriodicWord nu(pre, per);
    auto w = weak_preperiodicity(nu);
    EXPECT_TRUE(verify_wpp(nu, w)) << nu.str(2);
  }
}

TEST(FiniteWppScan, Examples) {
  auto s = finite_wpp_scan(W("LRLR"), 2, 2);
  auto has = [&](long m, long k, Letter l) {
    for (auto& w : s)
      if (w.m == m && w.k == k && w.letter == l) return true;
    return false;
  };
  EXPECT_TRUE(has(1, 2, kL));
  EXPECT_TRUE(has(2, 2, kR));
  EXPECT_EQ(finite_wpp_scan({}, 3, 2).size(), 6u);
}

TEST(Legal, Examples) {
  auto nu = E("(LL*)");
  EXPECT_EQ(legal(W("RLL"), nu), W("**L"));
  EXPECT_EQ(legal(W("LLR"), nu), W("LLR"));
  EXPECT_TRUE(legal(Word{}, nu).empty());
}

TEST(Truncation, EmptyTailHolds) {
  auto nu = E("(LL*)");
  EXPECT_TRUE(truncation_holds(W("RLL"), {}, nu));
  EXPECT_TRUE(truncation_holds(W("LL"), {}, nu));
}

// Appending a tail can remove a star from the head even when the digit at the
// junction stays free of stars: legal(LL) = *L because alpha = 2/7 lies in
// C(L), while legal(LLR) = LLR.
TEST(Truncation, TailCanChangeTheHead) {
  auto nu = E("(LL*)");
  EXPECT_EQ(legal(W("LL"), nu), W("*L"));
  EXPECT_EQ(legal(W("LLR"), nu), W("LLR"));
  auto r = truncation_check(W("LL"), W("R"), nu);
  EXPECT_TRUE(r.hypothesis);
  EXPECT_FALSE(r.conclusion);
}

TEST(TruncationProperty, HypothesisMatchesTailCylinder) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 1000; ++trial) {
    Angle alpha = oracle::random_angle(rng, 3, 60);
    Circle c(2, alpha);
    auto nu = kneading(c);
    Word g = oracle::random_word(rng, std::uniform_int_distribution<size_t>(1, 8)(rng));
    Word t = oracle::random_word(rng, std::uniform_int_distribution<size_t>(1, 6)(rng));
    auto r = truncation_check(g, t, nu);
    Word lt = legal(t, nu);
    EXPECT_EQ(r.hypothesis, !oracle_cylinder_contains(c, lt, alpha)) << alpha.str();
  }
}

TEST(PhiGraph, StarFreeSquareIsZero) {
  auto nu = E("L(RRL)");
  Word u = W("RRRR");
  ASSERT_FALSE(has_star(legal(concat(u, u), nu)));
  for (long v : phi_graph(u, nu)) EXPECT_EQ(v, 0);
}

TEST(PhiGraph, AlternatingExample) {
  auto nu = E("(LR)");
  EXPECT_EQ(legal(W("RLRL"), nu), W("*L*L"));
  EXPECT_EQ(phi_graph(W("RL"), nu).at(0), 0);
}

TEST(PhiGraph, MatchesDirectLegalScan) {
  auto nu = E("(LL*)");
  Word u = W("RLRL");
  auto phi = phi_graph(u, nu);
  Word uu = concat(u, u);
  for (size_t i = 0; i < phi.size(); ++i) {
    Word v = legal(slice(uu, 1, 2 * u.size() - i), nu);
    long run = 0;
    for (size_t j = u.size(); j >= 1 && v[j - 1] == kStar; --j) ++run;
    EXPECT_EQ(phi[i], run);
  }
}

TEST(LegalProperty, IdempotentOnItsOutput) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 1000; ++trial) {
    auto nu = kneading(2, oracle::random_angle(rng, 3, 80));
    Word g = oracle::random_word(rng, std::uniform_int_distribution<size_t>(0, 10)(rng));
    Word v = legal(g, nu);
    EXPECT_EQ(legal(v, nu), v);
  }
}

TEST(DuplicatingProperty, MonotoneInExcusedSetAndWindow) {
  std::mt19937_64 rng(26);
  auto contains = [](const IndexSet& big, const IndexSet& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
  };
  for (int trial = 0; trial < 400; ++trial) {
    Word nu = kneading(2, oracle::random_angle(rng, 3, 40)).prefix(30);
    Word g = oracle::random_word(rng, 14);
    for (size_t i = 0; i < g.size(); ++i)
      if (std::uniform_int_distribution<int>(0, 2)(rng)) g[i] = nu[i % 7];
    long D = std::uniform_int_distribution<long>(1, 4)(rng);
    IndexSet r;
    for (long i = 1; i <= 14; i += std::uniform_int_distribution<long>(D + 1, D + 5)(rng)) r.push_back(i);
    IndexSet none = duplicating_digits(g, D, {}, nu);
    IndexSet with = duplicating_digits(g, D, r, nu);
    EXPECT_TRUE(contains(with, none));
    EXPECT_TRUE(contains(none, duplicating_digits(g, D + 1, {}, nu)));
  }
}
