#pragma once

#include <optional>
#include <vector>

#include "lamina/lamination.hpp"

namespace lamina {

// Chord joining u~(star_1) and u~(star_2).
struct Leaf {
  Word u;
  Angle a;
  Angle b;
};

// Exact chord-crossing test: endpoints strictly interleave.
bool chords_cross(const Angle& a1, const Angle& b1, const Angle& a2, const Angle& b2);
inline bool leaves_cross(const Leaf& x, const Leaf& y) { return chords_cross(x.a, x.b, y.a, y.b); }

// All 2^n leaves of depth n, words in lexicographic order. Throws
// kIllDefinedLeaf naming the word when an endpoint evaluation hits alpha.
std::vector<Leaf> leaves(const Circle& c, long n);

struct GCSPartition {
  long n = 0;
  std::vector<GluingLink> links;
  std::vector<Word> words;  // legal words of length n+1
  // Indices into leaves() of the leaves bounding each link.
  std::vector<std::vector<size_t>> boundary;
  std::vector<Leaf> leaf_list;

  // Index of the link holding x in its interior, else any link holding x.
  size_t locate(const Angle& x) const;
};

GCSPartition gcs_partition(const Circle& c, long n);

struct GCSMember {
  GluingLink link;
  Word word;
};
// Throws kAmbiguousAtBoundary when hop^{n+1}(x) = alpha.
GCSMember gcs_of_point(const Circle& c, long n, const Angle& x);

// comp_x h^-i(GCS_n(h^i x)) against GCS_{n+i}(x).
bool gcs_pullback_identity_check(const Circle& c, long n, long i, const Angle& x);

struct StarLink {
  bool degenerate = true;
  GluingLink link;  // {star_1, star_2} or the two closed arcs
  std::optional<Angle> beta, b1, b2;
};
StarLink star_link(const Circle& c, long depth = 20);

class CKCovering : public Covering {
 public:
  CKCovering(const Circle& c, long K);

  const Circle& circle() const override { return c_; }
  GluingLink link_for(const Angle& y) const override;
  std::string name() const override { return "C^" + std::to_string(K_); }

  long K() const { return K_; }
  const mpq_class& delta() const { return delta_; }
  const StarLink& star() const { return star_; }
  const GCSPartition& shallow() const { return p0_; }
  const GCSPartition& deep() const { return p1_; }

  struct Choice {
    bool deep;
    size_t index;
  };
  std::optional<Choice> choose(const Angle& y) const;
  // Bad set g~(C_*) for the leaf word g.
  const GluingLink& bad_set(const Word& g) const;

  struct Piece {
    Angle at;  // sample point: a breakpoint or a midpoint between two
    Choice choice;
  };
  // Evaluates the assignment at every breakpoint and every midpoint between
  // consecutive breakpoints; throws kNotInSet at the first uncovered sample.
  std::vector<Piece> pieces() const;

 private:
  bool qualifies(const Angle& y, const GCSPartition& p, size_t idx) const;

  Circle c_;
  long K_;
  StarLink star_;
  GCSPartition p0_, p1_;
  std::vector<std::pair<Word, GluingLink>> bad_;
  std::vector<GluingLink> bad_nbhd_;  // closed delta-neighbourhoods
  mpq_class delta_;
};

enum class DigitFixingKind { kCertified, kCounterexample, kInconclusive };

struct DigitFixingVerdict {
  DigitFixingKind kind = DigitFixingKind::kInconclusive;
  long L_alpha = 0;  // certified start
  long m = 0;        // counterexample depth
  long i = 0;        // counterexample orbit index
  std::string reason;
};

DigitFixingVerdict digit_fixing_check(const Circle& c, long K, long L, long depth);

}  // namespace lamina
