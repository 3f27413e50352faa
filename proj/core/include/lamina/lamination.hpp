#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lamina/angle.hpp"
#include "lamina/arcset.hpp"
#include "lamina/circle.hpp"
#include "lamina/word.hpp"

namespace lamina {

using GluingLink = ArcSet;

enum class Verdict { kYes, kNo, kUnknown };

struct EquivalenceVerdict {
  Verdict verdict = Verdict::kUnknown;
  // First differing digit for kNo, depth reached for kUnknown.
  long digit = 0;
};

// Exact for rational inputs: the joint orbit is eventually periodic, so the
// comparison stops once the pair repeats. A depth cap turns unresolved runs
// into kUnknown.
EquivalenceVerdict equivalent(const Circle& c, const Angle& x, const Angle& y,
                              std::optional<long> depth = std::nullopt);
inline bool is_equivalent(const Circle& c, const Angle& x, const Angle& y) {
  return equivalent(c, x, y).verdict == Verdict::kYes;
}

bool is_periodic(const Circle& c, const Angle& x);

struct ClassResult {
  std::vector<Angle> points;  // sorted
  // Every arc of the depth enclosure holds one of the points.
  bool confirmed = false;
  long depth = 0;
  ArcSet enclosure;
};

// Throws kPeriodicAlpha for periodic alpha.
ClassResult equivalence_class(const Circle& c, const Angle& x, long depth = 20);

// Points x with hop^{i-1}(x) in the closed arc of w[i] for every non-star
// letter. Throws kEmptySet when nothing survives.
GluingLink cylinder(const Circle& c, const Word& w);

GluingLink link_image(const Circle& c, const GluingLink& D);
// d links L~_i(D) when alpha is outside D, otherwise the single link h^-1(D).
std::vector<GluingLink> link_preimage(const Circle& c, const GluingLink& D);
// A point on a shared endpoint goes to the link entered counterclockwise.
GluingLink component_of(const std::vector<GluingLink>& parts, const Angle& x);

class Covering {
 public:
  virtual ~Covering() = default;
  virtual const Circle& circle() const = 0;
  // A link containing y.
  virtual GluingLink link_for(const Angle& y) const = 0;
  virtual std::string name() const = 0;
};

// Assigns to y the link cylinder(itinerary(y, depth)) with y's own star
// digits left free; the cylinder always contains y.
class CylinderCovering : public Covering {
 public:
  CylinderCovering(const Circle& c, long depth) : c_(c), depth_(depth) {}
  const Circle& circle() const override { return c_; }
  GluingLink link_for(const Angle& y) const override;
  std::string name() const override { return "cylinder/" + std::to_string(depth_); }

 private:
  Circle c_;
  long depth_;
};

// Fixed assignment from a finite list of links: the first link holding y.
class ListCovering : public Covering {
 public:
  ListCovering(const Circle& c, std::vector<GluingLink> links, std::string name)
      : c_(c), links_(std::move(links)), name_(std::move(name)) {}
  const Circle& circle() const override { return c_; }
  GluingLink link_for(const Angle& y) const override;
  std::string name() const override { return name_; }
  const std::vector<GluingLink>& links() const { return links_; }

 private:
  Circle c_;
  std::vector<GluingLink> links_;
  std::string name_;
};

// y is covered by its own equivalence class, as a degenerate link of points.
class ClassCovering : public Covering {
 public:
  explicit ClassCovering(const Circle& c) : c_(c) {}
  const Circle& circle() const override { return c_; }
  GluingLink link_for(const Angle& y) const override;
  std::string name() const override { return "class"; }

 private:
  Circle c_;
};

struct EncounterTrace {
  Angle x;
  long n = 0;
  std::vector<long> hits;  // i in [1,n] with alpha in D^(n-i)(h^i x)
  long N() const { return static_cast<long>(hits.size()); }
};

struct PullbackChain {
  GluingLink link;
  EncounterTrace trace;
  // links[s] is D^(s)(h^{n-s} x), s = 0..n.
  std::vector<GluingLink> links;
};

PullbackChain pullback_chain(const Covering& cov, const Angle& x, long n);
long encounter_number(const Covering& cov, const Angle& x, long n);

struct CCEResult {
  std::vector<long> n_j;
  bool satisfied = false;  // nonempty and n_j <= P j throughout
};
CCEResult cce_sequence(const Covering& cov, const Angle& x, const mpq_class& P, long M, long n_max);

}  // namespace lamina
