#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lamina/gcs.hpp"
#include "lamina/lamination.hpp"

namespace lamina {

struct Atom {
  Angle x;
  mpq_class w;
};

struct DiscreteMeasure {
  std::vector<Atom> atoms;
  Arc support;
};

// Diameter in the normalized arc metric.
mpq_class arc_diam(const Arc& a);
mpq_class set_diam(const std::vector<Arc>& arcs);

// Off-diagonal logarithmic energy after rescaling the support to diameter 1.
// Distances are arc lengths on the unit-measure circle.
double rescaled_energy(const DiscreteMeasure& mu);

// Pairs (A'_j, A_j) listed in counterclockwise order A'_1, A_1, A'_2, A_2, ...
// The gap between A'_j and A_j is the inner gap; phi[j] glues the atoms of
// mu[j] on A_j to atoms of mup[j+1] on A'_{j+1}.
struct GluingCircuit {
  std::vector<Arc> A, Ap;
  std::vector<DiscreteMeasure> mu, mup;
  std::vector<std::vector<size_t>> phi;
  long N = 1;
  double C = 1;
  mpq_class r = 1;

  size_t size() const { return A.size(); }
  // Index j with x strictly inside the inner gap of pair j.
  std::optional<size_t> around(const Angle& x) const;
};

struct CircuitReport {
  bool count_ok = true;
  bool order_ok = true;
  bool diam_ok = true;    // condition (1)
  bool energy_ok = true;  // condition (2)
  bool glue_ok = true;    // condition (3)
  long failing_index = -1;
  std::string detail;
  double max_energy = 0;

  bool ok() const { return count_ok && order_ok && diam_ok && energy_ok && glue_ok; }
};

CircuitReport circuit_check(const Circle& c, const GluingCircuit& g);

enum class LocationKind { kOutside, kBetweenPair, kInsideGap, kInsideArc };

struct CircuitLocation {
  LocationKind kind = LocationKind::kOutside;
  size_t j = 0;        // 0-based pair index
  bool primed = false;  // for kInsideArc: alpha in A'_j rather than A_j
};

// Arc membership and inner gaps decide first; an outer gap is reported as
// kOutside when a link is given and misses alpha. Throws kOnBoundary when
// alpha is an arc endpoint or an atom.
CircuitLocation classify_alpha(const GluingCircuit& g, const Angle& alpha,
                               const std::optional<GluingLink>& link = std::nullopt);

struct PullbackStep {
  CircuitLocation location;
  bool one_sided = true;
  GluingCircuit circuit;
};

// side selects the branch holding the target point (1 = L, 2 = R).
PullbackStep pullback_circuit(const Circle& c, const GluingCircuit& g, int side,
                              const std::optional<GluingLink>& link = std::nullopt);

struct PullbackRun {
  GluingCircuit circuit;
  EncounterTrace trace;
  std::vector<PullbackStep> steps;
  std::vector<CircuitReport> reports;  // one per intermediate circuit, start included
  bool around_ok = true;               // every intermediate is around its orbit point
  long M = 0;                          // steps whose link contained alpha
};

// Pulls a circuit around hop^n(x) back along the orbit of x, following the
// covering's pullback chain for the link bookkeeping.
PullbackRun iterate_pullback(const Covering& cov, const GluingCircuit& g, const Angle& x, long n);

std::vector<Leaf> boundary_leaves(const Circle& c, const Word& g);
// Chords joining consecutive arcs of cylinder(g).
std::vector<std::pair<Angle, Angle>> geometric_boundary(const Circle& c, const Word& g);
std::vector<Angle> ill_defined_points(const Circle& c, const Word& g);
// Orbit points of alpha where evaluating g~ actually fails.
std::vector<Angle> observed_failures(const Circle& c, const Word& g);

struct GluingPair {
  Angle x, y;
  Word g;
  long level = 0;
};

// Searches boundary leaves of cylinder(side . nu|[1,m]) for m = 1..budget and
// returns glued periodic pairs with itinerary g^infinity, one per distinct pair.
// Throws kSearchExhausted when nothing is found.
std::vector<GluingPair> periodic_gluing_pairs(const Circle& c, int side, size_t count, long budget);

struct CantorPair {
  DiscreteMeasure mu, mup;
  std::vector<size_t> pairing;
};

// IFS {g~_k^2, g~_j^2} applied depth times to the x-side and y-side seeds.
CantorPair cantor_pair_measures(const Circle& c, const GluingPair& k, const GluingPair& j, long depth);

// A circuit around y inside link: for every pair of consecutive link arcs it
// takes the `atoms` deeper leaves crossing between them closest to the glued
// endpoints, at the first depth in [min_depth, max_depth] where enough exist
// and y stays outside the new arcs.
GluingCircuit leaf_circuit(const Circle& c, const GluingLink& link, const Angle& y, size_t atoms,
                           long min_depth, long max_depth);

// Circuit around x inside C^K(x) from periodic gluing pairs near each
// boundary leaf image of the star link.
GluingCircuit nice_circuit_for(const CKCovering& cov, const Angle& x, long cantor_depth = 3,
                               long search_budget = 40);

}  // namespace lamina
