#pragma once

#include <string>
#include <vector>

#include "lamina/angle.hpp"
#include "lamina/circle.hpp"

namespace lamina {

// Closed arc from start, counterclockwise, of the given length in [0,1).
// Length 0 is a single point.
struct Arc {
  mpq_class start;
  mpq_class length;

  Angle a() const { return Angle(start); }
  Angle b() const { return Angle(start + length); }
  bool contains(const Angle& x) const { return frac(x.value() - start) <= length; }
  // Interior membership; a point arc has empty interior.
  bool contains_open(const Angle& x) const {
    mpq_class o = frac(x.value() - start);
    return sgn(o) > 0 && o < length;
  }

  friend bool operator==(const Arc& x, const Arc& y) {
    return x.start == y.start && x.length == y.length;
  }
};

// A finite union of closed arcs, kept normalized: disjoint, sorted by start,
// touching arcs merged. The full circle is a flagged value.
class ArcSet {
 public:
  ArcSet() = default;
  static ArcSet full();
  static ArcSet of(const Arc& a);
  static ArcSet of(std::vector<Arc> arcs);
  static ArcSet point(const Angle& x) { return of(Arc{x.value(), 0}); }
  // Closed arc from a counterclockwise to b.
  static ArcSet between(const Angle& a, const Angle& b) { return of(Arc{a.value(), ccw(a, b)}); }

  bool is_full() const { return full_; }
  bool empty() const { return !full_ && arcs_.empty(); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  size_t size() const { return full_ ? 1 : arcs_.size(); }
  mpq_class measure() const;
  bool contains(const Angle& x) const;
  bool contains_open(const Angle& x) const;

  ArcSet unite(const ArcSet& o) const;
  ArcSet intersect(const ArcSet& o) const;
  bool subset_of(const ArcSet& o) const { return intersect(*this) == *this && o.intersect(*this) == *this; }

  // Full preimage under z -> z^d.
  ArcSet preimage(int d) const;
  // Forward image under z -> z^d.
  ArcSet image(int d) const;
  // Closure of the image of each arc under branch i; every arc must avoid
  // alpha in its interior.
  ArcSet branch_image(const Circle& c, int i) const;
  // Closure of u~ applied arc-wise.
  ArcSet word_image(const Circle& c, const Word& u) const;

  // Shortest circle distance between two nonempty sets; 0 if they meet.
  mpq_class distance(const ArcSet& o) const;
  mpq_class distance(const Angle& x) const;

  // All arc endpoints, sorted and deduplicated.
  std::vector<Angle> endpoints() const;

  std::string str() const;

  friend bool operator==(const ArcSet& x, const ArcSet& y) {
    return x.full_ == y.full_ && x.arcs_ == y.arcs_;
  }

 private:
  bool full_ = false;
  std::vector<Arc> arcs_;
};

// Closed semicircle-style arc from star i to star i+1.
ArcSet letter_arc(const Circle& c, Letter l);

}  // namespace lamina
