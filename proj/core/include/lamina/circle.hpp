#pragma once

#include <vector>

#include "lamina/angle.hpp"
#include "lamina/word.hpp"

namespace lamina {

Angle hop(int d, const Angle& t);
std::vector<Angle> star_points(int d, const Angle& alpha);

// The degree-d power map together with the partition of the circle cut out by
// the star points of alpha.
class Circle {
 public:
  Circle(int d, const Angle& alpha);

  int degree() const { return d_; }
  const Angle& alpha() const { return alpha_; }
  const std::vector<Angle>& stars() const { return stars_; }
  // 1-based.
  const Angle& star(int i) const { return stars_[static_cast<size_t>(i - 1)]; }

  Angle hop(const Angle& t) const { return lamina::hop(d_, t); }
  Angle hop(const Angle& t, long n) const;

  // Preimage of t in the closed arc from star i to star i+1.
  Angle branch(int i, const Angle& t) const;

  // Itinerary letter of x: kStar on a star point, else the open arc index.
  Letter letter(const Angle& x) const;

  // u~(t), evaluated right to left. Throws kIllDefinedAtOrbitPoint with the
  // 1-based letter position whose branch would be applied to alpha.
  Angle apply(const Word& u, const Angle& t) const;

  // Every t with u~(t) = t, sorted. Found exactly on the continuity pieces of
  // u~ rather than by iteration.
  std::vector<Angle> fixed_points(const Word& u) const;
  // Smallest fixed point; kNoPeriodicPoint when there is none.
  Angle fixed_point(const Word& u) const;

 private:
  int d_;
  Angle alpha_;
  std::vector<Angle> stars_;
};

Angle branch(int d, const Angle& alpha, int i, const Angle& t);
Angle apply_word(int d, const Angle& alpha, const Word& u, const Angle& t);
Angle fixed_point_of_word(int d, const Angle& alpha, const Word& u);

}  // namespace lamina
