#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace lamina {

// Reduce a rational to its representative in [0,1).
mpq_class frac(const mpq_class& v);

// A point of R/Z stored as a reduced fraction in [0,1).
class Angle {
 public:
  Angle() = default;
  explicit Angle(const mpq_class& v);
  Angle(long p, long q);

  // Accepts "p/q", an integer, or a decimal-free fraction with optional sign.
  static Angle parse(std::string_view text);

  const mpq_class& value() const { return v_; }
  std::string str() const;
  double to_double() const { return v_.get_d(); }

  friend bool operator==(const Angle& a, const Angle& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

// Counterclockwise distance from a to b, in [0,1).
mpq_class ccw(const Angle& a, const Angle& b);

// Length of the shorter arc between a and b, in [0,1/2].
mpq_class circle_dist(const Angle& a, const Angle& b);

// Exact cyclic-order predicates. Ties are reported, not broken: the strict
// version is false whenever x coincides with a or b.
bool strictly_between(const Angle& a, const Angle& x, const Angle& b);
bool weakly_between(const Angle& a, const Angle& x, const Angle& b);

std::string rational_str(const mpq_class& v);
mpq_class parse_rational(std::string_view text);

struct AngleHash {
  std::size_t operator()(const Angle& a) const;
};

}  // namespace lamina
