#include "lamina/circle.hpp"

#include <algorithm>
#include <set>

#include "lamina/error.hpp"

namespace lamina {

Angle hop(int d, const Angle& t) { return Angle(t.value() * d); }

std::vector<Angle> star_points(int d, const Angle& alpha) {
  std::vector<Angle> s;
  s.reserve(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) s.emplace_back((alpha.value() + j) / d);
  return s;
}

Circle::Circle(int d, const Angle& alpha) : d_(d), alpha_(alpha) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "degree must be at least 2");
  stars_ = star_points(d, alpha);
}

Angle Circle::hop(const Angle& t, long n) const {
  Angle r = t;
  for (long i = 0; i < n; ++i) r = hop(r);
  return r;
}

Angle Circle::branch(int i, const Angle& t) const {
  if (i < 1 || i > d_) throw Error(ErrorCode::kInvalidArgument, "branch index out of range");
  if (t == alpha_) throw Error(ErrorCode::kIllDefinedAtAlpha, "inverse branch undefined at alpha");
  return Angle(star(i).value() + frac(t.value() - alpha_.value()) / d_);
}

Letter Circle::letter(const Angle& x) const {
  mpq_class off = frac(x.value() - stars_[0].value()) * d_;
  mpz_class k = off.get_num() / off.get_den();
  if (mpq_class(k) == off) return kStar;
  return static_cast<Letter>(k.get_si() + 1);
}

Angle Circle::apply(const Word& u, const Angle& t) const {
  Angle r = t;
  for (size_t k = u.size(); k-- > 0;) {
    if (u[k] == kStar) throw Error(ErrorCode::kInvalidArgument, "apply needs a star-free word");
    if (r == alpha_)
      throw Error(ErrorCode::kIllDefinedAtOrbitPoint,
                  "evaluation reaches alpha at letter " + std::to_string(k + 1),
                  static_cast<long>(k + 1));
    r = branch(u[k], r);
  }
  return r;
}

std::vector<Angle> Circle::fixed_points(const Word& u) const {
  if (u.empty()) throw Error(ErrorCode::kInvalidArgument, "fixed point of the empty word");
  // u~ jumps only at t with hop^j(t) landing on alpha for some j < |u|, that
  // is at the orbit points hop^j(alpha).
  std::set<Angle> cuts;
  Angle p = alpha_;
  for (size_t j = 0; j < u.size(); ++j) {
    cuts.insert(p);
    p = hop(p);
  }
  std::vector<Angle> cv(cuts.begin(), cuts.end());
  mpz_class dn;
  mpz_ui_pow_ui(dn.get_mpz_t(), static_cast<unsigned long>(d_), u.size());
  mpq_class slope_gap = 1 - mpq_class(1, 1) / mpq_class(dn);

  std::set<Angle> found;
  for (const Angle& t : cv) {
    try {
      if (apply(u, t) == t) found.insert(t);
    } catch (const Error&) {
    }
  }
  for (size_t k = 0; k < cv.size(); ++k) {
    mpq_class a = cv[k].value();
    mpq_class len = k + 1 < cv.size() ? mpq_class(cv[k + 1].value() - a) : mpq_class(1 - a + cv[0].value());
    mpq_class m = a + len / 2;
    Angle y = apply(u, Angle(m));
    // On the piece (a, a+len) the map is t -> y + (t-m)/d^n mod 1, so the
    // offset s = t - m solves s(1 - d^-n) = y - m mod 1.
    mpq_class base = frac(y.value() - m);
    mpq_class lo = -len / 2, hi = len / 2;
    // s = (base + j) / slope_gap; scan j over the few integers that can land
    // in (lo, hi).
    mpq_class jlo_q = lo * slope_gap - base;
    mpz_class jlo;
    mpz_fdiv_q(jlo.get_mpz_t(), jlo_q.get_num_mpz_t(), jlo_q.get_den_mpz_t());
    for (mpz_class j = jlo; ; ++j) {
      mpq_class s = (base + mpq_class(j)) / slope_gap;
      if (s >= hi) break;
      if (s <= lo) continue;
      Angle t(m + s);
      try {
        if (apply(u, t) == t) found.insert(t);
      } catch (const Error&) {
      }
    }
  }
  return {found.begin(), found.end()};
}

Angle Circle::fixed_point(const Word& u) const {
  auto f = fixed_points(u);
  if (f.empty())
    throw Error(ErrorCode::kNoPeriodicPoint, "no point is fixed by " + word_str(d_, u));
  return f.front();
}

Angle branch(int d, const Angle& alpha, int i, const Angle& t) {
  return Circle(d, alpha).branch(i, t);
}

Angle apply_word(int d, const Angle& alpha, const Word& u, const Angle& t) {
  return Circle(d, alpha).apply(u, t);
}

Angle fixed_point_of_word(int d, const Angle& alpha, const Word& u) {
  return Circle(d, alpha).fixed_point(u);
}

}  // namespace lamina
