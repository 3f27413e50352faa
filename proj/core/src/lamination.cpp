#include "lamina/lamination.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lamina/error.hpp"
#include "lamina/symbolic.hpp"

namespace lamina {

EquivalenceVerdict equivalent(const Circle& c, const Angle& x, const Angle& y, std::optional<long> depth) {
  if (x == y) return {Verdict::kYes, 0};
  std::set<std::pair<Angle, Angle>> seen;
  Angle a = x, b = y;
  for (long k = 1;; ++k) {
    if (!seen.emplace(a, b).second) return {Verdict::kYes, k - 1};
    if (depth && k > *depth) return {Verdict::kUnknown, *depth};
    if (!letters_match(c.letter(a), c.letter(b))) return {Verdict::kNo, k};
    a = c.hop(a);
    b = c.hop(b);
    if (a == b) return {Verdict::kYes, k};
  }
}

bool is_periodic(const Circle& c, const Angle& x) {
  std::set<Angle> seen;
  Angle p = x;
  while (seen.insert(p).second) p = c.hop(p);
  return p == x;
}

GluingLink cylinder(const Circle& c, const Word& w) {
  ArcSet s = ArcSet::full();
  for (size_t k = w.size(); k-- > 0;) {
    if (k + 1 < w.size()) s = s.preimage(c.degree());
    if (w[k] != kStar) s = s.intersect(letter_arc(c, w[k]));
    if (s.empty())
      throw Error(ErrorCode::kEmptySet, "cylinder of " + word_str(c.degree(), w) + " is empty");
  }
  return s;
}

GluingLink link_image(const Circle& c, const GluingLink& D) { return D.image(c.degree()); }

std::vector<GluingLink> link_preimage(const Circle& c, const GluingLink& D) {
  if (D.is_full()) throw Error(ErrorCode::kFullCircleInput, "preimage of the full circle");
  if (D.empty()) throw Error(ErrorCode::kEmptySet, "preimage of the empty link");
  if (D.contains(c.alpha())) return {D.preimage(c.degree())};
  std::vector<GluingLink> out;
  for (int i = 1; i <= c.degree(); ++i) out.push_back(D.branch_image(c, i));
  return out;
}

GluingLink component_of(const std::vector<GluingLink>& parts, const Angle& x) {
  const GluingLink* fallback = nullptr;
  for (const GluingLink& p : parts) {
    if (!p.contains(x)) continue;
    if (p.is_full()) return p;
    for (const Arc& a : p.arcs())
      if (a.contains(x) && frac(x.value() - a.start) < a.length) return p;
    if (!fallback) fallback = &p;
  }
  if (!fallback) throw Error(ErrorCode::kNotInSet, x.str() + " lies in no component");
  return *fallback;
}

namespace {

// Star-free points whose whole itinerary is (rotation r of q)^infinity and
// which are equivalent to z_r = hop^r(z).
std::vector<std::set<Angle>> periodic_tail_classes(const Circle& c, const Angle& z, const Word& q,
                                                   long max_mult) {
  const long n = static_cast<long>(q.size());
  std::vector<Angle> orbit;
  Angle p = z;
  for (long r = 0; r < n; ++r) {
    orbit.push_back(p);
    p = c.hop(p);
  }
  std::vector<std::set<Angle>> cls(static_cast<size_t>(n));
  for (long r = 0; r < n; ++r) {
    Word rot(q.begin() + r, q.end());
    rot.insert(rot.end(), q.begin(), q.begin() + r);
    Word rep;
    for (long m = 1; m <= max_mult; ++m) {
      rep.insert(rep.end(), rot.begin(), rot.end());
      for (const Angle& w : c.fixed_points(rep))
        if (is_equivalent(c, w, orbit[static_cast<size_t>(r)])) cls[static_cast<size_t>(r)].insert(w);
    }
    cls[static_cast<size_t>(r)].insert(orbit[static_cast<size_t>(r)]);
  }
  // Close under pulling back: w joins class r when its letter fits q_r[1]
  // and hop(w) sits in class r+1. Points entering this way carry a star.
  bool grew = true;
  while (grew) {
    grew = false;
    for (long r = n - 1; r >= 0; --r) {
      const auto& next = cls[static_cast<size_t>((r + 1) % n)];
      Letter want = q[static_cast<size_t>(r)];
      for (const Angle& y : std::vector<Angle>(next.begin(), next.end())) {
        for (int k = 0; k < c.degree(); ++k) {
          Angle w((y.value() + k) / c.degree());
          if (!letters_match(c.letter(w), want)) continue;
          if (cls[static_cast<size_t>(r)].insert(w).second) grew = true;
        }
      }
    }
  }
  return cls;
}

}  // namespace

ClassResult equivalence_class(const Circle& c, const Angle& x, long depth) {
  if (is_periodic(c, c.alpha()))
    throw Error(ErrorCode::kPeriodicAlpha, "class finiteness is not claimed for periodic alpha");
  EventuallyPeriodicWord ix = full_itinerary(c, x);
  const Word& p = ix.preperiod();
  const Word& q = ix.period();
  Angle z = c.hop(x, static_cast<long>(p.size()));
  auto tails = periodic_tail_classes(c, z, q, 6);
  std::set<Angle> cur = tails[0];
  for (size_t k = p.size(); k-- > 0;) {
    std::set<Angle> prev;
    for (const Angle& y : cur)
      for (int j = 0; j < c.degree(); ++j) {
        Angle w((y.value() + j) / c.degree());
        if (letters_match(c.letter(w), p[k])) prev.insert(w);
      }
    cur = std::move(prev);
  }
  ClassResult res;
  for (const Angle& w : cur)
    if (is_equivalent(c, w, x)) res.points.push_back(w);
  res.depth = depth;
  Word pre = itinerary(c, x, static_cast<size_t>(depth));
  res.enclosure = cylinder(c, pre);
  res.confirmed = true;
  for (const Arc& a : res.enclosure.arcs()) {
    bool hit = std::any_of(res.points.begin(), res.points.end(), [&](const Angle& w) { return a.contains(w); });
    if (!hit) res.confirmed = false;
  }
  for (const Angle& w : res.points)
    if (!res.enclosure.contains(w))
      throw Error(ErrorCode::kIllDefined, "class point outside its own enclosure");
  return res;
}

GluingLink CylinderCovering::link_for(const Angle& y) const {
  return cylinder(c_, itinerary(c_, y, static_cast<size_t>(depth_)));
}

GluingLink ListCovering::link_for(const Angle& y) const {
  for (const GluingLink& l : links_)
    if (l.contains(y)) return l;
  throw Error(ErrorCode::kNotInSet, y.str() + " is not covered by " + name_);
}

GluingLink ClassCovering::link_for(const Angle& y) const {
  std::vector<Arc> pts;
  for (const Angle& w : equivalence_class(c_, y).points) pts.push_back(Arc{w.value(), 0});
  return ArcSet::of(std::move(pts));
}

PullbackChain pullback_chain(const Covering& cov, const Angle& x, long n) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative chain length");
  const Circle& c = cov.circle();
  std::vector<Angle> orbit{x};
  for (long i = 1; i <= n; ++i) orbit.push_back(c.hop(orbit.back()));
  PullbackChain out;
  out.trace.x = x;
  out.trace.n = n;
  GluingLink e = cov.link_for(orbit[static_cast<size_t>(n)]);
  out.links.push_back(e);
  for (long s = 1; s <= n; ++s) {
    long i = n - s + 1;
    if (e.contains(c.alpha())) out.trace.hits.push_back(i);
    try {
      e = component_of(link_preimage(c, e), orbit[static_cast<size_t>(n - s)]);
    } catch (const Error& err) {
      throw Error(err.code(), std::string(err.what()) + " at chain step " + std::to_string(s), s);
    }
    out.links.push_back(e);
  }
  std::sort(out.trace.hits.begin(), out.trace.hits.end());
  out.link = e;
  return out;
}

long encounter_number(const Covering& cov, const Angle& x, long n) {
  return pullback_chain(cov, x, n).trace.N();
}

CCEResult cce_sequence(const Covering& cov, const Angle& x, const mpq_class& P, long M, long n_max) {
  if (P <= 1) throw Error(ErrorCode::kInvalidArgument, "P must exceed 1");
  CCEResult r;
  for (long n = 1; n <= n_max; ++n)
    if (encounter_number(cov, x, n) <= M) r.n_j.push_back(n);
  r.satisfied = !r.n_j.empty();
  for (size_t j = 0; j < r.n_j.size(); ++j)
    if (mpq_class(r.n_j[j]) > P * static_cast<long>(j + 1)) r.satisfied = false;
  return r;
}

}  // namespace lamina
