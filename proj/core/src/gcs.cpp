#include "lamina/gcs.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lamina/error.hpp"
#include "lamina/symbolic.hpp"

namespace lamina {

namespace {

void need_quadratic(const Circle& c) {
  if (c.degree() != 2) throw Error(ErrorCode::kUnsupported, "generalized cylinder sets need degree 2");
}

}  // namespace

bool chords_cross(const Angle& a1, const Angle& b1, const Angle& a2, const Angle& b2) {
  if (a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2) return false;
  return strictly_between(a1, a2, b1) != strictly_between(a1, b2, b1);
}

std::vector<Leaf> leaves(const Circle& c, long n) {
  need_quadratic(c);
  std::vector<Leaf> cur{Leaf{{}, c.star(1), c.star(2)}};
  for (long k = 1; k <= n; ++k) {
    std::vector<Leaf> next;
    next.reserve(cur.size() * 2);
    for (Letter l : {kL, kR})
      for (const Leaf& f : cur) {
        Word u{l};
        u.insert(u.end(), f.u.begin(), f.u.end());
        if (f.a == c.alpha() || f.b == c.alpha())
          throw Error(ErrorCode::kIllDefinedLeaf, "leaf of " + word_str(2, u) + " is undefined",
                      static_cast<long>(k));
        next.push_back(Leaf{std::move(u), c.branch(l, f.a), c.branch(l, f.b)});
      }
    std::sort(next.begin(), next.end(), [](const Leaf& x, const Leaf& y) { return x.u < y.u; });
    cur = std::move(next);
  }
  return cur;
}

size_t GCSPartition::locate(const Angle& x) const {
  std::optional<size_t> any;
  for (size_t i = 0; i < links.size(); ++i) {
    if (links[i].contains_open(x)) return i;
    if (!any && links[i].contains(x)) any = i;
  }
  if (!any) throw Error(ErrorCode::kNotInSet, x.str() + " lies in no partition link");
  return *any;
}

namespace {

// A point inside the open arc from a to b whose label is well defined.
std::optional<Angle> good_sample(const Circle& c, const Angle& a, const Angle& b, long n) {
  mpq_class len = ccw(a, b);
  if (len == 0) len = 1;
  for (long den : {2L, 3L, 5L, 7L, 11L, 13L, 17L})
    for (long num = 1; num < den; ++num) {
      Angle x(a.value() + len * num / den);
      Word it = itinerary(c, x, static_cast<size_t>(n + 1));
      if (has_star(it)) continue;
      if (c.hop(x, n + 1) == c.alpha()) continue;
      return x;
    }
  return std::nullopt;
}

}  // namespace

GCSPartition gcs_partition(const Circle& c, long n) {
  GCSPartition P;
  P.n = n;
  P.leaf_list = leaves(c, n);
  std::set<Angle> vs;
  for (const Leaf& f : P.leaf_list) {
    vs.insert(f.a);
    vs.insert(f.b);
  }
  std::vector<Angle> v(vs.begin(), vs.end());
  const long m = static_cast<long>(v.size());
  auto rank = [&](const Angle& x) {
    return static_cast<long>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
  };
  // chords[w]: (offset of the far end, leaf index), sorted by offset.
  std::vector<std::vector<std::pair<long, size_t>>> chords(static_cast<size_t>(m));
  std::set<std::pair<long, long>> seen_chord;
  for (size_t i = 0; i < P.leaf_list.size(); ++i) {
    long p = rank(P.leaf_list[i].a), q = rank(P.leaf_list[i].b);
    if (!seen_chord.insert({std::min(p, q), std::max(p, q)}).second) continue;
    chords[static_cast<size_t>(p)].push_back({((q - p) % m + m) % m, i});
    chords[static_cast<size_t>(q)].push_back({((p - q) % m + m) % m, i});
  }
  for (auto& ch : chords) std::sort(ch.begin(), ch.end());

  std::vector<char> used(static_cast<size_t>(m), 0);
  for (long start = 0; start < m; ++start) {
    if (used[static_cast<size_t>(start)]) continue;
    std::vector<long> arcs;
    std::set<size_t> bnd;
    // The arc start -> start+1 is the first edge.
    arcs.push_back(start);
    used[static_cast<size_t>(start)] = 1;
    long w = (start + 1) % m;
    long b = m;
    for (long guard = 0; guard < 4 * m + 8; ++guard) {
      const auto& ch = chords[static_cast<size_t>(w)];
      const std::pair<long, size_t>* pick = nullptr;
      for (const auto& e : ch)
        if (e.first < b) pick = &e;
      if (pick) {
        bnd.insert(pick->second);
        long q = (w + pick->first) % m;
        b = ((w - q) % m + m) % m;
        w = q;
      } else {
        if (w == start) break;
        arcs.push_back(w);
        used[static_cast<size_t>(w)] = 1;
        w = (w + 1) % m;
        b = m;
      }
    }
    std::vector<Arc> pieces;
    for (long a : arcs) {
      const Angle& x = v[static_cast<size_t>(a)];
      const Angle& y = v[static_cast<size_t>((a + 1) % m)];
      pieces.push_back(Arc{x.value(), m == 1 ? mpq_class(0) : ccw(x, y)});
    }
    GluingLink link = ArcSet::of(pieces);
    auto s = good_sample(c, v[static_cast<size_t>(arcs.front())], v[static_cast<size_t>((arcs.front() + 1) % m)], n);
    if (!s) throw Error(ErrorCode::kIllDefined, "no generic sample point in a partition region");
    P.words.push_back(legal(itinerary(c, *s, static_cast<size_t>(n + 1)), kneading(c)));
    P.links.push_back(std::move(link));
    P.boundary.emplace_back(bnd.begin(), bnd.end());
  }
  return P;
}

GCSMember gcs_of_point(const Circle& c, long n, const Angle& x) {
  need_quadratic(c);
  if (c.hop(x, n + 1) == c.alpha())
    throw Error(ErrorCode::kAmbiguousAtBoundary, "hop^(n+1)(x) = alpha; the containing set is not unique");
  Word it = itinerary(c, x, static_cast<size_t>(n + 1));
  for (Letter& l : it)
    if (l == kStar) l = kL;
  Word w = legal(it, kneading(c));
  return {cylinder(c, w), w};
}

bool gcs_pullback_identity_check(const Circle& c, long n, long i, const Angle& x) {
  GluingLink e = gcs_of_point(c, n, c.hop(x, i)).link;
  for (long s = 1; s <= i; ++s) e = component_of(link_preimage(c, e), c.hop(x, i - s));
  return e == gcs_of_point(c, n + i, x).link;
}

StarLink star_link(const Circle& c, long depth) {
  need_quadratic(c);
  StarLink s;
  ClassResult cls = equivalence_class(c, c.alpha(), depth);
  if (cls.points.size() == 1) {
    s.link = ArcSet::point(c.star(1)).unite(ArcSet::point(c.star(2)));
    return s;
  }
  if (cls.points.size() != 2)
    throw Error(ErrorCode::kUnsupported, "class of alpha has " + std::to_string(cls.points.size()) + " points");
  Angle beta = cls.points[0] == c.alpha() ? cls.points[1] : cls.points[0];
  // Pick the side of alpha--beta free of the forward orbit of alpha.
  std::set<Angle> orbit;
  for (Angle p = c.hop(c.alpha()); orbit.insert(p).second;) p = c.hop(p);
  auto free_side = [&](const Angle& a, const Angle& b) {
    for (const Angle& o : orbit)
      if (strictly_between(a, o, b)) return false;
    return true;
  };
  ArcSet gap;
  if (free_side(c.alpha(), beta))
    gap = ArcSet::between(c.alpha(), beta);
  else if (free_side(beta, c.alpha()))
    gap = ArcSet::between(beta, c.alpha());
  else
    throw Error(ErrorCode::kIllDefined, "both arcs between alpha and its partner meet the orbit");
  s.degenerate = false;
  s.beta = beta;
  ArcSet l = gap.branch_image(c, 1), r = gap.branch_image(c, 2);
  s.link = l.unite(r);
  // b_i ends the complement arc that leaves star_i away from the link.
  std::vector<Angle> pts{c.star(1), c.star(2), c.branch(1, beta), c.branch(2, beta)};
  for (int i = 1; i <= 2; ++i) {
    const Angle& st = c.star(i);
    std::optional<Angle> next, prev;
    for (const Angle& q : pts) {
      if (q == st) continue;
      if (!next || ccw(st, q) < ccw(st, *next)) next = q;
      if (!prev || ccw(q, st) < ccw(*prev, st)) prev = q;
    }
    Angle mid(st.value() + ccw(st, *next) / 2);
    (i == 1 ? s.b1 : s.b2) = s.link.contains_open(mid) ? *prev : *next;
  }
  return s;
}

CKCovering::CKCovering(const Circle& c, long K) : c_(c), K_(K) {
  need_quadratic(c);
  if (K < 0) throw Error(ErrorCode::kInvalidArgument, "K must be nonnegative");
  star_ = star_link(c);
  p0_ = gcs_partition(c, K);
  p1_ = gcs_partition(c, K + 1);
  for (const GCSPartition* p : {&p0_, &p1_})
    for (const Leaf& f : p->leaf_list) {
      GluingLink b = star_.degenerate ? ArcSet::point(f.a).unite(ArcSet::point(f.b))
                                      : star_.link.word_image(c, f.u);
      bad_.emplace_back(f.u, std::move(b));
    }
  std::optional<mpq_class> best;
  for (size_t i = 0; i < bad_.size(); ++i)
    for (size_t j = i + 1; j < bad_.size(); ++j) {
      mpq_class d = bad_[i].second.distance(bad_[j].second);
      if (!best || d < *best) best = d;
    }
  if (!best) best = mpq_class(1, 2);
  if (sgn(*best) == 0) throw Error(ErrorCode::kZeroSeparation, "two boundary images of C_* touch");
  // Half the separation would leave the midpoint between two bad sets at
  // distance exactly delta from both, and then no link qualifies there.
  delta_ = *best / 3;
  for (const auto& [g, b] : bad_) {
    std::vector<Arc> grown;
    for (const Arc& a : b.arcs()) grown.push_back(Arc{a.start - delta_, a.length + 2 * delta_});
    bad_nbhd_.push_back(ArcSet::of(std::move(grown)));
  }
}

const GluingLink& CKCovering::bad_set(const Word& g) const {
  for (const auto& [w, b] : bad_)
    if (w == g) return b;
  throw Error(ErrorCode::kNotInSet, "no boundary word " + word_str(2, g));
}

bool CKCovering::qualifies(const Angle& y, const GCSPartition& p, size_t idx) const {
  if (!p.links[idx].contains(y)) return false;
  size_t offset = &p == &p0_ ? 0 : p0_.leaf_list.size();
  for (size_t li : p.boundary[idx])
    if (bad_nbhd_[offset + li].contains(y)) return false;
  return true;
}

std::optional<CKCovering::Choice> CKCovering::choose(const Angle& y) const {
  for (bool deep : {true, false}) {
    const GCSPartition& p = deep ? p1_ : p0_;
    for (size_t i = 0; i < p.links.size(); ++i)
      if (qualifies(y, p, i)) return Choice{deep, i};
  }
  return std::nullopt;
}

GluingLink CKCovering::link_for(const Angle& y) const {
  auto ch = choose(y);
  if (!ch) throw Error(ErrorCode::kNotInSet, y.str() + " has no link well inside the C^K covering");
  return (ch->deep ? p1_ : p0_).links[ch->index];
}

std::vector<CKCovering::Piece> CKCovering::pieces() const {
  std::set<Angle> bp;
  for (const GCSPartition* p : {&p0_, &p1_})
    for (const GluingLink& l : p->links)
      for (const Angle& e : l.endpoints()) bp.insert(e);
  for (const GluingLink& b : bad_nbhd_)
    for (const Angle& e : b.endpoints()) bp.insert(e);
  std::vector<Angle> v(bp.begin(), bp.end());
  std::vector<Angle> samples;
  for (size_t i = 0; i < v.size(); ++i) {
    samples.push_back(v[i]);
    const Angle& nx = v[(i + 1) % v.size()];
    mpq_class len = ccw(v[i], nx);
    if (len == 0) len = 1;
    samples.emplace_back(v[i].value() + len / 2);
  }
  std::vector<Piece> out;
  for (const Angle& s : samples) {
    auto ch = choose(s);
    if (!ch) throw Error(ErrorCode::kNotInSet, s.str() + " is not covered by C^" + std::to_string(K_));
    out.push_back(Piece{s, *ch});
  }
  return out;
}

DigitFixingVerdict digit_fixing_check(const Circle& c, long K, long L, long depth) {
  DigitFixingVerdict v;
  std::vector<Angle> orbit;
  Angle p = c.alpha();
  for (long i = 1; i <= L; ++i) {
    p = c.hop(p);
    orbit.push_back(p);
  }
  auto violation = [&](long m) -> std::optional<long> {
    GluingLink g = gcs_of_point(c, m, c.alpha()).link;
    for (long i = 1; i <= L; ++i)
      if (g.contains(orbit[static_cast<size_t>(i - 1)])) return i;
    return std::nullopt;
  };
  try {
    for (long m = K; m <= depth; ++m)
      if (auto i = violation(m)) {
        v.kind = DigitFixingKind::kCounterexample;
        v.m = m;
        v.i = *i;
        return v;
      }
    long m0 = K;
    while (m0 > 0 && !violation(m0 - 1)) --m0;
    v.kind = DigitFixingKind::kCertified;
    v.L_alpha = m0;
  } catch (const Error& e) {
    v.kind = DigitFixingKind::kInconclusive;
    v.reason = e.what();
  }
  return v;
}

}  // namespace lamina
