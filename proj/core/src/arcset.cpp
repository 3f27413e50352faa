#include "lamina/arcset.hpp"

#include <algorithm>
#include <set>

#include "lamina/error.hpp"

namespace lamina {

namespace {

struct Interval {
  mpq_class lo, hi;
};

// Split arcs into intervals of [0,1].
std::vector<Interval> to_intervals(const std::vector<Arc>& arcs) {
  std::vector<Interval> out;
  for (const Arc& a : arcs) {
    mpq_class e = a.start + a.length;
    if (e < 1) {
      out.push_back({a.start, e});
    } else if (e == 1) {
      out.push_back({a.start, e});
      out.push_back({mpq_class(0), mpq_class(0)});
    } else {
      out.push_back({a.start, mpq_class(1)});
      out.push_back({mpq_class(0), e - 1});
    }
  }
  return out;
}

}  // namespace

ArcSet ArcSet::full() {
  ArcSet s;
  s.full_ = true;
  return s;
}

ArcSet ArcSet::of(const Arc& a) { return of(std::vector<Arc>{a}); }

ArcSet ArcSet::of(std::vector<Arc> arcs) {
  ArcSet s;
  std::vector<Interval> iv;
  for (Arc& a : arcs) {
    if (sgn(a.length) < 0) throw Error(ErrorCode::kInvalidArgument, "negative arc length");
    if (a.length >= 1) return full();
    a.start = frac(a.start);
  }
  iv = to_intervals(arcs);
  if (iv.empty()) return s;
  std::sort(iv.begin(), iv.end(), [](const Interval& x, const Interval& y) {
    return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
  });
  std::vector<Interval> m;
  for (auto& v : iv) {
    if (!m.empty() && v.lo <= m.back().hi) {
      if (v.hi > m.back().hi) m.back().hi = v.hi;
    } else {
      m.push_back(v);
    }
  }
  if (m.size() == 1 && m[0].lo == 0 && m[0].hi == 1) return full();
  bool wrap = m.size() > 1 && m.front().lo == 0 && m.back().hi == 1;
  size_t first = wrap ? 1 : 0;
  size_t last = m.size() - (wrap ? 1 : 0);
  for (size_t i = first; i < last; ++i) {
    s.arcs_.push_back(Arc{m[i].lo, m[i].hi - m[i].lo});
  }
  if (wrap) {
    mpq_class len = 1 - m.back().lo + m.front().hi;
    if (len >= 1) return full();
    s.arcs_.push_back(Arc{m.back().lo, len});
  }
  return s;
}

mpq_class ArcSet::measure() const {
  if (full_) return 1;
  mpq_class m = 0;
  for (const Arc& a : arcs_) m += a.length;
  return m;
}

bool ArcSet::contains(const Angle& x) const {
  if (full_) return true;
  for (const Arc& a : arcs_)
    if (a.contains(x)) return true;
  return false;
}

bool ArcSet::contains_open(const Angle& x) const {
  if (full_) return true;
  for (const Arc& a : arcs_)
    if (a.contains_open(x)) return true;
  return false;
}

ArcSet ArcSet::unite(const ArcSet& o) const {
  if (full_ || o.full_) return full();
  std::vector<Arc> all = arcs_;
  all.insert(all.end(), o.arcs_.begin(), o.arcs_.end());
  return of(std::move(all));
}

ArcSet ArcSet::intersect(const ArcSet& o) const {
  if (full_) return o;
  if (o.full_) return *this;
  auto x = to_intervals(arcs_);
  auto y = to_intervals(o.arcs_);
  std::vector<Arc> out;
  for (const auto& p : x)
    for (const auto& q : y) {
      const mpq_class& lo = p.lo > q.lo ? p.lo : q.lo;
      const mpq_class& hi = p.hi < q.hi ? p.hi : q.hi;
      if (lo <= hi) out.push_back(Arc{lo, hi - lo});
    }
  return of(std::move(out));
}

ArcSet ArcSet::preimage(int d) const {
  if (full_ || empty()) return *this;
  std::vector<Arc> out;
  for (const Arc& a : arcs_)
    for (int k = 0; k < d; ++k) out.push_back(Arc{(a.start + k) / d, a.length / d});
  return of(std::move(out));
}

ArcSet ArcSet::image(int d) const {
  if (full_ || empty()) return *this;
  std::vector<Arc> out;
  for (const Arc& a : arcs_) {
    mpq_class len = a.length * d;
    if (len >= 1) return full();
    out.push_back(Arc{frac(a.start * d), len});
  }
  return of(std::move(out));
}

ArcSet ArcSet::branch_image(const Circle& c, int i) const {
  if (full_) throw Error(ErrorCode::kFullCircleInput, "branch image of the full circle");
  std::vector<Arc> out;
  const mpq_class& al = c.alpha().value();
  for (const Arc& a : arcs_) {
    if (a.contains_open(c.alpha()))
      throw Error(ErrorCode::kIllDefined, "branch image of an arc containing alpha inside");
    out.push_back(Arc{c.star(i).value() + frac(a.start - al) / c.degree(), a.length / c.degree()});
  }
  return of(std::move(out));
}

ArcSet ArcSet::word_image(const Circle& c, const Word& u) const {
  ArcSet s = *this;
  for (size_t k = u.size(); k-- > 0;) s = s.branch_image(c, u[k]);
  return s;
}

mpq_class ArcSet::distance(const Angle& x) const {
  if (contains(x)) return 0;
  if (empty()) throw Error(ErrorCode::kEmptySet, "distance to the empty set");
  mpq_class best = 1;
  for (const Arc& a : arcs_) {
    mpq_class d1 = circle_dist(x, a.a()), d2 = circle_dist(x, a.b());
    if (d1 < best) best = d1;
    if (d2 < best) best = d2;
  }
  return best;
}

mpq_class ArcSet::distance(const ArcSet& o) const {
  if (empty() || o.empty()) throw Error(ErrorCode::kEmptySet, "distance to the empty set");
  if (!intersect(o).empty()) return 0;
  mpq_class best = 1;
  for (const Angle& e : endpoints()) {
    mpq_class d = o.distance(e);
    if (d < best) best = d;
  }
  for (const Angle& e : o.endpoints()) {
    mpq_class d = distance(e);
    if (d < best) best = d;
  }
  return best;
}

std::vector<Angle> ArcSet::endpoints() const {
  std::set<Angle> s;
  for (const Arc& a : arcs_) {
    s.insert(a.a());
    s.insert(a.b());
  }
  return {s.begin(), s.end()};
}

std::string ArcSet::str() const {
  if (full_) return "T";
  if (arcs_.empty()) return "{}";
  std::string s;
  for (const Arc& a : arcs_) {
    if (!s.empty()) s += " u ";
    s += "[" + a.a().str() + ", " + a.b().str() + "]";
  }
  return s;
}

ArcSet letter_arc(const Circle& c, Letter l) {
  if (l == kStar) return ArcSet::full();
  return ArcSet::of(Arc{c.star(l).value(), mpq_class(1, c.degree())});
}

}  // namespace lamina
