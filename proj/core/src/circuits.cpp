#include "lamina/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "lamina/error.hpp"
#include "lamina/symbolic.hpp"

namespace lamina {

namespace {

void need_quadratic(const Circle& c) {
  if (c.degree() != 2) throw Error(ErrorCode::kUnsupported, "circuits need degree 2");
}

// Closure of branch i at t; at t = alpha this is star i.
mpq_class lift(const Circle& c, int i, const mpq_class& t) {
  return frac(c.star(i).value() + frac(t - c.alpha().value()) / 2);
}
Arc lift_arc(const Circle& c, int i, const Arc& a) { return Arc{lift(c, i, a.start), a.length / 2}; }

// Smallest closed arc holding every point.
Arc hull(std::vector<Angle> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == 1) return Arc{pts[0].value(), 0};
  size_t best = 0;
  mpq_class gap = -1;
  for (size_t i = 0; i < pts.size(); ++i) {
    mpq_class g = ccw(pts[i], pts[(i + 1) % pts.size()]);
    if (g > gap) {
      gap = g;
      best = i;
    }
  }
  const Angle& s = pts[(best + 1) % pts.size()];
  return Arc{s.value(), 1 - gap};
}

mpq_class offset(const Arc& a, const Angle& x) { return frac(x.value() - a.start); }

// An atom carried into a new circuit, remembering where it came from.
struct Src {
  Angle x;
  mpq_class w;
  size_t pair = 0;
  size_t idx = 0;
  int branch = 0;
};
struct Piece {
  Arc arc;
  std::vector<Src> atoms;
};
struct NewPair {
  Piece ap, a;
};

using Keep = std::function<bool(size_t)>;
const Keep kAll = [](size_t) { return true; };

Piece push(const Circle& c, int branch, const Arc& arc, const DiscreteMeasure& m, size_t pair,
           const Keep& keep, const mpq_class& mass) {
  Piece p{arc, {}};
  for (size_t k = 0; k < m.atoms.size(); ++k)
    if (keep(k))
      p.atoms.push_back(Src{Angle(lift(c, branch, m.atoms[k].x.value())), m.atoms[k].w / mass, pair, k, branch});
  return p;
}

Piece push_arc(const Circle& c, int branch, const Arc& arc, const DiscreteMeasure& m, size_t pair,
               const Keep& keep = kAll, const mpq_class& mass = 1) {
  return push(c, branch, lift_arc(c, branch, arc), m, pair, keep, mass);
}

GluingCircuit assemble(const Circle& c, const GluingCircuit& old, const std::vector<NewPair>& pairs) {
  GluingCircuit g;
  size_t m = pairs.size(), n = old.size();
  for (const NewPair& p : pairs) {
    g.Ap.push_back(p.ap.arc);
    g.A.push_back(p.a.arc);
    DiscreteMeasure mu{{}, p.a.arc}, mup{{}, p.ap.arc};
    for (const Src& s : p.a.atoms) mu.atoms.push_back(Atom{s.x, s.w});
    for (const Src& s : p.ap.atoms) mup.atoms.push_back(Atom{s.x, s.w});
    g.mu.push_back(std::move(mu));
    g.mup.push_back(std::move(mup));
  }
  for (size_t k = 0; k < m; ++k) {
    const Piece& next = pairs[(k + 1) % m].ap;
    std::map<Angle, size_t> where;
    for (size_t i = 0; i < next.atoms.size(); ++i) where.emplace(next.atoms[i].x, i);
    std::vector<size_t> phi;
    for (const Src& s : pairs[k].a.atoms) {
      const Angle& partner = old.mup[(s.pair + 1) % n].atoms[old.phi[s.pair][s.idx]].x;
      auto it = where.find(Angle(lift(c, s.branch, partner.value())));
      if (it == where.end())
        throw Error(ErrorCode::kInvalidArgument, "pairing lost its partner in pair " + std::to_string(k + 1),
                    static_cast<long>(k + 1));
      phi.push_back(it->second);
    }
    g.phi.push_back(std::move(phi));
  }
  return g;
}

// Offsets of the atoms of mu[j] and of their partners in A'_{j+1}; throws
// unless the pairing reverses order.
void require_reversing(const GluingCircuit& g, size_t j) {
  size_t n = g.size(), j1 = (j + 1) % n;
  std::vector<std::pair<mpq_class, mpq_class>> v;
  for (size_t k = 0; k < g.mu[j].atoms.size(); ++k)
    v.emplace_back(offset(g.A[j], g.mu[j].atoms[k].x), offset(g.Ap[j1], g.mup[j1].atoms[g.phi[j][k]].x));
  std::sort(v.begin(), v.end());
  for (size_t k = 1; k < v.size(); ++k)
    if (!(v[k].second < v[k - 1].second))
      throw Error(ErrorCode::kNonMonotonePairing, "pairing " + std::to_string(j + 1) + " is not order reversing",
                  static_cast<long>(j + 1));
}

}  // namespace

mpq_class arc_diam(const Arc& a) { return a.length < mpq_class(1, 2) ? a.length : mpq_class(1, 2); }

mpq_class set_diam(const std::vector<Arc>& arcs) {
  ArcSet s = ArcSet::of(arcs);
  std::vector<Arc> shifted;
  for (const Arc& a : arcs) shifted.push_back(Arc{frac(a.start + mpq_class(1, 2)), a.length});
  if (!s.intersect(ArcSet::of(shifted)).empty()) return mpq_class(1, 2);
  mpq_class best = 0;
  std::vector<Angle> e;
  for (const Arc& a : arcs) {
    e.push_back(a.a());
    e.push_back(a.b());
  }
  for (size_t i = 0; i < e.size(); ++i)
    for (size_t j = i + 1; j < e.size(); ++j) best = std::max(best, circle_dist(e[i], e[j]));
  return best;
}

double rescaled_energy(const DiscreteMeasure& mu) {
  if (mu.atoms.size() < 2) throw Error(ErrorCode::kDegenerateSupport, "energy needs at least two atoms");
  mpq_class diam = arc_diam(mu.support);
  if (sgn(diam) == 0) throw Error(ErrorCode::kDegenerateSupport, "support has zero diameter");
  double e = 0;
  for (size_t i = 0; i < mu.atoms.size(); ++i)
    for (size_t j = 0; j < mu.atoms.size(); ++j) {
      if (i == j) continue;
      mpq_class ratio = circle_dist(mu.atoms[i].x, mu.atoms[j].x) / diam;
      if (sgn(ratio) == 0) throw Error(ErrorCode::kDegenerateSupport, "two atoms coincide");
      e += mu.atoms[i].w.get_d() * mu.atoms[j].w.get_d() * -std::log(ratio.get_d());
    }
  return e;
}

std::optional<size_t> GluingCircuit::around(const Angle& x) const {
  for (size_t j = 0; j < size(); ++j)
    if (strictly_between(Ap[j].b(), x, A[j].a())) return j;
  return std::nullopt;
}

CircuitReport circuit_check(const Circle& c, const GluingCircuit& g) {
  CircuitReport rep;
  size_t n = g.size();
  auto fail = [&](bool& flag, size_t j, const std::string& why) {
    if (flag && rep.failing_index < 0) {
      rep.failing_index = static_cast<long>(j + 1);
      rep.detail = why;
    }
    flag = false;
  };
  if (n == 0 || static_cast<long>(n) > g.N || g.Ap.size() != n || g.mu.size() != n || g.mup.size() != n ||
      g.phi.size() != n) {
    fail(rep.count_ok, 0, "pair count " + std::to_string(n) + " against N = " + std::to_string(g.N));
    return rep;
  }
  // Disjoint and counterclockwise: the arcs and the gaps between them tile
  // the circle exactly once.
  std::vector<Arc> seq;
  for (size_t j = 0; j < n; ++j) {
    seq.push_back(g.Ap[j]);
    seq.push_back(g.A[j]);
  }
  mpq_class total = 0;
  for (size_t k = 0; k < seq.size(); ++k) {
    mpq_class gap = ccw(seq[k].b(), seq[(k + 1) % seq.size()].a());
    if (sgn(gap) == 0 || seq[k].length >= 1) fail(rep.order_ok, k / 2, "arcs touch or overlap");
    total += seq[k].length + gap;
  }
  if (total != 1) fail(rep.order_ok, 0, "arcs are not in counterclockwise order");

  mpq_class C(g.C);
  for (size_t j = 0; j < n; ++j) {
    mpq_class pd = set_diam({g.A[j], g.Ap[j]});
    mpq_class da = arc_diam(g.A[j]), dap = arc_diam(g.Ap[j]);
    if (pd < g.r / C || pd > g.r * C) fail(rep.diam_ok, j, "pair diameter not comparable to r");
    if (da * C < pd || dap * C < pd) fail(rep.diam_ok, j, "arc diameter too small against its pair");
  }
  for (size_t j = 0; j < n; ++j)
    for (const auto* m : {&g.mu[j], &g.mup[j]}) {
      mpq_class sum = 0;
      bool inside = true;
      for (const Atom& a : m->atoms) {
        sum += a.w;
        inside = inside && sgn(a.w) > 0 && m->support.contains(a.x);
      }
      const Arc& own = m == &g.mu[j] ? g.A[j] : g.Ap[j];
      if (sum != 1 || !inside || !(m->support == own)) {
        fail(rep.energy_ok, j, "measure is not a probability measure on its arc");
        continue;
      }
      try {
        double e = rescaled_energy(*m);
        rep.max_energy = std::max(rep.max_energy, e);
        if (e > g.C) fail(rep.energy_ok, j, "rescaled energy above C");
      } catch (const Error& err) {
        fail(rep.energy_ok, j, err.what());
      }
    }
  for (size_t j = 0; j < n; ++j) {
    const DiscreteMeasure& from = g.mu[j];
    const DiscreteMeasure& to = g.mup[(j + 1) % n];
    const auto& phi = g.phi[j];
    if (phi.size() != from.atoms.size() || phi.size() != to.atoms.size()) {
      fail(rep.glue_ok, j, "pairing is not a bijection");
      continue;
    }
    std::vector<char> seen(to.atoms.size(), 0);
    for (size_t k = 0; k < phi.size(); ++k) {
      if (phi[k] >= to.atoms.size() || seen[phi[k]]) {
        fail(rep.glue_ok, j, "pairing is not a bijection");
        break;
      }
      seen[phi[k]] = 1;
      const Atom& y = from.atoms[k];
      const Atom& z = to.atoms[phi[k]];
      if (y.w != z.w) {
        fail(rep.glue_ok, j, "pairing does not preserve weights");
        break;
      }
      if (!is_equivalent(c, y.x, z.x)) {
        fail(rep.glue_ok, j, "paired atoms " + y.x.str() + " and " + z.x.str() + " are not equivalent");
        break;
      }
    }
  }
  return rep;
}

CircuitLocation classify_alpha(const GluingCircuit& g, const Angle& alpha, const std::optional<GluingLink>& link) {
  size_t n = g.size();
  for (size_t j = 0; j < n; ++j)
    for (bool primed : {false, true}) {
      const Arc& a = primed ? g.Ap[j] : g.A[j];
      const DiscreteMeasure& m = primed ? g.mup[j] : g.mu[j];
      bool hit = alpha == a.a() || alpha == a.b();
      for (const Atom& at : m.atoms) hit = hit || at.x == alpha;
      if (hit)
        throw Error(ErrorCode::kOnBoundary, "alpha sits on an endpoint or atom of pair " + std::to_string(j + 1),
                    static_cast<long>(j + 1));
    }
  for (size_t j = 0; j < n; ++j) {
    if (g.A[j].contains_open(alpha)) return {LocationKind::kInsideArc, j, false};
    if (g.Ap[j].contains_open(alpha)) return {LocationKind::kInsideArc, j, true};
  }
  if (auto j = g.around(alpha)) return {LocationKind::kInsideGap, *j, false};
  for (size_t j = 0; j < n; ++j)
    if (strictly_between(g.A[j].b(), alpha, g.Ap[(j + 1) % n].a())) {
      if (link && !link->contains(alpha)) return {LocationKind::kOutside, j, false};
      return {LocationKind::kBetweenPair, j, false};
    }
  throw Error(ErrorCode::kInvalidArgument, "circuit arcs are not in counterclockwise order");
}

PullbackStep pullback_circuit(const Circle& c, const GluingCircuit& g, int side,
                              const std::optional<GluingLink>& link) {
  need_quadratic(c);
  if (side != 1 && side != 2) throw Error(ErrorCode::kInvalidArgument, "side must be 1 or 2");
  PullbackStep step;
  step.location = classify_alpha(g, c.alpha(), link);
  const size_t n = g.size();
  std::vector<NewPair> pairs;
  long N = g.N;
  double C = g.C;
  auto copy = [&](int b, size_t k, const Keep& kap = kAll, const mpq_class& map = 1, const Keep& ka = kAll,
                  const mpq_class& ma = 1) {
    return NewPair{push_arc(c, b, g.Ap[k], g.mup[k], k, kap, map), push_arc(c, b, g.A[k], g.mu[k], k, ka, ma)};
  };

  switch (step.location.kind) {
    case LocationKind::kOutside:
    case LocationKind::kBetweenPair:
      for (size_t k = 0; k < n; ++k) pairs.push_back(copy(side, k));
      break;
    case LocationKind::kInsideGap: {
      size_t j = step.location.j;
      step.one_sided = false;
      N *= 2;
      pairs.push_back({push_arc(c, 2, g.Ap[j], g.mup[j], j), push_arc(c, 1, g.A[j], g.mu[j], j)});
      for (size_t t = 1; t < n; ++t) pairs.push_back(copy(1, (j + t) % n));
      pairs.push_back({push_arc(c, 1, g.Ap[j], g.mup[j], j), push_arc(c, 2, g.A[j], g.mu[j], j)});
      for (size_t t = 1; t < n; ++t) pairs.push_back(copy(2, (j + t) % n));
      break;
    }
    case LocationKind::kInsideArc: {
      C *= 4;
      size_t j = step.location.j;
      if (!step.location.primed) {
        // alpha cuts A_j = [s,e] into C = [s,alpha] and D = [alpha,e].
        size_t j1 = (j + 1) % n;
        require_reversing(g, j);
        const Arc& a = g.A[j];
        mpq_class oa = offset(a, c.alpha());
        std::vector<char> in_c(g.mu[j].atoms.size());
        std::vector<char> partner_in_c(g.mup[j1].atoms.size(), 0);
        mpq_class mc = 0;
        for (size_t k = 0; k < in_c.size(); ++k) {
          in_c[k] = offset(a, g.mu[j].atoms[k].x) < oa;
          partner_in_c[g.phi[j][k]] = in_c[k];
          if (in_c[k]) mc += g.mu[j].atoms[k].w;
        }
        Keep kc = [&](size_t k) { return in_c[k] != 0; };
        Keep kd = [&](size_t k) { return in_c[k] == 0; };
        Keep pc = [&](size_t k) { return partner_in_c[k] != 0; };
        Keep pd = [&](size_t k) { return partner_in_c[k] == 0; };
        Arc g1 = Arc{lift(c, 2, a.start), a.length / 2};  // through star 1
        Arc g2 = Arc{lift(c, 1, a.start), a.length / 2};  // through star 2
        auto ap_of = [&](int b, size_t k, const Keep& keep, const mpq_class& mass) {
          return k == j1 ? push_arc(c, b, g.Ap[k], g.mup[k], k, keep, mass) : push_arc(c, b, g.Ap[k], g.mup[k], k);
        };
        if (mc >= mpq_class(1, 2)) {
          const Arc& gs = side == 1 ? g2 : g1;
          pairs.push_back({ap_of(side, j, pc, mc), push(c, side, gs, g.mu[j], j, kc, mc)});
          for (size_t t = 1; t < n; ++t) {
            size_t k = (j + t) % n;
            pairs.push_back({ap_of(side, k, pc, mc), push_arc(c, side, g.A[k], g.mu[k], k)});
          }
        } else {
          step.one_sided = false;
          N *= 2;
          mpq_class md = 1 - mc;
          pairs.push_back({ap_of(2, j, pd, md), push(c, 1, g1, g.mu[j], j, kd, md)});
          for (size_t t = 1; t < n; ++t) {
            size_t k = (j + t) % n;
            pairs.push_back({ap_of(1, k, pd, md), push_arc(c, 1, g.A[k], g.mu[k], k)});
          }
          pairs.push_back({ap_of(1, j, pd, md), push(c, 2, g2, g.mu[j], j, kd, md)});
          for (size_t t = 1; t < n; ++t) {
            size_t k = (j + t) % n;
            pairs.push_back({ap_of(2, k, pd, md), push_arc(c, 2, g.A[k], g.mu[k], k)});
          }
        }
      } else {
        // alpha cuts A'_j = [s',e'] into P = [s',alpha] and Q = [alpha,e'];
        // Q faces the inner gap.
        size_t jm = (j + n - 1) % n;
        require_reversing(g, jm);
        const Arc& a = g.Ap[j];
        mpq_class oa = offset(a, c.alpha());
        std::vector<char> in_q(g.mup[j].atoms.size());
        mpq_class mq = 0;
        for (size_t k = 0; k < in_q.size(); ++k) {
          in_q[k] = offset(a, g.mup[j].atoms[k].x) > oa;
          if (in_q[k]) mq += g.mup[j].atoms[k].w;
        }
        std::vector<char> from_q(g.mu[jm].atoms.size());
        for (size_t k = 0; k < from_q.size(); ++k) from_q[k] = in_q[g.phi[jm][k]];
        Keep kq = [&](size_t k) { return in_q[k] != 0; };
        Keep kp = [&](size_t k) { return in_q[k] == 0; };
        Keep fq = [&](size_t k) { return from_q[k] != 0; };
        Keep fp = [&](size_t k) { return from_q[k] == 0; };
        Arc h1 = Arc{lift(c, 2, a.start), a.length / 2};  // through star 1
        Arc h2 = Arc{lift(c, 1, a.start), a.length / 2};  // through star 2
        auto a_of = [&](int b, size_t k, const Keep& keep, const mpq_class& mass) {
          return k == jm ? push_arc(c, b, g.A[k], g.mu[k], k, keep, mass) : push_arc(c, b, g.A[k], g.mu[k], k);
        };
        if (mq >= mpq_class(1, 2)) {
          const Arc& hs = side == 1 ? h1 : h2;
          pairs.push_back({push(c, side, hs, g.mup[j], j, kq, mq), a_of(side, j, fq, mq)});
          for (size_t t = 1; t < n; ++t) {
            size_t k = (j + t) % n;
            pairs.push_back({push_arc(c, side, g.Ap[k], g.mup[k], k), a_of(side, k, fq, mq)});
          }
        } else {
          step.one_sided = false;
          N *= 2;
          mpq_class mp = 1 - mq;
          pairs.push_back({push(c, 2, h1, g.mup[j], j, kp, mp), a_of(1, j, fp, mp)});
          for (size_t t = 1; t < n; ++t) {
            size_t k = (j + t) % n;
            pairs.push_back({push_arc(c, 1, g.Ap[k], g.mup[k], k), a_of(1, k, fp, mp)});
          }
          pairs.push_back({push(c, 1, h2, g.mup[j], j, kp, mp), a_of(2, j, fp, mp)});
          for (size_t t = 1; t < n; ++t) {
            size_t k = (j + t) % n;
            pairs.push_back({push_arc(c, 2, g.Ap[k], g.mup[k], k), a_of(2, k, fp, mp)});
          }
        }
      }
      break;
    }
  }
  step.circuit = assemble(c, g, pairs);
  step.circuit.N = N;
  step.circuit.C = C;
  step.circuit.r = g.r / 2;
  return step;
}

PullbackRun iterate_pullback(const Covering& cov, const GluingCircuit& g, const Angle& x, long n) {
  const Circle& c = cov.circle();
  need_quadratic(c);
  PullbackChain chain = pullback_chain(cov, x, n);
  PullbackRun run;
  run.trace = chain.trace;
  run.M = chain.trace.N();
  run.circuit = g;
  run.reports.push_back(circuit_check(c, g));
  run.around_ok = g.around(c.hop(x, n)).has_value();
  for (long s = 1; s <= n; ++s) {
    Angle t = c.hop(x, n - s);
    Letter l = c.letter(t);
    int side = l == kStar ? (t == c.star(1) ? 1 : 2) : l;
    PullbackStep step = pullback_circuit(c, run.circuit, side, chain.links[static_cast<size_t>(s - 1)]);
    run.circuit = step.circuit;
    run.reports.push_back(circuit_check(c, run.circuit));
    run.around_ok = run.around_ok && run.circuit.around(t).has_value();
    run.steps.push_back(std::move(step));
  }
  return run;
}

std::vector<Leaf> boundary_leaves(const Circle& c, const Word& g) {
  need_quadratic(c);
  Word nu = kneading(c).prefix(g.size() + 1);
  long n = static_cast<long>(g.size());
  std::vector<Leaf> out;
  for (long i = 0; i < n; ++i) {
    if (!is_duplicating(g, i + 2, n, {}, nu)) continue;
    Word u = slice(g, 1, static_cast<size_t>(i));
    out.push_back(Leaf{u, c.apply(u, c.star(1)), c.apply(u, c.star(2))});
  }
  return out;
}

std::vector<std::pair<Angle, Angle>> geometric_boundary(const Circle& c, const Word& g) {
  GluingLink s = cylinder(c, g);
  std::vector<std::pair<Angle, Angle>> out;
  if (s.is_full()) return out;
  const auto& arcs = s.arcs();
  for (size_t k = 0; k < arcs.size(); ++k) out.emplace_back(arcs[k].b(), arcs[(k + 1) % arcs.size()].a());
  return out;
}

std::vector<Angle> ill_defined_points(const Circle& c, const Word& g) {
  long n = static_cast<long>(g.size());
  Word nu = kneading(c).prefix(g.size() + 1);
  std::set<Angle> out;
  Angle p = c.alpha();
  // Only proper suffixes of g can land on alpha before g is exhausted.
  for (long i = 0; i < n; ++i, p = c.hop(p)) {
    bool dup = true;
    for (long k = 1; k <= i && dup; ++k) dup = g[static_cast<size_t>(n - i + k - 1)] == nu[static_cast<size_t>(k - 1)];
    if (dup) out.insert(p);
  }
  return {out.begin(), out.end()};
}

std::vector<Angle> observed_failures(const Circle& c, const Word& g) {
  std::set<Angle> orbit, out;
  for (Angle p = c.alpha(); orbit.insert(p).second;) p = c.hop(p);
  for (const Angle& p : orbit) {
    try {
      c.apply(g, p);
    } catch (const Error&) {
      out.insert(p);
    }
  }
  return {out.begin(), out.end()};
}

std::vector<GluingPair> periodic_gluing_pairs(const Circle& c, int side, size_t count, long budget) {
  need_quadratic(c);
  if (side != 1 && side != 2) throw Error(ErrorCode::kInvalidArgument, "side must be 1 or 2");
  EventuallyPeriodicWord nu = kneading(c);
  std::vector<GluingPair> out;
  std::set<std::pair<Angle, Angle>> seen;
  std::set<Word> tried;
  long leaves_seen = 0;
  for (long m = 1; m <= budget && out.size() < count; ++m) {
    Word g = concat(Word{static_cast<Letter>(side)}, nu.prefix(static_cast<size_t>(m)));
    if (has_star(g)) break;
    std::vector<Leaf> bl;
    try {
      bl = boundary_leaves(c, g);
    } catch (const Error&) {
      continue;
    }
    for (const Leaf& f : bl) {
      if (f.u.empty() || !tried.insert(f.u).second) continue;
      ++leaves_seen;
      std::vector<Angle> fp;
      try {
        fp = c.fixed_points(concat(f.u, f.u));
      } catch (const Error&) {
        continue;
      }
      EventuallyPeriodicWord want(Word{}, f.u);
      std::vector<Angle> good;
      for (const Angle& p : fp)
        if (full_itinerary(c, p) == want) good.push_back(p);
      // Several points of one orbit can share the itinerary; keep the glued
      // pair nearest the leaf so that distinct words give distinct pairs.
      std::optional<std::pair<Angle, Angle>> pick;
      mpq_class best;
      for (size_t a = 0; a < good.size(); ++a)
        for (size_t b = a + 1; b < good.size(); ++b) {
          if (!is_equivalent(c, good[a], good[b])) continue;
          mpq_class d = std::min(circle_dist(good[a], f.a) + circle_dist(good[b], f.b),
                                 circle_dist(good[a], f.b) + circle_dist(good[b], f.a));
          if (!pick || d < best) {
            pick = {good[a], good[b]};
            best = d;
          }
        }
      if (!pick || !seen.insert(*pick).second) continue;
      out.push_back(GluingPair{pick->first, pick->second, f.u, m});
      if (out.size() >= count) return out;
    }
  }
  if (out.empty())
    throw Error(ErrorCode::kSearchExhausted, "no periodic gluing pair after " + std::to_string(budget) +
                                                 " levels and " + std::to_string(leaves_seen) + " boundary leaves");
  return out;
}

CantorPair cantor_pair_measures(const Circle& c, const GluingPair& k, const GluingPair& j, long depth) {
  need_quadratic(c);
  if (depth < 1 || depth > 16) throw Error(ErrorCode::kInvalidArgument, "depth must lie in [1,16]");
  Word fk = concat(k.g, k.g), fj = concat(j.g, j.g);
  // The seeds of the j map sit on the same sides as those of the k map.
  std::vector<Angle> xs, ys;
  size_t total = size_t{1} << depth;
  for (size_t b = 0; b < total; ++b) {
    Angle x = k.x, y = k.y;
    for (long bit = depth - 1; bit >= 0; --bit) {
      const Word& f = (b >> bit) & 1 ? fj : fk;
      x = c.apply(f, x);
      y = c.apply(f, y);
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  auto make = [&](const std::vector<Angle>& pts) {
    DiscreteMeasure m{{}, hull(pts)};
    std::set<Angle> uniq(pts.begin(), pts.end());
    if (uniq.size() != pts.size()) throw Error(ErrorCode::kDegenerateSupport, "IFS atoms collide");
    for (const Angle& p : pts) m.atoms.push_back(Atom{p, mpq_class(1, static_cast<long>(total))});
    return m;
  };
  CantorPair out{make(xs), make(ys), {}};
  for (size_t b = 0; b < total; ++b) out.pairing.push_back(b);
  return out;
}

namespace {

// Parameters that make a circuit pass conditions (1) and (2) with a little
// room: r is the largest pair diameter.
void fit_parameters(GluingCircuit& g) {
  mpq_class dmin = 1, dmax = 0;
  double need = 1;
  for (size_t j = 0; j < g.size(); ++j) {
    mpq_class pd = set_diam({g.A[j], g.Ap[j]});
    dmin = std::min(dmin, pd);
    dmax = std::max(dmax, pd);
    need = std::max(need, mpq_class(pd / arc_diam(g.A[j])).get_d());
    need = std::max(need, mpq_class(pd / arc_diam(g.Ap[j])).get_d());
    need = std::max({need, rescaled_energy(g.mu[j]), rescaled_energy(g.mup[j])});
  }
  need = std::max(need, mpq_class(dmax / dmin).get_d());
  g.r = dmax;
  g.C = need * (1 + 1e-9) + 1e-12;
  g.N = static_cast<long>(g.size());
}

struct Crossing {
  Angle e1, e2;  // e1 in arc k, e2 in arc k+1
  mpq_class score;
};

}  // namespace

GluingCircuit leaf_circuit(const Circle& c, const GluingLink& link, const Angle& y, size_t atoms, long min_depth,
                           long max_depth) {
  need_quadratic(c);
  if (link.is_full() || link.empty()) throw Error(ErrorCode::kFullCircleInput, "link must be a proper arc set");
  if (!link.contains_open(y)) throw Error(ErrorCode::kNotInSet, y.str() + " is not inside the link");
  if (atoms < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two atoms per arc");
  const auto& arcs = link.arcs();
  size_t n = arcs.size();
  std::vector<Leaf> pool;
  for (long m = min_depth; m <= max_depth; ++m) {
    try {
      auto ls = leaves(c, m);
      pool.insert(pool.end(), ls.begin(), ls.end());
    } catch (const Error&) {
      continue;
    }
    GluingCircuit g;
    bool ok = true;
    for (size_t k = 0; k < n && ok; ++k) {
      const Arc& here = arcs[k];
      const Arc& next = arcs[(k + 1) % n];
      std::vector<Crossing> cand;
      for (const Leaf& f : pool)
        for (bool flip : {false, true}) {
          const Angle& u = flip ? f.b : f.a;
          const Angle& v = flip ? f.a : f.b;
          if (!here.contains_open(u) || !next.contains_open(v)) continue;
          mpq_class su = here.length - offset(here, u), sv = offset(next, v);
          // With a single arc both ends share it: u must be the later one.
          if (n == 1 && su >= sv) continue;
          // Slightly favour balanced leaves so that both ends hug the corner.
          cand.push_back(Crossing{u, v, su + sv});
        }
      std::sort(cand.begin(), cand.end(), [](const Crossing& a, const Crossing& b) { return a.score < b.score; });
      std::set<Angle> used;
      std::vector<Crossing> pick;
      for (const Crossing& cr : cand) {
        if (used.count(cr.e1) || used.count(cr.e2)) continue;
        used.insert(cr.e1);
        used.insert(cr.e2);
        pick.push_back(cr);
        if (pick.size() == atoms) break;
      }
      if (pick.size() < atoms) {
        ok = false;
        break;
      }
      std::vector<Angle> p1, p2;
      for (const Crossing& cr : pick) {
        p1.push_back(cr.e1);
        p2.push_back(cr.e2);
      }
      Arc a1 = hull(p1), a2 = hull(p2);
      DiscreteMeasure m1{{}, a1}, m2{{}, a2};
      std::vector<size_t> phi;
      for (size_t i = 0; i < pick.size(); ++i) {
        m1.atoms.push_back(Atom{p1[i], mpq_class(1, static_cast<long>(atoms))});
        m2.atoms.push_back(Atom{p2[i], mpq_class(1, static_cast<long>(atoms))});
        phi.push_back(i);
      }
      g.A.push_back(a1);
      g.mu.push_back(std::move(m1));
      g.phi.push_back(std::move(phi));
      // A'_{k+1}; rotated into place below.
      g.Ap.push_back(a2);
      g.mup.push_back(std::move(m2));
    }
    if (!ok) continue;
    std::rotate(g.Ap.rbegin(), g.Ap.rbegin() + 1, g.Ap.rend());
    std::rotate(g.mup.rbegin(), g.mup.rbegin() + 1, g.mup.rend());
    if (!g.around(y)) continue;
    bool inside = true;
    for (size_t j = 0; j < n; ++j)
      inside = inside && !g.A[j].contains(y) && !g.Ap[j].contains(y);
    if (!inside) continue;
    try {
      fit_parameters(g);
    } catch (const Error&) {
      continue;
    }
    if (circuit_check(c, g).ok()) return g;
  }
  throw Error(ErrorCode::kSearchExhausted, "no leaf circuit around " + y.str() + " up to depth " +
                                               std::to_string(max_depth));
}

GluingCircuit nice_circuit_for(const CKCovering& cov, const Angle& x, long cantor_depth, long search_budget) {
  const Circle& c = cov.circle();
  auto choice = cov.choose(x);
  if (!choice) throw Error(ErrorCode::kNotInSet, x.str() + " has no link in the covering");
  const GCSPartition& part = choice->deep ? cov.deep() : cov.shallow();
  const GluingLink& link = part.links[choice->index];
  if (link.is_full()) throw Error(ErrorCode::kFullCircleInput, "the link of x is the whole circle");
  const auto& arcs = link.arcs();
  size_t n = arcs.size();

  std::vector<GluingPair> base;
  for (int side : {1, 2}) {
    try {
      auto ps = periodic_gluing_pairs(c, side, 12, search_budget);
      base.insert(base.end(), ps.begin(), ps.end());
    } catch (const Error& e) {
      if (!is_budget_error(e.code())) throw;
    }
  }
  if (base.size() < 2) throw Error(ErrorCode::kSearchExhausted, "fewer than two periodic gluing pairs");

  GluingCircuit g;
  for (size_t k = 0; k < n; ++k) {
    const Arc& here = arcs[k];
    const Arc& next = arcs[(k + 1) % n];
    // The boundary leaf joining the end of this arc to the start of the next.
    const Leaf* leaf = nullptr;
    for (size_t li : part.boundary[choice->index]) {
      const Leaf& f = part.leaf_list[li];
      if ((f.a == here.b() && f.b == next.a()) || (f.b == here.b() && f.a == next.a())) leaf = &f;
    }
    std::string tag = "boundary leaf " + std::to_string(k + 1);
    if (!leaf) throw Error(ErrorCode::kNotInSet, tag + " has no leaf word", static_cast<long>(k + 1));
    tag = "boundary leaf " + word_str(2, leaf->u);
    const GluingLink& bad = cov.bad_set(leaf->u);
    struct Cand {
      GluingPair p;
      bool swap;
      mpq_class score;
    };
    std::vector<Cand> cand;
    for (const GluingPair& p : base) {
      Angle X, Y;
      try {
        X = c.apply(leaf->u, p.x);
        Y = c.apply(leaf->u, p.y);
      } catch (const Error&) {
        continue;
      }
      bool swap;
      if (here.contains_open(X) && next.contains_open(Y))
        swap = false;
      else if (here.contains_open(Y) && next.contains_open(X))
        swap = true;
      else
        continue;
      mpq_class dx = bad.distance(X), dy = bad.distance(Y);
      if (dx > cov.delta() || dy > cov.delta()) continue;
      cand.push_back(Cand{p, swap, dx + dy});
    }
    std::sort(cand.begin(), cand.end(), [](const Cand& a, const Cand& b) { return a.score < b.score; });
    if (cand.size() < 2)
      throw Error(ErrorCode::kSearchExhausted, tag + ": fewer than two glued pairs within delta",
                  static_cast<long>(k + 1));
    std::optional<CantorPair> cp;
    bool swap = cand[0].swap;
    for (size_t b = 1; b < cand.size() && !cp; ++b) {
      if (cand[b].swap != swap) continue;
      try {
        cp = cantor_pair_measures(c, cand[0].p, cand[b].p, cantor_depth);
      } catch (const Error&) {
      }
    }
    if (!cp) throw Error(ErrorCode::kSearchExhausted, tag + ": no usable Cantor pair", static_cast<long>(k + 1));
    const DiscreteMeasure& src1 = swap ? cp->mup : cp->mu;
    const DiscreteMeasure& src2 = swap ? cp->mu : cp->mup;
    std::vector<Angle> p1, p2;
    for (size_t i = 0; i < src1.atoms.size(); ++i) {
      p1.push_back(c.apply(leaf->u, src1.atoms[i].x));
      p2.push_back(c.apply(leaf->u, src2.atoms[i].x));
    }
    Arc a1 = hull(p1), a2 = hull(p2);
    if (!here.contains(a1.a()) || !here.contains(a1.b()) || !next.contains(a2.a()) || !next.contains(a2.b()))
      throw Error(ErrorCode::kNotInSet, tag + ": Cantor arcs leave the link", static_cast<long>(k + 1));
    DiscreteMeasure m1{{}, a1}, m2{{}, a2};
    std::vector<size_t> phi;
    for (size_t i = 0; i < p1.size(); ++i) {
      m1.atoms.push_back(Atom{p1[i], src1.atoms[i].w});
      m2.atoms.push_back(Atom{p2[i], src2.atoms[i].w});
      phi.push_back(i);
    }
    g.A.push_back(a1);
    g.mu.push_back(std::move(m1));
    g.phi.push_back(std::move(phi));
    g.Ap.push_back(a2);
    g.mup.push_back(std::move(m2));
  }
  std::rotate(g.Ap.rbegin(), g.Ap.rbegin() + 1, g.Ap.rend());
  std::rotate(g.mup.rbegin(), g.mup.rbegin() + 1, g.mup.rend());
  if (!g.around(x)) throw Error(ErrorCode::kNotInSet, "the assembled circuit is not around " + x.str());
  fit_parameters(g);
  return g;
}

}  // namespace lamina
