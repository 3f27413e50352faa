#include "lamina/symbolic.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "lamina/error.hpp"

namespace lamina {

EventuallyPeriodicWord full_itinerary(const Circle& c, const Angle& x) {
  std::map<Angle, std::size_t> seen;
  Word letters;
  Angle p = x;
  while (true) {
    auto it = seen.find(p);
    if (it != seen.end()) {
      Word pre(letters.begin(), letters.begin() + static_cast<long>(it->second));
      Word per(letters.begin() + static_cast<long>(it->second), letters.end());
      return EventuallyPeriodicWord(std::move(pre), std::move(per));
    }
    seen.emplace(p, letters.size());
    letters.push_back(c.letter(p));
    p = c.hop(p);
  }
}

EventuallyPeriodicWord kneading(const Circle& c) { return full_itinerary(c, c.alpha()); }

EventuallyPeriodicWord kneading(int d, const Angle& alpha) { return kneading(Circle(d, alpha)); }

Word itinerary(const Circle& c, const Angle& x, std::size_t n) {
  Word w;
  w.reserve(n);
  Angle p = x;
  for (std::size_t i = 0; i < n; ++i) {
    w.push_back(c.letter(p));
    p = c.hop(p);
  }
  return w;
}

Word itinerary(int d, const Angle& alpha, const Angle& x, std::size_t n) {
  return itinerary(Circle(d, alpha), x, n);
}

namespace {

bool excused(const IndexSet& r, long i) { return std::binary_search(r.begin(), r.end(), i); }

void need_prefix(const Word& nu, long len) {
  if (static_cast<long>(nu.size()) < len)
    throw Error(ErrorCode::kInvalidArgument, "kneading prefix too short");
}

// Furthest b with [a,b] R-duplicating, a-1 for the empty interval.
long furthest_duplicating(const Word& g, long a, const IndexSet& r, const Word& nu) {
  long n = static_cast<long>(g.size());
  need_prefix(nu, n - a + 1);
  long b = a - 1;
  while (b < n) {
    long i = b + 1;
    if (!excused(r, i) && !letters_match(g[static_cast<size_t>(i - 1)], nu[static_cast<size_t>(i - a)])) break;
    b = i;
  }
  return b;
}

}  // namespace

bool is_duplicating(const Word& g, long a, long b, const IndexSet& ex, const Word& nu) {
  if (b < a) return true;
  if (a < 1 || b > static_cast<long>(g.size()))
    throw Error(ErrorCode::kInvalidArgument, "interval outside the word");
  need_prefix(nu, b - a + 1);
  for (long i = a; i <= b; ++i) {
    if (excused(ex, i)) continue;
    if (!letters_match(g[static_cast<size_t>(i - 1)], nu[static_cast<size_t>(i - a)])) return false;
  }
  return true;
}

bool is_rare(const IndexSet& r, long D) {
  for (std::size_t k = 0; k + 3 < r.size(); ++k)
    if (r[k + 3] - r[k] <= D) return false;
  return true;
}

IndexSet duplicating_digits(const Word& g, long D, const IndexSet& r, const Word& nu) {
  long n = static_cast<long>(g.size());
  std::vector<char> cov(static_cast<size_t>(n) + 1, 0);
  for (long a = 1; a <= n; ++a) {
    long b = furthest_duplicating(g, a, r, nu);
    if (b < a) continue;
    if (b == n || b - a + 1 > D)
      for (long i = a; i <= b; ++i) cov[static_cast<size_t>(i)] = 1;
  }
  IndexSet out;
  for (long i = 1; i <= n; ++i)
    if (cov[static_cast<size_t>(i)]) out.push_back(i);
  return out;
}

namespace {

struct SRSearch {
  const Word& nu;
  long D;
  mpq_class tau;
  long budget;
  SRStats st;

  long count(const Word& g, const IndexSet& r) {
    if (++st.evaluations > budget)
      throw Error(ErrorCode::kBudgetExceeded,
                  "strong recurrence search budget exhausted after n=" + std::to_string(st.largest_n) +
                      ", best count " + std::to_string(st.best_count));
    long c = static_cast<long>(duplicating_digits(g, D, r, nu).size());
    st.best_count = std::max(st.best_count, c);
    return c;
  }

  bool enough(long c, long n) const { return mpq_class(c) > tau * n; }

  std::optional<SRCertificate> exhaustive(const Word& g) {
    long n = static_cast<long>(g.size());
    std::optional<SRCertificate> best;
    // Subsets in order of size, then lexicographically, so the empty set
    // is tried first.
    std::vector<IndexSet> layer{IndexSet{}};
    for (int size = 0; size <= n && !layer.empty(); ++size) {
      std::vector<IndexSet> next;
      for (const IndexSet& r : layer) {
        long c = count(g, r);
        if (enough(c, n)) return SRCertificate{D, tau, n, r, c};
        long from = r.empty() ? 1 : r.back() + 1;
        for (long i = from; i <= n; ++i) {
          IndexSet e = r;
          e.push_back(i);
          if (is_rare(e, D)) next.push_back(std::move(e));
        }
      }
      layer = std::move(next);
    }
    return best;
  }

  std::optional<SRCertificate> greedy(const Word& g) {
    long n = static_cast<long>(g.size());
    IndexSet r;
    long c = count(g, r);
    while (true) {
      if (enough(c, n)) return SRCertificate{D, tau, n, r, c};
      // Candidates: the first mismatch that stops each maximal interval.
      std::vector<long> cand;
      for (long a = 1; a <= n; ++a) {
        long b = furthest_duplicating(g, a, r, nu);
        if (b < n && !excused(r, b + 1)) cand.push_back(b + 1);
      }
      std::sort(cand.begin(), cand.end());
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      long best_c = c;
      IndexSet best_r;
      for (long i : cand) {
        IndexSet e = r;
        e.insert(std::upper_bound(e.begin(), e.end(), i), i);
        if (!is_rare(e, D)) continue;
        long ec = count(g, e);
        if (ec > best_c) {
          best_c = ec;
          best_r = std::move(e);
        }
      }
      if (best_c == c) return std::nullopt;
      c = best_c;
      r = std::move(best_r);
    }
  }
};

}  // namespace

std::optional<SRCertificate> sr_search(const Word& nu_prefix, long D, const mpq_class& tau, long n_max,
                                       SRMode mode, long budget, long exhaustive_cap, SRStats* stats) {
  if (D < 1) throw Error(ErrorCode::kInvalidArgument, "D must be positive");
  if (sgn(tau) <= 0 || tau >= 1) throw Error(ErrorCode::kInvalidArgument, "tau must lie in (0,1)");
  n_max = std::min(n_max, static_cast<long>(nu_prefix.size()));
  SRSearch s{nu_prefix, D, tau, budget, {}};
  std::optional<SRCertificate> out;
  for (long n = D + 1; n <= n_max && !out; ++n) {
    s.st.largest_n = n;
    Word g = slice(nu_prefix, 1, static_cast<size_t>(n));
    if (mode == SRMode::kExhaustive && n <= exhaustive_cap)
      out = s.exhaustive(g);
    else
      out = s.greedy(g);
  }
  if (stats) *stats = s.st;
  return out;
}

std::optional<SRCertificate> sr_search(const EventuallyPeriodicWord& nu, long D, const mpq_class& tau,
                                       long n_max, SRMode mode, long budget, long exhaustive_cap,
                                       SRStats* stats) {
  return sr_search(nu.prefix(static_cast<size_t>(std::max(n_max, 0L))), D, tau, n_max, mode, budget,
                   exhaustive_cap, stats);
}

bool verify_sr(const SRCertificate& cert, const Word& nu_prefix) {
  if (cert.n <= cert.D || static_cast<long>(nu_prefix.size()) < cert.n) return false;
  if (!std::is_sorted(cert.rare.begin(), cert.rare.end())) return false;
  for (long i : cert.rare)
    if (i < 1 || i > cert.n) return false;
  if (!is_rare(cert.rare, cert.D)) return false;
  Word g = slice(nu_prefix, 1, static_cast<size_t>(cert.n));
  long c = static_cast<long>(duplicating_digits(g, cert.D, cert.rare, nu_prefix).size());
  return c == cert.duplicating_count && mpq_class(c) > cert.tau * cert.n;
}

WppWitness weak_preperiodicity(const EventuallyPeriodicWord& nu) {
  long q = static_cast<long>(nu.period().size());
  // Positions are counted from the displayed period block, whose preperiod is
  // padded to a whole number of periods.
  long p = (static_cast<long>(nu.preperiod().size()) + q - 1) / q * q;
  for (long k = 1;; ++k) {
    // The progression is eventually periodic with period lcm(k,q)/k, so one
    // sweep of lcm(k,q) letters decides it.
    long span = std::lcm(k, q);
    for (long m = p + 1; m <= p + k; ++m) {
      Letter first = nu.at(static_cast<size_t>(m));
      bool ok = true;
      for (long j = m + k; j < m + span + k && ok; j += k) ok = nu.at(static_cast<size_t>(j)) == first;
      if (ok) return WppWitness{m, k, first};
    }
  }
}

bool verify_wpp(const EventuallyPeriodicWord& nu, const WppWitness& w, std::size_t extra_periods) {
  if (!w.letter || w.k < 1 || w.m < 1) return false;
  long limit = static_cast<long>(nu.preperiod().size() + (extra_periods + 1) * nu.period().size()) + w.m +
               w.k * static_cast<long>(nu.period().size());
  for (long j = w.m; j <= limit; j += w.k)
    if (nu.at(static_cast<size_t>(j)) != *w.letter) return false;
  return true;
}

std::vector<WppWitness> finite_wpp_scan(const Word& prefix, long m_max, long k_max) {
  std::vector<WppWitness> out;
  long n = static_cast<long>(prefix.size());
  for (long k = 1; k <= k_max; ++k)
    for (long m = 1; m <= m_max; ++m) {
      std::optional<Letter> l;
      bool ok = true;
      for (long j = m; j <= n && ok; j += k) {
        Letter c = prefix[static_cast<size_t>(j - 1)];
        if (!l)
          l = c;
        else
          ok = *l == c;
      }
      if (ok) out.push_back(WppWitness{m, k, l});
    }
  return out;
}

Word legal(const Word& g, const Word& nu) {
  Word u = g;
  long n = static_cast<long>(g.size());
  need_prefix(nu, n > 0 ? n - 1 : 0);
  for (long k = n - 1; k >= 1; --k) {
    bool match = true;
    for (long j = k + 1; j <= n && match; ++j)
      match = letters_match(u[static_cast<size_t>(j - 1)], nu[static_cast<size_t>(j - k - 1)]);
    if (match) u[static_cast<size_t>(k - 1)] = kStar;
  }
  return u;
}

Word legal(const Word& g, const EventuallyPeriodicWord& nu) { return legal(g, nu.prefix(g.size())); }

TruncationResult truncation_check(const Word& g, const Word& t, const EventuallyPeriodicWord& nu) {
  Word gt = concat(g, t);
  Word lgt = legal(gt, nu);
  bool hyp = g.empty() || lgt[g.size() - 1] != kStar;
  bool concl = slice(lgt, 1, g.size()) == legal(g, nu);
  return {hyp, concl};
}

bool truncation_holds(const Word& g, const Word& t, const EventuallyPeriodicWord& nu) {
  return truncation_check(g, t, nu).conclusion;
}

long constant_prefix_run(const EventuallyPeriodicWord& nu) {
  Letter first = nu.at(1);
  long limit = static_cast<long>(nu.preperiod().size() + nu.period().size()) + 1;
  long r = 1;
  while (r <= limit && nu.at(static_cast<size_t>(r + 1)) == first) ++r;
  if (r > limit)
    throw Error(ErrorCode::kUnsupported, "kneading sequence is constant; run length unbounded");
  return r;
}

std::vector<long> phi_graph(const Word& u, const EventuallyPeriodicWord& nu) {
  long k = constant_prefix_run(nu);
  long n = static_cast<long>(u.size());
  if (k >= n) throw Error(ErrorCode::kInvalidArgument, "phi needs |u| above the constant-prefix run");
  Word uu = concat(u, u);
  std::vector<long> phi;
  for (long i = 0; i <= k; ++i) {
    Word v = legal(slice(uu, 1, static_cast<size_t>(2 * n - i)), nu);
    long run = 0;
    for (long j = n; j >= 1 && v[static_cast<size_t>(j - 1)] == kStar; --j) ++run;
    phi.push_back(run);
  }
  return phi;
}

}  // namespace lamina
