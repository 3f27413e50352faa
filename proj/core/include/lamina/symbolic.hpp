#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lamina/angle.hpp"
#include "lamina/circle.hpp"
#include "lamina/word.hpp"

namespace lamina {

// Itinerary of alpha itself; contains a star exactly when alpha is periodic.
EventuallyPeriodicWord kneading(const Circle& c);
EventuallyPeriodicWord kneading(int d, const Angle& alpha);

// First n letters of the itinerary of x.
Word itinerary(const Circle& c, const Angle& x, std::size_t n);
Word itinerary(int d, const Angle& alpha, const Angle& x, std::size_t n);
// Whole itinerary of a rational x.
EventuallyPeriodicWord full_itinerary(const Circle& c, const Angle& x);

using IndexSet = std::vector<long>;  // sorted, 1-based

// g|[a,b] against nu|[1,b-a+1], skipping excused indices of g; star matches
// anything. nu must be at least b-a+1 long.
bool is_duplicating(const Word& g, long a, long b, const IndexSet& excused, const Word& nu);
bool is_rare(const IndexSet& r, long D);
IndexSet duplicating_digits(const Word& g, long D, const IndexSet& r, const Word& nu);

struct SRCertificate {
  long D = 0;
  mpq_class tau;
  long n = 0;
  IndexSet rare;
  long duplicating_count = 0;
};

enum class SRMode { kExhaustive, kGreedy };

struct SRStats {
  long evaluations = 0;
  long largest_n = 0;
  long best_count = 0;
};

// Sound but incomplete. Exhaustive mode enumerates rare sets while n is at
// most exhaustive_cap and falls back to greedy placement beyond it.
std::optional<SRCertificate> sr_search(const EventuallyPeriodicWord& nu, long D, const mpq_class& tau,
                                       long n_max, SRMode mode, long budget = 50'000'000,
                                       long exhaustive_cap = 12, SRStats* stats = nullptr);
// Finite-prefix variant; n_max is capped by the prefix length.
std::optional<SRCertificate> sr_search(const Word& nu_prefix, long D, const mpq_class& tau,
                                       long n_max, SRMode mode, long budget = 50'000'000,
                                       long exhaustive_cap = 12, SRStats* stats = nullptr);
bool verify_sr(const SRCertificate& cert, const Word& nu_prefix);

struct WppWitness {
  long m = 0;
  long k = 0;
  std::optional<Letter> letter;  // unset when the progression is empty
};

// Least (k, m) with nu[m + k n] constant for n >= 0, m in the periodic part.
WppWitness weak_preperiodicity(const EventuallyPeriodicWord& nu);
bool verify_wpp(const EventuallyPeriodicWord& nu, const WppWitness& w, std::size_t extra_periods = 10);
std::vector<WppWitness> finite_wpp_scan(const Word& prefix, long m_max, long k_max);

Word legal(const Word& g, const Word& nu);
Word legal(const Word& g, const EventuallyPeriodicWord& nu);

struct TruncationResult {
  bool hypothesis;  // legal(g t)[|g|] is not a star
  bool conclusion;  // legal(g t)|[1,|g|] == legal(g)
};
TruncationResult truncation_check(const Word& g, const Word& t, const EventuallyPeriodicWord& nu);
bool truncation_holds(const Word& g, const Word& t, const EventuallyPeriodicWord& nu);

// Length of the longest run of equal letters at the start of nu.
long constant_prefix_run(const EventuallyPeriodicWord& nu);

// phi(i) for i = 0..k, k = constant_prefix_run(nu); needs k < |u|.
std::vector<long> phi_graph(const Word& u, const EventuallyPeriodicWord& nu);

}  // namespace lamina
