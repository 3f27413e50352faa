#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <lamina/serialize.hpp>

namespace lamina::cli {

struct RunConfig {
  int degree = 2;
  std::string alpha;
  long depth = 8;
  long K = 2;
  long L = 2;
  long fix_depth = 10;
  std::vector<long> D{2, 4, 8};
  std::vector<std::string> tau{"1/2", "3/4", "9/10"};
  long nmax = 24;
  long samples = 16;
  long jobs = 1;
  bool circuits = false;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
};

json to_json(const RunConfig& c);

// LAMINA_MAX_DENOM, when set, caps the denominator of every input angle.
void check_denominator(const Angle& a);
Angle parse_angle(const std::string& text);

// Angles p/q in [0,1) with q <= bound, filtered by parity of q ("any", "odd",
// "even"), sorted and reduced.
std::vector<Angle> angle_family(long bound, const std::string& parity);

}  // namespace lamina::cli
