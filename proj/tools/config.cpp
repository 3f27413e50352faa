#include "config.hpp"

#include <cstdlib>
#include <set>

#include <lamina/error.hpp>

namespace lamina::cli {

json to_json(const RunConfig& c) {
  return {{"schema", kSchemaVersion}, {"degree", c.degree}, {"alpha", c.alpha}, {"depth", c.depth},
          {"K", c.K},                 {"L", c.L},           {"fix_depth", c.fix_depth},
          {"D", c.D},                 {"tau", c.tau},       {"nmax", c.nmax},
          {"samples", c.samples},     {"jobs", c.jobs},     {"circuits", c.circuits},     {"seed", c.seed},
          {"format", c.format}};
}

void check_denominator(const Angle& a) {
  const char* env = std::getenv("LAMINA_MAX_DENOM");
  if (!env || !*env) return;
  mpz_class cap(env, 10);
  if (a.value().get_den() > cap)
    throw Error(ErrorCode::kInvalidArgument, "denominator of " + a.str() + " exceeds LAMINA_MAX_DENOM=" + env);
}

Angle parse_angle(const std::string& text) {
  Angle a(parse_rational(text));
  check_denominator(a);
  return a;
}

std::vector<Angle> angle_family(long bound, const std::string& parity) {
  if (parity != "any" && parity != "odd" && parity != "even")
    throw Error(ErrorCode::kInvalidArgument, "parity must be any, odd or even");
  std::set<Angle> out;
  for (long q = 1; q <= bound; ++q) {
    if ((parity == "odd" && q % 2 == 0) || (parity == "even" && q % 2 == 1)) continue;
    for (long p = 0; p < q; ++p) {
      Angle a(p, q);
      if (a.value().get_den() == q) out.insert(a);
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace lamina::cli
