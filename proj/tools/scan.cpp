#include "scan.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <thread>

#include <lamina/error.hpp>

namespace lamina::cli {

namespace {

std::mt19937_64 rng_for(const Angle& alpha, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(seed >> 32),
                    static_cast<std::uint64_t>(alpha.value().get_num().get_ui()),
                    static_cast<std::uint64_t>(alpha.value().get_den().get_ui())};
  return std::mt19937_64(seq);
}

json error_json(const std::string& stage, const std::exception& e) {
  json j = {{"stage", stage}, {"message", e.what()}};
  if (auto* le = dynamic_cast<const Error*>(&e)) j["code"] = error_name(le->code());
  return j;
}

}  // namespace

json scan_angle(const Angle& alpha, const RunConfig& cfg) {
  json rec = {{"alpha", alpha.str()}};
  json errors = json::array();
  Circle c(cfg.degree, alpha);
  EventuallyPeriodicWord nu;
  try {
    nu = kneading(c);
    rec["kneading"] = nu.str(cfg.degree);
    rec["periodic"] = nu.has_star();
  } catch (const std::exception& e) {
    errors.push_back(error_json("kneading", e));
    rec["errors"] = errors;
    return rec;
  }
  try {
    WppWitness w = weak_preperiodicity(nu);
    rec["wpp"] = to_json(w, cfg.degree);
    rec["wpp"]["verified"] = verify_wpp(nu, w);
  } catch (const std::exception& e) {
    errors.push_back(error_json("wpp", e));
  }
  json sr = json::array();
  bool any = false;
  for (long D : cfg.D)
    for (const std::string& t : cfg.tau) {
      json cell = {{"D", D}, {"tau", t}};
      try {
        auto cert = sr_search(nu, D, parse_rational(t), cfg.nmax, SRMode::kExhaustive, 2'000'000);
        cell["certified"] = cert.has_value();
        if (cert) {
          cell["certificate"] = to_json(cfg.degree, *cert);
          any = true;
        }
      } catch (const Error& e) {
        cell["certified"] = false;
        cell["inconclusive"] = error_name(e.code());
      }
      sr.push_back(cell);
    }
  rec["sr"] = sr;
  rec["sr_any"] = any;
  if (cfg.degree != 2) {
    rec["errors"] = errors;
    return rec;
  }
  try {
    DigitFixingVerdict v = digit_fixing_check(c, cfg.K, cfg.L, cfg.fix_depth);
    const char* kind = v.kind == DigitFixingKind::kCertified        ? "certified"
                       : v.kind == DigitFixingKind::kCounterexample ? "counterexample"
                                                                    : "inconclusive";
    rec["digit_fixing"] = {{"kind", kind}, {"L_alpha", v.L_alpha}, {"m", v.m}, {"i", v.i}, {"reason", v.reason}};
  } catch (const std::exception& e) {
    errors.push_back(error_json("digit_fixing", e));
  }
  std::optional<CKCovering> cov;
  try {
    cov.emplace(c, cfg.K);
  } catch (const std::exception& e) {
    errors.push_back(error_json("covering", e));
  }
  auto rng = rng_for(alpha, cfg.seed);
  if (cov) {
    std::uniform_int_distribution<long> px(0, 1008), pn(1, std::max<long>(1, cfg.nmax));
    std::vector<long> counts;
    long failed = 0;
    for (long s = 0; s < cfg.samples; ++s) {
      Angle x(px(rng), 1009);
      long n = pn(rng);
      try {
        counts.push_back(encounter_number(*cov, x, n));
      } catch (const Error&) {
        ++failed;
      }
    }
    json enc = {{"samples", cfg.samples}, {"failed", failed}};
    if (!counts.empty()) {
      std::sort(counts.begin(), counts.end());
      enc["min"] = counts.front();
      enc["median"] = counts[counts.size() / 2];
      enc["max"] = counts.back();
    }
    rec["encounter"] = enc;
  }
  if (cfg.circuits) {
    json cj;
    try {
      cj["periodic_pairs"] = periodic_gluing_pairs(c, 1, 4, 24).size();
    } catch (const std::exception& e) {
      cj["periodic_pairs"] = 0;
      errors.push_back(error_json("periodic_pairs", e));
    }
    cj["nice_circuit"] = false;
    if (cov) {
      try {
        Angle x(1, 1009);
        GluingCircuit g = nice_circuit_for(*cov, x);
        cj["nice_circuit"] = circuit_check(c, g).ok();
      } catch (const std::exception& e) {
        errors.push_back(error_json("nice_circuit", e));
      }
    }
    rec["circuits"] = cj;
  }
  rec["errors"] = errors;
  return rec;
}

json scan(const std::vector<Angle>& family, const RunConfig& cfg) {
  std::vector<json> recs(family.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < family.size();) {
      try {
        recs[i] = scan_angle(family[i], cfg);
      } catch (const std::exception& e) {
        recs[i] = {{"alpha", family[i].str()}, {"errors", json::array({error_json("angle", e)})}};
      }
    }
  };
  long jobs = std::clamp<long>(cfg.jobs, 1, 256);
  std::vector<std::thread> pool;
  for (long j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json summary = {{"angles", family.size()}, {"wpp_verified", 0}, {"sr_certified", 0}, {"with_errors", 0}};
  json fix = {{"certified", 0}, {"counterexample", 0}, {"inconclusive", 0}};
  for (const json& r : recs) {
    if (r.contains("wpp") && r["wpp"].value("verified", false)) summary["wpp_verified"] = summary["wpp_verified"].get<long>() + 1;
    if (r.value("sr_any", false)) summary["sr_certified"] = summary["sr_certified"].get<long>() + 1;
    if (!r["errors"].empty()) summary["with_errors"] = summary["with_errors"].get<long>() + 1;
    if (r.contains("digit_fixing")) {
      std::string k = r["digit_fixing"]["kind"];
      fix[k] = fix[k].get<long>() + 1;
    }
  }
  summary["digit_fixing"] = fix;
  return {{"schema", kSchemaVersion}, {"config", to_json(cfg)}, {"records", recs}, {"summary", summary}};
}

std::string scan_csv(const json& report) {
  std::ostringstream out;
  out << "# " << kCsvVersion << "\n";
  out << "alpha,kneading,wpp_m,wpp_k,wpp_verified,sr_certified,digit_fixing,enc_min,enc_median,enc_max,errors\n";
  for (const json& r : report.at("records")) {
    auto field = [&](const json& obj, const char* key) -> std::string {
      if (!obj.is_object() || !obj.contains(key)) return "";
      const json& v = obj[key];
      return v.is_string() ? v.get<std::string>() : v.dump();
    };
    json wpp = r.value("wpp", json::object());
    json enc = r.value("encounter", json::object());
    json fix = r.value("digit_fixing", json::object());
    out << field(r, "alpha") << "," << field(r, "kneading") << "," << field(wpp, "m") << "," << field(wpp, "k") << ","
        << field(wpp, "verified") << "," << field(r, "sr_any") << "," << field(fix, "kind") << ","
        << field(enc, "min") << "," << field(enc, "median") << "," << field(enc, "max") << ","
        << r.value("errors", json::array()).size() << "\n";
  }
  return out.str();
}

}  // namespace lamina::cli
