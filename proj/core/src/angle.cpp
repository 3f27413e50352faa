#include "lamina/angle.hpp"

#include <string>

#include "lamina/error.hpp"

namespace lamina {

namespace {

mpz_class floor_of(const mpq_class& v) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return q;
}

}  // namespace

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIllDefinedAtAlpha: return "IllDefinedAtAlpha";
    case ErrorCode::kIllDefinedAtOrbitPoint: return "IllDefinedAtOrbitPoint";
    case ErrorCode::kNoPeriodicPoint: return "NoPeriodicPoint";
    case ErrorCode::kIllDefined: return "IllDefined";
    case ErrorCode::kPeriodicAlpha: return "PeriodicAlpha";
    case ErrorCode::kDepthLimited: return "DepthLimited";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kFullCircleInput: return "FullCircleInput";
    case ErrorCode::kNotInSet: return "NotInSet";
    case ErrorCode::kIllDefinedLeaf: return "IllDefinedLeaf";
    case ErrorCode::kAmbiguousAtBoundary: return "AmbiguousAtBoundary";
    case ErrorCode::kZeroSeparation: return "ZeroSeparation";
    case ErrorCode::kDegenerateSupport: return "DegenerateSupport";
    case ErrorCode::kOnBoundary: return "OnBoundary";
    case ErrorCode::kNonMonotonePairing: return "NonMonotonePairing";
    case ErrorCode::kSearchExhausted: return "SearchExhausted";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_budget_error(ErrorCode code) {
  return code == ErrorCode::kBudgetExceeded || code == ErrorCode::kSearchExhausted;
}

mpq_class frac(const mpq_class& v) {
  if (sgn(v) >= 0 && v < 1) return v;
  mpq_class r = v - mpq_class(floor_of(v));
  r.canonicalize();
  return r;
}

Angle::Angle(const mpq_class& v) : v_(frac(v)) {}

Angle::Angle(long p, long q) {
  if (q == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  mpq_class v(p, q);
  v.canonicalize();
  v_ = frac(v);
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    while (!t.empty() && isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    size_t i = 0;
    while (i < t.size() && isspace(static_cast<unsigned char>(t[i]))) ++i;
    t.erase(0, i);
  };
  trim(s);
  if (s.empty()) throw Error(ErrorCode::kInvalidArgument, "empty rational");
  auto dot = s.find('.');
  if (dot != std::string::npos && s.find('/') == std::string::npos) {
    std::string frac_digits = s.substr(dot + 1);
    std::string whole = s.substr(0, dot);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    std::string den = "1" + std::string(frac_digits.size(), '0');
    s = whole + frac_digits + "/" + den;
    if (frac_digits.empty() || frac_digits.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorCode::kInvalidArgument, "malformed decimal '" + std::string(text) + "'");
  }
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto digits = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    size_t i = (allow_sign && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (!digits(num, true) || !digits(den, false))
    throw Error(ErrorCode::kInvalidArgument, "malformed rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator in '" + s + "'");
  mpq_class v(n, d);
  v.canonicalize();
  return v;
}

Angle Angle::parse(std::string_view text) { return Angle(parse_rational(text)); }

std::string rational_str(const mpq_class& v) {
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string Angle::str() const { return rational_str(v_); }

mpq_class ccw(const Angle& a, const Angle& b) { return frac(b.value() - a.value()); }

mpq_class circle_dist(const Angle& a, const Angle& b) {
  mpq_class d = ccw(a, b);
  mpq_class e = 1 - d;
  if (d == 0) return d;
  return d < e ? d : e;
}

bool strictly_between(const Angle& a, const Angle& x, const Angle& b) {
  if (x == a || x == b) return false;
  if (a == b) return true;
  return ccw(a, x) < ccw(a, b);
}

bool weakly_between(const Angle& a, const Angle& x, const Angle& b) {
  if (x == a || x == b) return true;
  return ccw(a, x) < ccw(a, b) || a == b;
}

std::size_t AngleHash::operator()(const Angle& a) const {
  std::size_t h1 = std::hash<std::string>()(a.value().get_num().get_str(16));
  std::size_t h2 = std::hash<std::string>()(a.value().get_den().get_str(16));
  return h1 ^ (h2 * 0x9e3779b97f4a7c15ULL);
}

}  // namespace lamina
