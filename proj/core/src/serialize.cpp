#include "lamina/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "lamina/error.hpp"

namespace lamina {

json to_json(const Angle& a) { return a.str(); }

json to_json(const Arc& a) { return {{"start", rational_str(a.start)}, {"length", rational_str(a.length)}}; }

json to_json(const ArcSet& s) {
  if (s.is_full()) return "full";
  json arr = json::array();
  for (const Arc& a : s.arcs()) arr.push_back(to_json(a));
  return arr;
}

json to_json(const EncounterTrace& t) {
  return {{"x", t.x.str()}, {"n", t.n}, {"hits", t.hits}, {"N", t.N()}};
}

json to_json(int d, const Leaf& f) { return {{"word", word_str(d, f.u)}, {"a", f.a.str()}, {"b", f.b.str()}}; }

json to_json(int d, const GCSPartition& p) {
  json links = json::array();
  for (size_t i = 0; i < p.links.size(); ++i)
    links.push_back({{"word", word_str(d, p.words[i])}, {"arcs", to_json(p.links[i])}});
  return {{"depth", p.n}, {"links", links}};
}

namespace {

json measure_json(const DiscreteMeasure& m) {
  json atoms = json::array();
  for (const Atom& a : m.atoms) atoms.push_back({{"x", a.x.str()}, {"w", rational_str(a.w)}});
  return {{"support", to_json(m.support)}, {"atoms", atoms}};
}

Arc arc_from_json(const json& j) {
  return Arc{parse_rational(j.at("start").get<std::string>()), parse_rational(j.at("length").get<std::string>())};
}

DiscreteMeasure measure_from_json(const json& j) {
  DiscreteMeasure m{{}, arc_from_json(j.at("support"))};
  for (const json& a : j.at("atoms"))
    m.atoms.push_back(Atom{Angle::parse(a.at("x").get<std::string>()), parse_rational(a.at("w").get<std::string>())});
  return m;
}

}  // namespace

json to_json(const GluingCircuit& g) {
  json pairs = json::array();
  for (size_t j = 0; j < g.size(); ++j)
    pairs.push_back({{"A_prime", to_json(g.Ap[j])},
                     {"A", to_json(g.A[j])},
                     {"mu_prime", measure_json(g.mup[j])},
                     {"mu", measure_json(g.mu[j])},
                     {"phi", g.phi[j]}});
  return {{"N", g.N}, {"C", g.C}, {"r", rational_str(g.r)}, {"pairs", pairs}};
}

GluingCircuit circuit_from_json(const json& j) {
  GluingCircuit g;
  g.N = j.at("N").get<long>();
  g.C = j.at("C").get<double>();
  g.r = parse_rational(j.at("r").get<std::string>());
  for (const json& p : j.at("pairs")) {
    g.Ap.push_back(arc_from_json(p.at("A_prime")));
    g.A.push_back(arc_from_json(p.at("A")));
    g.mup.push_back(measure_from_json(p.at("mu_prime")));
    g.mu.push_back(measure_from_json(p.at("mu")));
    g.phi.push_back(p.at("phi").get<std::vector<size_t>>());
  }
  return g;
}

ArcSet arcset_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "full") return ArcSet::full();
  std::vector<Arc> arcs;
  for (const json& a : j) arcs.push_back(arc_from_json(a));
  return ArcSet::of(std::move(arcs));
}

json to_json(const CircuitReport& r) {
  return {{"ok", r.ok()},
          {"count", r.count_ok},
          {"order", r.order_ok},
          {"diameters", r.diam_ok},
          {"energies", r.energy_ok},
          {"gluing", r.glue_ok},
          {"failing_index", r.failing_index},
          {"detail", r.detail},
          {"max_energy", r.max_energy}};
}

json to_json(int, const SRCertificate& s) {
  return {{"D", s.D}, {"tau", rational_str(s.tau)}, {"n", s.n}, {"rare", s.rare}, {"duplicating", s.duplicating_count}};
}

json to_json(const WppWitness& w, int d) {
  json j = {{"m", w.m}, {"k", w.k}};
  if (w.letter) j["letter"] = word_str(d, Word{*w.letter});
  return j;
}

// Drawing.

namespace {

constexpr double kSize = 1000, kCenter = 500, kRadius = 440;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void point(const Angle& a, double rad, double& x, double& y) {
  double t = 2 * std::numbers::pi * a.to_double();
  x = kCenter + rad * kRadius * std::cos(t);
  y = kCenter - rad * kRadius * std::sin(t);
}

const char* kPalette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#46f0f0",
                          "#f032e6", "#bcf60c", "#008080", "#9a6324", "#800000", "#000075"};

std::string color(size_t i) { return kPalette[i % (sizeof kPalette / sizeof *kPalette)]; }

}  // namespace

Svg::Svg(SvgStyle style) : style_(style) {}

std::string Svg::geodesic_path(const Angle& a, const Angle& b) const {
  double x1, y1, x2, y2;
  point(a, 1, x1, y1);
  point(b, 1, x2, y2);
  mpq_class span = ccw(a, b);
  std::string head = "M " + num(x1) + " " + num(y1) + " ";
  if (span == mpq_class(1, 2) || sgn(span) == 0) return head + "L " + num(x2) + " " + num(y2);
  // The orthogonal circle has radius tan(pi * span) in disk units; the short
  // way round bends toward the center.
  double ang = std::numbers::pi * span.get_d();
  double r = std::abs(std::tan(ang)) * kRadius;
  int sweep = span < mpq_class(1, 2) ? 1 : 0;
  return head + "A " + num(r) + " " + num(r) + " 0 0 " + std::to_string(sweep) + " " + num(x2) + " " + num(y2);
}

void Svg::chord(const Angle& a, const Angle& b, const std::string& col) {
  if (a == b) return;
  body_.push_back("<path d=\"" + geodesic_path(a, b) + "\" fill=\"none\" stroke=\"" + col + "\" stroke-width=\"" +
                  num(style_.stroke) + "\"/>");
}

void Svg::arc(const Arc& a, const std::string& col, double width) {
  if (width <= 0) width = style_.arc_stroke;
  double x1, y1, x2, y2;
  point(a.a(), 1, x1, y1);
  point(a.b(), 1, x2, y2);
  if (sgn(a.length) == 0) {
    dot(a.a(), col, width / 2);
    return;
  }
  int large = a.length > mpq_class(1, 2) ? 1 : 0;
  body_.push_back("<path d=\"M " + num(x1) + " " + num(y1) + " A " + num(kRadius) + " " + num(kRadius) + " 0 " +
                  std::to_string(large) + " 0 " + num(x2) + " " + num(y2) + "\" fill=\"none\" stroke=\"" + col +
                  "\" stroke-width=\"" + num(width) + "\"/>");
}

void Svg::dot(const Angle& a, const std::string& col, double r) {
  double x, y;
  point(a, 1, x, y);
  body_.push_back("<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"" + num(r) + "\" fill=\"" + col + "\"/>");
}

void Svg::label(const Angle& at, const std::string& text, double radius) {
  if (!style_.labels) return;
  double x, y;
  point(at, radius, x, y);
  body_.push_back("<text x=\"" + num(x) + "\" y=\"" + num(y) +
                  "\" font-family=\"monospace\" font-size=\"18\" text-anchor=\"middle\">" + text + "</text>");
}

void Svg::region(const ArcSet& s, const std::string& fill) {
  if (s.is_full() || s.empty()) return;
  // Boundary: each arc along the circle, then the geodesic to the next arc.
  const auto& arcs = s.arcs();
  std::string d;
  for (size_t k = 0; k < arcs.size(); ++k) {
    double x1, y1, x2, y2;
    point(arcs[k].a(), 1, x1, y1);
    point(arcs[k].b(), 1, x2, y2);
    if (k == 0) d += "M " + num(x1) + " " + num(y1) + " ";
    int large = arcs[k].length > mpq_class(1, 2) ? 1 : 0;
    d += "A " + num(kRadius) + " " + num(kRadius) + " 0 " + std::to_string(large) + " 0 " + num(x2) + " " + num(y2) +
         " ";
    const Angle nx = arcs[(k + 1) % arcs.size()].a();
    std::string g = geodesic_path(arcs[k].b(), nx);
    d += g.substr(g.find(' ', g.find(' ', 2) + 1) + 1) + " ";
  }
  body_.push_back("<path d=\"" + d + "Z\" fill=\"" + fill + "\" fill-opacity=\"0.35\" stroke=\"none\"/>");
}

std::string Svg::str() const {
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n";
  out += "<!-- " + std::string(kSchemaVersion) + " -->\n";
  out += "<rect width=\"" + num(kSize) + "\" height=\"" + num(kSize) + "\" fill=\"white\"/>\n";
  out += "<circle cx=\"500\" cy=\"500\" r=\"" + num(kRadius) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"" +
         num(style_.circle_stroke) + "\"/>\n";
  for (const std::string& b : body_) out += b + "\n";
  out += "</svg>\n";
  return out;
}

namespace {

void mark_stars(Svg& s, const Circle& c) {
  for (int i = 1; i <= c.degree(); ++i) {
    s.dot(c.star(i), "black");
    s.label(c.star(i), "*" + std::to_string(i), 1.11);
  }
  s.dot(c.alpha(), "#d00");
  s.label(c.alpha(), "a", 1.11);
}

}  // namespace

std::string render_leaves(const Circle& c, long depth, const SvgStyle& st) {
  Svg s(st);
  for (long n = 0; n <= depth; ++n)
    for (const Leaf& f : leaves(c, n)) s.chord(f.a, f.b, n == 0 ? "#000" : "#444");
  mark_stars(s, c);
  return s.str();
}

std::string render_cylinders(const Circle& c, long depth, const SvgStyle& st) {
  Svg s(st);
  size_t total = 1;
  for (long i = 0; i < depth; ++i) total *= static_cast<size_t>(c.degree());
  for (size_t code = 0; code < total; ++code) {
    Word w;
    for (size_t v = code, i = 0; i < static_cast<size_t>(depth); ++i, v /= c.degree())
      w.insert(w.begin(), static_cast<Letter>(v % c.degree() + 1));
    try {
      GluingLink l = cylinder(c, w);
      s.region(l, color(code));
      for (const Arc& a : l.arcs()) s.arc(a, color(code));
      if (!l.is_full() && !l.arcs().empty()) {
        const Arc& a = l.arcs().front();
        s.label(Angle(a.start + a.length / 2), word_str(c.degree(), w), 1.1);
      }
    } catch (const Error&) {
    }
  }
  mark_stars(s, c);
  return s.str();
}

std::string render_gcs(const Circle& c, long depth, const SvgStyle& st) {
  GCSPartition p = gcs_partition(c, depth);
  Svg s(st);
  for (size_t i = 0; i < p.links.size(); ++i) {
    s.region(p.links[i], color(i));
    for (const Arc& a : p.links[i].arcs()) s.arc(a, color(i));
    const Arc& a = p.links[i].arcs().front();
    s.label(Angle(a.start + a.length / 2), word_str(c.degree(), p.words[i]), 1.1);
  }
  for (const Leaf& f : p.leaf_list) s.chord(f.a, f.b);
  mark_stars(s, c);
  return s.str();
}

std::string render_links(const Circle& c, const std::vector<GluingLink>& links, const SvgStyle& st) {
  Svg s(st);
  for (size_t i = 0; i < links.size(); ++i) {
    s.region(links[i], color(i));
    for (const Arc& a : links[i].arcs()) s.arc(a, color(i));
  }
  mark_stars(s, c);
  return s.str();
}

std::string render_circuit(const Circle& c, const GluingCircuit& g, const SvgStyle& st) {
  Svg s(st);
  size_t n = g.size();
  for (size_t j = 0; j < n; ++j) {
    s.arc(g.A[j], color(j));
    s.arc(g.Ap[j], color(j));
    s.label(Angle(g.A[j].start + g.A[j].length / 2), "A" + std::to_string(j + 1), 1.1);
    s.label(Angle(g.Ap[j].start + g.Ap[j].length / 2), "A'" + std::to_string(j + 1), 1.1);
    const DiscreteMeasure& to = g.mup[(j + 1) % n];
    for (size_t k = 0; k < g.phi[j].size(); ++k) s.chord(g.mu[j].atoms[k].x, to.atoms[g.phi[j][k]].x, "#777");
  }
  mark_stars(s, c);
  return s.str();
}

}  // namespace lamina
