#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lamina/circuits.hpp"
#include "lamina/gcs.hpp"
#include "lamina/symbolic.hpp"

namespace lamina {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "lamina-report/1";

json to_json(const Angle& a);
json to_json(const Arc& a);
json to_json(const ArcSet& s);
json to_json(const EncounterTrace& t);
json to_json(int d, const Leaf& f);
json to_json(int d, const GCSPartition& p);
json to_json(const GluingCircuit& g);
json to_json(const CircuitReport& r);
json to_json(int d, const SRCertificate& s);
json to_json(const WppWitness& w, int d);

ArcSet arcset_from_json(const json& j);
GluingCircuit circuit_from_json(const json& j);

struct SvgStyle {
  double stroke = 1.5;
  double circle_stroke = 2.0;
  double arc_stroke = 6.0;
  bool labels = true;
};

// Unit disk drawing on a fixed 1000x1000 canvas. Chords are hyperbolic
// geodesics. Output depends only on the calls made.
class Svg {
 public:
  explicit Svg(SvgStyle style = {});

  void chord(const Angle& a, const Angle& b, const std::string& color = "#222");
  void arc(const Arc& a, const std::string& color, double width = 0);
  void dot(const Angle& a, const std::string& color, double r = 4);
  void label(const Angle& at, const std::string& text, double radius = 1.07);
  void region(const ArcSet& s, const std::string& fill);

  std::string str() const;

 private:
  std::string geodesic_path(const Angle& a, const Angle& b) const;

  SvgStyle style_;
  std::vector<std::string> body_;
};

std::string render_leaves(const Circle& c, long depth, const SvgStyle& st = {});
std::string render_cylinders(const Circle& c, long depth, const SvgStyle& st = {});
std::string render_gcs(const Circle& c, long depth, const SvgStyle& st = {});
std::string render_links(const Circle& c, const std::vector<GluingLink>& links, const SvgStyle& st = {});
std::string render_circuit(const Circle& c, const GluingCircuit& g, const SvgStyle& st = {});

}  // namespace lamina
