#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <lamina/error.hpp>

#include "config.hpp"
#include "scan.hpp"

using namespace lamina;
using lamina::cli::RunConfig;

namespace {

void emit(const RunConfig& cfg, const std::string& text, const json& j) {
  std::string body = cfg.format == "json" ? j.dump(2) + "\n" : text + "\n";
  if (cfg.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + cfg.out);
  f << body;
}

json report(const RunConfig& cfg, json result) {
  return {{"schema", kSchemaVersion}, {"config", cli::to_json(cfg)}, {"result", std::move(result)}};
}

void write_file(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string encounter_plot(const std::vector<long>& counts) {
  double w = 1000, h = 1000, m = 80;
  long top = 1;
  for (long v : counts) top = std::max(top, v);
  auto px = [&](size_t i) { return m + (w - 2 * m) * static_cast<double>(i) / std::max<size_t>(1, counts.size()); };
  auto py = [&](long v) { return h - m - (h - 2 * m) * static_cast<double>(v) / static_cast<double>(top); };
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n";
  s += "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
  s += "<line x1=\"80\" y1=\"920\" x2=\"920\" y2=\"920\" stroke=\"black\"/>\n";
  s += "<line x1=\"80\" y1=\"80\" x2=\"80\" y2=\"920\" stroke=\"black\"/>\n";
  s += "<text x=\"500\" y=\"965\" font-family=\"monospace\" font-size=\"20\" text-anchor=\"middle\">n</text>\n";
  s += "<text x=\"30\" y=\"500\" font-family=\"monospace\" font-size=\"20\">N(x,n)</text>\n";
  std::string pts;
  char buf[64];
  for (size_t i = 0; i < counts.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(i + 1), py(counts[i]));
    pts += buf;
  }
  s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"#4363d8\" stroke-width=\"3\"/>\n</svg>\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact combinatorics of quadratic invariant laminations"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string x_text, word_text, angles_text, parity = "any", plot, what;
  long n = 8, qmax = 0;
  double stroke = 1.5;
  bool no_labels = false;

  auto common = [&](CLI::App* s, bool need_alpha = true) {
    auto* a = s->add_option("--alpha", cfg.alpha, "angle p/q");
    if (need_alpha) a->required();
    s->add_option("--degree", cfg.degree, "degree d")->check(CLI::Range(2, 64));
    s->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json", "svg", "csv"}));
    s->add_option("--out", cfg.out, "output path");
  };
  cfg.format = "text";

  auto* it = app.add_subcommand("itinerary", "first n itinerary letters of x");
  common(it);
  it->add_option("--x", x_text)->required();
  it->add_option("--n", n)->check(CLI::Range(0L, 1L << 20));
  auto* kn = app.add_subcommand("kneading", "kneading sequence of alpha");
  common(kn);
  auto* lg = app.add_subcommand("legal", "legal word of a star-free word");
  common(lg);
  lg->add_option("--word", word_text)->required();
  auto* cl = app.add_subcommand("class", "equivalence class of x");
  common(cl);
  cl->add_option("--x", x_text)->required();
  cl->add_option("--depth", cfg.depth)->check(CLI::PositiveNumber);
  auto* rd = app.add_subcommand("render", "SVG figure");
  common(rd);
  rd->add_option("what", what)->required()->check(CLI::IsMember({"leaves", "cylinders", "gcs", "circuit", "links"}));
  rd->add_option("--depth", cfg.depth)->check(CLI::NonNegativeNumber);
  rd->add_option("--K", cfg.K)->check(CLI::NonNegativeNumber);
  rd->add_option("--x", x_text);
  rd->add_option("--stroke", stroke)->check(CLI::PositiveNumber);
  rd->add_flag("--no-labels", no_labels);
  auto* sc = app.add_subcommand("scan", "detectors over a family of angles");
  common(sc, false);
  sc->add_option("--angles", angles_text, "comma separated list");
  sc->add_option("--qmax", qmax, "all p/q with q up to this bound")->check(CLI::NonNegativeNumber);
  sc->add_option("--parity", parity)->check(CLI::IsMember({"any", "odd", "even"}));
  sc->add_option("--D", cfg.D)->delimiter(',');
  sc->add_option("--tau", cfg.tau)->delimiter(',');
  sc->add_option("--nmax", cfg.nmax)->check(CLI::PositiveNumber);
  sc->add_option("--K", cfg.K)->check(CLI::NonNegativeNumber);
  sc->add_option("--L", cfg.L)->check(CLI::PositiveNumber);
  sc->add_option("--depth", cfg.fix_depth)->check(CLI::PositiveNumber);
  sc->add_option("--samples", cfg.samples)->check(CLI::NonNegativeNumber);
  sc->add_option("--jobs", cfg.jobs)->check(CLI::PositiveNumber);
  sc->add_option("--seed", cfg.seed);
  sc->add_flag("--circuits", cfg.circuits, "also search periodic pairs and circuits");
  auto* en = app.add_subcommand("encounter", "encounter numbers N(x,n) for the C^K covering");
  common(en);
  en->add_option("--x", x_text)->required();
  en->add_option("--K", cfg.K)->check(CLI::NonNegativeNumber);
  en->add_option("--nmax", cfg.nmax)->check(CLI::PositiveNumber);
  en->add_option("--plot", plot, "SVG plot path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::optional<Circle> c;
    if (!cfg.alpha.empty()) c.emplace(cfg.degree, cli::parse_angle(cfg.alpha));
    if (it->parsed()) {
      Angle x = cli::parse_angle(x_text);
      std::string w = word_str(cfg.degree, itinerary(*c, x, static_cast<size_t>(n)));
      emit(cfg, w, report(cfg, {{"x", x.str()}, {"n", n}, {"itinerary", w}}));
    } else if (kn->parsed()) {
      std::string k = kneading(*c).str(cfg.degree);
      emit(cfg, k, report(cfg, {{"kneading", k}}));
    } else if (lg->parsed()) {
      Word g = parse_word(cfg.degree, word_text);
      if (has_star(g)) throw Error(ErrorCode::kInvalidArgument, "input word must be star-free");
      std::string w = word_str(cfg.degree, legal(g, kneading(*c)));
      emit(cfg, w, report(cfg, {{"word", word_text}, {"legal", w}}));
    } else if (cl->parsed()) {
      Angle x = cli::parse_angle(x_text);
      ClassResult r = equivalence_class(*c, x, cfg.depth);
      json pts = json::array();
      std::string text;
      for (const Angle& p : r.points) {
        pts.push_back(p.str());
        text += (text.empty() ? "" : " ") + p.str();
      }
      emit(cfg, text, report(cfg, {{"x", x.str()}, {"points", pts}, {"confirmed", r.confirmed}}));
    } else if (rd->parsed()) {
      SvgStyle st;
      st.stroke = stroke;
      st.labels = !no_labels;
      std::string svg;
      if (what == "leaves") {
        svg = render_leaves(*c, cfg.depth, st);
      } else if (what == "cylinders") {
        svg = render_cylinders(*c, cfg.depth, st);
      } else if (what == "gcs") {
        svg = render_gcs(*c, cfg.depth, st);
      } else {
        if (x_text.empty()) throw Error(ErrorCode::kInvalidArgument, "render " + what + " needs --x");
        Angle x = cli::parse_angle(x_text);
        CKCovering cov(*c, cfg.K);
        if (what == "links") {
          svg = render_links(*c, pullback_chain(cov, x, cfg.depth).links, st);
        } else {
          GluingCircuit g;
          try {
            g = nice_circuit_for(cov, x);
          } catch (const Error&) {
            g = leaf_circuit(*c, cov.link_for(x), x, 4, cfg.K + 1, cfg.K + 10);
          }
          svg = render_circuit(*c, g, st);
        }
      }
      write_file(cfg.out, svg);
    } else if (sc->parsed()) {
      std::vector<Angle> fam;
      if (qmax > 0) fam = cli::angle_family(qmax, parity);
      std::stringstream ss(angles_text);
      for (std::string tok; std::getline(ss, tok, ',');)
        if (!tok.empty()) fam.push_back(cli::parse_angle(tok));
      for (const Angle& a : fam) cli::check_denominator(a);
      json rep = cli::scan(fam, cfg);
      if (cfg.format == "csv")
        write_file(cfg.out, cli::scan_csv(rep));
      else
        write_file(cfg.out, rep.dump(2) + "\n");
    } else if (en->parsed()) {
      Angle x = cli::parse_angle(x_text);
      CKCovering cov(*c, cfg.K);
      std::vector<long> counts;
      json traces = json::array();
      for (long k = 1; k <= cfg.nmax; ++k) {
        PullbackChain ch = pullback_chain(cov, x, k);
        counts.push_back(ch.trace.N());
        traces.push_back(to_json(ch.trace));
      }
      std::string text;
      for (size_t i = 0; i < counts.size(); ++i) text += std::to_string(i + 1) + " " + std::to_string(counts[i]) + "\n";
      if (!text.empty()) text.pop_back();
      cfg.format = cfg.format == "text" ? "text" : "json";
      emit(cfg, text, report(cfg, {{"x", x.str()}, {"K", cfg.K}, {"N", counts}, {"traces", traces}}));
      if (!plot.empty()) write_file(plot, encounter_plot(counts));
    }
  } catch (const Error& e) {
    json j = {{"error", error_name(e.code())}, {"message", e.what()}};
    if (e.index() >= 0) j["index"] = e.index();
    std::cerr << j.dump() << "\n";
    return is_budget_error(e.code()) ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
