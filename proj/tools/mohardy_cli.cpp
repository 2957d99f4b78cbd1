// Command-line front end: norm, decompose, certify, bmo, indices, multiplier.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mohardy/atoms.hpp"
#include "mohardy/bmo.hpp"
#include "mohardy/czd.hpp"
#include "mohardy/error.hpp"
#include "mohardy/growth.hpp"
#include "mohardy/maximal.hpp"
#include "mohardy/norms.hpp"

using namespace mohardy;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kSchemaVersion = 1;

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  long seed = 0;
  int threads = 1;
  std::string growth;
  std::string family;
  std::string preset;
  std::string csv;
  std::string ball;
  std::string levels;
  std::string scales;
  std::optional<double> height;
  std::optional<int> degree;
  std::optional<int> dict_size;
  std::optional<int> dict_m;
  std::optional<double> q;
  std::optional<double> recon_tol;
  bool log_atom = false;
  bool hardy = false;
  std::vector<std::string> corpus;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("malformed config: ") + e.what());
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("config field '") + key + "': " + e.what());
  }
}

Grid make_grid(const json& cfg) {
  const json g = cfg.value("grid", json::object());
  const int dim = get_or<int>(g, "dim", 1);
  const auto res = get_or<std::size_t>(g, "resolution", dim == 1 ? 4096 : 128);
  std::vector<Interval> box;
  if (g.contains("box")) {
    for (const auto& iv : g.at("box")) {
      if (!iv.is_array() || iv.size() != 2) fail(ErrorKind::Parse, "grid.box entries must be [lo, hi]");
      box.push_back({iv[0].get<double>(), iv[1].get<double>()});
    }
  } else {
    box.assign(static_cast<std::size_t>(dim), Interval{-4.0, 4.0});
  }
  return Grid(dim, box, res);
}

// "power:a=0,p=0.5", "log-theta", "p-log:p=0.5", "t", "sqrt"
GrowthFunction parse_growth(const std::string& spec, int dim) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  double a = 0.0, p = 1.0;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string kv;
    while (std::getline(ss, kv, ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) fail(ErrorKind::Parse, "growth parameter '" + kv + "' needs key=value");
      const std::string key = kv.substr(0, eq);
      double v = 0.0;
      try {
        v = std::stod(kv.substr(eq + 1));
      } catch (const std::exception&) {
        fail(ErrorKind::Parse, "growth parameter '" + kv + "' is not a number");
      }
      if (key == "a")
        a = v;
      else if (key == "p")
        p = v;
      else
        fail(ErrorKind::Parse, "unknown growth parameter '" + key + "'");
    }
  }
  if (name == "t") return power_growth(0.0, 1.0, dim);
  if (name == "sqrt") return power_growth(0.0, 0.5, dim);
  if (name == "power") return power_growth(a, p, dim);
  if (name == "log-theta") return log_theta();
  if (name == "p-log") return p_log(p);
  fail(ErrorKind::Parse, "unknown growth family '" + name + "'");
}

std::string growth_spec(const Options& o, const json& cfg) {
  if (!o.growth.empty()) return o.growth;
  if (!cfg.contains("growth")) return "t";
  const json& g = cfg.at("growth");
  if (g.is_string()) return g.get<std::string>();
  std::ostringstream s;
  s << get_or<std::string>(g, "family", "power") << ":a=" << get_or<double>(g, "a", 0.0)
    << ",p=" << get_or<double>(g, "p", 1.0);
  return s.str();
}

std::optional<Ball> parse_ball(const Options& o, const json& cfg, int dim) {
  if (!o.ball.empty()) {
    std::vector<double> v;
    std::stringstream ss(o.ball);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        v.push_back(std::stod(cell));
      } catch (const std::exception&) {
        fail(ErrorKind::Parse, "malformed --ball '" + o.ball + "'");
      }
    }
    if (v.size() != static_cast<std::size_t>(dim) + 1)
      fail(ErrorKind::Parse, "--ball needs " + std::to_string(dim) + " centre coordinate(s) and a radius");
    return Ball{{v[0], dim == 2 ? v[1] : 0.0}, v.back()};
  }
  if (!cfg.contains("ball")) return std::nullopt;
  const json& b = cfg.at("ball");
  const auto c = get_or<std::vector<double>>(b, "center", {});
  if (c.size() != static_cast<std::size_t>(dim)) fail(ErrorKind::Parse, "ball.center has the wrong length");
  return Ball{{c[0], dim == 2 ? c[1] : 0.0}, get_or<double>(b, "radius", 0.0)};
}

BallFamily make_family(const std::string& kind, const Grid& grid, const json& cfg) {
  std::string k = kind;
  if (k.empty() && cfg.contains("family") && cfg.at("family").is_string())
    k = cfg.at("family").get<std::string>();
  const double h = grid.cell_width();
  const double w = grid.axis(0).width();
  const std::size_t n = grid.resolution();
  if (k.empty() && cfg.contains("family") && cfg.at("family").is_object()) {
    const json& f = cfg.at("family");
    return make_ball_family(grid, get_or<std::size_t>(f, "stride", n / 32),
                            get_or<double>(f, "r_min", 4 * h), get_or<double>(f, "r_max", w / 4));
  }
  if (k.empty() || k == "coarse") return make_ball_family(grid, std::max<std::size_t>(1, n / 32), 4 * h, w / 4);
  if (k == "fine") return make_ball_family(grid, std::max<std::size_t>(1, n / 128), h, w / 4);
  fail(ErrorKind::Parse, "unknown family '" + k + "' (coarse, fine)");
}

TestDictionary make_dictionary(const Options& o, const json& cfg, const Grid& grid, int m_default) {
  const json d = cfg.value("dictionary", json::object());
  const int m = o.dict_m.value_or(get_or<int>(d, "m", m_default));
  const auto size = static_cast<std::size_t>(
      o.dict_size.value_or(get_or<int>(d, "size", static_cast<int>(kDefaultDictSize))));
  std::vector<double> scales;
  if (!o.scales.empty()) {
    std::stringstream ss(o.scales);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        scales.push_back(std::stod(cell));
      } catch (const std::exception&) {
        fail(ErrorKind::Parse, "malformed --scales '" + o.scales + "'");
      }
    }
  } else if (d.contains("scales") && d.at("scales").is_array()) {
    scales = d.at("scales").get<std::vector<double>>();
  } else {
    scales = default_scales(grid);
  }
  return build_dictionary(m, size, scales, grid.dim());
}

GridFunction preset(const std::string& name, const Grid& grid, const GrowthFunction& gf,
                    const std::optional<Ball>& ball) {
  auto need_ball = [&]() -> const Ball& {
    if (!ball) fail(ErrorKind::Precondition, "preset '" + name + "' needs a ball (--ball)");
    return *ball;
  };
  auto box = [&](double lo, double hi) {
    return sample(grid, [&](const Point& x) {
      for (int a = 0; a < grid.dim(); ++a)
        if (x[static_cast<std::size_t>(a)] < lo || x[static_cast<std::size_t>(a)] > hi) return 0.0;
      return 1.0;
    });
  };
  if (name == "zero") return GridFunction(grid);
  if (name == "indicator01") return box(0.0, 1.0);
  if (name == "indicator02") return box(0.0, 2.0);
  if (name == "bump") return sample(grid, [](const Point& x) { return bump({x[0] / 0.5, x[1] / 0.5}); });
  if (name == "sign") return sample(grid, [](const Point& x) { return x[0] < 0 ? -1.0 : 1.0; });
  if (name == "logabs")
    return sample(grid, [](const Point& x) { return std::clamp(std::log(norm(x)), -8.0, 8.0); });
  if (name == "balanced-atom") {
    const Ball& b = need_ball();
    return balanced_pattern(grid, b, 1.0 / chi_ball_norm(gf, grid, b));
  }
  if (name == "chi-ball") {
    const Ball& b = need_ball();
    return sample(grid, [&](const Point& x) { return b.contains(x) ? 1.0 : 0.0; });
  }
  fail(ErrorKind::Parse, "unknown preset '" + name + "'");
}

GridFunction load_input(const Options& o, const json& cfg, const Grid& grid, const GrowthFunction& gf,
                        const std::optional<Ball>& ball, const std::string& fallback) {
  std::string csv = o.csv, name = o.preset;
  if (csv.empty() && name.empty() && cfg.contains("input")) {
    csv = get_or<std::string>(cfg.at("input"), "csv", "");
    name = get_or<std::string>(cfg.at("input"), "preset", "");
  }
  if (!csv.empty()) {
    std::ifstream in(csv);
    if (!in) fail(ErrorKind::Io, "cannot open input '" + csv + "'");
    return read_csv(in, grid);
  }
  return preset(name.empty() ? fallback : name, grid, gf, ball);
}

std::string input_label(const Options& o, const json& cfg, const std::string& fallback) {
  if (!o.csv.empty()) return "csv:" + o.csv;
  if (!o.preset.empty()) return o.preset;
  if (cfg.contains("input")) {
    const auto c = get_or<std::string>(cfg.at("input"), "csv", "");
    if (!c.empty()) return "csv:" + c;
    const auto p = get_or<std::string>(cfg.at("input"), "preset", "");
    if (!p.empty()) return p;
  }
  return fallback;
}

json ball_json(const Ball& b, int dim) {
  json c = json::array();
  for (int a = 0; a < dim; ++a) c.push_back(b.center[static_cast<std::size_t>(a)]);
  return {{"center", c}, {"radius", b.radius}};
}

// temp file + rename
void write_atomic(const fs::path& path, const std::string& text) {
  std::error_code ec;
  fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path(), ec);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write '" + tmp.string() + "'");
    out << text;
    if (!out) fail(ErrorKind::Io, "write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path, ec);
  if (ec) fail(ErrorKind::Io, "cannot rename to '" + path.string() + "': " + ec.message());
}

void emit(const Options& o, const std::string& name, json report) {
  report["schema_version"] = kSchemaVersion;
  report["seed"] = o.seed;
  report["threads"] = o.threads;
  write_atomic(fs::path(o.out_dir) / (name + ".json"), report.dump(2) + "\n");
}

std::string svg_overlay(const GridFunction& f, const std::vector<Ball>& balls) {
  const Grid& g = f.grid();
  const double W = 800, H = g.dim() == 1 ? 300 : 800;
  const double x0 = g.axis(0).lo, xw = g.axis(0).width();
  const double y0 = g.dim() == 2 ? g.axis(1).lo : 0.0, yw = g.dim() == 2 ? g.axis(1).width() : 1.0;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double fmax = std::max(f.max_abs(), 1e-300);
  if (g.dim() == 1) {
    s << "<polyline fill=\"none\" stroke=\"black\" points=\"";
    const std::size_t step = std::max<std::size_t>(1, g.size() / 2000);
    for (std::size_t i = 0; i < g.size(); i += step)
      s << (g.node(i)[0] - x0) / xw * W << ',' << H / 2 - f[i] / fmax * H * 0.4 << ' ';
    s << "\"/>\n";
    for (const Ball& b : balls)
      s << "<circle cx=\"" << (b.center[0] - x0) / xw * W << "\" cy=\"" << H / 2 << "\" r=\""
        << b.radius / xw * W << "\" fill=\"none\" stroke=\"steelblue\"/>\n";
  } else {
    const std::size_t n = g.resolution(), step = std::max<std::size_t>(1, n / 200);
    for (std::size_t j = 0; j < n; j += step)
      for (std::size_t i = 0; i < n; i += step) {
        const double v = f[g.flatten(i, j)];
        if (v == 0.0) continue;
        const Point p = g.node(g.flatten(i, j));
        s << "<rect x=\"" << (p[0] - x0) / xw * W << "\" y=\"" << H - (p[1] - y0) / yw * H
          << "\" width=\"" << W / 200 << "\" height=\"" << H / 200 << "\" fill=\""
          << (v > 0 ? "salmon" : "lightblue") << "\"/>\n";
      }
    for (const Ball& b : balls)
      s << "<circle cx=\"" << (b.center[0] - x0) / xw * W << "\" cy=\""
        << H - (b.center[1] - y0) / yw * H << "\" r=\"" << b.radius / xw * W
        << "\" fill=\"none\" stroke=\"steelblue\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

// The dictionary order must reach the declared m of the growth function.
void check_hardy_order(const TestDictionary& dict, const GrowthFunction& gf, int dim) {
  if (!gf.declared()) return;
  const int m = m_index(dim, gf.declared()->q, gf.declared()->i);
  if (dict.m < m)
    fail(ErrorKind::Precondition,
         "dictionary order m = " + std::to_string(dict.m) + " is below m_hat = " + std::to_string(m));
}

// ---------------------------------------------------------------- commands

void cmd_norm(const Options& o) {
  const json cfg = load_config(o.config_path);
  const Grid grid = make_grid(cfg);
  const GrowthFunction gf = parse_growth(growth_spec(o, cfg), grid.dim());
  const auto ball = parse_ball(o, cfg, grid.dim());
  const GridFunction f = load_input(o, cfg, grid, gf, ball, "indicator01");
  const NormResult r = luxembourg_norm(f, gf);
  json rep{{"command", "norm"},          {"growth", gf.name()},   {"input", input_label(o, cfg, "indicator01")},
           {"norm", r.norm},             {"witness_t", r.witness_t}, {"iterations", r.iterations},
           {"residual", r.residual}};
  if (o.hardy) {
    const TestDictionary dict = make_dictionary(o, cfg, grid, 1);
    check_hardy_order(dict, gf, grid.dim());
    rep["hphi_norm"] = hphi_norm(f, gf, dict, 0);
  }
  emit(o, "norm", rep);
}

void cmd_decompose(const Options& o) {
  const json cfg = load_config(o.config_path);
  const Grid grid = make_grid(cfg);
  const GrowthFunction gf = parse_growth(growth_spec(o, cfg), grid.dim());
  const auto ball = parse_ball(o, cfg, grid.dim());
  const GridFunction f = load_input(o, cfg, grid, gf, ball, "bump");
  const int s = o.degree.value_or(get_or<int>(cfg, "degree", 1));
  const TestDictionary dict = make_dictionary(o, cfg, grid, std::max(s, 1));
  const GridFunction fstar = grand_maximal(f, dict);
  check_hardy_order(dict, gf, grid.dim());
  const json tol = cfg.value("tolerances", json::object());
  const double rel_tol = o.recon_tol.value_or(get_or<double>(tol, "reconstruction", 1e-8));
  const double moment_factor = get_or<double>(tol, "moment", 1.0);
  require(rel_tol > 0.0 && moment_factor > 0.0, "tolerances must be positive");
  const double recon_tol = rel_tol * f.max_abs();

  std::optional<double> height = o.height;
  std::string levels = o.levels.empty() ? get_or<std::string>(cfg, "levels", "auto") : o.levels;
  if (!height && cfg.contains("height")) height = get_or<double>(cfg, "height", 0.0);
  if (!height && levels != "auto") fail(ErrorKind::Parse, "--levels must be 'auto' (use --height for one level)");

  json rep{{"command", "decompose"}, {"input", input_label(o, cfg, "bump")}, {"degree", s},
           {"dictionary", {{"m", dict.m}, {"size", dict.members.size()}, {"scales", dict.scales}}}};
  std::vector<Ball> balls;
  if (height) {
    const CzDecomposition cz = cz_decompose(f, fstar, *height, s, dict);
    rep["mode"] = "single";
    rep["lambda"] = *height;
    rep["trivial"] = cz.trivial;
    rep["reconstruction_residual"] = cz.reconstruction_residual;
    rep["moment_tolerance_ratio"] = cz.moment_tolerance_ratio;
    rep["overlap"] = cz.cover.overlap;
    json parts = json::array();
    for (const CzPart& p : cz.parts) {
      json pj = ball_json(p.ball, grid.dim());
      pj["poly"] = p.poly.coef;
      pj["moment_residual"] = p.moment_residual;
      parts.push_back(pj);
      balls.push_back(p.ball);
    }
    rep["parts"] = parts;
    if (!cz.trivial) {
      const WhitneyCheck chk = verify_whitney(grid, cz.cover);
      rep["whitney"] = {{"covers", chk.covers}, {"disjoint", chk.disjoint}, {"clear", chk.clear},
                        {"reaches", chk.reaches}, {"overlap", chk.overlap}};
      if (!chk.ok()) fail(ErrorKind::Invariant, "whitney properties failed");
      rep["partition_sum_error"] = cz.pou.max_sum_error;
      if (cz.pou.max_sum_error > 1e-10) fail(ErrorKind::Invariant, "partition of unity does not sum to one");
    }
    if (cz.reconstruction_residual > recon_tol) fail(ErrorKind::Invariant, "reconstruction residual above tolerance");
    if (cz.moment_tolerance_ratio > moment_factor) fail(ErrorKind::Invariant, "moment residual above tolerance");
  } else {
    MultilevelOptions mo;
    mo.growth = &gf;
    const AtomicDecomposition dec = multilevel_decompose(f, fstar, s, dict, mo);
    rep["mode"] = "multilevel";
    rep["k_min"] = dec.k_min;
    rep["k_max"] = dec.k_max;
    rep["reconstruction_residual"] = dec.reconstruction_residual;
    rep["size_constant"] = dec.size_constant;
    rep["cross_constant"] = dec.cross_constant;
    rep["cross_sum_residual"] = dec.cross_sum_residual;
    rep["moment_tolerance_ratio"] = dec.moment_tolerance_ratio;
    rep["closing_moment_ratio"] = dec.closing_moment_ratio;
    rep["lambda_inf"] = dec.lambda_inf;
    rep["source_norm"] = dec.source_norm;
    json pieces = json::array();
    for (const AtomPiece& p : dec.pieces) {
      json pj = ball_json(p.ball, grid.dim());
      pj["level"] = p.level;
      pj["index"] = p.index;
      pj["sup_norm"] = p.sup;
      pj["moment_residual"] = p.moment_residual;
      pj["closing"] = p.closing;
      pieces.push_back(pj);
      if (!p.closing) balls.push_back(p.ball.dilate(1.0 / kClearFactor));
    }
    rep["pieces"] = pieces;
    if (dec.reconstruction_residual > recon_tol) fail(ErrorKind::Invariant, "reconstruction residual above tolerance");
    if (dec.moment_tolerance_ratio > moment_factor) fail(ErrorKind::Invariant, "moment residual above tolerance");
    if (!dec.supports_ok) fail(ErrorKind::Invariant, "piece support outside its ball");
    if (dec.cross_sum_residual > recon_tol) fail(ErrorKind::Invariant, "cross projections do not cancel");
  }
  emit(o, "decompose", rep);
  write_atomic(fs::path(o.out_dir) / "decompose.svg", svg_overlay(f, balls));
}

void cmd_certify(const Options& o) {
  const json cfg = load_config(o.config_path);
  const Grid grid = make_grid(cfg);
  const GrowthFunction gf = parse_growth(growth_spec(o, cfg), grid.dim());
  const auto ball = parse_ball(o, cfg, grid.dim());
  if (!ball) fail(ErrorKind::Precondition, "certify needs a ball (--ball or config.ball)");
  require(ball->radius > 0.0, "ball radius must be positive");
  const GridFunction a = load_input(o, cfg, grid, gf, ball, "balanced-atom");
  const bool log_atom = o.log_atom || get_or<bool>(cfg, "log_atom", false);
  const int s = o.degree.value_or(get_or<int>(cfg, "degree", 0));
  double q = o.q.value_or(kInfinity);
  if (!o.q && cfg.contains("q") && cfg.at("q").is_number()) q = cfg.at("q").get<double>();
  const AtomCertificate c = log_atom ? certify_log_atom(a, *ball) : certify_atom(a, *ball, gf, q, s);
  json rep{{"command", "certify"},
           {"kind", log_atom ? "log-atom" : "atom"},
           {"input", input_label(o, cfg, "balanced-atom")},
           {"growth", log_atom ? "log" : gf.name()},
           {"ball", ball_json(*ball, grid.dim())},
           {"q", std::isinf(q) ? json("inf") : json(q)},
           {"measured_norm", std::isnan(c.measured_norm) ? json(nullptr) : json(c.measured_norm)},
           {"bound", c.bound},
           {"moment_residuals", c.moment_residuals},
           {"moment_tolerance", c.moment_tolerance},
           {"clauses", {{"support", c.support}, {"size", c.size}, {"moments", c.moments}}},
           {"passes", c.passes()}};
  emit(o, "certify", rep);
}

void cmd_bmo(const Options& o) {
  const json cfg = load_config(o.config_path);
  const Grid grid = make_grid(cfg);
  const GrowthFunction gf = parse_growth(growth_spec(o, cfg), grid.dim());
  const auto ball = parse_ball(o, cfg, grid.dim());
  const GridFunction f = load_input(o, cfg, grid, gf, ball, "sign");
  const BallFamily fam = make_family(o.family, grid, cfg);
  const BmoReport r = bmo_phi_norm(f, gf, fam);
  const BmoReport l = bmo_log_norm(f, fam);
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(r.family_hash));
  json rep{{"command", "bmo"},
           {"growth", gf.name()},
           {"input", input_label(o, cfg, "sign")},
           {"family_hash", hash},
           {"balls", fam.size()},
           {"bmo_phi", {{"norm", r.norm}, {"witness", ball_json(r.witness, grid.dim())}}},
           {"bmo_log", {{"norm", l.norm}, {"witness", ball_json(l.witness, grid.dim())}}}};
  emit(o, "bmo", rep);
  std::ostringstream csv;
  csv.precision(17);
  csv << (grid.dim() == 1 ? "x,r,oscillation,phi_value,log_value\n" : "x,y,r,oscillation,phi_value,log_value\n");
  for (std::size_t k = 0; k < r.table.size(); ++k) {
    const Ball& b = r.table[k].ball;
    csv << b.center[0] << ',';
    if (grid.dim() == 2) csv << b.center[1] << ',';
    csv << b.radius << ',' << r.table[k].oscillation << ',' << r.table[k].value << ',' << l.table[k].value << '\n';
  }
  write_atomic(fs::path(o.out_dir) / "bmo_table.csv", csv.str());
}

void cmd_indices(const Options& o) {
  const json cfg = load_config(o.config_path);
  const Grid grid = make_grid(cfg);
  const GrowthFunction gf = parse_growth(growth_spec(o, cfg), grid.dim());
  const BallFamily fam = make_family(o.family, grid, cfg);
  const IndexReport r = index_report(gf, grid, fam);
  json rep{{"command", "indices"}, {"growth", gf.name()},  {"i_hat", r.i_hat},
           {"I_hat", r.I_hat},      {"q_hat", r.q_hat},     {"m_hat", r.m_hat},
           {"aq_constant", r.aq.constant}, {"type_samples", r.types.samples}};
  if (gf.declared())
    rep["declared"] = {{"i", gf.declared()->i}, {"I", gf.declared()->I}, {"q", gf.declared()->q}};
  emit(o, "indices", rep);
}

void cmd_multiplier(const Options& o) {
  const json cfg = load_config(o.config_path);
  const Grid grid = make_grid(cfg);
  const GrowthFunction gf = parse_growth(growth_spec(o, cfg), grid.dim());
  const auto ball = parse_ball(o, cfg, grid.dim());
  const GridFunction g = load_input(o, cfg, grid, gf, ball, "bump");
  std::vector<std::string> names = o.corpus;
  if (names.empty()) names = get_or<std::vector<std::string>>(cfg, "corpus", {"logabs", "sign"});
  std::vector<GridFunction> corpus;
  for (const auto& n : names) corpus.push_back(preset(n, grid, gf, ball));
  const BallFamily fam = make_family(o.family, grid, cfg);
  const MultiplierReport r = multiplier_check(g, corpus, fam);
  json rep{{"command", "multiplier"}, {"input", input_label(o, cfg, "bump")}, {"corpus", names},
           {"sup_norm", r.sup_norm},  {"log_norm", r.log_norm},  {"M", r.M},
           {"R", r.R},                {"used", r.used},          {"skipped", r.skipped}};
  emit(o, "multiplier", rep);
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return 2;
    case ErrorKind::Precondition: return 3;
    case ErrorKind::Io: return 4;
    case ErrorKind::Invariant: return 5;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Musielak-Orlicz Hardy space toolkit"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config_path, "JSON run configuration");
  app.add_option("--out", o.out_dir, "output directory");
  app.add_option("--seed", o.seed, "seed recorded in reports");
  app.add_option("--threads", o.threads, "worker threads (recorded; computation is sequential)")
      ->check(CLI::PositiveNumber);

  auto common = [&](CLI::App* c) {
    c->add_option("--growth", o.growth, "t | sqrt | power:a=A,p=P | log-theta | p-log:p=P");
    c->add_option("--preset", o.preset, "built-in input function");
    c->add_option("--csv", o.csv, "input function as CSV on the configured grid");
    c->add_option("--ball", o.ball, "ball as cx[,cy],r");
  };
  auto* norm_cmd = app.add_subcommand("norm", "Luxembourg norm of the input");
  common(norm_cmd);
  norm_cmd->add_flag("--hardy", o.hardy, "also report the Hardy-space norm");
  norm_cmd->add_option("--dict-size", o.dict_size);
  norm_cmd->add_option("--scales", o.scales);
  norm_cmd->add_option("--dict-m", o.dict_m);

  auto* dec_cmd = app.add_subcommand("decompose", "Calderon-Zygmund or multi-level decomposition");
  common(dec_cmd);
  dec_cmd->add_option("--levels", o.levels, "auto");
  dec_cmd->add_option("--height", o.height, "single height lambda");
  dec_cmd->add_option("--degree", o.degree, "moment degree s");
  dec_cmd->add_option("--dict-size", o.dict_size);
  dec_cmd->add_option("--dict-m", o.dict_m);
  dec_cmd->add_option("--scales", o.scales, "comma-separated dictionary scales");
  dec_cmd->add_option("--recon-tol", o.recon_tol, "reconstruction tolerance relative to sup|f|");

  auto* cert_cmd = app.add_subcommand("certify", "atom or log-atom certificate");
  common(cert_cmd);
  cert_cmd->add_option("--q", o.q, "integrability order");
  cert_cmd->add_option("--degree", o.degree, "moment degree s");
  cert_cmd->add_flag("--log", o.log_atom, "certify as a log-atom");

  auto* bmo_cmd = app.add_subcommand("bmo", "BMO norms over a ball family");
  common(bmo_cmd);
  bmo_cmd->add_option("--family", o.family, "coarse | fine");

  auto* idx_cmd = app.add_subcommand("indices", "estimated indices of a growth function");
  idx_cmd->add_option("--growth", o.growth);
  idx_cmd->add_option("--family", o.family, "coarse | fine");

  auto* mul_cmd = app.add_subcommand("multiplier", "pointwise multiplier quantities");
  common(mul_cmd);
  mul_cmd->add_option("--family", o.family, "coarse | fine");
  mul_cmd->add_option("--corpus", o.corpus, "presets used as BMO test functions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*norm_cmd) cmd_norm(o);
    if (*dec_cmd) cmd_decompose(o);
    if (*cert_cmd) cmd_certify(o);
    if (*bmo_cmd) cmd_bmo(o);
    if (*idx_cmd) cmd_indices(o);
    if (*mul_cmd) cmd_multiplier(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
