#include "caustica/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include <json.hpp>

#include "caustica/caustic.hpp"
#include "caustica/oval.hpp"
#include "caustica/render.hpp"

namespace caustica {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
  fs::create_directories(dir);
  std::ofstream out(fs::path(dir) / name);
  if (!out) throw Error(ErrorKind::ConfigError, "cannot write '" + (fs::path(dir) / name).string() + "'");
  out << text;
}

json poly_json(const MPoly& p) { return json::parse(to_json_string(p)); }

json factors_json(const CausticResult& res) {
  json arr = json::array();
  for (const auto& f : res.stripped)
    arr.push_back({{"name", f.name}, {"factor", to_text(f.factor)}, {"multiplicity", f.multiplicity},
                   {"extension", f.extension}});
  return arr;
}

Sceneq normalized_circle_scene(const Rational& r, const Rational& n) {
  return Sceneq::make(FiniteRadiant<Rational>{{0, 0}}, Circle2q{{1, 0}, r * r}, n);
}

json check(const std::string& name, bool pass, double max_error, std::optional<double> tol, std::size_t samples) {
  json j{{"name", name}, {"pass", pass}};
  if (tol) {
    j["max_error"] = max_error;
    j["tol"] = *tol;
  }
  j["samples"] = samples;
  return j;
}

json skipped(const std::string& name, const std::string& why) {
  return json{{"name", name}, {"pass", true}, {"skipped", why}};
}

// Intersection of the line with the mirror line, or nullopt if parallel.
std::optional<Point2d> meet(const Line2d& a, const Line2d& b) {
  double c = cross(a.dir, b.dir);
  if (std::abs(c) < 1e-14 * norm(a.dir) * norm(b.dir)) return std::nullopt;
  double lambda = cross(b.base - a.base, b.dir) / c;
  return a.base + lambda * a.dir;
}

}  // namespace

std::pair<Rational, Rational> parse_specialization(std::string_view text) {
  std::optional<Rational> r, n;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::ConfigError, "expected r=<value>,n=<value> in '" + std::string(text) + "'");
    std::string_view key = item.substr(0, eq);
    Rational value = parse_rational(item.substr(eq + 1));
    if (key == "r")
      r = value;
    else if (key == "n")
      n = value;
    else
      throw Error(ErrorKind::ConfigError, "unknown parameter '" + std::string(key) + "'");
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (!r || !n) throw Error(ErrorKind::ConfigError, "both r and n are required");
  if (*r <= 0) throw Error(ErrorKind::ConfigError, "r must be positive");
  return {*r, *n};
}

int run_ovals(const SceneConfig& config, const OvalsOptions& options, std::ostream& log) {
  const Sceneq& scene = config.scene;
  if (!scene.finite_radiant()) throw Error(ErrorKind::InvalidScene, "Cartesian ovals need a finite radiant point");
  json report = json::array();
  std::string text;
  if (scene.circle_mirror()) {
    auto ovals = from_circle_scene(scene);
    MPoly q = quartic_closure(ovals[0]);
    text = to_text(q) + "\n";
    for (const auto& o : ovals)
      report.push_back({{"branch", o.branch},
                        {"A", {to_string(o.a.x), to_string(o.a.y)}},
                        {"B", {to_string(o.b.x), to_string(o.b.y)}},
                        {"s_sq", to_string(o.s_sq)},
                        {"t_sq", to_string(o.t_sq)}});
    log << "ovals: quartic of degree " << q.total_degree() << " with " << q.size() << " terms\n";
    write_file(options.out, "ovals.json", json{{"ovals", report}, {"quartic", poly_json(q)}}.dump(2) + "\n");
  } else {
    auto o = from_line_scene(scene);
    MPoly q = quartic_closure(o);
    text = to_text(q) + "\n";
    log << "ovals: line scene, degree " << q.total_degree() << "\n";
    report.push_back({{"branch", o.branch},
                      {"A", {to_string(o.a.x), to_string(o.a.y)}},
                      {"B", {to_string(o.b.x), to_string(o.b.y)}},
                      {"s_sq", to_string(o.s_sq)},
                      {"t_sq", to_string(o.t_sq)}});
    write_file(options.out, "ovals.json", json{{"ovals", report}, {"quartic", poly_json(q)}}.dump(2) + "\n");
  }
  write_file(options.out, "ovals.poly", text);
  if (options.svg) {
    RenderLayers layers = compute_layers(config);
    layers.rays_pos.clear();
    layers.rays_neg.clear();
    layers.caustic.clear();
    write_file(options.out, "ovals.svg", render_svg(config, layers));
  }
  return 0;
}

int run_caustic(const std::optional<SceneConfig>& config, const CausticOptions& options, std::ostream& log) {
  Sceneq scene;
  if (options.specialize) {
    scene = normalized_circle_scene(options.specialize->first, options.specialize->second);
  } else {
    if (!config) throw Error(ErrorKind::ConfigError, "caustic needs --scene or --specialize");
    scene = config->scene;
  }
  if (!scene.circle_mirror())
    throw Error(ErrorKind::UnsupportedMirror, "the symbolic caustic is implemented for circle mirrors only");
  if (!scene.finite_radiant())
    throw Error(ErrorKind::UnsupportedMirror, "the symbolic caustic needs a finite radiant point");

  json report;
  std::optional<MPoly> symbolic;
  if (options.symbolic) {
    log << "warning: symbolic elimination over Q(r, n); the reported runtime for this computation is 2 h 19 min 26 s "
           "on a workstation, and memory use is large\n"
        << std::flush;
    auto start = std::chrono::steady_clock::now();
    MPoly f = build_family(MPoly::variable("r"), MPoly::variable("n"));
    CausticResult sym = strip_spurious(envelope_resultant(f), std::nullopt);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_file(options.out, "symbolic_raw.poly", to_text(sym.raw) + "\n");
    write_file(options.out, "symbolic_caustic.poly", to_text(sym.caustic_poly) + "\n");
    report["symbolic"] = {{"seconds", secs},
                          {"raw_terms", sym.raw.size()},
                          {"caustic_terms", sym.caustic_poly.size()},
                          {"stripped", factors_json(sym)}};
    symbolic = sym.raw;
    log << "symbolic: " << sym.caustic_poly.size() << " terms in " << secs << " s\n";
  }

  CrossVerifyReport rep;
  try {
    rep = cross_verify(scene, {options.samples, options.tol});
  } catch (const PipelineMismatchError& e) {
    write_file(options.out, "envelope.poly", to_text(e.envelope()) + "\n");
    write_file(options.out, "evolute.poly", to_text(e.evolute()) + "\n");
    report["pass"] = false;
    report["error"] = e.what();
    write_file(options.out, "report.json", report.dump(2) + "\n");
    log << "caustic: " << e.what() << "\n";
    return 3;
  }

  write_file(options.out, "raw.poly", to_text(rep.envelope.raw) + "\n");
  write_file(options.out, "caustic.poly", to_text(rep.envelope.caustic_poly) + "\n");
  write_file(options.out, "evolute.poly", to_text(rep.evolute) + "\n");
  write_file(options.out, "caustic.json", to_json_string(rep.envelope.caustic_poly) + "\n");

  if (symbolic) {
    std::map<std::string, Rational, std::less<>> at{{"r", rep.r}, {"n", rep.n}};
    MPoly spec = evaluate(*symbolic, at);
    report["symbolic"]["specializes_to_raw"] = equal_up_to_scalar(spec, rep.envelope.raw);
  }

  report["r"] = to_string(rep.r);
  report["n"] = to_string(rep.n);
  report["degree"] = rep.degree;
  report["terms"] = rep.terms;
  report["raw_degree"] = rep.envelope.raw.total_degree();
  report["raw_terms"] = rep.envelope.raw.size();
  report["content"] = to_string(rep.envelope.content);
  report["stripped"] = factors_json(rep.envelope);
  report["reconstructs"] = reconstructs(rep.envelope);
  report["envelope_equals_evolute"] = true;
  report["numeric_points"] = rep.numeric_points;
  report["max_scaled_residual"] = rep.max_residual;
  report["residual_tol"] = options.tol;
  report["residual_failures"] = rep.residual_failures;
  report["pencils_skipped"] = rep.pencils_skipped;
  report["seconds"] = {{"envelope", rep.seconds_envelope},
                       {"evolute", rep.seconds_evolute},
                       {"numeric", rep.seconds_numeric}};
  report["pass"] = rep.pass();
  write_file(options.out, "report.json", report.dump(2) + "\n");
  log << "caustic: degree " << rep.degree << ", " << rep.terms << " terms, " << rep.numeric_points
      << " numeric points, max scaled residual " << fmt6(rep.max_residual) << (rep.pass() ? " (pass)" : " (FAIL)")
      << "\n";
  return rep.pass() ? 0 : 1;
}

int run_render(const SceneConfig& config, const std::string& out, std::ostream& log) {
  RenderLayers layers = compute_layers(config);
  write_file(out, "render.svg", render_svg(config, layers));
  log << "render: " << layers.rays_pos.size() + layers.rays_neg.size() << " rays, " << layers.caustic.size()
      << " caustic points, " << layers.ovals.size() << " oval segments\n";
  return 0;
}

int run_verify(const SceneConfig& config, const VerifyOptions& options, std::ostream& log) {
  const Sceneq& scene = config.scene;
  Scened sd = to_double(scene);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto tol_or = [&](double d) { return options.tol.value_or(d); };
  const int samples = std::max(1, options.samples);
  json checks = json::array();
  json report;
  bool degenerate = abs(scene.n) == 1;
  report["degenerate"] = degenerate;
  if (degenerate) report["degenerate_reason"] = "|n| = 1: reflection, the n and -n families coincide";

  // Snell: |sin(in)| = |n| |sin(out)| on random rays of both families.
  {
    double tol = tol_or(1e-9), worst = 0.0;
    std::size_t count = 0;
    for (double n : {std::abs(sd.n), -std::abs(sd.n)}) {
      RayFamily family(sd.with_n(n));
      const auto& iv = family.validity();
      if (iv.empty()) continue;
      for (int k = 0; k < samples; ++k) {
        const Interval& in = iv[static_cast<std::size_t>(k) % iv.size()];
        double theta = in.lo + (in.hi - in.lo) * (0.02 + 0.96 * unit(rng));
        auto ray = family.ray(theta);
        if (!ray) continue;
        Point2d x = family.mirror_point(theta);
        Point2d nu = normalized(mirror_normal(sd.mirror, x));
        Point2d a = normalized(incoming(sd, x));
        Point2d l = normalized(ray->dir);
        worst = std::max(worst, std::abs(std::abs(cross(a, nu)) - std::abs(n) * std::abs(cross(l, nu))));
        ++count;
      }
    }
    checks.push_back(check("snell", worst < tol, worst, tol, count));
  }

  bool circle_scene = scene.circle_mirror() && scene.finite_radiant();
  if (circle_scene) {
    // Exact inverse point: |A-O|^2 |B-O|^2 = r^4 and the map is an involution.
    const Circle2q& c = scene.circle();
    Point2q a = scene.radiant_point();
    bool ok = false;
    try {
      Point2q b = inverse_point(a, c);
      ok = norm_sq(a - c.center) * norm_sq(b - c.center) == c.radius_sq * c.radius_sq && inverse_point(b, c) == a;
    } catch (const Error&) {
    }
    checks.push_back(check("inverse_point", ok, 0.0, std::nullopt, 1));

    // Lemma 3.1: the circle through A tangent to OR at R passes through B.
    double tol = tol_or(1e-9), worst = 0.0;
    std::size_t count = 0;
    Point2d ad = sd.radiant_point();
    const Circle2d& cd = sd.circle();
    Point2d bd = inverse_point(ad, cd);
    for (int k = 0; k < samples; ++k) {
      double theta = 2.0 * std::numbers::pi * unit(rng);
      Point2d r = cd.center + cd.radius() * Point2d{std::cos(theta), std::sin(theta)};
      try {
        Circle2d t = tangent_circle_through(ad, r, cd.center);
        worst = std::max(worst, std::abs(norm_sq(bd - t.center) - t.radius_sq) / std::max(1.0, t.radius_sq));
        ++count;
      } catch (const Error&) {
      }
    }
    checks.push_back(check("tangent_circle", worst < tol, worst, tol, count));
  } else {
    checks.push_back(skipped("inverse_point", "needs a circle mirror and a finite radiant"));
    checks.push_back(skipped("tangent_circle", "needs a circle mirror and a finite radiant"));
  }

  // Ovals: sine ratio of the normal (Lemma 1.1) and normals as refracted rays.
  std::vector<CartesianOval> ovals;
  if (scene.finite_radiant()) {
    try {
      if (scene.circle_mirror()) {
        auto both = from_circle_scene(scene);
        ovals.assign(both.begin(), both.end());
      } else {
        ovals.push_back(from_line_scene(scene));
      }
    } catch (const Error& e) {
      report["oval_error"] = e.what();
    }
  }
  if (ovals.empty()) {
    checks.push_back(skipped("normal_sine_ratio", "no Cartesian oval for this scene"));
    checks.push_back(skipped("normals_are_rays", "no Cartesian oval for this scene"));
  } else {
    double tol_ratio = tol_or(1e-8), tol_match = tol_or(1e-7);
    double worst_ratio = 0.0;
    std::size_t count = 0, matched = 0;
    for (const auto& o : ovals) {
      OvalD od = to_double(o);
      for (const auto& m : sample_branch(od, samples)) {
        Line2d normal;
        try {
          normal = normal_line(od, m);
        } catch (const Error&) {
          continue;
        }
        ++count;
        double ratio = normal_sine_ratio(od, m, normal.dir);
        worst_ratio = std::max(worst_ratio, std::abs(ratio - od.s) / std::max(1.0, od.s));
        bool ok = false;
        if (scene.circle_mirror()) {
          ok = matching_refraction(sd, normal, tol_match).has_value();
        } else if (auto x = meet(normal, sd.line())) {
          for (double n : {std::abs(sd.n), -std::abs(sd.n)})
            if (auto ray = try_refract(sd.with_n(n), *x); ray && same_line(*ray, normal, tol_match)) ok = true;
        }
        if (ok) ++matched;
      }
    }
    checks.push_back(check("normal_sine_ratio", worst_ratio < tol_ratio, worst_ratio, tol_ratio, count));
    json nr = check("normals_are_rays", count > 0 && matched == count, 0.0, std::nullopt, count);
    nr["matched"] = matched;
    nr["tol"] = tol_match;
    checks.push_back(nr);
  }

  // Numeric envelope points on the symbolic caustic.
  if (options.envelope && circle_scene) {
    double tol = tol_or(1e-5);
    try {
      CrossVerifyReport rep = cross_verify(scene, {std::max(64, samples * 16), tol});
      json j = check("envelope_on_caustic", rep.pass() && rep.numeric_points > 0, rep.max_residual, tol,
                     rep.numeric_points);
      j["degree"] = rep.degree;
      checks.push_back(j);
    } catch (const Error& e) {
      json j{{"name", "envelope_on_caustic"}, {"pass", false}, {"error", e.what()}};
      if (e.kind() == ErrorKind::IrrationalResult) j = skipped("envelope_on_caustic", e.what());
      checks.push_back(j);
    }
  } else {
    checks.push_back(skipped("envelope_on_caustic", options.envelope ? "circle scenes only" : "disabled"));
  }

  bool all = true;
  for (const auto& c : checks) all = all && c["pass"].get<bool>();
  report["seed"] = options.seed;
  report["checks"] = checks;
  report["pass"] = all;
  write_file(options.out, "verify.json", report.dump(2) + "\n");
  for (const auto& c : checks)
    log << (c["pass"].get<bool>() ? "pass  " : "FAIL  ") << c["name"].get<std::string>()
        << (c.contains("skipped") ? " (skipped)" : "") << "\n";
  if (degenerate) log << "note: degenerate scene (|n| = 1)\n";
  return all ? 0 : 1;
}

}  // namespace caustica
