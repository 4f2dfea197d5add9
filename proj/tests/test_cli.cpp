#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "caustica/commands.hpp"
#include "caustica/render.hpp"

using namespace caustica;
namespace fs = std::filesystem;

namespace {

const char* kFig2 = R"(# Fig. 2 layout
[radiant]
point = 0, 0
[mirror]
circle.center = 1, 0
circle.radius = 1/3
[scene]
n = 1/2
[render]
viewport = -0.5, -1, 2, 1
size = 400, 320
rays = 16
grid = 128
envelope = 128
)";

const char* kLine = R"([radiant]
point = 0, 0
[mirror]
line.point = 1, 0
line.dir = 0, 1
[scene]
n = 1/2
)";

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ostream& sink() {
  static std::ostringstream s;
  return s;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("caustica_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigError);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("config parse/print") {
  SceneConfig c = parse_config(kFig2);
  CHECK(c.scene.circle().radius_sq == Rational(1, 9));
  CHECK(c.scene.n == Rational(1, 2));
  CHECK(c.render.grid == 128);
  std::string once = print_config(c);
  CHECK(print_config(parse_config(once)) == once);
  SceneConfig l = parse_config(kLine);
  std::string lonce = print_config(l);
  CHECK(print_config(parse_config(lonce)) == lonce);
  SceneConfig inf = parse_config("[radiant]\ndir = 1, 0\n[mirror]\ncircle.center = 0, 0\ncircle.radius_sq = 2\n[scene]\nn = 0.75\n");
  CHECK(inf.scene.n == Rational(3, 4));
  std::string ionce = print_config(inf);
  CHECK(ionce.find("radius_sq = 2") != std::string::npos);
  CHECK(print_config(parse_config(ionce)) == ionce);
}

TEST_CASE("config diagnostics") {
  CHECK(config_error("[radiant]\npoint = 0, 0\n[mirror]\ncircle.center = 1, 0\ncircle.radius = 1/3\n[scene]\nn = 1/0\n")
            .find("line 7, column 5") != std::string::npos);
  CHECK(config_error("[radiant]\npoint = 0 0\n").find("line 2") != std::string::npos);
  CHECK(config_error("[radiant\n").find("line 1") != std::string::npos);
  CHECK(config_error(std::string(kFig2) + "bogus = 1\n").find("unknown key") != std::string::npos);
  CHECK(config_error(std::string(kFig2) + "grid = 8\n").find("duplicate") != std::string::npos);
  CHECK(config_error("[radiant]\npoint = 0, 0\n[mirror]\ncircle.center = 1, 0\ncircle.radius = 1\n[scene]\nn = 1/2\n") != "");
  std::string g = kFig2;
  g.replace(g.find("grid = 128"), 10, "grid = 8");
  CHECK(config_error(g).find("line 13") != std::string::npos);
}

TEST_CASE("marching squares") {
  MPoly circle = parse_poly("x^2 + y^2 - 1", MPoly::VarList{"x", "y"});
  Viewport vp{-2, -2, 2, 2};
  auto segs = marching_squares(circle, vp, 64);
  auto serial = marching_squares_serial(circle, vp, 64);
  REQUIRE(segs.size() == serial.size());
  CHECK(segs.size() > 50);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    CHECK(segs[i].a.x == serial[i].a.x);
    CHECK(segs[i].b.y == serial[i].b.y);
    CHECK(std::hypot(segs[i].a.x, segs[i].a.y) == doctest::Approx(1.0).epsilon(5e-3));
  }
  CHECK_THROWS_AS(marching_squares(circle, vp, 8), Error);
}

TEST_CASE("render is deterministic") {
  SceneConfig c = parse_config(kFig2);
  auto dir = scratch("render");
  CHECK(run_render(c, dir.string(), sink()) == 0);
  std::string first = slurp(dir / "render.svg");
  CHECK(run_render(c, dir.string(), sink()) == 0);
  CHECK(slurp(dir / "render.svg") == first);
  for (const char* id : {"rays-pos", "rays-neg", "ovals", "caustic", "mirror", "radiant"})
    CHECK(first.find(std::string("id=\"") + id + "\"") != std::string::npos);
  CHECK(first.find("stroke=\"blue\"") != std::string::npos);
  CHECK(first.find("stroke=\"orange\"") != std::string::npos);
  CHECK(first.find("fill=\"red\"") != std::string::npos);
  CHECK(first.find("stroke=\"green\"") != std::string::npos);

  c.render.rays = 0;
  c.render.envelope = 0;
  std::string svg = render_svg(c, compute_layers(c));
  CHECK(svg.find("<line") == std::string::npos);
  CHECK(svg.find("id=\"mirror\"") != std::string::npos);
}

TEST_CASE("ovals command") {
  auto dir = scratch("ovals");
  CHECK(run_ovals(parse_config(kFig2), {dir.string(), true}, sink()) == 0);
  std::string text = slurp(dir / "ovals.poly");
  MPoly q = parse_poly(text.substr(0, text.find('\n')));
  CHECK(equal_up_to_scalar(q, parse_poly("(-72*(x^2+y^2)+144*x+192)^2 - 9216*(x^2+y^2)", q.vars())));
  CHECK(fs::exists(dir / "ovals.svg"));
  auto ldir = scratch("ovals_line");
  CHECK(run_ovals(parse_config(kLine), {ldir.string(), false}, sink()) == 0);
  std::string lt = slurp(ldir / "ovals.poly");
  CHECK(parse_poly(lt.substr(0, lt.find('\n'))).total_degree() == 2);
}

TEST_CASE("caustic command") {
  auto dir = scratch("caustic");
  CausticOptions opt;
  opt.out = dir.string();
  opt.specialize = parse_specialization("r=1/3,n=1/2");
  CHECK(run_caustic(std::nullopt, opt, sink()) == 0);
  auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(report["degree"] == 12);
  CHECK(report["pass"] == true);
  std::string text = slurp(dir / "caustic.poly");
  CHECK(parse_poly(text.substr(0, text.find('\n'))).size() == 49);
  CHECK(fs::exists(dir / "raw.poly"));

  CausticOptions lopt;
  lopt.out = scratch("caustic_line").string();
  try {
    run_caustic(parse_config(kLine), lopt, sink());
    FAIL("expected UnsupportedMirror");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedMirror);
  }
  CHECK_THROWS_AS(parse_specialization("r=1/3"), Error);
  CHECK_THROWS_AS(parse_specialization("q=1,n=2"), Error);
}

TEST_CASE("verify command") {
  SceneConfig c = parse_config(kFig2);
  auto dir = scratch("verify");
  VerifyOptions opt;
  opt.out = dir.string();
  CHECK(run_verify(c, opt, sink()) == 0);
  auto report = nlohmann::json::parse(slurp(dir / "verify.json"));
  CHECK(report["pass"] == true);
  CHECK(report["degenerate"] == false);

  opt.tol = 1e-30;
  CHECK(run_verify(c, opt, sink()) != 0);
  report = nlohmann::json::parse(slurp(dir / "verify.json"));
  CHECK(report["pass"] == false);

  SceneConfig refl = c;
  refl.scene = refl.scene.with_n(Rational(-1));
  VerifyOptions ropt;
  ropt.out = dir.string();
  ropt.envelope = false;
  run_verify(refl, ropt, sink());
  report = nlohmann::json::parse(slurp(dir / "verify.json"));
  CHECK(report["degenerate"] == true);
}
