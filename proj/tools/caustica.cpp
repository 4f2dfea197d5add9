#include <iostream>

#include <CLI11.hpp>

#include "caustica/commands.hpp"

using namespace caustica;

int main(int argc, char** argv) {
  CLI::App app{"caustica: complete caustics by refraction of circles and lines"};
  app.require_subcommand(1);

  std::string scene_path, out = ".";
  int samples = 0;
  double tol = 0.0;
  std::uint64_t seed = 1;
  bool svg = false, symbolic = false, no_envelope = false;
  std::string specialize;

  auto* ovals = app.add_subcommand("ovals", "Cartesian ovals of the scene (.poly, .json, optional .svg)");
  ovals->add_option("--scene", scene_path, "scene file")->required()->check(CLI::ExistingFile);
  ovals->add_option("--out", out, "output directory");
  ovals->add_flag("--svg", svg, "also draw the ovals");

  auto* caustic = app.add_subcommand("caustic", "caustic polynomial, cross-verified by two routes");
  caustic->add_option("--scene", scene_path, "scene file (circle mirror, finite radiant)")->check(CLI::ExistingFile);
  caustic->add_option("--specialize", specialize, "normalized scene parameters, e.g. r=1/3,n=1/2");
  caustic->add_flag("--symbolic", symbolic, "eliminate over Q(r, n) first (very slow)");
  caustic->add_option("--out", out, "output directory");
  caustic->add_option("--samples", samples, "numeric envelope samples per interval")->check(CLI::PositiveNumber);
  caustic->add_option("--tol", tol, "scaled residual bound")->check(CLI::PositiveNumber);

  auto* render = app.add_subcommand("render", "SVG with rays, caustic points and ovals");
  render->add_option("--scene", scene_path, "scene file")->required()->check(CLI::ExistingFile);
  render->add_option("--out", out, "output directory");
  render->add_option("--samples", samples, "rays per family")->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "numeric invariants, JSON pass/fail per check");
  verify->add_option("--scene", scene_path, "scene file")->required()->check(CLI::ExistingFile);
  verify->add_option("--out", out, "output directory");
  verify->add_option("--samples", samples, "samples per check")->check(CLI::PositiveNumber);
  verify->add_option("--tol", tol, "tolerance for every floating-point check")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "random seed");
  verify->add_flag("--no-envelope", no_envelope, "skip the symbolic caustic check");

  CLI11_PARSE(app, argc, argv);

  try {
    std::optional<SceneConfig> config;
    if (!scene_path.empty()) config = load_config(scene_path);

    if (*ovals) return run_ovals(*config, {out, svg}, std::cout);
    if (*caustic) {
      CausticOptions opt;
      opt.out = out;
      opt.symbolic = symbolic;
      if (!specialize.empty()) opt.specialize = parse_specialization(specialize);
      if (samples > 0) opt.samples = samples;
      if (tol > 0) opt.tol = tol;
      return run_caustic(config, opt, std::cout);
    }
    if (*render) {
      if (samples > 0) config->render.rays = samples;
      return run_render(*config, out, std::cout);
    }
    if (*verify) {
      VerifyOptions opt;
      opt.out = out;
      opt.seed = seed;
      opt.envelope = !no_envelope;
      if (samples > 0) opt.samples = samples;
      if (tol > 0) opt.tol = tol;
      return run_verify(*config, opt, std::cout);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::PipelineMismatch ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
