#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "intrinlip/errors.hpp"
#include "intrinlip/suites.hpp"

namespace {

// 0 pass, 1 violations, 2 invalid spec or arguments, 3 internal error.
enum Exit { kPass = 0, kViolations = 1, kInvalid = 2, kInternal = 3 };

struct Common {
  std::string group = "heisenberg";
  std::optional<std::string> map;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 10000;
  std::optional<double> tol;
  std::optional<std::string> box;
  bool exhaustive = false;
  std::optional<std::string> out;

  void attach(CLI::App& app, bool with_map, bool with_exhaustive) {
    app.add_option("--group", group, "group spec: abelian:m,k | heisenberg | affine | affine:swapped | dihedral:n");
    if (with_map) app.add_option("--map", map, "map spec: const:v | linear:l | hom:c | table:path");
    app.add_option("--seed", seed, "base seed (falls back to INTRINLIP_SEED, then 1)");
    app.add_option("--samples", samples, "sample count per check");
    if (with_map) app.add_option("--tol", tol, "algebraic residual tolerance");
    app.add_option("--box", box, "chart box: lo,hi or lo1,hi1,...");
    if (with_exhaustive) app.add_flag("--exhaustive", exhaustive, "enumerate finite groups fully");
    app.add_option("--out", out, "write the report to this file instead of stdout");
  }

  std::uint64_t resolved_seed() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("INTRINLIP_SEED")) {
      try {
        return std::stoull(env);
      } catch (const std::exception&) {
        throw intrinlip::InvalidSpec(std::string("INTRINLIP_SEED is not an integer: ") + env);
      }
    }
    return 1;
  }

  intrinlip::Tolerances tolerances() const {
    intrinlip::Tolerances t;
    if (tol) {
      if (!(*tol > 0.0)) throw intrinlip::InvalidSpec("--tol must be positive");
      t.exact = *tol;
    }
    return t;
  }
};

void emit(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(*path);
  if (!f) throw intrinlip::InvalidSpec("cannot open --out file " + *path);
  f << text << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for intrinsic Lipschitz graphs in metric groups"};
  app.require_subcommand(1);

  Common verify_args;
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run a check suite and print a JSON report");
  verify_args.attach(*verify, true, true);
  verify->add_option("--suite", suite, "group | zoo | translation | cones | lipschitz | quasi | subgroup | all");

  Common estimate_args;
  auto* estimate = app.add_subcommand("estimate", "print sampled constants of one map");
  estimate_args.attach(*estimate, true, true);

  Common sweep_args;
  auto* sweep = app.add_subcommand("sweep", "CSV of minimal cone openings at sampled points");
  sweep_args.attach(*sweep, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInvalid;
  }

  try {
    if (*verify) {
      intrinlip::SuiteOptions o;
      o.suite = suite;
      o.group = verify_args.group;
      o.map = verify_args.map;
      o.seed = verify_args.resolved_seed();
      o.samples = verify_args.samples;
      o.exhaustive = verify_args.exhaustive;
      o.tol = verify_args.tolerances();
      o.box = verify_args.box;
      const auto report = intrinlip::run_suite(o);
      emit(verify_args.out, intrinlip::report_json(report));
      return report.passed ? kPass : kViolations;
    }
    if (*estimate) {
      intrinlip::EstimateOptions o;
      o.group = estimate_args.group;
      if (estimate_args.map) o.map = *estimate_args.map;
      o.seed = estimate_args.resolved_seed();
      o.samples = estimate_args.samples;
      o.exhaustive = estimate_args.exhaustive;
      o.tol = estimate_args.tolerances();
      o.box = estimate_args.box;
      const auto start = std::chrono::steady_clock::now();
      const auto record = intrinlip::estimate_constants(o);
      const double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      emit(estimate_args.out, intrinlip::estimate_json(o, record, wall));
      return kPass;
    }
    std::ostringstream csv;
    intrinlip::write_cone_sweep(csv, sweep_args.group, sweep_args.samples,
                                sweep_args.resolved_seed(), sweep_args.box);
    std::string text = csv.str();
    if (!text.empty() && text.back() == '\n') text.pop_back();
    emit(sweep_args.out, text);
    return kPass;
  } catch (const intrinlip::InvalidSpec& e) {
    std::cerr << "invalid spec: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
