// Command-line front-end: reads a model file, runs one computation, writes a
// JSON report (stdout or --out) and optional CSV samples (--csv).
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "latspec/cli.hpp"
#include "latspec/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Lattice three-particle spectral toolkit"};
  app.footer(
      "Exit codes:\n"
      "  0  ok\n"
      "  2  config invalid (parse error, failed requirement, degenerate dispersion)\n"
      "  3  precondition violated (bad momentum, z outside the allowed range, grid too large, ...)\n"
      "  4  numerical failure (eigensolver or refinement did not converge)\n"
      "Momenta are x,y,z with components such as 0, 1.5, pi, -pi/2, 3pi/4.");
  app.require_subcommand(1, 1);

  std::string model, out, csv, K, k, z, z_sweep, gap_tol;
  int n = 0, threads = 1, channel = 1;
  bool timing = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--model", model, "Model file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "Write the JSON report here instead of stdout");
    sub->add_option("--threads", threads, "Worker threads for parallel maps")->check(CLI::PositiveNumber);
    sub->add_flag("--timing", timing, "Add wall-clock time to the report");
  };
  auto grid = [&](CLI::App* sub) { sub->add_option("--n", n, "Grid resolution (points per axis)"); };

  auto* validate = app.add_subcommand("validate", "Check every table of the model file");
  common(validate);

  auto* twobody = app.add_subcommand("twobody", "Discrete spectrum of h_alpha(k), optional z table");
  common(twobody);
  grid(twobody);
  twobody->add_option("--k", k, "Pair total momentum");
  twobody->add_option("--channel", channel, "Channel 1..3");
  twobody->add_option("--z", z, "Single spectral parameter");
  twobody->add_option("--z-sweep", z_sweep, "LO:HI:STEPS, or no value for an automatic range below the band")
      ->expected(0, 1)
      ->default_str("auto");
  twobody->add_option("--gap-tol", gap_tol, "Continuum tolerance override");
  twobody->add_option("--csv", csv, "Write the z table as CSV");

  auto* chan = app.add_subcommand("channel", "Two-cluster spectrum of one channel at total momentum K");
  common(chan);
  grid(chan);
  chan->add_option("--K", K, "Three-body total momentum");
  chan->add_option("--channel", channel, "Channel 1..3");
  chan->add_option("--gap-tol", gap_tol, "Interval merge tolerance");
  chan->add_option("--csv", csv, "Write sigma_two samples as CSV");

  auto* essential = app.add_subcommand("essential", "Essential spectrum union at total momentum K");
  common(essential);
  grid(essential);
  essential->add_option("--K", K, "Three-body total momentum");
  essential->add_option("--gap-tol", gap_tol, "Interval merge tolerance");
  essential->add_option("--csv", csv, "Write sigma_two samples as CSV");

  auto* faddeev = app.add_subcommand("faddeev", "Smallest singular value of I - T(K,z) over z");
  common(faddeev);
  grid(faddeev);
  faddeev->add_option("--K", K, "Three-body total momentum");
  faddeev->add_option("--z", z, "Single spectral parameter");
  faddeev->add_option("--z-sweep", z_sweep, "LO:HI:STEPS, or no value for an automatic range below the union")
      ->expected(0, 1)
      ->default_str("auto");
  faddeev->add_option("--gap-tol", gap_tol, "Interval merge tolerance for the automatic range");
  faddeev->add_option("--csv", csv, "Write the scan as CSV");

  auto* oracle = app.add_subcommand("oracle", "Diagonalize the coarse-grid H(K) and test containment");
  common(oracle);
  grid(oracle);
  oracle->add_option("--K", K, "Three-body total momentum");
  oracle->add_option("--gap-tol", gap_tol, "Interval merge tolerance");

  auto* fiber = app.add_subcommand("fiber-test", "Full two-particle operator against its momentum fibers");
  common(fiber);
  grid(fiber);
  fiber->add_option("--channel", channel, "Channel 1..3");

  CLI11_PARSE(app, argc, argv);

  CLI::App* sub = app.get_subcommands().front();
  latspec::RunRequest req;
  req.command = sub->get_name();
  req.model_path = model;
  auto set_if = [&](const char* flag, const char* key, const std::string& value) {
    if (sub->get_option_no_throw(flag) && sub->count(flag) > 0) req.params[key] = value;
  };
  set_if("--K", "K", K);
  set_if("--k", "k", k);
  set_if("--z", "z", z);
  set_if("--gap-tol", "gap-tol", gap_tol);
  if (sub->get_option_no_throw("--z-sweep") && sub->count("--z-sweep") > 0)
    req.params["z-sweep"] = z_sweep.empty() ? "auto" : z_sweep;
  if (sub->get_option_no_throw("--n") && sub->count("--n") > 0) req.params["n"] = std::to_string(n);
  if (sub->get_option_no_throw("--channel") && sub->count("--channel") > 0)
    req.params["channel"] = std::to_string(channel);
  if (timing) req.params["timing"] = "1";

  latspec::set_thread_count(threads);
  const auto result = latspec::run(req);
  const std::string text = result.report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    f << text;
    if (!f) {
      std::cerr << "cannot write " << out << "\n";
      return 3;
    }
  }
  if (!csv.empty() && !result.csv.empty()) {
    std::ofstream f(csv);
    f << result.csv;
  }
  if (result.exit_code != 0 && result.report.contains("error"))
    std::cerr << result.report["error"]["message"].get<std::string>() << "\n";
  return result.exit_code;
}
