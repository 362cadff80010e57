#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace bipara::cli;

  CLI::App app{"Synthesize and integrate conformal bi-para equations of motion"};
  app.require_subcommand(1);

  std::string problem_path;
  auto* derive = app.add_subcommand("derive", "Print the synthesized equations");
  derive->add_option("file", problem_path, "Problem file")->required();

  IntegrateOptions integrate_opts;
  auto* integrate = app.add_subcommand("integrate", "Integrate and write a trajectory CSV");
  integrate->add_option("file", problem_path, "Problem file")->required();
  integrate->add_option("-o,--output", integrate_opts.output, "CSV path, - for stdout")->required();
  integrate->add_flag("--residual", integrate_opts.residual, "Add a residual column");

  AuditOptions audit_opts;
  audit_opts.seed = default_seed();
  auto* audit = app.add_subcommand("audit", "Plug-back audit at random states");
  audit->add_option("file", problem_path, "Problem file")->required();
  audit->add_option("--samples", audit_opts.samples, "Number of states")->capture_default_str();
  audit->add_option("--seed", audit_opts.seed, "Sampler seed (default: BPC_SEED or built-in)");
  audit->add_flag("--flip-sign", audit_opts.flip_sign, "Negate the velocities (fault injection)");

  std::uint64_t selftest_seed = default_seed();
  auto* selftest = app.add_subcommand("selftest", "Run every verification suite");
  selftest->add_option("--seed", selftest_seed, "Seed (default: BPC_SEED or built-in)");

  std::string csv_path;
  PlotOptions plot_opts;
  auto* plot = app.add_subcommand("plot", "Render CSV columns against t as SVG");
  plot->add_option("csv", csv_path, "Trajectory CSV")->required();
  plot->add_option("-o,--output", plot_opts.output, "SVG path")->required();
  plot->add_option("--cols", plot_opts.columns, "Comma-separated columns")->delimiter(',');
  plot->add_option("--width", plot_opts.width)->capture_default_str();
  plot->add_option("--height", plot_opts.height)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  if (*derive) return cmd_derive(problem_path, std::cout, std::cerr);
  if (*integrate) return cmd_integrate(problem_path, integrate_opts, std::cout, std::cerr);
  if (*audit) return cmd_audit(problem_path, audit_opts, std::cout, std::cerr);
  if (*selftest) return cmd_selftest(selftest_seed, std::cout);
  return cmd_plot(csv_path, plot_opts, std::cerr);
}
