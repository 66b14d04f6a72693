#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using stochmon::cli::Command;
  stochmon::cli::RunConfig config;

  CLI::App app{"Markov Monoid analysis of probabilistic automata"};
  app.require_subcommand(1);

  const std::map<std::string, stochmon::LimitMode> modes = {
      {"polynomial", stochmon::LimitMode::polynomial}, {"superpolynomial", stochmon::LimitMode::superpolynomial}};

  auto* analyze = app.add_subcommand("analyze", "Run the Markov Monoid algorithm (exit 0 = YES, 1 = NO)");
  analyze->add_option("file", config.input_path, "Automaton file")->required();
  analyze->add_flag("--verify", config.verify, "Simulate the witness along its polynomial realization");
  analyze->add_option("-n,--n-max", config.n_max, "Largest realization index")->check(CLI::PositiveNumber);
  analyze->add_flag("--csv", config.csv, "Machine-readable report rows");

  auto* monoid = app.add_subcommand("monoid", "Dump the Markov Monoid with witness expressions");
  monoid->add_option("file", config.input_path, "Automaton file")->required();

  auto* simulate = app.add_subcommand("simulate", "Acceptance along the realization of an omega-expression");
  simulate->add_option("file", config.input_path, "Automaton file")->required();
  simulate->add_option("-e,--expression", config.expression, "Omega-expression, e.g. \"(b a^w)^w\"")->required();
  simulate->add_option("-m,--mode", config.mode, "polynomial or superpolynomial")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  simulate->add_option("-n,--n-max", config.n_max, "Largest realization index")->check(CLI::PositiveNumber);
  simulate->add_option("--tol", config.tol, "Limit-matrix tolerance")->check(CLI::PositiveNumber);
  simulate->add_flag("--csv", config.csv, "Machine-readable report rows");

  auto* reduce = app.add_subcommand("reduce", "Build the reduction automaton");
  reduce->add_option("file", config.input_path, "Automaton file")->required();
  reduce->add_option("-w,--word", config.word, "Word of the source automaton to verify the reduction on");
  reduce->add_option("-n,--n-max", config.n_max, "Largest schedule index")->check(CLI::PositiveNumber);
  reduce->add_option("-o,--output", config.output, "Output automaton file");

  auto* example = app.add_subcommand("example", "Write the counterexample automaton");
  example->add_option("-x", config.x, "Parameter in (0, 1)")->required();
  example->add_option("-o,--output", config.output, "Output automaton file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : stochmon::cli::exit_input_error;
  }

  if (analyze->parsed()) config.command = Command::analyze;
  if (monoid->parsed()) config.command = Command::monoid;
  if (simulate->parsed()) config.command = Command::simulate;
  if (reduce->parsed()) config.command = Command::reduce;
  if (example->parsed()) config.command = Command::example;
  return stochmon::cli::run(config, std::cout, std::cerr);
}
