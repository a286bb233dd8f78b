#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "affrig/cli.hpp"

int main(int argc, char** argv) {
  using namespace affrig::cli;
  CLI::App app{"affrig: thin, perfect and thick affine pairs and their rigidity over F_p^n"};
  app.require_subcommand(1);

  Options options;
  std::string input;
  std::string format = "text";
  std::string demo_name;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", options.seed, "seed of the randomized family search fallback");
    sub->add_option("--budget", options.budget, "node budget of the deterministic family search");
    sub->add_option("--cap", options.cap, "largest p^n the model may enumerate");
    sub->add_flag("--basis", options.basis, "print the oracle basis (dim)");
  };
  const std::pair<const char*, const char*> commands[] = {
      {"classify", "thin/perfect/thick matrix of X against Y"},
      {"check", "admissibility and the predicted dimension"},
      {"dim", "dimension of the distribution space in the finite model"},
      {"decompose", "split a distribution into perfect-pair components"},
      {"family", "search for an avoiding family"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--input", input, "job document (JSON); - reads stdin")->required();
    common(sub);
  }
  auto* demo = app.add_subcommand("demo", "built-in runs: quadratic, rigidity-tour");
  demo->add_option("name", demo_name)->required();
  common(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kInvalidInput;
  }
  options.format = format == "json" ? Format::Json : Format::Text;
  const std::string command = app.get_subcommands().front()->get_name();

  std::string argument = demo_name;
  if (command != "demo") {
    std::ostringstream text;
    if (input == "-") {
      text << std::cin.rdbuf();
    } else {
      std::ifstream file(input);
      if (!file) {
        std::cerr << "error: cannot read " << input << "\n";
        return kInvalidInput;
      }
      text << file.rdbuf();
    }
    argument = text.str();
  }

  const Outcome outcome = run_command(command, argument, options);
  (outcome.exit_code == kSuccess ? std::cout : std::cerr) << render(outcome, options.format);
  return outcome.exit_code;
}
