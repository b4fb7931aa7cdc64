// Command-line front end for the subseries library.
//
//   subseries <command> --series <spec> --seq <spec> [options]
//
// Exit codes: 0 analysis completed (Inconclusive included), 1 refusal,
// 2 malformed specs or flags.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "subseries/cli.hpp"
#include "subseries/spec_parser.hpp"

int main(int argc, char** argv) {
  using namespace subseries;

  CLI::App app{"Convergence tests for subseries of monotone series"};
  std::string command;
  std::string format = "table";
  std::string out_path;
  std::string config_path;
  cli::RunConfig rc;

  app.add_option("command", command,
                 "condense | dilute | sandwich | classify | sparsity | polysparse | powellsalat | thin | validate")
      ->required();
  app.add_option("--series", rc.series, "harmonic, pseries:<p>, geometric:<r>, const:<c>, expr:<formula>");
  app.add_option("--seq", rc.seq, "id, pow2, geom:<r>, poly:<beta>, squares, cubes, nodigit:<d>:<base>, "
                                  "affine:<a>:<b>, list:[...]");
  app.add_option("--K", rc.K, "number of blocks (or horizon_k for validate)");
  app.add_option("--horizon-n", rc.horizon_n, "index horizon; rounded down to a block boundary where blocks apply");
  app.add_option("--p", rc.p, "exponent p > 1 for the sparsity condition");
  app.add_option("--c", rc.c, "density constant c (polysparse, powellsalat) or gap ratio bound (sandwich)");
  app.add_option("--alpha", rc.alpha, "density exponent alpha in (0, 1)");
  app.add_option("--target", rc.target, "target sum for thin");
  app.add_option("--epsilon", rc.epsilon, "residual tolerance for thin");
  app.add_option("--max-scan", rc.max_scan, "scan limit for thin");
  app.add_option("--format", format, "table | csv | json");
  app.add_option("--out", out_path, "write results to this file instead of stdout");
  app.add_option("--config", config_path, "JSON config file (default: $SUBSERIES_CONFIG)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kSpecError;
  }

  try {
    rc.command = cli::parse_command(command);
    rc.format = cli::parse_format(format);
    if (config_path.empty())
      if (const char* env = std::getenv("SUBSERIES_CONFIG")) config_path = env;
    if (!config_path.empty()) rc.config = Config::load(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kSpecError;
  }

  if (out_path.empty()) return cli::run(rc, std::cout, std::cerr);

  std::ostringstream buffer;
  const int code = cli::run(rc, buffer, std::cerr);
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return cli::kRefused;
  }
  file << buffer.str();
  return code;
}
