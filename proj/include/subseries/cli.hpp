#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "subseries/config.hpp"
#include "subseries/kernels.hpp"

namespace subseries::cli {

enum class Command { condense, dilute, sandwich, classify, sparsity, polysparse, powellsalat, thin, validate };
enum class Format { table, csv, json };

Command parse_command(const std::string& name);
std::string command_name(Command c);
Format parse_format(const std::string& name);

struct RunConfig {
  Command command = Command::classify;
  std::string series;
  std::string seq;
  std::optional<Index> K;
  std::optional<Index> horizon_n;
  std::optional<double> p;
  std::optional<double> c;
  std::optional<double> alpha;
  std::optional<double> target;
  double epsilon = 1e-9;
  std::optional<Index> max_scan;  // thin: default is the first power of ten with a_n < epsilon
  Format format = Format::table;
  Config config;
};

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRefused = 1;
inline constexpr int kSpecError = 2;

// Executes one command. Results go to `out`; diagnostics, refusals and
// horizon adjustments for CSV output go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace subseries::cli
