#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hypergm/sampling.hpp"

namespace hypergm {

enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitResonance = 3, kExitConsistency = 4 };

struct JobSpec {
  std::string command;
  std::string arrangement;         // file path, or the fixture names example1 / ceva
  std::string weights = "symbolic";  // file path or "symbolic"
  std::string output;              // empty: standard output
  std::string format = "json";     // json | text
  std::uint64_t seed = kDefaultSeed;
  std::string component;           // monodromy only
  std::string mode = "both";       // monodromy only
  std::size_t degree = 0;          // nbc / os-relations; 0 means top degree
  std::string fixture;             // verify-paper only
};

struct VerifyReport {
  bool pass = true;
  std::string summary;
  std::vector<std::string> failures;
};

/// Golden replay of an embedded example ("example1" or "ceva").
VerifyReport verify_example(const std::string& which, std::uint64_t seed = kDefaultSeed);

/// Runs one command line (without the program name). Results go to `out`
/// (or the --output file), errors to `err` as a JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypergm
