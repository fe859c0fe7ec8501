#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "lassynt/encoding.hpp"

namespace lassynt::cli {

struct ReproOptions {
  std::filesystem::path spec_dir;
  bool small = false;
  std::uint64_t ceiling = 2'000'000;  // brute-force candidates per rate
  std::uint64_t max_iterations = 100'000;
  bool state_only_column = true;
  bool timing = false;  // wall times make the output nondeterministic
};

/// Prints expected vs obtained verdicts and rates for the published table;
/// returns the number of rows whose verdict differs from the expectation.
int repro_table(const ReproOptions &opts, std::ostream &out);

}  // namespace lassynt::cli
