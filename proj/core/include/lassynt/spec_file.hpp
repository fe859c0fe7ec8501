#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lassynt/ltl.hpp"

namespace lassynt {

/// A synthesis problem: inputs I, outputs O, and a formula over I ∪ O.
struct SpecFile {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  LtlFormula formula;

  /// I followed by O; the bit order of trace letters.
  std::vector<std::string> props() const;
  std::string to_text() const;
};

class SpecError : public std::runtime_error {
public:
  SpecError(const std::string &msg, std::size_t line)
      : std::runtime_error(msg), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Parses the `[inputs] ... / [outputs] ... / [ltl] ...` text format.
SpecFile parse_spec(std::string_view text);

/// Reads and parses a spec file. Throws std::system_error if unreadable.
SpecFile load_spec(const std::filesystem::path &path);

}  // namespace lassynt
