#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "lassynt/encoding.hpp"
#include "lassynt/qbf.hpp"
#include "lassynt/spec_file.hpp"
#include "lassynt/tsys.hpp"

namespace lassynt {

enum class Backend { InternalQbf, ExternalQbf, BruteForce };
enum class Verdict { Realizable, Unrealizable, ResourceLimit };

const char *backend_name(Backend b);
const char *verdict_name(Verdict v);

struct SynthOptions {
  Backend backend = Backend::InternalQbf;
  EncodingOptions encoding;
  std::uint64_t max_iterations = 1'000'000;          // CEGAR refinements
  std::uint64_t ceiling = kDefaultCandidateCeiling;  // brute-force candidates
  std::string external_command;                      // empty: $LASSYNT_SOLVER
};

struct SynthStats {
  std::size_t vars = 0;
  std::size_t clauses = 0;
  std::size_t non_definitional = 0;
  std::uint64_t iterations = 0;
  double seconds = 0;
};

struct SynthesisResult {
  Verdict verdict = Verdict::ResourceLimit;
  std::optional<TransitionSystem> witness;
  SynthStats stats;
  Backend backend = Backend::InternalQbf;
};

/// Raised when a decoded witness fails the explicit-state check; this
/// always indicates an encoder or solver defect.
class WitnessMismatch : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

SynthesisResult synthesize(const SpecFile &spec, std::size_t n, std::size_t k,
                           const SynthOptions &opts = {});

struct ApproxResult {
  TransitionSystem best;
  Rate rate;
  double epsilon = 0;
  bool epsilon_met = false;
  std::uint64_t index = 0;  // canonical position of `best`
};

/// Exact maximizer of the satisfaction rate over all systems of size n.
ApproxResult approx_synthesize(const SpecFile &spec, std::size_t n, std::size_t k, double epsilon,
                               std::uint64_t ceiling = kDefaultCandidateCeiling);

/// Writes the counting instance (DIMACS with `c max` / `c count` headers).
void export_counting(const SpecFile &spec, std::size_t n, std::size_t k,
                     const std::filesystem::path &path, const EncodingOptions &opts = {});

struct CheckResult {
  bool holds = true;
  std::optional<Lasso> violation;  // input lasso
  std::string violation_text;      // `{r} ({})^w` syntax over the inputs
};

/// Throws std::invalid_argument when the system's alphabet differs from the spec.
CheckResult check(const SpecFile &spec, const TransitionSystem &sys, std::size_t k);

/// Pipes the problem to `command <file>`; exit 10 = true, 20 = false.
/// A `V` line, if printed, supplies the outer assignment.
QbfResult run_external_solver(const std::string &command, const QbfProblem &p);

std::string result_to_json(const SynthesisResult &r, int indent = 2);
std::string approx_to_json(const ApproxResult &r, int indent = 2);

}  // namespace lassynt
