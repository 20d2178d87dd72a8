#ifndef POLYSIZE_INFERENCE_H
#define POLYSIZE_INFERENCE_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polysize/checker.h"
#include "polysize/errors.h"
#include "polysize/eval.h"
#include "polysize/nca.h"
#include "polysize/underlying.h"
#include "polysize/value.h"

namespace polysize {

struct InferenceConfig {
  int start_degree = 0;
  int max_degree = 6;
  // First element value of every generated input.
  std::int64_t seed = 0;
  // Doublings of the node search box before NodeSearchExhausted.
  int growth_limit = 6;
  EvalOptions eval;
};

// A list of the given sizes whose leaves are consecutive integers taken
// from next_element. Int parameters are 1.
Value generate_input(const SizedType& param,
                     const std::map<std::string, std::int64_t>& sizes,
                     std::int64_t& next_element, Heap& heap);

struct Measurement {
  Node node;
  std::vector<Reading> inputs;
  Reading output;
  std::vector<LevelSize> sizes;  // all output levels
};

struct LevelReport {
  int level = 1;
  std::string placeholder;
  int degree = 0;
  // Set when the enclosing level's size is identically zero: no tests run.
  bool zero_shortcut = false;
  NodeConfiguration nodes;
  std::vector<Measurement> rows;
  Polynomial derived;
};

struct Candidate {
  FirstOrderType type;
  std::vector<LevelReport> levels;
};

// Runs f on NCA nodes of degree d for each output level, excluding the
// zeros of the enclosing levels' polynomials, and interpolates. Throws
// InferenceError (IncompleteMeasurement, SingularSystem,
// NodeSearchExhausted), NonShapelyObservation and EvalError.
Candidate get_size_aware_type(int d, const std::string& f,
                              const TypeTemplate& tmpl, Interpreter& interp,
                              const InferenceConfig& config);

struct DegreeAttempt {
  int degree = 0;
  std::optional<Candidate> candidate;
  std::optional<FunctionReport> check;
  std::string failure_kind;  // empty when accepted
  std::string failure;
};

struct InferenceResult {
  std::string function;
  TypeTemplate tmpl;
  std::optional<FirstOrderType> type;
  std::vector<DegreeAttempt> attempts;
  std::string cause;  // why no type was found

  bool success() const { return type.has_value(); }
};

class DegreeCapExceeded : public InferenceError {
 public:
  DegreeCapExceeded(const InferenceResult& result);
  const std::optional<FirstOrderType>& last_candidate() const {
    return last_candidate_;
  }
  const std::vector<std::string>& last_obligations() const {
    return last_obligations_;
  }
  const std::string& cause() const { return cause_; }

 private:
  std::optional<FirstOrderType> last_candidate_;
  std::vector<std::string> last_obligations_;
  std::string cause_;
};

// Infers a type for f with callees typed by sigma. Each degree from
// start_degree to max_degree yields a candidate that is accepted only if
// the checker accepts it. Failures tied to a degree move on to the next
// one; non-termination, non-shapely output and runtime errors on the test
// inputs stop the search.
InferenceResult try_increasing_degrees(const Program& p, const std::string& f,
                                       const Signature& sigma,
                                       const InferenceConfig& config = {});

// Mutually recursive functions are inferred together: one degree for the
// whole group, accepted when every member checks.
std::vector<InferenceResult> infer_group(const Program& p,
                                         const std::vector<std::string>& group,
                                         const Signature& sigma,
                                         const InferenceConfig& config = {});

// Testing-only inference for bodies outside the checkable fragment, such as
// synthesized inhabitants: the first candidate that reappears unchanged at
// the next degree. Empty if none does by max_degree.
std::optional<FirstOrderType> stabilized_candidate(
    const Program& p, const std::string& f, const InferenceConfig& config = {});

struct ProgramInference {
  std::vector<InferenceResult> functions;  // callees first
  Signature signature;                     // inferred types and externs
  bool success() const;
};

// Infers every top-level function in call-graph order, ignoring existing
// annotations. Extern types are trusted. Throws RestrictionViolation,
// TypeError.
ProgramInference infer_program(const Program& p,
                               const InferenceConfig& config = {});

// Groups of mutually recursive top-level functions, callees first.
std::vector<std::vector<std::string>> call_graph_sccs(const Program& p);

}  // namespace polysize

#endif  // POLYSIZE_INFERENCE_H
