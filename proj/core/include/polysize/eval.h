#ifndef POLYSIZE_EVAL_H
#define POLYSIZE_EVAL_H

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "polysize/ast.h"
#include "polysize/value.h"

namespace polysize {

// Host implementation of an extern: may allocate in the heap.
using ExternCallback =
    std::function<Value(const std::vector<Value>& args, Heap& heap)>;

struct EvalOptions {
  // Counts big-step rule applications.
  std::uint64_t budget = 10'000'000;
  // Nested function calls allowed before BudgetExhausted.
  std::uint64_t max_depth = 200'000;
  // Asserts at every let that the bound expression leaves the footprint of
  // the continuation's free variables unchanged.
  bool debug_assert = false;
};

// Big-step interpreter over a heap and frame store. Operand slots may hold
// compound expressions; they are evaluated left to right, which agrees with
// the desugared program. Errors are EvalError with kinds StuckEvaluation,
// DivByZero, IntegerOverflow, BudgetExhausted, UnknownFunction,
// MissingExtern and BenignSharingViolated.
class Interpreter {
 public:
  Interpreter(const Program& program, EvalOptions options = {},
              std::map<std::string, ExternCallback> externs = {});

  // Calls a top-level function; runs on a thread with a large stack.
  Value call(const std::string& function, const std::vector<Value>& args,
             Heap& heap);
  // Evaluates e under store s with the program's functions in scope.
  Value evaluate(const ExprPtr& e, const Store& s, Heap& heap);
  // Evaluates the program's main expression.
  Value run_main(Heap& heap);

  // Steps taken by the most recent call or evaluation.
  std::uint64_t steps() const { return steps_; }

  struct Scope;

 private:
  Value run(const std::function<Value()>& body);

  Program program_;
  EvalOptions options_;
  std::map<std::string, ExternCallback> externs_;
  std::shared_ptr<Scope> globals_;
  std::uint64_t steps_ = 0;
};

}  // namespace polysize

#endif  // POLYSIZE_EVAL_H
