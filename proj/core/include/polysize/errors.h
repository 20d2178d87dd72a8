#ifndef POLYSIZE_ERRORS_H
#define POLYSIZE_ERRORS_H

#include <stdexcept>
#include <string>
#include <vector>

namespace polysize {

struct SourcePos {
  int line = 0;
  int col = 0;

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

std::string to_string(SourcePos pos);

// Base of every error the library throws. `kind()` is a stable name used in
// CLI reports and structured output.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message, SourcePos pos = {});

  const std::string& kind() const { return kind_; }
  SourcePos pos() const { return pos_; }

 private:
  std::string kind_;
  SourcePos pos_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(SourcePos pos, const std::string& message,
              std::vector<std::string> expected = {});
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::vector<std::string> expected_;
};

class RestrictionViolation : public Error {
 public:
  RestrictionViolation(std::string function, std::string scrutinee,
                       SourcePos pos);
  const std::string& function() const { return function_; }
  const std::string& scrutinee() const { return scrutinee_; }

 private:
  std::string function_;
  std::string scrutinee_;
};

class UnboundSizeVariable : public Error {
 public:
  explicit UnboundSizeVariable(const std::string& name);
};

// Underlying (unsized) type errors: UnificationFailure, OccursCheck,
// UnknownFunction, ShapeMismatch and friends share this type.
class TypeError : public Error {
 public:
  TypeError(std::string kind, const std::string& message, SourcePos pos = {});
};

class OutsideFragment : public Error {
 public:
  explicit OutsideFragment(const std::string& equation);
};

// Runtime failures of the interpreter.
class EvalError : public Error {
 public:
  EvalError(std::string kind, const std::string& message, SourcePos pos = {});
};

class InferenceError : public Error {
 public:
  InferenceError(std::string kind, const std::string& message);
};

}  // namespace polysize

#endif  // POLYSIZE_ERRORS_H
