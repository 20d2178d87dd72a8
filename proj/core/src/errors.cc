#include "polysize/errors.h"

#include <sstream>

namespace polysize {

std::string to_string(SourcePos pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.col);
}

Error::Error(std::string kind, const std::string& message, SourcePos pos)
    : std::runtime_error(message), kind_(std::move(kind)), pos_(pos) {}

namespace {

std::string syntax_message(SourcePos pos, const std::string& message,
                           const std::vector<std::string>& expected) {
  std::ostringstream out;
  out << to_string(pos) << ": " << message;
  if (!expected.empty()) {
    out << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) out << (i + 1 == expected.size() ? " or " : ", ");
      out << expected[i];
    }
    out << ")";
  }
  return out.str();
}

}  // namespace

SyntaxError::SyntaxError(SourcePos pos, const std::string& message,
                         std::vector<std::string> expected)
    : Error("SyntaxError", syntax_message(pos, message, expected), pos),
      expected_(std::move(expected)) {}

RestrictionViolation::RestrictionViolation(std::string function,
                                           std::string scrutinee,
                                           SourcePos pos)
    : Error("RestrictionViolation",
            to_string(pos) + ": in function '" + function +
                "': match on '" + scrutinee +
                "', which is neither a parameter nor bound by an enclosing "
                "match",
            pos),
      function_(std::move(function)),
      scrutinee_(std::move(scrutinee)) {}

UnboundSizeVariable::UnboundSizeVariable(const std::string& name)
    : Error("UnboundSizeVariable", "size variable '" + name + "' is unbound") {}

TypeError::TypeError(std::string kind, const std::string& message,
                     SourcePos pos)
    : Error(std::move(kind),
            pos.line > 0 ? to_string(pos) + ": " + message : message, pos) {}

OutsideFragment::OutsideFragment(const std::string& equation)
    : Error("OutsideFragment",
            "constraint '" + equation +
                " = 0' is not of the form n - c = 0") {}

EvalError::EvalError(std::string kind, const std::string& message,
                     SourcePos pos)
    : Error(std::move(kind),
            pos.line > 0 ? to_string(pos) + ": " + message : message, pos) {}

InferenceError::InferenceError(std::string kind, const std::string& message)
    : Error(std::move(kind), message) {}

}  // namespace polysize
