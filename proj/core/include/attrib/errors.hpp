#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace attrib {

// Every failure mode carries a stable machine-readable code so callers
// (notably the CLI) can map errors to exit statuses and JSON payloads
// without parsing messages.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

private:
  std::string code_;
};

class SchemaError : public Error {
public:
  explicit SchemaError(const std::string& msg) : Error("schema-error", msg) {}
};

class ParseError : public Error {
public:
  explicit ParseError(const std::string& msg) : Error("parse-error", msg) {}
};

class EmptyInputError : public Error {
public:
  explicit EmptyInputError(const std::string& msg) : Error("empty-input", msg) {}
};

class ArgumentError : public Error {
public:
  explicit ArgumentError(const std::string& msg) : Error("argument-error", msg) {}
};

// IRLS failed to make progress; carries the last iterate so callers that
// want to treat separation leniently can inspect it.
class DivergedError : public Error {
public:
  DivergedError(const std::string& msg, std::vector<double> last_coefficients)
      : Error("diverged", msg), last_coefficients_(std::move(last_coefficients)) {}

  const std::vector<double>& last_coefficients() const { return last_coefficients_; }

private:
  std::vector<double> last_coefficients_;
};

class DegenerateTargetError : public Error {
public:
  explicit DegenerateTargetError(const std::string& msg)
      : Error("degenerate-target", msg) {}
};

class UnestimableArmError : public Error {
public:
  explicit UnestimableArmError(const std::string& msg)
      : Error("unestimable-arm", msg) {}
};

class NoTreatedCasesError : public Error {
public:
  explicit NoTreatedCasesError(const std::string& msg)
      : Error("no-treated-cases", msg) {}
};

class DegenerateDenominatorError : public Error {
public:
  explicit DegenerateDenominatorError(const std::string& msg)
      : Error("degenerate-denominator", msg) {}
};

class WrongVariantError : public Error {
public:
  explicit WrongVariantError(const std::string& msg)
      : Error("wrong-variant", msg) {}
};

class RegistryError : public Error {
public:
  explicit RegistryError(const std::string& msg) : Error("registry-error", msg) {}
};

class DegenerateTruthError : public Error {
public:
  explicit DegenerateTruthError(const std::string& msg)
      : Error("degenerate-truth", msg) {}
};

}  // namespace attrib
