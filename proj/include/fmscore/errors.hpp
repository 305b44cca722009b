#pragma once

#include <stdexcept>
#include <string>

namespace fmscore {

// Base class for all library errors. code() is a stable machine-readable
// identifier; the CLI uses it for error records and exit-code mapping.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

// Malformed input: counts, margins, levels, flags. CLI exit code 2.
class InputError : public Error {
public:
  using Error::Error;
};

// Numerical failure inside an otherwise valid computation. CLI exit code 3.
class NumericalError : public Error {
public:
  using Error::Error;
};

class InvalidCounts : public InputError {
public:
  explicit InvalidCounts(const std::string& what)
      : InputError("InvalidCounts", what) {}
};

class InvalidMargin : public InputError {
public:
  explicit InvalidMargin(const std::string& what)
      : InputError("InvalidMargin", what) {}
};

class OutOfDomain : public InputError {
public:
  explicit OutOfDomain(const std::string& what)
      : InputError("OutOfDomain", what) {}
};

class WrongCase : public InputError {
public:
  explicit WrongCase(const std::string& what)
      : InputError("WrongCase", what) {}
};

class DegenerateTable : public InputError {
public:
  explicit DegenerateTable(const std::string& what)
      : InputError("DegenerateTable", what) {}
};

class InvalidSimConfig : public InputError {
public:
  explicit InvalidSimConfig(const std::string& what)
      : InputError("InvalidSimConfig", what) {}
};

class NotThreeRealRoots : public NumericalError {
public:
  explicit NotThreeRealRoots(const std::string& what)
      : NumericalError("NotThreeRealRoots", what) {}
};

class NoFeasibleRoot : public NumericalError {
public:
  explicit NoFeasibleRoot(const std::string& what)
      : NumericalError("NoFeasibleRoot", what) {}
};

class DegenerateVariance : public NumericalError {
public:
  explicit DegenerateVariance(const std::string& what)
      : NumericalError("DegenerateVariance", what) {}
};

class BracketingFailure : public NumericalError {
public:
  BracketingFailure(const std::string& what, double lo, double hi)
      : NumericalError("BracketingFailure", what),
        scanned_lo(lo),
        scanned_hi(hi) {}

  // Bracket that was scanned without finding a sign change.
  double scanned_lo;
  double scanned_hi;
};

}  // namespace fmscore
