#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace osl {

// Base for all engine errors. `code()` is the stable machine-readable
// identifier used by the CLI's JSON diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class InvalidSpec : public Error {
 public:
  explicit InvalidSpec(const std::string& msg) : Error("InvalidSpec", msg) {}
};

class DuplicateLabel : public Error {
 public:
  explicit DuplicateLabel(const std::string& label)
      : Error("DuplicateLabel", "duplicate element label: \"" + label + "\"") {}
};

class CycleDetected : public Error {
 public:
  explicit CycleDetected(const std::string& msg) : Error("CycleDetected", msg) {}
};

// A pair of elements without a unique least upper (or greatest lower) bound.
class NotALattice : public Error {
 public:
  NotALattice(const std::string& msg, std::string a, std::string b)
      : Error("NotALattice", msg), first(std::move(a)), second(std::move(b)) {}

  std::string first;
  std::string second;
};

class NoUniqueBound : public Error {
 public:
  explicit NoUniqueBound(const std::string& msg) : Error("NoUniqueBound", msg) {}
};

class IndexOutOfRange : public Error {
 public:
  explicit IndexOutOfRange(const std::string& msg)
      : Error("IndexOutOfRange", msg) {}
};

class WeightOutOfRange : public Error {
 public:
  explicit WeightOutOfRange(double w)
      : Error("WeightOutOfRange",
              "credibility weight must lie in [0,1], got " + std::to_string(w)) {}
};

class InvalidNode : public Error {
 public:
  explicit InvalidNode(const std::string& msg) : Error("InvalidNode", msg) {}
};

class UnknownLabel : public Error {
 public:
  explicit UnknownLabel(const std::string& label)
      : Error("UnknownLabel", "unknown element label: \"" + label + "\"") {}
};

class StaleComponents : public Error {
 public:
  explicit StaleComponents(const std::string& msg)
      : Error("StaleComponents", msg) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error("ParseError", msg) {}
};

class InvalidScenario : public Error {
 public:
  explicit InvalidScenario(const std::string& msg)
      : Error("InvalidScenario", msg) {}
};

class UnknownShape : public Error {
 public:
  explicit UnknownShape(const std::string& shape)
      : Error("UnknownShape", "unknown lattice shape: \"" + shape + "\"") {}
};

class InsufficientData : public Error {
 public:
  explicit InsufficientData(const std::string& msg)
      : Error("InsufficientData", msg) {}
};

}  // namespace osl
