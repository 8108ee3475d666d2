#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace boolsketch {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An affine GF(2) system has more solutions than the caller allowed.
/// `count()` saturates at 2^63 when the nullspace is enormous.
class SolutionCountExceeded : public Error {
 public:
  SolutionCountExceeded(std::uint64_t count, std::uint64_t cap)
      : Error("affine system has " + std::to_string(count) +
              " solutions, cap is " + std::to_string(cap)),
        count_(count),
        cap_(cap) {}

  std::uint64_t count() const noexcept { return count_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t count_;
  std::uint64_t cap_;
};

/// No coefficient vector satisfies the data-fit constraint.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// A learning run could not produce an answer. `stage()` names the step
/// that failed ("candidate_support", "recovery", "correlation", ...).
class LearnFailed : public Error {
 public:
  LearnFailed(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

class GridAmbiguous : public Error {
 public:
  using Error::Error;
};

class ComponentTooLarge : public Error {
 public:
  using Error::Error;
};

class NoConsistentHypergraph : public Error {
 public:
  using Error::Error;
};

class AmbiguousHypergraph : public Error {
 public:
  using Error::Error;
};

class MalformedLine : public Error {
 public:
  MalformedLine(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace boolsketch
