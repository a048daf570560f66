#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gossip {

// Base of every error thrown by the library. The kind() token is what the
// harness writes into the status column of a failed trial.
class Error : public std::runtime_error {
 public:
  Error(const std::string& kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what) : Error("invalid_input", what) {}
};

class InvalidParameters : public Error {
 public:
  explicit InvalidParameters(const std::string& what)
      : Error("invalid_parameters", what) {}
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(std::size_t pivot)
      : Error("not_pd", "matrix is not positive definite at pivot " +
                            std::to_string(pivot)),
        pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

class SingularMatrix : public Error {
 public:
  explicit SingularMatrix(std::size_t index)
      : Error("singular", "zero diagonal entry at index " + std::to_string(index)) {}
};

class DegenerateGraph : public Error {
 public:
  explicit DegenerateGraph(const std::string& what)
      : Error("degenerate_graph", what) {}
};

class InfeasibleCleanup : public Error {
 public:
  explicit InfeasibleCleanup(const std::string& what)
      : Error("infeasible_cleanup", what) {}
};

class NoMixing : public Error {
 public:
  explicit NoMixing(const std::string& what) : Error("no_mixing", what) {}
};

class StepSizeTooLarge : public Error {
 public:
  explicit StepSizeTooLarge(const std::string& what)
      : Error("step_size_too_large", what) {}
};

}  // namespace gossip
