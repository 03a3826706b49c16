#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kdgrid {

// Caller broke a documented precondition (bad shape, out-of-bounds access, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class SingularMatrix : public std::runtime_error {
 public:
  explicit SingularMatrix(std::size_t pivot)
      : std::runtime_error("singular pivot at index " + std::to_string(pivot)), pivot_(pivot) {}
  [[nodiscard]] std::size_t pivot_index() const { return pivot_; }

 private:
  std::size_t pivot_;
};

// Requested size is above what the brute-force checker will run.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kdgrid
