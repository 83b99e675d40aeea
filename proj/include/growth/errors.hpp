#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace growth {

/// Raised when an input violates an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A hard memory budget was hit. Carries the module that hit it and the size
/// (vertices, elements, or the reached step) at the time.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string module, std::size_t reached, std::size_t budget,
                 std::string what_exceeded)
      : std::runtime_error(module + ": " + what_exceeded + " budget exceeded (reached " +
                           std::to_string(reached) + ", budget " + std::to_string(budget) +
                           ")"),
        module_(std::move(module)),
        reached_(reached),
        budget_(budget) {}

  const std::string& module() const { return module_; }
  std::size_t reached() const { return reached_; }
  std::size_t budget() const { return budget_; }

 private:
  std::string module_;
  std::size_t reached_;
  std::size_t budget_;
};

/// A generating-set check failed (the set does not generate the group as a semigroup).
class NotGenerating : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace growth
