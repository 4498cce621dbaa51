#ifndef PSH_TYPES_HPP
#define PSH_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace psh {

using ObjId = std::uint32_t;
using MorId = std::uint32_t;
using Elem = std::uint32_t;

// Sentinel in composition tables for non-composable pairs.
inline constexpr MorId kNoMor = 0xFFFFFFFFu;

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An enumeration exceeded the configured candidate budget. Callers must not
// confuse this with a failed check; it is a distinct verdict.
struct BudgetError : Error {
  BudgetError(std::string op_in, std::uint64_t limit_in)
      : Error("budget exceeded in " + op_in + " (limit " +
              std::to_string(limit_in) + ")"),
        op(std::move(op_in)),
        limit(limit_in) {}
  std::string op;
  std::uint64_t limit;
};

// The two legs handed to a pullback mediator do not form a cone.
struct ConeError : Error {
  using Error::Error;
};

// A construction the theory guarantees unconditionally has failed; this means
// the backend violates its contract (or was deliberately corrupted).
struct BackendError : Error {
  using Error::Error;
};

// copair found zero or more than one mediating morphism.
struct CopairError : Error {
  CopairError(std::size_t found, const std::string& msg)
      : Error(msg), candidates(found) {}
  std::size_t candidates;
};

// Per-operation enumeration budget. Counts candidate tuples / search nodes.
struct Budget {
  std::uint64_t limit = kDefaultBudget;
  std::string op;
  mutable std::uint64_t used = 0;

  void tick(std::uint64_t n = 1) const {
    used += n;
    if (used > limit) throw BudgetError(op, limit);
  }
};

}  // namespace psh

#endif
