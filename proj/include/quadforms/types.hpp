#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace qf {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Violated mathematical precondition (bad input). CLI maps this to exit 2.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Operation not covered by the implemented closed forms or configuration.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Enumeration budget exhausted. CLI maps this to exit 3.
struct BudgetExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Work meter shared by the enumeration/counting loops. A default-constructed
/// budget is effectively unlimited.
struct Budget {
  long long max_nodes = 1LL << 62;
  long long used = 0;
  void charge(long long k = 1) {
    used += k;
    if (used > max_nodes) throw BudgetExceededError("enumeration budget exceeded");
  }
};

}  // namespace qf
