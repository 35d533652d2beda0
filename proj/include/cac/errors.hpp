#pragma once

#include <stdexcept>

namespace cac {

// A documented operation precondition or theorem hypothesis does not hold.
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A bounded search ran out of nodes before establishing any usable result.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cac
