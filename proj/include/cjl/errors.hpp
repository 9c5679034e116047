#pragma once

#include <stdexcept>
#include <string>

namespace cjl {

// Raised when a constructor input violates one of the named membership
// conditions of a representation family, or when a built point fails its
// verification bounds. `condition` is a stable machine-readable tag.
struct ConstraintError : std::runtime_error {
    ConstraintError(std::string cond, const std::string& message)
        : std::runtime_error(cond + ": " + message), condition(std::move(cond)) {}
    std::string condition;
};

}  // namespace cjl
