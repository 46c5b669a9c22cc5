#pragma once

#include <stdexcept>

namespace stallnet {

// Bad input or configuration the caller can fix. The CLI maps this to exit code 2;
// any other exception is a runtime failure (exit code 3).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace stallnet
