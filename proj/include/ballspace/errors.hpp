#pragma once

#include <stdexcept>
#include <string>

namespace ballspace {

// Malformed input data: bad documents, invalid instance matrices, unknown labels.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation was called outside its stated contract.
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An exhaustive size bound was exceeded.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A verified theorem failed on a concrete instance. This is the internal
// alarm (CLI exit code 3); it is never expected to fire.
struct soundness_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace ballspace
