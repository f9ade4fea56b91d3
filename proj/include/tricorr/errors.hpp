#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tricorr {

// A state violates one of its defining invariants (norm, trace, hermiticity,
// positivity). The message names the invariant.
class invalid_state : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The input is valid but outside what a closed form supports, e.g. a mixed
// state handed to a pure-state formula.
class unsupported_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Two computations that must agree did not.
class consistency_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t byte_offset)
        : std::runtime_error(what), offset_(byte_offset) {}

    std::size_t byte_offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tricorr
