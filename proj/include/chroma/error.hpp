#pragma once

#include <stdexcept>
#include <string>

namespace chroma {

/// Malformed input: unparsable text or JSON, schema mismatches.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}
