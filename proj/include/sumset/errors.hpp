#pragma once

#include <stdexcept>
#include <string>

namespace sumset {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed group descriptor (empty factor list, factor < 1, ...).
struct InvalidSpecError : Error {
    using Error::Error;
};

/// A configured size cap was exceeded (group order, scan width, enumeration).
struct SizeLimitError : Error {
    using Error::Error;
};

/// Two operands belong to different groups.
struct GroupMismatchError : Error {
    using Error::Error;
};

/// A documented operation precondition failed; the message names it.
struct PreconditionError : Error {
    using Error::Error;
};

} // namespace sumset
