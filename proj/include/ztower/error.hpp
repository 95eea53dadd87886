#pragma once

#include <stdexcept>
#include <string>

namespace ztower {

enum class ErrorKind {
    InvalidInput,       // malformed or semantically invalid input data
    EmptyGraph,
    Disconnected,
    UnknownVertex,
    MissingWeight,
    PrimeMismatch,
    InsufficientPrecision,
    ZeroSeries,         // series indistinguishable from 0 at the working precision
    LevelMismatch,
    SupportMismatch,
    CapExceeded,
    Indeterminate,
};

const char *to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace ztower
