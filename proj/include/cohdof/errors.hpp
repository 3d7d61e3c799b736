#pragma once

#include <stdexcept>
#include <string>

namespace cohdof {

/** Base class for every error raised by the library. */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** Malformed configuration: zero antennas, bad offsets, unknown fields. */
class InvalidConfig : public Error {
public:
    using Error::Error;
};

// A construction precondition does not hold (T < 2N for the MAC, non-nested times).
class PreconditionViolation : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class UnboundedRegion : public Error {
public:
    using Error::Error;
};

/** A schedule lets some entity decode more dimensions than it can estimate. */
class EstimabilityViolation : public Error {
public:
    using Error::Error;
};

/** Slot-level oracle and closed form disagree. */
class OracleMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace cohdof
