#pragma once

#include <stdexcept>
#include <string>

namespace plcbench {

// Root of all toolkit errors; everything thrown on purpose derives from this.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Configuration rejected before any work started (bad flag, bad JSON, bad range).
class InvalidConfigError : public Error {
public:
    using Error::Error;
};

// The selected device profile does not offer the requested interface.
class UnsupportedInterfaceError : public InvalidConfigError {
public:
    using InvalidConfigError::InvalidConfigError;
};

// A name lookup (message, interface, profile) found nothing.
class UnknownNameError : public InvalidConfigError {
public:
    using InvalidConfigError::InvalidConfigError;
};

// A device-side resource limit would be exceeded (PDU size, dataset fields,
// writers per group, node id shape).
class LimitExceededError : public Error {
public:
    using Error::Error;
};

// Bytes on the wire do not parse as the expected message.
class MalformedMessageError : public Error {
public:
    using Error::Error;
};

// A data block access fell outside the configured block.
class AddressRangeError : public Error {
public:
    using Error::Error;
};

// Offload never pays off: the edge cycle cost is not below the controller's.
class NoBenefitError : public Error {
public:
    using Error::Error;
};

// Requested digit count has no anchor row.
class OutOfTableError : public InvalidConfigError {
public:
    using InvalidConfigError::InvalidConfigError;
};

// Not enough samples to summarize (fewer than warmup + 2).
class InsufficientSamplesError : public Error {
public:
    using Error::Error;
};

// Socket-level failures: connect, bind, accept, send, receive.
class ConnectionError : public Error {
public:
    using Error::Error;
};

// A blocking network wait ran out of time.
class TimeoutError : public ConnectionError {
public:
    using ConnectionError::ConnectionError;
};

} // namespace plcbench
