#pragma once

#include <stdexcept>
#include <string>

namespace texnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or argument values (CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Bad or inconsistent input data: manifests, images, feature tables (CLI exit code 3).
class DataError : public Error {
public:
    using Error::Error;
};

/// Output could not be written.
class IoError : public DataError {
public:
    using DataError::DataError;
};

} // namespace texnet
