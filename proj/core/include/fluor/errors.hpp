// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace fluor {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A spectrum integrates to zero where a positive integral is required.
class ZeroSpectrumError : public Error {
public:
    using Error::Error;
};

class MissingFileError : public Error {
public:
    using Error::Error;
};

/// CSV ingestion failure; carries the 1-based line number.
class MalformedCsvError : public Error {
public:
    MalformedCsvError(const std::string& file, int line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class InvariantViolationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class UnknownFluorophoreError : public Error {
public:
    using Error::Error;
};

/// Free-flight sampling requested in a medium with zero extinction.
class VacuumMediumError : public Error {
public:
    using Error::Error;
};

class NoIlluminatedPixelsError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Quadrature did not converge under grid doubling.
class NonConvergentError : public Error {
public:
    using Error::Error;
};

} // namespace fluor
