// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The trendlet Authors

#pragma once

#include <stdexcept>
#include <string>

namespace trendlet {

enum class ErrorKind {
    InvalidInput,
    UnknownWavelet,
    InsufficientDepth,
    IndexOutOfRange,
    ParseError,
    GapError,
    EmptyInput,
    DegenerateSeries,
    Degenerate,
    AnchorCollision,
    RequiresTwoComponents,
    IoError,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::UnknownWavelet: return "UnknownWavelet";
        case ErrorKind::InsufficientDepth: return "InsufficientDepth";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::GapError: return "GapError";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::DegenerateSeries: return "DegenerateSeries";
        case ErrorKind::Degenerate: return "Degenerate";
        case ErrorKind::AnchorCollision: return "AnchorCollision";
        case ErrorKind::RequiresTwoComponents: return "RequiresTwoComponents";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

/// Every failure raised by the library. `kind()` lets callers branch without
/// string matching; `what()` is prefixed with the kind name.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace trendlet
