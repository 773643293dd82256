// Copyright 2026 The geothermo Authors
// SPDX-License-Identifier: Apache-2.0

// error.hpp: Error kinds shared by every geothermo module

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geothermo {

enum class ErrorKind {
    NonHermitian,
    InvalidDim,
    TraceError,
    NotPSD,
    DimMismatch,
    NotNormalized,
    InvalidSpectrum,
    TooLarge,
    AlphaOne,
    InvalidAlpha,
    SigmaSingular,
    NonPositiveTemperature,
    TemperatureOrder,
    ApproxSingular,
    InvalidLevels,
    InvalidSpins,
    NegativeWork,
    ConfigError,
};

inline std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NonHermitian: return "NonHermitian";
        case ErrorKind::InvalidDim: return "InvalidDim";
        case ErrorKind::TraceError: return "TraceError";
        case ErrorKind::NotPSD: return "NotPSD";
        case ErrorKind::DimMismatch: return "DimMismatch";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::InvalidSpectrum: return "InvalidSpectrum";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::AlphaOne: return "AlphaOne";
        case ErrorKind::InvalidAlpha: return "InvalidAlpha";
        case ErrorKind::SigmaSingular: return "SigmaSingular";
        case ErrorKind::NonPositiveTemperature: return "NonPositiveTemperature";
        case ErrorKind::TemperatureOrder: return "TemperatureOrder";
        case ErrorKind::ApproxSingular: return "ApproxSingular";
        case ErrorKind::InvalidLevels: return "InvalidLevels";
        case ErrorKind::InvalidSpins: return "InvalidSpins";
        case ErrorKind::NegativeWork: return "NegativeWork";
        case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

} // namespace geothermo
