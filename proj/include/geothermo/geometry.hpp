// Copyright 2026 The geothermo Authors
// SPDX-License-Identifier: Apache-2.0

// geometry.hpp: Root fidelity, Bures distance and angle, and the pairwise
// distinguishability cos d_W between energy eigenstates.

#pragma once

#include "geothermo/spectral_core.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace geothermo {

inline constexpr double kNormalizationTolerance = 1e-10;

struct GeometrySummary {
    double root_fidelity{1.0};
    double bures_distance{0.0};
    double bures_angle{0.0};
    // Not bounded by 1: ranges over [0, (N-1)/2]. Never fed to arccos.
    double cos_dW{0.0};
    // S_1/2(rho || rho*) = -ln F^2
    double s_half{0.0};
};

namespace detail {

inline Matrix psd_sqrt(const Matrix& m) {
    const auto es = eigensolve(m);
    return spectral_function(es, [](double x) { return Complex(std::sqrt(std::max(x, 0.0)), 0.0); });
}

// Tr sqrt(sqrt(sigma) rho sqrt(sigma))
inline double dense_root_fidelity(const Matrix& rho, const Matrix& sigma) {
    const Matrix s = psd_sqrt(sigma);
    const Matrix inner = s * rho * s;
    const auto es = eigensolve(inner);
    double f = 0.0;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) f += std::sqrt(std::max(es.values(i), 0.0));
    return f;
}

inline double diagonal_root_fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
    double f = 0.0;
    for_each_aligned(rho.runs(), sigma.runs(), [&](std::uint64_t n, double p, double q) {
        f += static_cast<double>(n) * std::sqrt(std::max(p, 0.0) * std::max(q, 0.0));
    });
    return f;
}

} // namespace detail

// Uhlmann root fidelity. Diagonal pairs commute, so F = sum_i sqrt(p_i q_i).
inline double root_fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
    require_same_dim(rho, sigma);
    if (rho.is_diagonal() && sigma.is_diagonal()) return detail::diagonal_root_fidelity(rho, sigma);
    return detail::dense_root_fidelity(rho.to_matrix(), sigma.to_matrix());
}

inline double bures_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    const double f = root_fidelity(rho, sigma);
    return rho.trace() + sigma.trace() - 2.0 * f;
}

inline double bures_angle_from_fidelity(double f) {
    return std::acos(std::clamp(f, 0.0, 1.0));
}

inline double bures_angle(const DensityOperator& rho, const DensityOperator& sigma) {
    return bures_angle_from_fidelity(root_fidelity(rho, sigma));
}

// ------------------------------ cos d_W --------------------------------------

// sum_{i<j} sqrt(p_i p_j) = ((sum_i sqrt p_i)^2 - 1) / 2 for normalized p.
inline double cos_dW_from_sqrt_sum(double sqrt_sum) {
    return 0.5 * (sqrt_sum * sqrt_sum - 1.0);
}

inline double cos_dW(std::span<const double> probs) {
    double total = 0.0, sqrt_sum = 0.0;
    for (double p : probs) {
        total += p;
        sqrt_sum += std::sqrt(std::max(p, 0.0));
    }
    if (std::abs(total - 1.0) > kNormalizationTolerance) fail(ErrorKind::NotNormalized, "probabilities do not sum to 1");
    return cos_dW_from_sqrt_sum(sqrt_sum);
}

// Compressed form: the eigenvalues of a diagonal state, mult * sqrt(p_level).
inline double cos_dW(const std::vector<Run>& runs) {
    double total = 0.0, sqrt_sum = 0.0;
    for (const auto& r : runs) {
        const double n = static_cast<double>(r.count);
        total += n * r.value;
        sqrt_sum += n * std::sqrt(std::max(r.value, 0.0));
    }
    if (std::abs(total - 1.0) > kNormalizationTolerance) fail(ErrorKind::NotNormalized, "probabilities do not sum to 1");
    return cos_dW_from_sqrt_sum(sqrt_sum);
}

// Geometry of rho relative to the maximally mixed state of the same dimension.
inline GeometrySummary summarize_vs_mixed(const DensityOperator& rho) {
    const auto mixed = maximally_mixed(rho.dim());
    GeometrySummary s;
    s.root_fidelity = root_fidelity(rho, mixed);
    s.bures_distance = rho.trace() + 1.0 - 2.0 * s.root_fidelity;
    s.bures_angle = bures_angle_from_fidelity(s.root_fidelity);
    if (rho.is_diagonal()) {
        s.cos_dW = cos_dW(rho.runs());
    } else {
        const auto ev = rho.eigenvalues();
        s.cos_dW = cos_dW(std::span<const double>(ev));
    }
    s.s_half = -2.0 * std::log(s.root_fidelity);
    return s;
}

// |cos^2 d_B - (1 + 2 cos d_W) / N|
inline double verify_fund7(const GeometrySummary& summary, std::uint64_t n) {
    const double c = summary.root_fidelity;
    return std::abs(c * c - (1.0 + 2.0 * summary.cos_dW) / static_cast<double>(n));
}

} // namespace geothermo
