// Copyright 2026 The geothermo Authors
// SPDX-License-Identifier: Apache-2.0

// divergence.hpp: Renyi alpha-divergences (Petz and sandwiched forms), the
// alpha = 1/2 divergence, quantum relative entropy and von Neumann entropy.
//
// All values are in nats. Divergences that are infinite (disjoint supports)
// come back as +infinity rather than as an error.

#pragma once

#include "geothermo/spectral_core.hpp"

#include <cmath>
#include <limits>

namespace geothermo {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
// Eigenvalues at or below this are treated as exact zeros of a dense state.
inline constexpr double kZeroEigenvalue = 1e-14;

struct DivergenceValue {
    double alpha{0.5};
    double value{0.0};

    bool is_infinite() const noexcept { return std::isinf(value); }
};

namespace detail {

// x^a with 0^0 := 0, so that rho^0 is the support projector.
inline double support_pow(double x, double a) {
    if (x <= 0.0) return 0.0;
    return std::pow(x, a);
}

inline double dense_support_pow_eig(double x, double a) {
    return x <= kZeroEigenvalue ? 0.0 : std::pow(x, a);
}

inline double log_trace_over(double alpha, double trace) {
    if (!(trace > 0.0)) return alpha < 1.0 ? kInfinity : -kInfinity;
    return std::log(trace) / (alpha - 1.0);
}

inline void check_alpha(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) fail(ErrorKind::InvalidAlpha, "alpha must be finite and >= 0");
    if (alpha == 1.0) fail(ErrorKind::AlphaOne, "alpha = 1 is the relative entropy; use relative_entropy");
}

} // namespace detail

// (1/(alpha-1)) ln Tr rho^alpha sigma^(1-alpha)
inline DivergenceValue petz_renyi_divergence(const DensityOperator& rho, const DensityOperator& sigma, double alpha) {
    detail::check_alpha(alpha);
    require_same_dim(rho, sigma);
    const double s_pow = 1.0 - alpha;
    double trace = 0.0;
    if (rho.is_diagonal() && sigma.is_diagonal()) {
        for_each_aligned(rho.runs(), sigma.runs(), [&](std::uint64_t n, double p, double q) {
            if (q <= 0.0 && s_pow < 0.0) fail(ErrorKind::SigmaSingular, "sigma^(1-alpha) needs full-rank sigma");
            if (p <= 0.0 || q <= 0.0) return;
            trace += static_cast<double>(n) * std::pow(p, alpha) * std::pow(q, s_pow);
        });
    } else {
        const auto er = detail::eigensolve(rho.to_matrix());
        const auto es = detail::eigensolve(sigma.to_matrix());
        if (s_pow < 0.0 && es.values.minCoeff() <= kZeroEigenvalue) {
            fail(ErrorKind::SigmaSingular, "sigma^(1-alpha) needs full-rank sigma");
        }
        const Matrix a = spectral_function(er, [&](double x) { return Complex(detail::dense_support_pow_eig(x, alpha)); });
        const Matrix b = spectral_function(es, [&](double x) { return Complex(detail::dense_support_pow_eig(x, s_pow)); });
        trace = (a * b).trace().real();
    }
    return {alpha, detail::log_trace_over(alpha, trace)};
}

// (1/(alpha-1)) ln Tr (sigma^s rho sigma^s)^alpha with s = (1-alpha)/(2 alpha)
inline DivergenceValue sandwiched_renyi_divergence(const DensityOperator& rho, const DensityOperator& sigma,
                                                   double alpha) {
    detail::check_alpha(alpha);
    if (alpha == 0.0) fail(ErrorKind::InvalidAlpha, "sandwiched form needs alpha > 0");
    require_same_dim(rho, sigma);
    const double s = (1.0 - alpha) / (2.0 * alpha);
    double trace = 0.0;
    if (rho.is_diagonal() && sigma.is_diagonal()) {
        for_each_aligned(rho.runs(), sigma.runs(), [&](std::uint64_t n, double p, double q) {
            if (q <= 0.0 && s < 0.0) fail(ErrorKind::SigmaSingular, "negative power of singular sigma");
            const double qs = detail::support_pow(q, s);
            trace += static_cast<double>(n) * detail::support_pow(qs * std::max(p, 0.0) * qs, alpha);
        });
    } else {
        const auto es = detail::eigensolve(sigma.to_matrix());
        if (s < 0.0 && es.values.minCoeff() <= kZeroEigenvalue) {
            fail(ErrorKind::SigmaSingular, "negative power of singular sigma");
        }
        const Matrix ss = spectral_function(es, [&](double x) { return Complex(detail::dense_support_pow_eig(x, s)); });
        const auto inner = detail::eigensolve(ss * rho.to_matrix() * ss);
        for (Eigen::Index i = 0; i < inner.values.size(); ++i) {
            trace += detail::dense_support_pow_eig(inner.values(i), alpha);
        }
    }
    return {alpha, detail::log_trace_over(alpha, trace)};
}

// Petz form on [0, 1), sandwiched form above 1.
inline DivergenceValue renyi_divergence(const DensityOperator& rho, const DensityOperator& sigma, double alpha) {
    detail::check_alpha(alpha);
    if (alpha < 1.0) return petz_renyi_divergence(rho, sigma, alpha);
    return sandwiched_renyi_divergence(rho, sigma, alpha);
}

// -2 ln Tr sqrt(rho) sqrt(sigma); +infinity when the states do not overlap.
inline double s_half(const DensityOperator& rho, const DensityOperator& sigma) {
    require_same_dim(rho, sigma);
    double overlap = 0.0;
    if (rho.is_diagonal() && sigma.is_diagonal()) {
        for_each_aligned(rho.runs(), sigma.runs(), [&](std::uint64_t n, double p, double q) {
            overlap += static_cast<double>(n) * std::sqrt(std::max(p, 0.0)) * std::sqrt(std::max(q, 0.0));
        });
    } else {
        auto root = [](double x) { return Complex(std::sqrt(std::max(x, 0.0))); };
        const Matrix a = spectral_function(detail::eigensolve(rho.to_matrix()), root);
        const Matrix b = spectral_function(detail::eigensolve(sigma.to_matrix()), root);
        overlap = (a * b).trace().real();
    }
    if (!(overlap > 0.0)) return kInfinity;
    return -2.0 * std::log(overlap);
}

// Tr(rho ln rho - rho ln sigma), 0 ln 0 := 0; +infinity when supp(rho) is not inside supp(sigma).
inline double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
    require_same_dim(rho, sigma);
    if (rho.is_diagonal() && sigma.is_diagonal()) {
        double d = 0.0;
        bool infinite = false;
        for_each_aligned(rho.runs(), sigma.runs(), [&](std::uint64_t n, double p, double q) {
            if (p <= 0.0) return;
            if (q <= 0.0) {
                infinite = true;
                return;
            }
            d += static_cast<double>(n) * p * (std::log(p) - std::log(q));
        });
        return infinite ? kInfinity : d;
    }
    const Matrix r = rho.to_matrix();
    const auto er = detail::eigensolve(r);
    const auto es = detail::eigensolve(sigma.to_matrix());
    double d = 0.0;
    for (Eigen::Index i = 0; i < er.values.size(); ++i) {
        const double l = er.values(i);
        if (l > kZeroEigenvalue) d += l * std::log(l);
    }
    for (Eigen::Index j = 0; j < es.values.size(); ++j) {
        const double weight = (es.vectors.col(j).adjoint() * r * es.vectors.col(j))(0, 0).real();
        const double mu = es.values(j);
        if (mu <= kZeroEigenvalue) {
            if (weight > kZeroEigenvalue) return kInfinity;
            continue;
        }
        d -= weight * std::log(mu);
    }
    return d;
}

// -sum lambda ln lambda over eigenvalues.
inline double von_neumann_entropy(const DensityOperator& rho) {
    double s = 0.0;
    if (rho.is_diagonal()) {
        for (const auto& r : rho.runs()) {
            if (r.value > 0.0) s -= static_cast<double>(r.count) * r.value * std::log(r.value);
        }
        return s;
    }
    for (double l : rho.eigenvalues()) {
        if (l > kZeroEigenvalue) s -= l * std::log(l);
    }
    return s;
}

} // namespace geothermo
