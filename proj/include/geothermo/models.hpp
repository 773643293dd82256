// Copyright 2026 The geothermo Authors
// SPDX-License-Identifier: Apache-2.0

// models.hpp: Truncated harmonic oscillator, collective spin-1/2 ensemble
// (compressed, binomial multiplicities) and the generalized quantum Rabi model.

#pragma once

#include "geothermo/spectral_core.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace geothermo {

// H = omega a^dag a truncated to n_levels Fock states (no zero-point energy).
inline Spectrum harmonic_spectrum(double omega, std::uint64_t n_levels) {
    if (n_levels < 1) fail(ErrorKind::InvalidLevels, "need at least one level");
    if (!(omega > 0.0) || !std::isfinite(omega)) fail(ErrorKind::InvalidLevels, "omega must be positive");
    std::vector<Level> levels;
    levels.reserve(static_cast<std::size_t>(n_levels));
    for (std::uint64_t n = 0; n < n_levels; ++n) levels.push_back({static_cast<double>(n) * omega, 1});
    return Spectrum(std::move(levels));
}

inline constexpr std::uint64_t kMaxSpins = 60;

// C(n, k) in exact integer arithmetic, n <= 60.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 c = 1;
    for (std::uint64_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return static_cast<std::uint64_t>(c);
}

// H = omega S_z for n_spins spin-1/2 particles: level k (k spins up) has
// energy omega (k - n/2) and multiplicity C(n, k).
inline Spectrum spin_ensemble_spectrum(double omega, std::uint64_t n_spins) {
    if (n_spins < 1 || n_spins > kMaxSpins) fail(ErrorKind::InvalidSpins, "n_spins must be in [1, 60]");
    if (!(omega > 0.0) || !std::isfinite(omega)) fail(ErrorKind::InvalidSpins, "omega must be positive");
    std::vector<Level> levels;
    levels.reserve(static_cast<std::size_t>(n_spins + 1));
    const double half = 0.5 * static_cast<double>(n_spins);
    for (std::uint64_t k = 0; k <= n_spins; ++k) {
        levels.push_back({omega * (static_cast<double>(k) - half), binomial(n_spins, k)});
    }
    return Spectrum(std::move(levels));
}

// ------------------------------ Rabi model ----------------------------------

struct RabiParams {
    double omega{1.0};     // resonance frequency
    double coupling{0.0};  // atom-field strength
    double epsilon{0.0};   // Z2 symmetry breaking
    std::uint64_t n_boson{30};

    Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(2 * n_boson); }
};

// H = (omega/2) sz + eps sx + omega a^dag a + coupling sx (a + a^dag)
//
// Basis ordering is spin (x) boson: index = s * n_boson + n with s = 0 the
// sigma_z = +1 state. The lowering operator is hard-truncated: a|0> = 0 and
// a^dag|n_boson-1> = 0.
inline HermitianMatrix rabi_hamiltonian(const RabiParams& p) {
    if (p.n_boson < 2) fail(ErrorKind::InvalidDim, "n_boson must be >= 2");
    if (!(p.omega > 0.0)) fail(ErrorKind::InvalidDim, "omega must be positive");
    if (p.coupling < 0.0) fail(ErrorKind::InvalidDim, "coupling must be >= 0");
    const auto nb = static_cast<Eigen::Index>(p.n_boson);
    Matrix h = Matrix::Zero(2 * nb, 2 * nb);
    for (Eigen::Index s = 0; s < 2; ++s) {
        const double sz = s == 0 ? 1.0 : -1.0;
        for (Eigen::Index n = 0; n < nb; ++n) {
            h(s * nb + n, s * nb + n) = 0.5 * p.omega * sz + p.omega * static_cast<double>(n);
        }
    }
    // sigma_x flips s; epsilon term is diagonal in n, coupling term shifts n by one.
    for (Eigen::Index n = 0; n < nb; ++n) {
        h(n, nb + n) = p.epsilon;
        h(nb + n, n) = p.epsilon;
    }
    for (Eigen::Index n = 0; n + 1 < nb; ++n) {
        const double amp = p.coupling * std::sqrt(static_cast<double>(n + 1));  // <n+1| a^dag |n>
        h(n + 1, nb + n) = amp;
        h(nb + n, n + 1) = amp;
        h(n, nb + n + 1) = amp;
        h(nb + n + 1, n) = amp;
    }
    return HermitianMatrix(std::move(h));
}

} // namespace geothermo
