// Copyright 2026 The geothermo Authors
// SPDX-License-Identifier: Apache-2.0

// thermo.hpp: Thermal ensembles over (compressed) spectra, the potentials
// Omega and Omega', exact identities linking them to the Renyi-1/2 divergence
// from the maximally mixed state, entropy bounds, and free-energy approximations.
//
// Units: k_B = hbar = 1. Partition sums are evaluated with the ground energy
// subtracted, so beta * (E - E_min) up to ~700 is safe; ln Z is kept alongside Z.

#pragma once

#include "geothermo/divergence.hpp"
#include "geothermo/geometry.hpp"
#include "geothermo/spectral_core.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace geothermo {

// ---------------------------- Thermal ensembles -----------------------------

struct Potentials {
    double omega{0.0};        // -T ln Z
    double omega_prime{0.0};  // -(2T) ln Z'
};

class ThermalEnsemble {
public:
    ThermalEnsemble(Spectrum spectrum, double temperature)
        : spectrum_(std::move(spectrum)), temperature_(temperature) {
        if (!(temperature > 0.0) || !std::isfinite(temperature)) {
            fail(ErrorKind::NonPositiveTemperature, "temperature must be positive and finite");
        }
        beta_ = 1.0 / temperature_;
        const double e_min = spectrum_.min_energy();
        const auto& levels = spectrum_.levels();

        double z_shifted = 0.0, zp_shifted = 0.0;
        for (const auto& l : levels) {
            const double m = static_cast<double>(l.multiplicity);
            const double x = beta_ * (l.energy - e_min);
            z_shifted += m * std::exp(-x);
            zp_shifted += m * std::exp(-0.5 * x);
        }
        const double ln_z_shifted = std::log(z_shifted);
        ln_z_ = -beta_ * e_min + ln_z_shifted;
        ln_z_prime_ = -0.5 * beta_ * e_min + std::log(zp_shifted);
        ln_z_over_z_prime_sq_ = ln_z_shifted - 2.0 * std::log(zp_shifted);

        log_probs_.reserve(levels.size());
        probs_.reserve(levels.size());
        for (const auto& l : levels) {
            const double m = static_cast<double>(l.multiplicity);
            const double lp = -beta_ * (l.energy - e_min) - ln_z_shifted;
            const double p = std::exp(lp);
            log_probs_.push_back(lp);
            probs_.push_back(p);
            energy_ += m * p * l.energy;
            entropy_ -= m * p * lp;
        }
    }

    const Spectrum& spectrum() const noexcept { return spectrum_; }
    double temperature() const noexcept { return temperature_; }
    double beta() const noexcept { return beta_; }
    std::uint64_t dim() const noexcept { return spectrum_.total_dim(); }
    double ln_dim() const noexcept { return std::log(static_cast<double>(dim())); }

    double ln_z() const noexcept { return ln_z_; }
    double ln_z_prime() const noexcept { return ln_z_prime_; }
    // ln(Z / Z'^2) from the shifted sums, free of the -beta E_min cancellation.
    double ln_z_over_z_prime_sq() const noexcept { return ln_z_over_z_prime_sq_; }
    double z() const noexcept { return std::exp(ln_z_); }
    double z_prime() const noexcept { return std::exp(ln_z_prime_); }

    // Occupation of a single eigenstate in each level, e^{-beta E}/Z.
    const std::vector<double>& level_probabilities() const noexcept { return probs_; }
    const std::vector<double>& level_log_probabilities() const noexcept { return log_probs_; }

    double internal_energy() const noexcept { return energy_; }
    // -sum p ln p over eigenstates (k_B = 1)
    double thermal_entropy() const noexcept { return entropy_; }

    Potentials potentials() const noexcept {
        return {-temperature_ * ln_z_, -2.0 * temperature_ * ln_z_prime_};
    }

    DensityOperator density() const {
        std::vector<double> weights(probs_.size());
        const auto& levels = spectrum_.levels();
        for (std::size_t i = 0; i < levels.size(); ++i) {
            weights[i] = static_cast<double>(levels[i].multiplicity) * probs_[i];
        }
        return DensityOperator::diagonal(spectrum_, std::move(weights));
    }

private:
    Spectrum spectrum_;
    double temperature_{1.0};
    double beta_{1.0};
    double ln_z_{0.0};
    double ln_z_prime_{0.0};
    double ln_z_over_z_prime_sq_{0.0};
    std::vector<double> probs_;
    std::vector<double> log_probs_;
    double energy_{0.0};
    double entropy_{0.0};
};

inline ThermalEnsemble make_thermal(const Spectrum& spectrum, double temperature) {
    return ThermalEnsemble(spectrum, temperature);
}

// Thermal populations over an explicit (possibly degenerate) eigenvalue list.
inline std::vector<double> thermal_populations(std::span<const double> energies, double temperature) {
    if (!(temperature > 0.0)) fail(ErrorKind::NonPositiveTemperature, "temperature must be positive");
    if (energies.empty()) fail(ErrorKind::InvalidDim, "no energies");
    const double e_min = *std::min_element(energies.begin(), energies.end());
    std::vector<double> p(energies.size());
    double z = 0.0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        p[i] = std::exp(-(energies[i] - e_min) / temperature);
        z += p[i];
    }
    for (double& x : p) x /= z;
    return p;
}

inline double log_partition(std::span<const double> energies, double temperature) {
    if (!(temperature > 0.0)) fail(ErrorKind::NonPositiveTemperature, "temperature must be positive");
    if (energies.empty()) fail(ErrorKind::InvalidDim, "no energies");
    const double e_min = *std::min_element(energies.begin(), energies.end());
    double z = 0.0;
    for (double e : energies) z += std::exp(-(e - e_min) / temperature);
    return -e_min / temperature + std::log(z);
}

// ------------------------- Divergence from rho* ------------------------------

// S(rho_th || rho*) = ln N + ln Z - 2 ln Z'
inline double s_half_vs_mixed(const ThermalEnsemble& ens) {
    return ens.ln_dim() + ens.ln_z_over_z_prime_sq();
}

// The same quantity along the geometric route, -2 ln F(rho_th, rho*).
inline double s_half_geometric(const ThermalEnsemble& ens) {
    return s_half(ens.density(), maximally_mixed(ens.dim()));
}

// sum_i sqrt(p_i) over eigenstates.
inline double fund2_sum(const ThermalEnsemble& ens) {
    double s = 0.0;
    const auto& levels = ens.spectrum().levels();
    const auto& p = ens.level_probabilities();
    for (std::size_t i = 0; i < levels.size(); ++i) {
        s += static_cast<double>(levels[i].multiplicity) * std::sqrt(p[i]);
    }
    return s;
}

// |sum sqrt p - sqrt(N) exp(-S/2)|
inline double sqrt_sum_residual(const ThermalEnsemble& ens) {
    return std::abs(fund2_sum(ens) - std::sqrt(static_cast<double>(ens.dim())) * std::exp(-0.5 * s_half_vs_mixed(ens)));
}

inline GeometrySummary thermal_geometry(const ThermalEnsemble& ens) {
    return summarize_vs_mixed(ens.density());
}

struct ZPrimeResiduals {
    double fidelity_form{0.0};  // |Z'^2 - N Z cos^2 d_B| / Z'^2
    double wootters_form{0.0};  // |Z'^2 - Z (1 + 2 cos d_W)| / Z'^2
};

inline ZPrimeResiduals z_prime_identity(const ThermalEnsemble& ens) {
    const auto g = thermal_geometry(ens);
    // Ratios to Z'^2 evaluated in log space.
    const double z_over_zp2 = std::exp(ens.ln_z_over_z_prime_sq());
    const double n = static_cast<double>(ens.dim());
    return {
        std::abs(1.0 - n * z_over_zp2 * g.root_fidelity * g.root_fidelity),
        std::abs(1.0 - z_over_zp2 * (1.0 + 2.0 * g.cos_dW)),
    };
}

// |S via ln N + ln Z - 2 ln Z'  -  S via -2 ln Tr sqrt(rho) sqrt(rho*)|
inline double s_half_route_residual(const ThermalEnsemble& ens) {
    return std::abs(s_half_vs_mixed(ens) - s_half_geometric(ens));
}

// max_i |p_i - N e^{-beta E_i} e^{-S} / Z'^2|
inline double occupation_residual(const ThermalEnsemble& ens) {
    const double s = s_half_geometric(ens);
    const double ln_n = ens.ln_dim();
    double worst = 0.0;
    const auto& levels = ens.spectrum().levels();
    const auto& p = ens.level_probabilities();
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const double rebuilt = std::exp(ln_n - ens.beta() * levels[i].energy - s - 2.0 * ens.ln_z_prime());
        worst = std::max(worst, std::abs(rebuilt - p[i]));
    }
    return worst;
}

// --------------------- Free energy and the distance to rho* ------------------

// Delta_T x := T2 x2 - T1 x1
inline double delta_T(double x2, double x1, double t2, double t1) {
    return t2 * x2 - t1 * x1;
}

struct Relation {
    double lhs{0.0};
    double rhs{0.0};
    double residual{0.0};
};

namespace detail {

inline void require_ordered_pair(const ThermalEnsemble& e1, const ThermalEnsemble& e2) {
    if (e1.dim() != e2.dim()) fail(ErrorKind::DimMismatch, "ensembles must share the Hilbert-space dimension");
    if (e2.temperature() < e1.temperature()) fail(ErrorKind::TemperatureOrder, "need T2 >= T1");
}

} // namespace detail

// T2 S(rho2||rho*) - T1 S(rho1||rho*)  =  -dOmega + dOmega' + dT ln N
inline Relation free_energy_relation(const ThermalEnsemble& e1, const ThermalEnsemble& e2) {
    detail::require_ordered_pair(e1, e2);
    const double lhs = delta_T(s_half_geometric(e2), s_half_geometric(e1), e2.temperature(), e1.temperature());
    const auto p1 = e1.potentials();
    const auto p2 = e2.potentials();
    const double rhs = -(p2.omega - p1.omega) + (p2.omega_prime - p1.omega_prime) +
                       (e2.temperature() - e1.temperature()) * e1.ln_dim();
    return {lhs, rhs, std::abs(lhs - rhs)};
}

// D(rho_th || rho*) by the trace formula.
inline double relative_entropy_vs_mixed(const ThermalEnsemble& ens) {
    return relative_entropy(ens.density(), maximally_mixed(ens.dim()));
}

// |Omega' - [T D + U + T S - 2 T ln N]|
inline double omega_prime_decomposition(const ThermalEnsemble& ens) {
    const double t = ens.temperature();
    const double rebuilt = t * relative_entropy_vs_mixed(ens) + ens.internal_energy() + t * s_half_geometric(ens) -
                           2.0 * t * ens.ln_dim();
    return std::abs(ens.potentials().omega_prime - rebuilt);
}

// -dOmega + dU  =  T1 D1 - T2 D2 + dT ln N
inline Relation trivial_relation(const ThermalEnsemble& e1, const ThermalEnsemble& e2) {
    detail::require_ordered_pair(e1, e2);
    const double lhs = -(e2.potentials().omega - e1.potentials().omega) + (e2.internal_energy() - e1.internal_energy());
    const double rhs = e1.temperature() * relative_entropy_vs_mixed(e1) - e2.temperature() * relative_entropy_vs_mixed(e2) +
                       (e2.temperature() - e1.temperature()) * e1.ln_dim();
    return {lhs, rhs, std::abs(lhs - rhs)};
}

// |(-dOmega + dU) - (T2 S_vN(rho2) - T1 S_vN(rho1))|
inline double classical_consistency(const ThermalEnsemble& e1, const ThermalEnsemble& e2) {
    detail::require_ordered_pair(e1, e2);
    const double lhs = -(e2.potentials().omega - e1.potentials().omega) + (e2.internal_energy() - e1.internal_energy());
    const double rhs = delta_T(von_neumann_entropy(e2.density()), von_neumann_entropy(e1.density()), e2.temperature(),
                               e1.temperature());
    return std::abs(lhs - rhs);
}

// ---------------------------------- Bounds -----------------------------------

struct Bound {
    double value{0.0};
    double bound{0.0};
    double slack{0.0};  // >= 0 when the bound holds
};

// ln N >= S(rho_th || rho*)
inline Bound divergence_bound(const ThermalEnsemble& ens) {
    const double s = s_half_geometric(ens);
    return {s, ens.ln_dim(), ens.ln_dim() - s};
}

// 2T ln Z' <= 2T S_th - U, i.e. Omega' >= U - 2T S_th
inline Bound jensen_bound(const ThermalEnsemble& ens) {
    const double t = ens.temperature();
    const double value = 2.0 * t * ens.ln_z_prime();
    const double bound = 2.0 * t * ens.thermal_entropy() - ens.internal_energy();
    return {value, bound, bound - value};
}

// S_th >= ln N - S(rho_th || rho*)
inline Bound entropy_bound(const ThermalEnsemble& ens) {
    const double bound = ens.ln_dim() - s_half_geometric(ens);
    return {ens.thermal_entropy(), bound, ens.thermal_entropy() - bound};
}

// ------------------------ Free-energy approximations -------------------------

enum class ApproxOrder { First, Second, Closed };

inline constexpr double kDefaultGConst = std::numbers::pi;
inline constexpr double kApproxSingularTolerance = 1e-12;

// sqrt(1 + g e^S / N) (S - ln N + 1/2)
inline double approx_h(double s, double ln_n, double g_const) {
    return std::sqrt(1.0 + g_const * std::exp(s - ln_n)) * (s - ln_n + 0.5);
}

inline double approx_h(const ThermalEnsemble& ens, double g_const) {
    return approx_h(s_half_vs_mixed(ens), ens.ln_dim(), g_const);
}

inline double omega_approx(const ThermalEnsemble& ens, ApproxOrder order, double g_const = kDefaultGConst) {
    const double t = ens.temperature();
    const double s = s_half_vs_mixed(ens);
    const double ln_n = ens.ln_dim();
    const double x = std::exp(s - ln_n);  // e^S / N
    switch (order) {
        case ApproxOrder::First: {
            const double den = 1.0 - x;
            if (std::abs(den) < kApproxSingularTolerance) fail(ErrorKind::ApproxSingular, "1 - e^S/N vanishes");
            return t * (s - x - ln_n + 1.0) / den;
        }
        case ApproxOrder::Second: {
            const double den = 1.0 - 2.0 * x + x * x;
            if (std::abs(den) < kApproxSingularTolerance) fail(ErrorKind::ApproxSingular, "(1 - e^S/N)^2 vanishes");
            return t * (s - 2.0 * x + 0.5 * x * x - ln_n + 1.5) / den;
        }
        case ApproxOrder::Closed:
            return t * (approx_h(s, ln_n, g_const) + 1.0);
    }
    return 0.0;
}

// JSON-friendly summary row.
struct EnsembleSummary {
    std::uint64_t n{1};
    double temperature{1.0};
    double z{1.0};
    double z_prime{1.0};
    double internal_energy{0.0};
    double thermal_entropy{0.0};
    double omega{0.0};
    double omega_prime{0.0};
    double s_half{0.0};
};

inline EnsembleSummary summarize(const ThermalEnsemble& ens) {
    const auto pot = ens.potentials();
    return {ens.dim(), ens.temperature(), ens.z(), ens.z_prime(), ens.internal_energy(),
            ens.thermal_entropy(), pot.omega, pot.omega_prime, s_half_vs_mixed(ens)};
}

} // namespace geothermo
