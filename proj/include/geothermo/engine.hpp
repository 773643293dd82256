// Copyright 2026 The geothermo Authors
// SPDX-License-Identifier: Apache-2.0

// engine.hpp: Ideal quantum Otto cycle, two-point-measurement work statistics,
// the Jarzynski check, and the work / distance / efficiency bounds.
//
// Sign convention: W_net > 0 is work extracted from the working medium.

#pragma once

#include "geothermo/divergence.hpp"
#include "geothermo/models.hpp"
#include "geothermo/spectral_core.hpp"
#include "geothermo/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace geothermo {

// ------------------------------- Otto cycle ---------------------------------

struct OttoCycleResult {
    double W_net{0.0};
    double Q_hot{0.0};
    double Q_cold{0.0};
    double efficiency{0.0};  // W_net / Q_hot when W_net > 0, else 0
    double kappa{0.0};       // (Delta_T S_R - W) / (T_cold ln N)
    double zeta{0.0};        // eta_c / (1 - eta_c)
    double eta_c{0.0};
    double S_R_cold{0.0};    // S(rho_A || rho*)
    double S_R_hot{0.0};     // S(rho_C || rho*)
    double T_cold{0.0};
    double T_hot{0.0};
    std::uint64_t dim{0};
    // Stroke corners: A (cold thermal), B (after compression), C (hot thermal), D.
    double E_A{0.0}, E_B{0.0}, E_C{0.0}, E_D{0.0};
    std::vector<double> populations_A, populations_B, populations_C, populations_D;

    double delta_T_S_R() const noexcept { return delta_T(S_R_hot, S_R_cold, T_hot, T_cold); }
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double s_half_vs_mixed_of(std::span<const double> probs) {
    return s_half(DensityOperator::from_probabilities(probs), maximally_mixed(probs.size()));
}

} // namespace detail

// Otto cycle over ascending eigenvalue lists. Adiabatic strokes carry the
// population of the k-th cold eigenstate onto the k-th hot eigenstate.
inline OttoCycleResult otto_cycle(std::span<const double> cold_levels, std::span<const double> hot_levels,
                                  double t_cold, double t_hot) {
    if (cold_levels.size() != hot_levels.size()) fail(ErrorKind::DimMismatch, "Hamiltonians differ in dimension");
    if (cold_levels.size() < 2) fail(ErrorKind::InvalidDim, "Otto cycle needs dimension >= 2");
    if (!(t_cold > 0.0)) fail(ErrorKind::NonPositiveTemperature, "T_cold must be positive");
    if (t_hot < t_cold) fail(ErrorKind::TemperatureOrder, "need T_hot >= T_cold");

    OttoCycleResult r;
    r.T_cold = t_cold;
    r.T_hot = t_hot;
    r.dim = cold_levels.size();
    r.populations_A = thermal_populations(cold_levels, t_cold);
    r.populations_B = r.populations_A;
    r.populations_C = thermal_populations(hot_levels, t_hot);
    r.populations_D = r.populations_C;

    r.E_A = detail::dot(r.populations_A, cold_levels);
    r.E_B = detail::dot(r.populations_B, hot_levels);
    r.E_C = detail::dot(r.populations_C, hot_levels);
    r.E_D = detail::dot(r.populations_D, cold_levels);
    r.Q_hot = r.E_C - r.E_B;
    r.Q_cold = r.E_A - r.E_D;
    r.W_net = r.Q_hot + r.Q_cold;
    r.efficiency = (r.W_net > 0.0 && r.Q_hot > 0.0) ? r.W_net / r.Q_hot : 0.0;

    r.S_R_cold = detail::s_half_vs_mixed_of(r.populations_A);
    r.S_R_hot = detail::s_half_vs_mixed_of(r.populations_C);
    r.eta_c = 1.0 - t_cold / t_hot;
    r.zeta = (t_hot - t_cold) / t_cold;
    const double ln_n = std::log(static_cast<double>(r.dim));
    r.kappa = (r.delta_T_S_R() - r.W_net) / (t_cold * ln_n);
    return r;
}

inline OttoCycleResult otto_cycle(const HermitianMatrix& h_cold, const HermitianMatrix& h_hot, double t_cold,
                                  double t_hot) {
    if (h_cold.dim() != h_hot.dim()) fail(ErrorKind::DimMismatch, "Hamiltonians differ in dimension");
    const auto ec = eigendecompose(h_cold).values;
    const auto eh = eigendecompose(h_hot).values;
    return otto_cycle(std::span<const double>(ec.data(), ec.size()), std::span<const double>(eh.data(), eh.size()),
                      t_cold, t_hot);
}

struct WorkBoundCheck {
    double work_slack{0.0};             // W - (Delta_T S_R - dT ln N)
    double carnot_ratio_slack{0.0};     // eta_c/(1-eta_c) - (Delta_T S_R - W)/(T1 ln N)
    double carnot_efficiency_slack{0.0};// eta_c - (Delta_T S_R - W)/(T2 ln N)
};

inline WorkBoundCheck work_bound_check(const OttoCycleResult& r, std::uint64_t n) {
    if (r.W_net < 0.0) fail(ErrorKind::NegativeWork, "bound holds for positive work only");
    const double ln_n = std::log(static_cast<double>(n));
    const double excess = r.delta_T_S_R() - r.W_net;
    WorkBoundCheck c;
    c.work_slack = r.W_net - (r.delta_T_S_R() - (r.T_hot - r.T_cold) * ln_n);
    c.carnot_ratio_slack = r.zeta - excess / (r.T_cold * ln_n);
    c.carnot_efficiency_slack = r.eta_c - excess / (r.T_hot * ln_n);
    return c;
}

// ------------------------------ Rabi engine ---------------------------------

struct RabiEngineSettings {
    double omega{1.0};          // cold-stroke frequency omega_1
    double omega_ratio{2.0};    // omega_2 / omega_1
    double epsilon_ratio{0.005};// epsilon = epsilon_ratio * omega per stroke
    std::uint64_t n_boson{30};
    // When true the coupling follows the stroke frequency (fixed g/omega),
    // so the hot Hamiltonian is omega_ratio times the cold one.
    bool coupling_scales_with_omega{true};
};

inline RabiParams rabi_stroke(const RabiEngineSettings& s, double g_over_omega, double stroke_omega) {
    const double coupling = g_over_omega * (s.coupling_scales_with_omega ? stroke_omega : s.omega);
    return {stroke_omega, coupling, s.epsilon_ratio * stroke_omega, s.n_boson};
}

inline OttoCycleResult rabi_otto_cycle(const RabiEngineSettings& s, double g_over_omega, double t_cold, double t_hot) {
    const auto h_cold = rabi_hamiltonian(rabi_stroke(s, g_over_omega, s.omega));
    const auto h_hot = rabi_hamiltonian(rabi_stroke(s, g_over_omega, s.omega_ratio * s.omega));
    return otto_cycle(h_cold, h_hot, t_cold, t_hot);
}

// ------------------------- Two-point measurement -----------------------------

struct WorkOutcome {
    double w{0.0};
    double probability{0.0};
};

struct WorkDistribution {
    std::vector<WorkOutcome> outcomes;  // ascending in w

    double total_probability() const noexcept {
        double s = 0.0;
        for (const auto& o : outcomes) s += o.probability;
        return s;
    }
};

inline constexpr double kWorkMergeTolerance = 1e-12;
// Transition weights |<f_j|i>|^2 below this are numerical zeros.
inline constexpr double kNegligibleOverlap = 1e-24;

// Energy measurement in the eigenbasis of h_initial (thermal at T), sudden
// switch to h_final, second energy measurement. P(w) = sum p_i |<f_j|i>|^2
// over pairs with E^f_j - E^i_i = w.
inline WorkDistribution tpm_work_distribution(const HermitianMatrix& h_initial, const HermitianMatrix& h_final,
                                              double temperature) {
    if (h_initial.dim() != h_final.dim()) fail(ErrorKind::DimMismatch, "Hamiltonians differ in dimension");
    const auto ei = eigendecompose(h_initial);
    const auto ef = eigendecompose(h_final);
    const auto n = ei.values.size();
    const auto p = thermal_populations(std::span<const double>(ei.values.data(), n), temperature);
    const Matrix overlaps = ef.vectors.adjoint() * ei.vectors;  // (j, i) = <f_j|i>

    std::vector<WorkOutcome> raw;
    raw.reserve(static_cast<std::size_t>(n * n));
    for (Eigen::Index i = 0; i < n; ++i) {
        if (p[static_cast<std::size_t>(i)] <= 0.0) continue;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double t = std::norm(overlaps(j, i));
            if (t <= kNegligibleOverlap) continue;
            raw.push_back({ef.values(j) - ei.values(i), p[static_cast<std::size_t>(i)] * t});
        }
    }
    std::sort(raw.begin(), raw.end(), [](const WorkOutcome& a, const WorkOutcome& b) { return a.w < b.w; });

    WorkDistribution dist;
    for (const auto& o : raw) {
        if (!dist.outcomes.empty() && o.w - dist.outcomes.back().w <= kWorkMergeTolerance) {
            dist.outcomes.back().probability += o.probability;
        } else {
            dist.outcomes.push_back(o);
        }
    }
    return dist;
}

// ln <e^{-W/T}> via log-sum-exp.
inline double log_mean_exp_work(const WorkDistribution& dist, double temperature) {
    double top = -kInfinity;
    for (const auto& o : dist.outcomes) {
        if (o.probability > 0.0) top = std::max(top, std::log(o.probability) - o.w / temperature);
    }
    double s = 0.0;
    for (const auto& o : dist.outcomes) {
        if (o.probability > 0.0) s += std::exp(std::log(o.probability) - o.w / temperature - top);
    }
    return top + std::log(s);
}

struct JarzynskiCheck {
    double log_mean_exp{0.0};  // ln <e^{-W/T}>
    double delta_ln_z{0.0};    // ln Z_f - ln Z_i
    double residual{0.0};
};

inline JarzynskiCheck jarzynski_check(const WorkDistribution& dist, double temperature, double ln_z_initial,
                                      double ln_z_final) {
    JarzynskiCheck c;
    c.log_mean_exp = log_mean_exp_work(dist, temperature);
    c.delta_ln_z = ln_z_final - ln_z_initial;
    c.residual = std::abs(c.log_mean_exp - c.delta_ln_z);
    return c;
}

// Both sides of  eta_c/(1-eta_c) ~ -(1/T1) Delta_T h - ln <e^{-W/T1}>.
// Approximate relation: reported, never asserted.
struct WorkDistanceReport {
    double zeta{0.0};
    double estimate{0.0};
};

inline WorkDistanceReport work_distance_report(const WorkDistribution& dist, const ThermalEnsemble& e1,
                                               const ThermalEnsemble& e2, double g_const = kDefaultGConst) {
    const double t1 = e1.temperature();
    const double t2 = e2.temperature();
    const double dth = delta_T(approx_h(e2, g_const), approx_h(e1, g_const), t2, t1);
    const double eta = 1.0 - t1 / t2;
    return {eta / (1.0 - eta), -dth / t1 - log_mean_exp_work(dist, t1)};
}

// --------------------- Approximate free-energy change ------------------------

struct FreeEnergyChangeApprox {
    double minus_delta_omega_approx{0.0};  // -Delta_T h - dT
    double eta_c_approx{0.0};              // (dOmega - Delta_T h) / T2
};

inline FreeEnergyChangeApprox geo_free_change_approx(const ThermalEnsemble& e1, const ThermalEnsemble& e2,
                                                     double g_const = kDefaultGConst) {
    if (e1.dim() != e2.dim()) fail(ErrorKind::DimMismatch, "ensembles must share the Hilbert-space dimension");
    const double t1 = e1.temperature();
    const double t2 = e2.temperature();
    const double dth = delta_T(approx_h(e2, g_const), approx_h(e1, g_const), t2, t1);
    const double d_omega = e2.potentials().omega - e1.potentials().omega;
    return {-dth - (t2 - t1), (d_omega - dth) / t2};
}

} // namespace geothermo
