// Copyright 2026 The geothermo Authors
// SPDX-License-Identifier: Apache-2.0

#include "geothermo/models.hpp"
#include "geothermo/serialize.hpp"
#include "geothermo/thermo.hpp"

#include "oracles.hpp"

#include <numbers>

using namespace geothermo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Spectrum two_level(double gap = 1.0) { return Spectrum({{0.0, 1}, {gap, 1}}); }

Spectrum uniform(std::uint64_t n, double e = 0.3) { return Spectrum({{e, n}}); }

Spectrum random_levels(std::mt19937_64& rng, std::size_t n, double spread = 3.0) {
    std::uniform_real_distribution<double> e(-spread, spread);
    std::vector<double> energies(n);
    for (double& x : energies) x = e(rng);
    return Spectrum::from_energies(energies);
}

} // namespace

TEST_CASE("ThermalEnsemble basic sums", "[thermo]") {
    const ThermalEnsemble e(two_level(), 1.0);
    CHECK_THAT(e.z(), WithinAbs(1.3678794411714423, 1e-15));
    CHECK_THAT(e.z_prime(), WithinAbs(1.0 + std::exp(-0.5), 1e-15));
    double total = 0.0;
    const auto& levels = e.spectrum().levels();
    for (std::size_t i = 0; i < levels.size(); ++i) {
        total += static_cast<double>(levels[i].multiplicity) * e.level_probabilities()[i];
    }
    CHECK_THAT(total, WithinAbs(1.0, 1e-12));

    const ThermalEnsemble hot(two_level(), 1e12);
    CHECK_THAT(hot.level_probabilities()[0], WithinAbs(0.5, 1e-11));
    CHECK_THAT(hot.level_probabilities()[1], WithinAbs(0.5, 1e-11));

    const ThermalEnsemble ho(harmonic_spectrum(1.0, 100), 0.1);
    CHECK_THAT(ho.z(), WithinAbs(1.0 / (1.0 - std::exp(-10.0)), 1e-14));
    CHECK_THAT(ho.z(), WithinAbs(1.0000454019910097, 1e-15));

    oracle::require_kind([] { ThermalEnsemble bad(two_level(), 0.0); }, ErrorKind::NonPositiveTemperature);
    oracle::require_kind([] { ThermalEnsemble bad(two_level(), -1.0); }, ErrorKind::NonPositiveTemperature);
}

TEST_CASE("ThermalEnsemble matches brute-force sums over the expanded spectrum", "[thermo][property]") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 40; ++i) {
        const auto spectrum = random_levels(rng, 1 + static_cast<std::size_t>(i % 20));
        const double t = std::exp(std::uniform_real_distribution<double>(std::log(0.2), std::log(20.0))(rng));
        const ThermalEnsemble e(spectrum, t);
        const auto b = oracle::brute_thermal(spectrum.expanded(), t);
        CHECK_THAT(e.z(), WithinRel(b.z, 1e-12));
        CHECK_THAT(e.z_prime(), WithinRel(b.z_prime, 1e-12));
        CHECK_THAT(e.internal_energy(), WithinAbs(b.energy, 1e-11));
        CHECK_THAT(e.thermal_entropy(), WithinAbs(b.entropy, 1e-11));
        // Jensen on the concave log gives ln Z' >= S_th - beta U / 2, i.e. Omega' <= U - 2 T S_th.
        CHECK(e.potentials().omega_prime <= e.internal_energy() - 2.0 * t * e.thermal_entropy() + 1e-10);
    }
}

TEST_CASE("ThermalEnsemble stays finite at extreme beta", "[thermo]") {
    const Spectrum s({{-500.0, 1}, {0.0, 3}, {800.0, 2}});
    const ThermalEnsemble cold(s, 1e-3);
    CHECK(std::isfinite(cold.ln_z()));
    CHECK_THAT(cold.ln_z(), WithinRel(500.0 / 1e-3, 1e-14));
    CHECK_THAT(cold.level_probabilities()[0], WithinAbs(1.0, 1e-15));
    CHECK(std::isfinite(s_half_vs_mixed(cold)));
    CHECK_THAT(s_half_vs_mixed(cold), WithinAbs(std::log(6.0), 1e-12));
}

TEST_CASE("ThermalEnsemble JSON summary", "[thermo]") {
    const ThermalEnsemble e(two_level(), 1.0);
    const json j = summarize(e);
    CHECK(j.at("N").get<std::uint64_t>() == 2);
    CHECK_THAT(j.at("Z").get<double>(), WithinAbs(1.3678794411714423, 1e-15));
    CHECK_THAT(j.at("omega").get<double>(), WithinAbs(-0.31326168751822283, 1e-15));
    const auto round = spectrum_from_json(spectrum_to_json(spin_ensemble_spectrum(1.0, 4)));
    CHECK(round.total_dim() == 16);
    CHECK(round.levels()[2].multiplicity == 6);
    oracle::require_kind([] { spectrum_from_json(json::parse(R"({"levels":[[0, 0]]})")); }, ErrorKind::InvalidSpectrum);
    oracle::require_kind([] { spectrum_from_json(json::parse(R"({"lvls":[]})")); }, ErrorKind::InvalidSpectrum);
}

TEST_CASE("s_half_vs_mixed limits", "[thermo]") {
    CHECK_THAT(s_half_vs_mixed(ThermalEnsemble(uniform(9), 0.4)), WithinAbs(0.0, 1e-14));
    CHECK_THAT(s_half_vs_mixed(ThermalEnsemble(two_level(), 1e-3)), WithinAbs(std::numbers::ln2, 1e-12));
    const ThermalEnsemble ho(harmonic_spectrum(1.0, 100), 0.1);
    const double s = s_half_vs_mixed(ho);
    CHECK(s > 0.0);
    CHECK(s < std::log(100.0));
    CHECK_THAT(s, WithinAbs(4.5916940880494847, 1e-12));
    CHECK_THAT(s, WithinAbs(s_half_geometric(ho), 1e-10));
    const double f = root_fidelity(ho.density(), maximally_mixed(100));
    CHECK_THAT(s, WithinAbs(-2.0 * std::log(f), 1e-10));
}

TEST_CASE("sum of square-root populations", "[thermo]") {
    CHECK_THAT(fund2_sum(ThermalEnsemble(two_level(), 1e-3)), WithinAbs(1.0, 1e-12));
    CHECK_THAT(fund2_sum(ThermalEnsemble(uniform(4), 1.0)), WithinAbs(2.0, 1e-14));
    std::mt19937_64 rng(73);
    for (int i = 0; i < 20; ++i) {
        const ThermalEnsemble e(random_levels(rng, 8), 0.5 + i * 0.2);
        CHECK(sqrt_sum_residual(e) <= 1e-12);
    }
}

TEST_CASE("z_prime_identity", "[thermo]") {
    const auto u = z_prime_identity(ThermalEnsemble(uniform(5), 2.0));
    CHECK_THAT(u.fidelity_form, WithinAbs(0.0, 1e-14));
    CHECK_THAT(u.wootters_form, WithinAbs(0.0, 1e-14));
    const auto t = z_prime_identity(ThermalEnsemble(two_level(), 1.0));
    CHECK(t.fidelity_form <= 1e-12);
    CHECK(t.wootters_form <= 1e-12);
    const auto h = z_prime_identity(ThermalEnsemble(harmonic_spectrum(1.0, 100), 0.1));
    CHECK(h.fidelity_form <= 1e-10);
    CHECK(h.wootters_form <= 1e-10);
    // Compressed spin ensemble at 2^25 states.
    const auto s = z_prime_identity(ThermalEnsemble(spin_ensemble_spectrum(1.0, 25), 0.7));
    CHECK(s.fidelity_form <= 1e-10);
    CHECK(s.wootters_form <= 1e-10);
}

TEST_CASE("free_energy_relation", "[thermo]") {
    const auto ho = harmonic_spectrum(1.0, 100);
    const auto same = free_energy_relation(ThermalEnsemble(ho, 0.4), ThermalEnsemble(ho, 0.4));
    CHECK_THAT(same.lhs, WithinAbs(0.0, 1e-14));
    CHECK_THAT(same.rhs, WithinAbs(0.0, 1e-14));

    CHECK(free_energy_relation(ThermalEnsemble(ho, 0.1), ThermalEnsemble(ho, 1.0)).residual <= 1e-9);
    const auto spins = spin_ensemble_spectrum(1.0, 25);
    const auto r = free_energy_relation(ThermalEnsemble(spins, 0.1), ThermalEnsemble(spins, 2.0));
    CHECK(r.residual <= 1e-9);

    oracle::require_kind([&] { free_energy_relation(ThermalEnsemble(ho, 1.0), ThermalEnsemble(ho, 0.5)); },
                         ErrorKind::TemperatureOrder);
    oracle::require_kind([&] { free_energy_relation(ThermalEnsemble(ho, 0.5), ThermalEnsemble(spins, 1.0)); },
                         ErrorKind::DimMismatch);
}

TEST_CASE("omega_prime_decomposition", "[thermo]") {
    CHECK_THAT(omega_prime_decomposition(ThermalEnsemble(uniform(6), 1.3)), WithinAbs(0.0, 1e-13));
    CHECK(omega_prime_decomposition(ThermalEnsemble(two_level(), 0.5)) <= 1e-12);
    CHECK(omega_prime_decomposition(ThermalEnsemble(harmonic_spectrum(1.0, 100), 0.1)) <= 1e-10);
    CHECK(omega_prime_decomposition(ThermalEnsemble(harmonic_spectrum(1.0, 100), 3.0)) <= 1e-10);
}

TEST_CASE("occupation identity", "[thermo]") {
    std::mt19937_64 rng(79);
    for (int i = 0; i < 20; ++i) {
        CHECK(occupation_residual(ThermalEnsemble(random_levels(rng, 12), 0.3 + 0.1 * i)) <= 1e-12);
    }
    CHECK(occupation_residual(ThermalEnsemble(spin_ensemble_spectrum(1.0, 25), 1.0)) <= 1e-12);
}

TEST_CASE("trivial relation and classical consistency", "[thermo]") {
    const auto ho = harmonic_spectrum(1.0, 100);
    CHECK_THAT(classical_consistency(ThermalEnsemble(ho, 0.6), ThermalEnsemble(ho, 0.6)), WithinAbs(0.0, 1e-14));
    CHECK(classical_consistency(ThermalEnsemble(two_level(), 0.3), ThermalEnsemble(two_level(), 1.7)) <= 1e-12);
    CHECK(classical_consistency(ThermalEnsemble(ho, 0.1), ThermalEnsemble(ho, 2.0)) <= 1e-10);
    CHECK(trivial_relation(ThermalEnsemble(ho, 0.1), ThermalEnsemble(ho, 2.0)).residual <= 1e-10);
    CHECK(trivial_relation(ThermalEnsemble(two_level(), 0.3), ThermalEnsemble(two_level(), 1.7)).residual <= 1e-12);
}

TEST_CASE("bound reports", "[thermo]") {
    const auto eb = entropy_bound(ThermalEnsemble(uniform(8), 1.0));
    CHECK_THAT(eb.value, WithinAbs(std::log(8.0), 1e-14));
    CHECK_THAT(eb.slack, WithinAbs(0.0, 1e-14));
    const auto pure = entropy_bound(ThermalEnsemble(two_level(100.0), 1.0));
    CHECK_THAT(pure.value, WithinAbs(0.0, 1e-12));
    CHECK_THAT(pure.bound, WithinAbs(0.0, 1e-12));

    std::mt19937_64 rng(83);
    for (int i = 0; i < 50; ++i) {
        const ThermalEnsemble e(random_levels(rng, 32, 5.0), 0.05 + 0.2 * i);
        CHECK(divergence_bound(e).slack >= -1e-10);
        // The stated entropy and Jensen bounds run the other way: the Renyi-1/2 entropy
        // ln N - S(rho||rho*) dominates S_th, so these slacks are never positive.
        CHECK(entropy_bound(e).slack <= 1e-10);
        CHECK(jensen_bound(e).slack <= 1e-10);
        CHECK_THAT(entropy_bound(e).bound - e.thermal_entropy(), WithinAbs(-entropy_bound(e).slack, 1e-15));
    }

    // Two-level system at T = 1: 2T ln Z' = 0.9481 exceeds 2T S_th - U = 0.8955.
    const auto j = jensen_bound(ThermalEnsemble(two_level(), 1.0));
    CHECK_THAT(j.value, WithinAbs(2.0 * std::log(1.0 + std::exp(-0.5)), 1e-15));
    CHECK(j.slack < -0.05);
}

TEST_CASE("omega_approx on the two-level system at T = 1", "[thermo]") {
    const ThermalEnsemble e(two_level(), 1.0);
    CHECK_THAT(e.potentials().omega, WithinAbs(-0.31326168751822283, 1e-15));
    CHECK_THAT(s_half_vs_mixed(e), WithinAbs(0.058254899717954782, 1e-15));
    CHECK_THAT(omega_approx(e, ApproxOrder::First), WithinAbs(-0.35081330182852068, 1e-13));
    CHECK_THAT(omega_approx(e, ApproxOrder::Second), WithinAbs(-0.24639948991014369, 1e-12));
    CHECK_THAT(omega_approx(e, ApproxOrder::Closed, std::numbers::pi), WithinAbs(0.77978981687975369, 1e-14));
    oracle::require_kind([] { omega_approx(ThermalEnsemble(Spectrum({{0.0, 1}}), 1.0), ApproxOrder::First); },
                         ErrorKind::ApproxSingular);
    oracle::require_kind([] { omega_approx(ThermalEnsemble(Spectrum({{0.0, 1}}), 1.0), ApproxOrder::Second); },
                         ErrorKind::ApproxSingular);
}

TEST_CASE("delta_T", "[thermo]") {
    CHECK(delta_T(0.0, 0.0, 0.3, 0.1) == 0.0);
    CHECK(delta_T(2.5, 1.0, 1.0, 1.0) == 1.5);
    CHECK_THAT(delta_T(std::numbers::ln2, std::numbers::ln2, 0.2, 0.05), WithinAbs(0.10397207708399180, 1e-16));
}
