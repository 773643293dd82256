// Copyright 2026 The geothermo Authors
// SPDX-License-Identifier: Apache-2.0

#include "geothermo/geometry.hpp"

#include "oracles.hpp"

#include <numbers>

using namespace geothermo;
using Catch::Matchers::WithinAbs;

namespace {

DensityOperator probs(std::initializer_list<double> p) {
    const std::vector<double> v(p);
    return DensityOperator::from_probabilities(v);
}

DensityOperator dense_probs(std::initializer_list<double> p) {
    return DensityOperator::dense(probs(p).to_matrix());
}

} // namespace

TEST_CASE("root_fidelity closed forms", "[geometry]") {
    const auto pure = probs({1.0, 0.0});
    const auto mixed = maximally_mixed(2);
    CHECK_THAT(root_fidelity(pure, mixed), WithinAbs(1.0 / std::numbers::sqrt2, 1e-15));
    CHECK_THAT(root_fidelity(dense_probs({1.0, 0.0}), DensityOperator::dense(mixed.to_matrix())),
               WithinAbs(1.0 / std::numbers::sqrt2, 1e-12));
    CHECK_THAT(root_fidelity(pure, probs({0.0, 1.0})), WithinAbs(0.0, 1e-15));
    oracle::require_kind([] { root_fidelity(maximally_mixed(2), maximally_mixed(3)); }, ErrorKind::DimMismatch);
}

TEST_CASE("root_fidelity of a state with itself is one", "[geometry][property]") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 30; ++i) {
        const auto rho = DensityOperator::dense(oracle::random_density(rng, 1 + i % 7));
        CHECK_THAT(root_fidelity(rho, rho), WithinAbs(1.0, 1e-10));
        const auto p = oracle::random_probs(rng, 1 + i % 9);
        const auto d = DensityOperator::from_probabilities(p);
        CHECK_THAT(root_fidelity(d, d), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("root_fidelity dense path equals diagonal path on commuting pairs", "[geometry][property]") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 40; ++i) {
        const auto n = static_cast<std::size_t>(2 + i % 6);
        const auto p = oracle::random_probs(rng, n);
        const auto q = oracle::random_probs(rng, n);
        const Matrix u = oracle::random_unitary(rng, static_cast<Eigen::Index>(n));
        const double diag = root_fidelity(DensityOperator::from_probabilities(p), DensityOperator::from_probabilities(q));
        const double dense = root_fidelity(DensityOperator::dense(oracle::diag_in_basis(u, p)),
                                           DensityOperator::dense(oracle::diag_in_basis(u, q)));
        double direct = 0.0;
        for (std::size_t k = 0; k < n; ++k) direct += std::sqrt(p[k] * q[k]);
        CHECK_THAT(diag, WithinAbs(direct, 1e-14));
        CHECK_THAT(dense, WithinAbs(direct, 1e-10));
    }
}

TEST_CASE("fidelity is symmetric and bounded for random dense pairs", "[geometry][property]") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 30; ++i) {
        const Eigen::Index n = 2 + i % 5;
        const auto a = DensityOperator::dense(oracle::random_density(rng, n));
        const auto b = DensityOperator::dense(oracle::random_density(rng, n));
        const double f = root_fidelity(a, b);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0 + 1e-10);
        CHECK_THAT(root_fidelity(b, a), WithinAbs(f, 1e-10));
        CHECK_THAT(bures_distance(a, b), WithinAbs(2.0 - 2.0 * f, 1e-10));
        CHECK_THAT(std::cos(bures_angle(a, b)), WithinAbs(f, 1e-10));
    }
}

TEST_CASE("bures_distance and bures_angle closed forms", "[geometry]") {
    const auto pure = probs({1.0, 0.0});
    const auto other = probs({0.0, 1.0});
    const auto mixed = maximally_mixed(2);
    CHECK_THAT(bures_distance(pure, pure), WithinAbs(0.0, 1e-15));
    CHECK_THAT(bures_distance(pure, mixed), WithinAbs(2.0 - std::numbers::sqrt2, 1e-12));
    CHECK_THAT(bures_distance(pure, other), WithinAbs(2.0, 1e-15));
    CHECK_THAT(bures_angle(mixed, mixed), WithinAbs(0.0, 1e-7));
    CHECK_THAT(bures_angle(pure, mixed), WithinAbs(std::numbers::pi / 4.0, 1e-12));
    CHECK_THAT(bures_angle(pure, other), WithinAbs(std::numbers::pi / 2.0, 1e-15));
    CHECK(bures_angle_from_fidelity(1.0 + 1e-15) == 0.0);
}

TEST_CASE("cos_dW closed forms", "[geometry]") {
    const std::vector<double> uniform{0.5, 0.5}, pure{1.0, 0.0}, skew{0.9, 0.1};
    CHECK_THAT(cos_dW(std::span<const double>(uniform)), WithinAbs(0.5, 1e-15));
    CHECK_THAT(cos_dW(std::span<const double>(pure)), WithinAbs(0.0, 1e-15));
    CHECK_THAT(cos_dW(std::span<const double>(skew)), WithinAbs(0.3, 1e-15));
    const std::vector<double> heavy{0.6, 0.6};
    oracle::require_kind([&] { cos_dW(std::span<const double>(heavy)); }, ErrorKind::NotNormalized);
}

TEST_CASE("cos_dW matches the pairwise sum and respects its range", "[geometry][property]") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 50; ++i) {
        const auto n = static_cast<std::size_t>(1 + i % 20);
        const auto p = oracle::random_probs(rng, n);
        const double c = cos_dW(std::span<const double>(p));
        CHECK_THAT(c, WithinAbs(oracle::pairwise_cos_dW(p), 1e-12));
        CHECK(c >= -1e-15);
        CHECK(c <= 0.5 * static_cast<double>(n - 1) + 1e-12);
    }
    // Uniform distribution saturates (N-1)/2.
    const std::vector<double> u(10, 0.1);
    CHECK_THAT(cos_dW(std::span<const double>(u)), WithinAbs(4.5, 1e-13));
}

TEST_CASE("cos_dW over runs equals the expanded form", "[geometry]") {
    const std::vector<Run> runs{{3, 0.1}, {1, 0.4}, {2, 0.15}};
    const std::vector<double> flat{0.1, 0.1, 0.1, 0.4, 0.15, 0.15};
    CHECK_THAT(cos_dW(runs), WithinAbs(oracle::pairwise_cos_dW(flat), 1e-14));
}

TEST_CASE("fidelity to the mixed state versus the pairwise sum", "[geometry]") {
    const auto mixed = summarize_vs_mixed(maximally_mixed(2));
    CHECK_THAT(mixed.root_fidelity, WithinAbs(1.0, 1e-15));
    CHECK_THAT(mixed.cos_dW, WithinAbs(0.5, 1e-15));
    CHECK_THAT(verify_fund7(mixed, 2), WithinAbs(0.0, 1e-15));

    for (std::size_t n : {2u, 5u, 17u}) {
        std::vector<double> p(n, 0.0);
        p[0] = 1.0;
        const auto s = summarize_vs_mixed(DensityOperator::from_probabilities(p));
        CHECK_THAT(s.root_fidelity * s.root_fidelity, WithinAbs(1.0 / static_cast<double>(n), 1e-15));
        CHECK_THAT(s.cos_dW, WithinAbs(0.0, 1e-15));
        CHECK_THAT(verify_fund7(s, n), WithinAbs(0.0, 1e-15));
        CHECK_THAT(s.s_half, WithinAbs(std::log(static_cast<double>(n)), 1e-14));
    }

    std::mt19937_64 rng(31);
    for (int i = 0; i < 20; ++i) {
        std::vector<double> energies(8);
        std::uniform_real_distribution<double> e(-3.0, 3.0);
        for (double& x : energies) x = e(rng);
        std::vector<double> p(8);
        double z = 0.0;
        for (std::size_t k = 0; k < 8; ++k) z += (p[k] = std::exp(-energies[k]));
        for (double& x : p) x /= z;
        const auto s = summarize_vs_mixed(DensityOperator::from_probabilities(p));
        CHECK(verify_fund7(s, 8) <= 1e-12);
        // Dense route agrees.
        const auto sd = summarize_vs_mixed(DensityOperator::dense(oracle::diag_in_basis(oracle::random_unitary(rng, 8), p)));
        CHECK_THAT(sd.root_fidelity, WithinAbs(s.root_fidelity, 1e-10));
        CHECK_THAT(sd.cos_dW, WithinAbs(s.cos_dW, 1e-10));
    }
}
