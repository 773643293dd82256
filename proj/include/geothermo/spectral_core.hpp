// Copyright 2026 The geothermo Authors
// SPDX-License-Identifier: Apache-2.0

// spectral_core.hpp: Hermitian matrices, spectra with degeneracies, density operators
//
// A density operator is stored either densely (an N x N complex matrix) or in
// compressed diagonal form: a Spectrum of distinct levels with integer
// multiplicities plus one total weight per level. A level of multiplicity m and
// weight w expands to m eigenvalues equal to w / m. The compressed form is what
// makes N = 2^25 spin ensembles tractable.

#pragma once

#include "geothermo/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace geothermo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-12;
// Largest dimension we are willing to expand a compressed state into.
inline constexpr std::uint64_t kMaxExpandedDim = std::uint64_t{1} << 14;

// --------------------------- Hermitian matrices -----------------------------

// max_ij |m_ij - conj(m_ji)|
inline double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& m, double tol = kHermitianTolerance) {
    if (m.rows() != m.cols()) return false;
    if (m.size() == 0) return true;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return hermiticity_defect(m) <= tol * scale;
}

class HermitianMatrix {
public:
    explicit HermitianMatrix(Matrix m) : m_(std::move(m)) {
        if (m_.rows() == 0 || m_.rows() != m_.cols()) {
            fail(ErrorKind::InvalidDim, "HermitianMatrix must be square with dim >= 1");
        }
        if (!is_hermitian(m_)) {
            fail(ErrorKind::NonHermitian, "entries[i][j] != conj(entries[j][i])");
        }
    }

    Eigen::Index dim() const noexcept { return m_.rows(); }
    const Matrix& matrix() const noexcept { return m_; }

private:
    Matrix m_;
};

// ------------------------------ Eigensystems --------------------------------

struct Eigensystem {
    Eigen::VectorXd values;  // ascending
    Matrix vectors;          // orthonormal columns
};

namespace detail {

inline Eigensystem eigensolve(const Matrix& m) {
    // Symmetrize so rounding-level asymmetry does not leak into the solver.
    const Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecompose: solver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

} // namespace detail

inline Eigensystem eigendecompose(const HermitianMatrix& h) {
    return detail::eigensolve(h.matrix());
}

// V f(Λ) V†
template <class F>
Matrix spectral_function(const Eigensystem& es, F&& f) {
    Eigen::VectorXcd d(es.values.size());
    for (Eigen::Index i = 0; i < es.values.size(); ++i) d(i) = f(es.values(i));
    return es.vectors * d.asDiagonal() * es.vectors.adjoint();
}

// -------------------------------- Spectra -----------------------------------

struct Level {
    double energy{0.0};
    std::uint64_t multiplicity{1};
};

class Spectrum {
public:
    explicit Spectrum(std::vector<Level> levels) : levels_(std::move(levels)) {
        if (levels_.empty()) fail(ErrorKind::InvalidSpectrum, "spectrum needs at least one level");
        for (std::size_t i = 0; i < levels_.size(); ++i) {
            const auto& l = levels_[i];
            if (!std::isfinite(l.energy)) fail(ErrorKind::InvalidSpectrum, "non-finite energy");
            if (l.multiplicity < 1) fail(ErrorKind::InvalidSpectrum, "multiplicity must be >= 1");
            if (i > 0 && !(levels_[i - 1].energy < l.energy)) {
                fail(ErrorKind::InvalidSpectrum, "energies must be strictly increasing");
            }
            if (total_ > UINT64_MAX - l.multiplicity) fail(ErrorKind::TooLarge, "total dimension overflows");
            total_ += l.multiplicity;
        }
    }

    // Groups an unsorted list of eigenvalues into levels. Values closer than
    // `tol * max(1, |E|)` to the previous member of a group join that group.
    static Spectrum from_energies(std::span<const double> energies, double tol = 1e-12) {
        if (energies.empty()) fail(ErrorKind::InvalidSpectrum, "no energies");
        std::vector<double> sorted(energies.begin(), energies.end());
        std::stable_sort(sorted.begin(), sorted.end());
        std::vector<Level> levels;
        double last = sorted.front();
        levels.push_back({sorted.front(), 1});
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            const double e = sorted[i];
            if (e - last <= tol * std::max(1.0, std::abs(e))) {
                ++levels.back().multiplicity;
            } else {
                levels.push_back({e, 1});
            }
            last = e;
        }
        return Spectrum(std::move(levels));
    }

    const std::vector<Level>& levels() const noexcept { return levels_; }
    std::size_t size() const noexcept { return levels_.size(); }
    std::uint64_t total_dim() const noexcept { return total_; }
    double min_energy() const noexcept { return levels_.front().energy; }
    double max_energy() const noexcept { return levels_.back().energy; }

    std::vector<double> expanded() const {
        if (total_ > kMaxExpandedDim) fail(ErrorKind::TooLarge, "spectrum too large to expand");
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(total_));
        for (const auto& l : levels_) out.insert(out.end(), l.multiplicity, l.energy);
        return out;
    }

private:
    std::vector<Level> levels_;
    std::uint64_t total_{0};
};

// ---------------------------- Density operators -----------------------------

// `count` consecutive eigenvalues, each equal to `value`.
struct Run {
    std::uint64_t count{0};
    double value{0.0};
};

class DensityOperator {
public:
    // No validation beyond shape; see validate_density.
    static DensityOperator dense(Matrix m) {
        if (m.rows() == 0 || m.rows() != m.cols()) {
            fail(ErrorKind::InvalidDim, "density matrix must be square with dim >= 1");
        }
        DensityOperator out;
        out.form_ = DenseForm{std::move(m)};
        return out;
    }

    static DensityOperator dense(const HermitianMatrix& m) { return dense(m.matrix()); }

    // level_weights[i] is the total probability carried by level i.
    static DensityOperator diagonal(Spectrum spectrum, std::vector<double> level_weights) {
        if (level_weights.size() != spectrum.size()) {
            fail(ErrorKind::DimMismatch, "one weight per spectrum level is required");
        }
        DensityOperator out;
        out.form_ = DiagonalForm{std::move(spectrum), std::move(level_weights)};
        return out;
    }

    // Diagonal state with one nondegenerate level per entry of `probs`.
    static DensityOperator from_probabilities(std::span<const double> probs) {
        if (probs.empty()) fail(ErrorKind::InvalidDim, "empty probability vector");
        std::vector<Level> levels(probs.size());
        for (std::size_t i = 0; i < probs.size(); ++i) levels[i] = {static_cast<double>(i), 1};
        return diagonal(Spectrum(std::move(levels)), std::vector<double>(probs.begin(), probs.end()));
    }

    bool is_diagonal() const noexcept { return std::holds_alternative<DiagonalForm>(form_); }

    std::uint64_t dim() const noexcept {
        if (const auto* d = std::get_if<DenseForm>(&form_)) return static_cast<std::uint64_t>(d->m.rows());
        return std::get<DiagonalForm>(form_).spectrum.total_dim();
    }

    const Matrix& matrix() const { return std::get<DenseForm>(form_).m; }
    const Spectrum& spectrum() const { return std::get<DiagonalForm>(form_).spectrum; }
    const std::vector<double>& level_weights() const { return std::get<DiagonalForm>(form_).weights; }

    std::vector<Run> runs() const {
        const auto& d = std::get<DiagonalForm>(form_);
        std::vector<Run> out;
        out.reserve(d.weights.size());
        const auto& levels = d.spectrum.levels();
        for (std::size_t i = 0; i < levels.size(); ++i) {
            out.push_back({levels[i].multiplicity, d.weights[i] / static_cast<double>(levels[i].multiplicity)});
        }
        return out;
    }

    Matrix to_matrix() const {
        if (const auto* d = std::get_if<DenseForm>(&form_)) return d->m;
        if (dim() > kMaxExpandedDim) fail(ErrorKind::TooLarge, "state too large to densify");
        const auto n = static_cast<Eigen::Index>(dim());
        Matrix m = Matrix::Zero(n, n);
        Eigen::Index k = 0;
        for (const auto& r : runs()) {
            for (std::uint64_t c = 0; c < r.count; ++c, ++k) m(k, k) = r.value;
        }
        return m;
    }

    // Ascending eigenvalues of the expanded operator.
    std::vector<double> eigenvalues() const {
        std::vector<double> out;
        if (const auto* d = std::get_if<DenseForm>(&form_)) {
            const auto es = detail::eigensolve(d->m);
            out.assign(es.values.data(), es.values.data() + es.values.size());
            return out;
        }
        if (dim() > kMaxExpandedDim) fail(ErrorKind::TooLarge, "state too large to expand");
        for (const auto& r : runs()) out.insert(out.end(), r.count, r.value);
        std::stable_sort(out.begin(), out.end());
        return out;
    }

    double trace() const {
        if (const auto* d = std::get_if<DenseForm>(&form_)) return d->m.trace().real();
        double t = 0.0;
        for (double w : std::get<DiagonalForm>(form_).weights) t += w;
        return t;
    }

private:
    struct DenseForm {
        Matrix m;
    };
    struct DiagonalForm {
        Spectrum spectrum;
        std::vector<double> weights;
    };

    DensityOperator() : form_(DenseForm{}) {}

    std::variant<DenseForm, DiagonalForm> form_;
};

inline DensityOperator maximally_mixed(std::uint64_t n) {
    if (n < 1) fail(ErrorKind::InvalidDim, "maximally mixed state needs n >= 1");
    return DensityOperator::diagonal(Spectrum({{0.0, n}}), {1.0});
}

inline void validate_density(const DensityOperator& rho) {
    if (rho.is_diagonal()) {
        if (std::abs(rho.trace() - 1.0) > kTraceTolerance) fail(ErrorKind::TraceError, "trace != 1");
        for (const auto& r : rho.runs()) {
            if (!(r.value >= -kPsdTolerance)) fail(ErrorKind::NotPSD, "negative eigenvalue");
        }
        return;
    }
    const Matrix& m = rho.matrix();
    if (!is_hermitian(m)) fail(ErrorKind::NonHermitian, "density matrix is not Hermitian");
    if (std::abs(m.trace() - Complex(1.0, 0.0)) > kTraceTolerance) fail(ErrorKind::TraceError, "trace != 1");
    const auto es = detail::eigensolve(m);
    if (es.values.minCoeff() < -kPsdTolerance) fail(ErrorKind::NotPSD, "negative eigenvalue");
}

// Walks two diagonal states in lockstep over the expanded basis, calling
// f(count, p, q) once per maximal block on which both eigenvalues are constant.
template <class F>
void for_each_aligned(const std::vector<Run>& a, const std::vector<Run>& b, F&& f) {
    std::size_t i = 0, j = 0;
    std::uint64_t left_a = a.empty() ? 0 : a[0].count;
    std::uint64_t left_b = b.empty() ? 0 : b[0].count;
    while (i < a.size() && j < b.size()) {
        const std::uint64_t take = std::min(left_a, left_b);
        f(take, a[i].value, b[j].value);
        left_a -= take;
        left_b -= take;
        if (left_a == 0 && ++i < a.size()) left_a = a[i].count;
        if (left_b == 0 && ++j < b.size()) left_b = b[j].count;
    }
}

inline void require_same_dim(const DensityOperator& a, const DensityOperator& b) {
    if (a.dim() != b.dim()) {
        fail(ErrorKind::DimMismatch,
             "dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()) + " differ");
    }
}

} // namespace geothermo
