// Copyright 2026 The su11-parity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Truncated two-mode Fock space: cutoff, dense operators and states.
// Composite index i*(n_max+1)+j labels |i>_a |j>_b.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "su11/errors.hpp"

namespace su11 {

inline constexpr std::size_t default_dimension_cap = 4096;

class FockCutoff {
public:
    explicit FockCutoff(std::size_t n_max, std::size_t dimension_cap = default_dimension_cap)
        : n_max_(n_max), cap_(dimension_cap) {
        if (n_max < 1) {
            throw DomainError("Fock cutoff n_max must be at least 1");
        }
        if (dimension() > cap_) {
            throw CutoffCapExceeded("two-mode dimension " + std::to_string(dimension()) +
                                    " at n_max=" + std::to_string(n_max) + " exceeds cap " +
                                    std::to_string(cap_));
        }
    }

    [[nodiscard]] std::size_t n_max() const noexcept { return n_max_; }
    [[nodiscard]] std::size_t mode_dimension() const noexcept { return n_max_ + 1; }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return mode_dimension() * mode_dimension();
    }
    [[nodiscard]] std::size_t dimension_cap() const noexcept { return cap_; }

    [[nodiscard]] std::size_t index(std::size_t na, std::size_t nb) const noexcept {
        return na * mode_dimension() + nb;
    }
    [[nodiscard]] std::pair<std::size_t, std::size_t> occupations(std::size_t index) const noexcept {
        return {index / mode_dimension(), index % mode_dimension()};
    }

    /// Same cap, n_max raised by `step`.
    [[nodiscard]] FockCutoff raised(std::size_t step) const { return FockCutoff(n_max_ + step, cap_); }

    friend bool operator==(const FockCutoff&, const FockCutoff&) = default;

private:
    std::size_t n_max_;
    std::size_t cap_;
};

class FockOperator {
public:
    FockOperator(FockCutoff cutoff, Eigen::MatrixXcd entries)
        : cutoff_(cutoff), entries_(std::move(entries)) {
        const auto d = static_cast<Eigen::Index>(cutoff_.dimension());
        if (entries_.rows() != d || entries_.cols() != d) {
            throw DomainError("operator matrix does not match the two-mode dimension");
        }
    }

    static FockOperator zero(FockCutoff cutoff) {
        const auto d = static_cast<Eigen::Index>(cutoff.dimension());
        return {cutoff, Eigen::MatrixXcd::Zero(d, d)};
    }

    static FockOperator identity(FockCutoff cutoff) {
        const auto d = static_cast<Eigen::Index>(cutoff.dimension());
        return {cutoff, Eigen::MatrixXcd::Identity(d, d)};
    }

    [[nodiscard]] const FockCutoff& cutoff() const noexcept { return cutoff_; }
    [[nodiscard]] std::size_t dim() const noexcept { return cutoff_.dimension(); }
    [[nodiscard]] const Eigen::MatrixXcd& matrix() const noexcept { return entries_; }
    [[nodiscard]] Eigen::MatrixXcd& matrix() noexcept { return entries_; }

    /// <ia, ib| O |ja, jb>
    [[nodiscard]] std::complex<double> element(std::size_t ia, std::size_t ib, std::size_t ja,
                                               std::size_t jb) const {
        return entries_(static_cast<Eigen::Index>(cutoff_.index(ia, ib)),
                        static_cast<Eigen::Index>(cutoff_.index(ja, jb)));
    }

    [[nodiscard]] FockOperator adjoint() const { return {cutoff_, entries_.adjoint()}; }

private:
    FockCutoff cutoff_;
    Eigen::MatrixXcd entries_;
};

inline FockOperator operator*(const FockOperator& lhs, const FockOperator& rhs) {
    if (!(lhs.cutoff() == rhs.cutoff())) {
        throw DomainError("operator cutoffs differ");
    }
    return {lhs.cutoff(), lhs.matrix() * rhs.matrix()};
}

/// Pure state truncated at the cutoff; `leakage` is the probability mass
/// beyond n_max, so norm^2 = 1 - leakage up to rounding.
struct FockStateVector {
    FockCutoff cutoff;
    Eigen::VectorXcd amplitudes;
    double leakage = 0.0;

    [[nodiscard]] double norm() const { return amplitudes.norm(); }
};

/// Mixed state held as an ensemble sum_k w_k |psi_k><psi_k|.
struct FockDensityMatrix {
    FockCutoff cutoff;
    std::vector<double> weights;
    std::vector<Eigen::VectorXcd> components;
    double leakage = 0.0;

    [[nodiscard]] Eigen::MatrixXcd matrix() const {
        const auto d = static_cast<Eigen::Index>(cutoff.dimension());
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
        for (std::size_t k = 0; k < components.size(); ++k) {
            rho.noalias() += weights[k] * components[k] * components[k].adjoint();
        }
        return rho;
    }

    [[nodiscard]] double trace() const {
        double t = 0.0;
        for (std::size_t k = 0; k < components.size(); ++k) {
            t += weights[k] * components[k].squaredNorm();
        }
        return t;
    }
};

}  // namespace su11
