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

#include <complex>
#include <cstddef>
#include <string_view>
#include <variant>

#include "su11/errors.hpp"
#include "su11/params.hpp"

namespace su11 {

/// |0>_a |0>_b.
struct TwoModeVacuum {
    friend bool operator==(const TwoModeVacuum&, const TwoModeVacuum&) = default;
};

/// |alpha>_a |beta>_b.
class TwoModeCoherent {
public:
    TwoModeCoherent(complex alpha, complex beta) : alpha_(alpha), beta_(beta) {
        detail::require_finite(std::abs(alpha), "coherent amplitude alpha");
        detail::require_finite(std::abs(beta), "coherent amplitude beta");
    }

    [[nodiscard]] complex alpha() const noexcept { return alpha_; }
    [[nodiscard]] complex beta() const noexcept { return beta_; }

    friend bool operator==(const TwoModeCoherent&, const TwoModeCoherent&) = default;

private:
    complex alpha_;
    complex beta_;
};

namespace detail {

inline void require_squeezing(double r, double theta_s) {
    require_finite(r, "squeezing r");
    require_finite(theta_s, "squeezing phase theta_s");
    if (r < 0.0) {
        throw DomainError("squeezing r must be non-negative");
    }
}

}  // namespace detail

/// |alpha>_a (x) S(r, theta_s)|0>_b with
/// S = exp[(r e^{-i theta_s} b^2 - r e^{i theta_s} b+^2)/2].
class CoherentSqueezed {
public:
    CoherentSqueezed(complex alpha, double r, double theta_s)
        : alpha_(alpha), r_(r), theta_s_(theta_s) {
        detail::require_finite(std::abs(alpha), "coherent amplitude alpha");
        detail::require_squeezing(r, theta_s);
    }

    [[nodiscard]] complex alpha() const noexcept { return alpha_; }
    [[nodiscard]] double r() const noexcept { return r_; }
    [[nodiscard]] double theta_s() const noexcept { return theta_s_; }

    friend bool operator==(const CoherentSqueezed&, const CoherentSqueezed&) = default;

private:
    complex alpha_;
    double r_;
    double theta_s_;
};

/// Thermal state with mean photon number nbar on mode a, squeezed vacuum on b.
class ThermalSqueezed {
public:
    ThermalSqueezed(double nbar, double r, double theta_s = 0.0)
        : nbar_(nbar), r_(r), theta_s_(theta_s) {
        detail::require_finite(nbar, "thermal mean photon number");
        if (nbar < 0.0) {
            throw DomainError("thermal mean photon number must be non-negative");
        }
        detail::require_squeezing(r, theta_s);
    }

    [[nodiscard]] double nbar() const noexcept { return nbar_; }
    [[nodiscard]] double r() const noexcept { return r_; }
    [[nodiscard]] double theta_s() const noexcept { return theta_s_; }

    friend bool operator==(const ThermalSqueezed&, const ThermalSqueezed&) = default;

private:
    double nbar_;
    double r_;
    double theta_s_;
};

/// |0>_a |n>_b.
class VacuumFock {
public:
    explicit VacuumFock(std::size_t n) : n_(n) {}

    [[nodiscard]] std::size_t n() const noexcept { return n_; }

    friend bool operator==(const VacuumFock&, const VacuumFock&) = default;

private:
    std::size_t n_;
};

using InputState =
    std::variant<TwoModeVacuum, TwoModeCoherent, CoherentSqueezed, ThermalSqueezed, VacuumFock>;

/// Stable family tag, used by the CLI and in reports.
inline std::string_view family_name(const InputState& state) {
    struct Visitor {
        std::string_view operator()(const TwoModeVacuum&) const { return "vacuum"; }
        std::string_view operator()(const TwoModeCoherent&) const { return "coherent"; }
        std::string_view operator()(const CoherentSqueezed&) const { return "coherent_svs"; }
        std::string_view operator()(const ThermalSqueezed&) const { return "thermal_svs"; }
        std::string_view operator()(const VacuumFock&) const { return "fock"; }
    };
    return std::visit(Visitor{}, state);
}

}  // namespace su11
