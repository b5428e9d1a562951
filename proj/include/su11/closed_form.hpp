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

// Closed-form parity signals <Pi_b(phi)> = Tr[rho_in mu(xi, phi)] for the five
// input families, and the error-propagation phase sensitivity built on them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <variant>

#include "su11/errors.hpp"
#include "su11/input_state.hpp"
#include "su11/params.hpp"

namespace su11 {

/// Expectation of a +-1-valued observable.
struct ParityValue {
    double value = 0.0;

    constexpr operator double() const noexcept { return value; }
};

/// Below this slope (rad^-1) the finite difference is rounding noise.
inline constexpr double derivative_floor = 1e-12;
inline constexpr double default_fd_step = 1e-5;

inline ParityValue parity_vacuum(const GainConfig& gain, double phi) {
    return {measurement_coeffs(gain, phi).prefactor};
}

inline ParityValue parity_two_mode_coherent(complex alpha, complex beta, const GainConfig& gain,
                                            double phi) {
    const auto k = measurement_coeffs(gain, phi);
    const double exponent =
        2.0 * std::real(alpha * beta * k.M) - std::norm(alpha) * k.C - std::norm(beta) * k.D;
    return {k.prefactor * std::exp(exponent)};
}

namespace detail {

/// cosh^2 r - (D-1)^2 sinh^2 r, >= 1 because 0 < D-1 <= 1.
inline double squeezed_denominator(const MeasurementCoefficients& k, double r) {
    const double d1 = k.D - 1.0;
    const double ch = std::cosh(r);
    const double sh = std::sinh(r);
    const double den = ch * ch - d1 * d1 * sh * sh;
    if (!(den > 0.0)) {
        throw DomainError("squeezed-vacuum denominator is not positive");
    }
    return den;
}

}  // namespace detail

inline ParityValue parity_coherent_svs(complex alpha, double r, double theta_s,
                                       const GainConfig& gain, double phi) {
    detail::require_squeezing(r, theta_s);
    const auto k = measurement_coeffs(gain, phi);
    const double den = detail::squeezed_denominator(k, r);
    const double sh = std::sinh(r);
    const double m2 = std::norm(k.M);
    const double exponent =
        -std::norm(alpha) * (k.C + m2 * sh * sh) / den -
        std::real(alpha * alpha * k.M * k.M * std::polar(1.0, theta_s)) * std::sinh(2.0 * r) /
            (2.0 * den);
    return {k.prefactor / std::sqrt(den) * std::exp(exponent)};
}

/// Independent of the squeezing phase: the thermal P-function is isotropic.
inline ParityValue parity_thermal_svs(double nbar, double r, const GainConfig& gain, double phi) {
    detail::require_finite(nbar, "thermal mean photon number");
    if (nbar < 0.0) {
        throw DomainError("thermal mean photon number must be non-negative");
    }
    detail::require_squeezing(r, 0.0);
    const auto k = measurement_coeffs(gain, phi);
    const double den = detail::squeezed_denominator(k, r);

    const double d1 = k.D - 1.0;
    const double t2 = std::tanh(r) * std::tanh(r);
    const double sech2 = 1.0 / (std::cosh(r) * std::cosh(r));
    const double m2 = std::norm(k.M);
    const double q = 1.0 - d1 * d1 * t2;
    const double lead = 1.0 + nbar * (k.C * sech2 + m2 * t2) / q;
    const double inner = lead * lead - nbar * nbar * m2 * m2 * t2 / (q * q);
    if (!(q > 0.0) || !(inner > 0.0)) {
        throw DomainError("thermal squeezed-vacuum radicand is not positive");
    }
    return {k.prefactor / std::sqrt(den) / std::sqrt(inner)};
}

/// (-1)^n (1 + 2 sin^2(phi/2) sinh^2 2g)^{-(n+1)}. The sign makes phi = 0
/// reproduce the input parity (-1)^n of |n>_b.
inline ParityValue parity_vacuum_fock(std::size_t n, const GainConfig& gain, double phi) {
    const double magnitude = std::pow(measurement_coeffs(gain, phi).prefactor,
                                      static_cast<double>(n) + 1.0);
    return {n % 2 == 0 ? magnitude : -magnitude};
}

/// Same expression without the (-1)^n factor. Kept only so verification
/// reports can show it disagreeing with the oracle for odd n.
inline ParityValue parity_vacuum_fock_unsigned(std::size_t n, const GainConfig& gain, double phi) {
    return {std::pow(measurement_coeffs(gain, phi).prefactor, static_cast<double>(n) + 1.0)};
}

inline ParityValue parity_signal(const InputState& state, const GainConfig& gain, double phi) {
    struct Visitor {
        const GainConfig& gain;
        double phi;
        ParityValue operator()(const TwoModeVacuum&) const { return parity_vacuum(gain, phi); }
        ParityValue operator()(const TwoModeCoherent& s) const {
            return parity_two_mode_coherent(s.alpha(), s.beta(), gain, phi);
        }
        ParityValue operator()(const CoherentSqueezed& s) const {
            return parity_coherent_svs(s.alpha(), s.r(), s.theta_s(), gain, phi);
        }
        ParityValue operator()(const ThermalSqueezed& s) const {
            return parity_thermal_svs(s.nbar(), s.r(), gain, phi);
        }
        ParityValue operator()(const VacuumFock& s) const {
            return parity_vacuum_fock(s.n(), gain, phi);
        }
    };
    return std::visit(Visitor{gain, phi}, state);
}

/// dP/dphi by one Richardson step over central differences with steps h, h/2.
inline double parity_slope(const InputState& state, const GainConfig& gain, double phi,
                           double fd_step = default_fd_step) {
    detail::require_finite(phi, "phase phi");
    if (!(fd_step > 0.0) || !std::isfinite(fd_step)) {
        throw DomainError("finite-difference step must be positive");
    }
    auto central = [&](double h) {
        return (parity_signal(state, gain, phi + h).value -
                parity_signal(state, gain, phi - h).value) /
               (2.0 * h);
    };
    const double coarse = central(fd_step);
    const double fine = central(0.5 * fd_step);
    return (4.0 * fine - coarse) / 3.0;
}

/// Delta phi = sqrt(1 - P^2) / |dP/dphi|, using Pi^2 = 1 for the variance.
/// Throws DerivativeVanishes when the slope is below derivative_floor.
inline double phase_sensitivity(const InputState& state, const GainConfig& gain, double phi,
                                double fd_step = default_fd_step) {
    const double slope = parity_slope(state, gain, phi, fd_step);
    const double p = parity_signal(state, gain, phi).value;
    // |P| = 1 is an extremum of a signal bounded by 1, so any slope the
    // difference quotient reports there is rounding noise
    const bool at_bound = 1.0 - std::abs(p) <= 64.0 * std::numeric_limits<double>::epsilon();
    if (at_bound || !(std::abs(slope) >= derivative_floor)) {
        throw DerivativeVanishes(phi, slope);
    }
    const double variance = std::max(0.0, 1.0 - p * p);
    return std::sqrt(variance) / std::abs(slope);
}

/// Small-phase limit of the vacuum-input sensitivity,
/// 1/sqrt(2 sinh^2 g (2 sinh^2 g + 2)) = 1/sinh 2g.
inline double vacuum_optimal_sensitivity(double g) {
    detail::require_finite(g, "gain g");
    if (!(g > 0.0)) {
        throw DomainError("optimal sensitivity needs g > 0");
    }
    const double s2 = std::sinh(g) * std::sinh(g);
    const double product_form = 1.0 / std::sqrt(2.0 * s2 * (2.0 * s2 + 2.0));
    const double double_angle_form = 1.0 / std::sinh(2.0 * g);
    if (std::abs(product_form - double_angle_form) > 1e-12 * double_angle_form) {
        throw std::logic_error("optimal-sensitivity forms disagree");
    }
    return double_angle_form;
}

}  // namespace su11
