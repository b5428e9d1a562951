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

// Scalar coefficient algebra of the lossless SU(1,1) interferometer with
// parity readout on mode b.

#include <cmath>
#include <complex>
#include <numbers>

#include "su11/errors.hpp"

namespace su11 {

using complex = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Parametric gain g >= 0 and pump phase theta of one OPA; squeezing
/// parameter xi = g e^{i theta}. Theta is stored reduced to [0, 2pi).
class GainConfig {
public:
    explicit GainConfig(double g, double theta = 0.0) : g_(g), theta_(reduce_phase(theta)) {
        detail::require_finite(g, "gain g");
        if (g < 0.0) {
            throw DomainError("gain g must be non-negative (flip the pump phase by pi instead)");
        }
    }

    [[nodiscard]] double g() const noexcept { return g_; }
    [[nodiscard]] double theta() const noexcept { return theta_; }
    [[nodiscard]] complex xi() const { return std::polar(g_, theta_); }

    /// Same gain, opposite squeezing parameter: -xi = g e^{i(theta + pi)}.
    [[nodiscard]] GainConfig negated() const { return GainConfig(g_, theta_ + std::numbers::pi); }

    friend bool operator==(const GainConfig&, const GainConfig&) = default;

    static double reduce_phase(double theta) {
        detail::require_finite(theta, "pump phase theta");
        double t = std::fmod(theta, two_pi);
        if (t < 0.0) {
            t += two_pi;
        }
        // fmod(-tiny) + 2pi rounds to exactly 2pi
        if (t >= two_pi) {
            t = 0.0;
        }
        return t;
    }

private:
    double g_;
    double theta_;
};

/// Normal-ordered interferometer unitary
/// U = prefactor_U exp(e^{i theta} tanh g A a+b+) :exp(A Na + B Nb): exp(e^{-i theta} tanh g A ab).
struct InterferometerCoefficients {
    complex A;
    complex B;
    complex prefactor_U;
};

/// Normal-ordered equivalent parity observable
/// mu = prefactor exp(M* a+b+) :exp(-C Na - D Nb): exp(M ab).
struct MeasurementCoefficients {
    complex M;
    double C;
    double D;
    double prefactor;
};

namespace detail {

/// e^{i phi} - 1 written as 2i sin(phi/2) e^{i phi/2}, exact at phi = 0.
inline complex expi_minus_one(double phi) {
    const double h = std::sin(0.5 * phi);
    return {-2.0 * h * h, std::sin(phi)};
}

inline double half_angle_sin_squared(double phi) {
    const double h = std::sin(0.5 * phi);
    return h * h;
}

}  // namespace detail

inline InterferometerCoefficients interferometer_coeffs(const GainConfig& gain, double phi) {
    detail::require_finite(phi, "phase phi");
    const double c2 = std::cosh(gain.g()) * std::cosh(gain.g());
    const double s2 = std::sinh(gain.g()) * std::sinh(gain.g());
    const complex em1 = detail::expi_minus_one(phi);
    // cosh^2 g - e^{i phi} sinh^2 g = 1 - (e^{i phi} - 1) sinh^2 g
    const complex den = 1.0 - em1 * s2;
    if (!(std::abs(den) > 0.0)) {
        throw DomainError("interferometer denominator vanished");
    }
    return {em1 * c2 / den, em1 * s2 / den, 1.0 / den};
}

inline MeasurementCoefficients measurement_coeffs(const GainConfig& gain, double phi) {
    detail::require_finite(phi, "phase phi");
    const double s = detail::half_angle_sin_squared(phi);
    const double sh = std::sinh(2.0 * gain.g());
    const double ch = std::cosh(2.0 * gain.g());
    const double x = 2.0 * s * sh * sh;
    const double den = 1.0 + x;
    const complex M =
        std::polar(1.0, -gain.theta()) * complex(-2.0 * s * ch, std::sin(phi)) * (sh / den);
    return {M, x / den, (2.0 + x) / den, 1.0 / den};
}

}  // namespace su11
