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

// Fock expansions of the input-state families on a two-mode cutoff.

#include <cmath>
#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "su11/errors.hpp"
#include "su11/fock/space.hpp"
#include "su11/input_state.hpp"

namespace su11 {

inline constexpr double default_max_leakage = 1e-10;

using FockState = std::variant<FockStateVector, FockDensityMatrix>;

namespace detail {

/// Single-mode amplitudes on |0> .. |n_max> plus the probability beyond.
struct ModeAmplitudes {
    Eigen::VectorXcd amplitudes;
    double leakage = 0.0;
};

inline ModeAmplitudes coherent_amplitudes(complex alpha, std::size_t n_max) {
    ModeAmplitudes out;
    out.amplitudes.resize(static_cast<Eigen::Index>(n_max + 1));
    const double mean = std::norm(alpha);
    complex c = std::exp(-0.5 * mean);
    double p = std::norm(c);
    for (std::size_t k = 0; k <= n_max; ++k) {
        if (k > 0) {
            c *= alpha / std::sqrt(static_cast<double>(k));
            p *= mean / static_cast<double>(k);
        }
        out.amplitudes(static_cast<Eigen::Index>(k)) = c;
    }
    // Poisson tail summed term by term
    for (std::size_t k = n_max + 1;; ++k) {
        p *= mean / static_cast<double>(k);
        out.leakage += p;
        if (p == 0.0 || (static_cast<double>(k) > mean && p <= 1e-17 * out.leakage)) {
            break;
        }
    }
    return out;
}

/// S(r, theta_s)|0>: sech^{1/2} r (-e^{i theta_s} tanh r / 2)^m sqrt((2m)!)/m! on |2m>.
inline ModeAmplitudes squeezed_vacuum_amplitudes(double r, double theta_s, std::size_t n_max) {
    ModeAmplitudes out;
    out.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n_max + 1));
    const complex ratio = -std::polar(0.5 * std::tanh(r), theta_s);
    const double t2 = std::tanh(r) * std::tanh(r);
    complex c = 1.0 / std::sqrt(std::cosh(r));
    double p = std::norm(c);
    out.amplitudes(0) = c;
    std::size_t m = 1;
    for (; 2 * m <= n_max; ++m) {
        const auto k = static_cast<double>(2 * m);
        c *= ratio * std::sqrt(k * (k - 1.0)) / static_cast<double>(m);
        p *= t2 * (k - 1.0) / k;
        out.amplitudes(static_cast<Eigen::Index>(2 * m)) = c;
    }
    if (t2 == 0.0) {
        return out;
    }
    // |c_m|^2 ratio stays below tanh^2 r, so the tail is bounded geometrically
    for (;; ++m) {
        const auto k = static_cast<double>(2 * m);
        p *= t2 * (k - 1.0) / k;
        out.leakage += p;
        if (p == 0.0 || p / (1.0 - t2) <= 1e-17 * out.leakage) {
            break;
        }
    }
    return out;
}

inline ModeAmplitudes number_state_amplitudes(std::size_t n, std::size_t n_max) {
    ModeAmplitudes out;
    out.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n_max + 1));
    if (n <= n_max) {
        out.amplitudes(static_cast<Eigen::Index>(n)) = 1.0;
    } else {
        out.leakage = 1.0;
    }
    return out;
}

/// Thermal occupation weights nbar^n / (1 + nbar)^(n+1) up to n_max; the
/// weight beyond is (nbar / (1 + nbar))^(n_max+1).
struct ThermalWeights {
    std::vector<double> weights;
    double leakage = 0.0;
};

inline ThermalWeights thermal_weights(double nbar, std::size_t n_max) {
    ThermalWeights out;
    const double q = nbar / (1.0 + nbar);
    double w = 1.0 / (1.0 + nbar);
    for (std::size_t n = 0; n <= n_max; ++n) {
        out.weights.push_back(w);
        w *= q;
    }
    out.leakage = std::pow(q, static_cast<double>(n_max + 1));
    return out;
}

inline double combined_leakage(double la, double lb) { return la + lb - la * lb; }

inline Eigen::VectorXcd tensor(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    const Eigen::Index d = a.size();
    Eigen::VectorXcd out(d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        out.segment(i * d, d) = a(i) * b;
    }
    return out;
}

struct LeakageVisitor {
    std::size_t n_max;

    double operator()(const TwoModeVacuum&) const { return 0.0; }
    double operator()(const TwoModeCoherent& s) const {
        return combined_leakage(coherent_amplitudes(s.alpha(), n_max).leakage,
                                coherent_amplitudes(s.beta(), n_max).leakage);
    }
    double operator()(const CoherentSqueezed& s) const {
        return combined_leakage(coherent_amplitudes(s.alpha(), n_max).leakage,
                                squeezed_vacuum_amplitudes(s.r(), s.theta_s(), n_max).leakage);
    }
    double operator()(const ThermalSqueezed& s) const {
        return combined_leakage(thermal_weights(s.nbar(), n_max).leakage,
                                squeezed_vacuum_amplitudes(s.r(), s.theta_s(), n_max).leakage);
    }
    double operator()(const VacuumFock& s) const { return s.n() <= n_max ? 0.0 : 1.0; }
};

}  // namespace detail

/// Probability (or trace) the state places beyond n_max in either mode.
inline double truncation_leakage(const InputState& state, std::size_t n_max) {
    return std::visit(detail::LeakageVisitor{n_max}, state);
}

/// Smallest n_max >= 1 whose truncation leakage is at most `max_leakage`.
inline std::size_t minimal_cutoff(const InputState& state, double max_leakage = default_max_leakage) {
    constexpr std::size_t search_limit = 100000;
    for (std::size_t n = 1; n <= search_limit; ++n) {
        if (truncation_leakage(state, n) <= max_leakage) {
            return n;
        }
    }
    throw CutoffCapExceeded("no cutoff below " + std::to_string(search_limit) +
                            " meets the leakage bound");
}

/// Fock-space representation of `state`. Throws TruncationLeakage when the
/// mass beyond the cutoff exceeds `max_leakage`.
inline FockState build_state(const InputState& state, const FockCutoff& cutoff,
                             double max_leakage = default_max_leakage) {
    const std::size_t n = cutoff.n_max();
    const double leakage = truncation_leakage(state, n);
    if (leakage > max_leakage) {
        throw TruncationLeakage(leakage, max_leakage, n);
    }

    auto pure = [&](const detail::ModeAmplitudes& a, const detail::ModeAmplitudes& b) -> FockState {
        return FockStateVector{cutoff, detail::tensor(a.amplitudes, b.amplitudes), leakage};
    };

    struct Visitor {
        std::size_t n;
        const FockCutoff& cutoff;
        double leakage;
        decltype(pure)& make;

        FockState operator()(const TwoModeVacuum&) const {
            return make(detail::number_state_amplitudes(0, n), detail::number_state_amplitudes(0, n));
        }
        FockState operator()(const TwoModeCoherent& s) const {
            return make(detail::coherent_amplitudes(s.alpha(), n),
                        detail::coherent_amplitudes(s.beta(), n));
        }
        FockState operator()(const CoherentSqueezed& s) const {
            return make(detail::coherent_amplitudes(s.alpha(), n),
                        detail::squeezed_vacuum_amplitudes(s.r(), s.theta_s(), n));
        }
        FockState operator()(const ThermalSqueezed& s) const {
            const auto w = detail::thermal_weights(s.nbar(), n);
            const auto b = detail::squeezed_vacuum_amplitudes(s.r(), s.theta_s(), n);
            FockDensityMatrix rho{cutoff, {}, {}, leakage};
            for (std::size_t k = 0; k <= n; ++k) {
                if (w.weights[k] == 0.0) {
                    continue;
                }
                rho.weights.push_back(w.weights[k]);
                rho.components.push_back(
                    detail::tensor(detail::number_state_amplitudes(k, n).amplitudes, b.amplitudes));
            }
            return rho;
        }
        FockState operator()(const VacuumFock& s) const {
            return make(detail::number_state_amplitudes(0, n),
                        detail::number_state_amplitudes(s.n(), n));
        }
    };
    return std::visit(Visitor{n, cutoff, leakage, pure}, state);
}

}  // namespace su11
