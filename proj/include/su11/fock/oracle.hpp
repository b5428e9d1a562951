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

// Brute-force parity expectation and photon number on the truncated Fock
// space, with the cutoff-convergence check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "su11/errors.hpp"
#include "su11/fock/chain.hpp"
#include "su11/fock/operators.hpp"
#include "su11/fock/space.hpp"
#include "su11/fock/states.hpp"
#include "su11/input_state.hpp"
#include "su11/params.hpp"

namespace su11 {

/// How the expectation is formed. `sector` propagates the state's own sector
/// components; `dense` builds mu as a full matrix and contracts it.
enum class OracleRoute { sector, dense };

struct OracleOptions {
    double max_leakage = default_max_leakage;
    double convergence_tol = 1e-8;
    std::size_t cutoff_step = 8;
    double imag_tol = 1e-10;
    OracleRoute route = OracleRoute::sector;
    /// Sector route, parity only: total |column|^2 that may be left
    /// unpropagated, lightest columns first. Each dropped column moves the
    /// parity by at most its own |column|^2.
    double drop_budget = 1e-13;
    DirectRouteOptions direct;
};

struct OracleEvaluation {
    double value = 0.0;            ///< at n_max
    double companion = 0.0;        ///< at n_max + cutoff_step
    std::size_t n_max = 0;
    std::size_t companion_n_max = 0;
    double leakage = 0.0;          ///< state mass beyond n_max plus dropped column mass
    double imag_residue = 0.0;
};

namespace detail {

struct SectorColumns {
    long delta = 0;
    Eigen::MatrixXcd columns;
};

/// State components restricted to each delta sector; mixed components are
/// weighted by sqrt(w) so that sum |column|^2 reproduces the trace.
inline std::vector<SectorColumns> sector_columns(const FockState& state) {
    std::vector<std::reference_wrapper<const Eigen::VectorXcd>> vecs;
    std::vector<double> scale;
    const FockCutoff cutoff = std::visit([](const auto& s) { return s.cutoff; }, state);
    if (const auto* pure = std::get_if<FockStateVector>(&state)) {
        vecs.emplace_back(pure->amplitudes);
        scale.push_back(1.0);
    } else {
        const auto& rho = std::get<FockDensityMatrix>(state);
        for (std::size_t k = 0; k < rho.components.size(); ++k) {
            vecs.emplace_back(rho.components[k]);
            scale.push_back(std::sqrt(rho.weights[k]));
        }
    }

    std::vector<SectorColumns> out;
    const auto n = static_cast<long>(cutoff.n_max());
    for (long delta = -n; delta <= n; ++delta) {
        const std::size_t block = sector_block_size(cutoff.n_max(), delta);
        const auto idx = sector_indices(cutoff, SectorChain{delta, block}, block);
        std::vector<Eigen::VectorXcd> cols;
        for (std::size_t v = 0; v < vecs.size(); ++v) {
            Eigen::VectorXcd c(static_cast<Eigen::Index>(block));
            for (std::size_t k = 0; k < block; ++k) {
                c(static_cast<Eigen::Index>(k)) = scale[v] * vecs[v].get()(idx[k]);
            }
            if (c.squaredNorm() > 0.0) {
                cols.push_back(std::move(c));
            }
        }
        if (cols.empty()) {
            continue;
        }
        SectorColumns sc{delta, Eigen::MatrixXcd(static_cast<Eigen::Index>(block),
                                                 static_cast<Eigen::Index>(cols.size()))};
        for (std::size_t c = 0; c < cols.size(); ++c) {
            sc.columns.col(static_cast<Eigen::Index>(c)) = cols[c];
        }
        out.push_back(std::move(sc));
    }
    return out;
}

/// Removes the lightest columns while their summed |column|^2 stays within
/// `budget`; returns the removed mass.
inline double drop_light_columns(std::vector<SectorColumns>& sectors, double budget) {
    if (!(budget > 0.0)) {
        return 0.0;
    }
    struct Entry {
        double mass;
        std::size_t sector;
        Eigen::Index column;
    };
    std::vector<Entry> entries;
    for (std::size_t s = 0; s < sectors.size(); ++s) {
        for (Eigen::Index c = 0; c < sectors[s].columns.cols(); ++c) {
            entries.push_back({sectors[s].columns.col(c).squaredNorm(), s, c});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.mass < b.mass; });
    std::vector<std::vector<bool>> keep(sectors.size());
    for (std::size_t s = 0; s < sectors.size(); ++s) {
        keep[s].assign(static_cast<std::size_t>(sectors[s].columns.cols()), true);
    }
    double dropped = 0.0;
    for (const Entry& e : entries) {
        if (dropped + e.mass > budget) {
            break;
        }
        dropped += e.mass;
        keep[e.sector][static_cast<std::size_t>(e.column)] = false;
    }
    std::vector<SectorColumns> out;
    for (std::size_t s = 0; s < sectors.size(); ++s) {
        std::vector<Eigen::Index> kept;
        for (Eigen::Index c = 0; c < sectors[s].columns.cols(); ++c) {
            if (keep[s][static_cast<std::size_t>(c)]) {
                kept.push_back(c);
            }
        }
        if (kept.empty()) {
            continue;
        }
        SectorColumns sc{sectors[s].delta, Eigen::MatrixXcd(sectors[s].columns.rows(),
                                                            static_cast<Eigen::Index>(kept.size()))};
        for (std::size_t c = 0; c < kept.size(); ++c) {
            sc.columns.col(static_cast<Eigen::Index>(c)) = sectors[s].columns.col(kept[c]);
        }
        out.push_back(std::move(sc));
    }
    sectors = std::move(out);
    return dropped;
}

/// sum over sectors and columns of weight(chain, k) |Y_kc|^2 after evolution.
template <class Evolution, class Weight>
double propagated_expectation(const std::vector<SectorColumns>& sectors, const DirectRouteOptions& opts,
                              const Evolution& evolution, const Weight& weight) {
    double total = 0.0;
    for (const SectorColumns& sc : sectors) {
        const ChainPropagation prop = propagate_sector(sc.delta, sc.columns, opts, evolution);
        for (Eigen::Index k = 0; k < prop.columns.rows(); ++k) {
            total += weight(prop.chain, static_cast<std::size_t>(k)) * prop.columns.row(k).squaredNorm();
        }
    }
    return total;
}

/// <psi|O|psi> or Tr(rho O) for a dense operator.
inline complex dense_expectation(const FockState& state, const Eigen::MatrixXcd& op) {
    if (const auto* pure = std::get_if<FockStateVector>(&state)) {
        return pure->amplitudes.dot(op * pure->amplitudes);
    }
    const auto& rho = std::get<FockDensityMatrix>(state);
    complex total = 0.0;
    for (std::size_t k = 0; k < rho.components.size(); ++k) {
        total += rho.weights[k] * rho.components[k].dot(op * rho.components[k]);
    }
    return total;
}

struct CutoffValue {
    double value = 0.0;
    double leakage = 0.0;
    double imag_residue = 0.0;
};

inline CutoffValue parity_at_cutoff(const InputState& input, const GainConfig& gain, double phi,
                                    const FockCutoff& cutoff, const OracleOptions& opts) {
    const FockState state = build_state(input, cutoff, opts.max_leakage);
    CutoffValue out;
    out.leakage = std::visit([](const auto& s) { return s.leakage; }, state);
    if (opts.route == OracleRoute::sector) {
        std::vector<SectorColumns> sectors = sector_columns(state);
        out.leakage += drop_light_columns(sectors, opts.drop_budget);
        out.value = propagated_expectation(
            sectors, opts.direct, interferometer_evolution(gain.xi(), phi),
            [](const SectorChain& chain, std::size_t k) { return chain.parity_b(k); });
        return out;
    }
    const FockOperator mu = mu_operator_conjugated(gain, phi, cutoff, opts.direct);
    const complex v = dense_expectation(state, mu.matrix());
    out.imag_residue = std::abs(v.imag());
    if (out.imag_residue > opts.imag_tol) {
        throw NotConverged("parity expectation has imaginary residue " + short_number(v.imag()),
                           cutoff.n_max(), cutoff.n_max());
    }
    out.value = v.real();
    return out;
}

inline CutoffValue photons_at_cutoff(const InputState& input, const GainConfig& gain,
                                     const FockCutoff& cutoff, const OracleOptions& opts) {
    const FockState state = build_state(input, cutoff, opts.max_leakage);
    CutoffValue out;
    out.leakage = std::visit([](const auto& s) { return s.leakage; }, state);
    auto count = [](const SectorChain& chain, std::size_t k) {
        return static_cast<double>(chain.na(k) + chain.nb(k));
    };
    if (opts.route == OracleRoute::sector) {
        out.value = propagated_expectation(sector_columns(state), opts.direct,
                                           squeezer_evolution(gain.xi()), count);
        return out;
    }
    const FockOperator s = squeezer_direct(gain, cutoff, opts.direct);
    Eigen::MatrixXcd number = Eigen::MatrixXcd::Zero(s.matrix().rows(), s.matrix().cols());
    for (std::size_t i = 0; i < cutoff.dimension(); ++i) {
        const auto [na, nb] = cutoff.occupations(i);
        number(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = static_cast<double>(na + nb);
    }
    const complex v = dense_expectation(state, s.matrix().adjoint() * number * s.matrix());
    out.imag_residue = std::abs(v.imag());
    out.value = v.real();
    return out;
}

template <class AtCutoff>
OracleEvaluation converged_pair(const FockCutoff& cutoff, const OracleOptions& opts,
                                const char* what, const AtCutoff& at) {
    const FockCutoff next = cutoff.raised(opts.cutoff_step);
    const CutoffValue lo = at(cutoff);
    const CutoffValue hi = at(next);
    OracleEvaluation out{lo.value, hi.value, cutoff.n_max(), next.n_max(), lo.leakage,
                         std::max(lo.imag_residue, hi.imag_residue)};
    const double diff = std::abs(hi.value - lo.value);
    if (!(diff <= opts.convergence_tol)) {
        throw NotConverged(std::string(what) + " changes by " + short_number(diff) + " between n_max=" +
                               std::to_string(cutoff.n_max()) + " and " + std::to_string(next.n_max()),
                           cutoff.n_max(), next.n_max());
    }
    return out;
}

template <class AtCutoff>
OracleEvaluation auto_converged(const InputState& state, const OracleOptions& opts,
                                std::size_t dimension_cap, const char* what, const AtCutoff& at) {
    FockCutoff cutoff(minimal_cutoff(state, opts.max_leakage), dimension_cap);
    for (;;) {
        try {
            return converged_pair(cutoff, opts, what, at);
        } catch (const NotConverged& e) {
            const std::size_t side = cutoff.n_max() + 2 * opts.cutoff_step + 1;
            if (side * side > dimension_cap) {
                throw;
            }
            cutoff = cutoff.raised(opts.cutoff_step);
        }
    }
}

}  // namespace detail

/// Tr(rho_in mu) at `cutoff`, checked against cutoff + cutoff_step.
inline OracleEvaluation parity_expectation_detailed(const InputState& state, const GainConfig& gain,
                                                    double phi, const FockCutoff& cutoff,
                                                    const OracleOptions& opts = {}) {
    detail::require_finite(phi, "phi");
    return detail::converged_pair(cutoff, opts, "parity expectation", [&](const FockCutoff& c) {
        return detail::parity_at_cutoff(state, gain, phi, c, opts);
    });
}

inline double parity_expectation(const InputState& state, const GainConfig& gain, double phi,
                                 const FockCutoff& cutoff, const OracleOptions& opts = {}) {
    return parity_expectation_detailed(state, gain, phi, cutoff, opts).value;
}

/// Parity expectation at the smallest cutoff (stepping by cutoff_step from the
/// leakage minimum) that passes the convergence check.
inline OracleEvaluation parity_expectation_converged(const InputState& state, const GainConfig& gain,
                                                     double phi, const OracleOptions& opts = {},
                                                     std::size_t dimension_cap = default_dimension_cap) {
    detail::require_finite(phi, "phi");
    return detail::auto_converged(state, opts, dimension_cap, "parity expectation",
                                  [&](const FockCutoff& c) {
                                      return detail::parity_at_cutoff(state, gain, phi, c, opts);
                                  });
}

/// <Na + Nb> after the first amplifier, evaluated at `cutoff`.
inline double mean_photons_after_first_opa(const InputState& state, const GainConfig& gain,
                                           const FockCutoff& cutoff, const OracleOptions& opts = {}) {
    return detail::photons_at_cutoff(state, gain, cutoff, opts).value;
}

/// Mean photon number at `cutoff`, checked against cutoff + cutoff_step.
inline OracleEvaluation mean_photons_detailed(const InputState& state, const GainConfig& gain,
                                              const FockCutoff& cutoff, const OracleOptions& opts = {}) {
    return detail::converged_pair(cutoff, opts, "mean photon number", [&](const FockCutoff& c) {
        return detail::photons_at_cutoff(state, gain, c, opts);
    });
}

inline OracleEvaluation mean_photons_converged(const InputState& state, const GainConfig& gain,
                                               const OracleOptions& opts = {},
                                               std::size_t dimension_cap = default_dimension_cap) {
    return detail::auto_converged(state, opts, dimension_cap, "mean photon number",
                                  [&](const FockCutoff& c) {
                                      return detail::photons_at_cutoff(state, gain, c, opts);
                                  });
}

}  // namespace su11
