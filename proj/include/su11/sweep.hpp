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

// Phase grids, parity and sensitivity curves, and the closed-form versus
// oracle comparison table.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "su11/closed_form.hpp"
#include "su11/errors.hpp"
#include "su11/fock/oracle.hpp"
#include "su11/input_state.hpp"
#include "su11/params.hpp"

namespace su11 {

/// Uniform grid of `points` phases from start to stop inclusive.
class PhaseGrid {
public:
    PhaseGrid(double start, double stop, std::size_t points)
        : start_(start), stop_(stop), points_(points) {
        detail::require_finite(start, "grid start");
        detail::require_finite(stop, "grid stop");
        if (!(start < stop)) {
            throw DomainError("grid start must be below grid stop");
        }
        if (points < 2) {
            throw DomainError("grid needs at least 2 points");
        }
    }

    [[nodiscard]] double start() const noexcept { return start_; }
    [[nodiscard]] double stop() const noexcept { return stop_; }
    [[nodiscard]] std::size_t points() const noexcept { return points_; }
    [[nodiscard]] double spacing() const noexcept {
        return (stop_ - start_) / static_cast<double>(points_ - 1);
    }

    [[nodiscard]] double at(std::size_t i) const noexcept {
        if (i + 1 == points_) {
            return stop_;
        }
        return start_ + static_cast<double>(i) * spacing();
    }

    [[nodiscard]] std::vector<double> values() const {
        std::vector<double> v(points_);
        for (std::size_t i = 0; i < points_; ++i) {
            v[i] = at(i);
        }
        return v;
    }

    friend bool operator==(const PhaseGrid&, const PhaseGrid&) = default;

private:
    double start_;
    double stop_;
    std::size_t points_;
};

struct ParityCurve {
    PhaseGrid grid;
    InputState state;
    GainConfig gain;
    std::vector<double> values;
};

struct SensitivityPoint {
    double phi = 0.0;
    double parity = 0.0;
    double delta_phi = 0.0;
};

struct SkippedPoint {
    double phi = 0.0;
    std::string reason;
};

struct SensitivityResult {
    std::vector<SensitivityPoint> curve;
    std::vector<SkippedPoint> skipped;
    double phi_opt = 0.0;
    double delta_phi_min = 0.0;
    double n_bar = 0.0;
    double snl = 0.0;
    double hl = 0.0;
    bool below_hl = false;
    std::size_t photon_n_max = 0;  ///< cutoff at which n_bar was accepted
};

struct SweepOptions {
    double fd_step = default_fd_step;
    unsigned threads = 1;
    std::optional<std::size_t> n_max;  ///< unset: smallest converged cutoff
    std::size_t dimension_cap = default_dimension_cap;
    OracleOptions oracle;
};

namespace detail {

/// fn(i) for i in [0, n) over up to `threads` workers. Each index is written
/// by one worker only, so results do not depend on the thread count.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, const Fn& fn) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) {
                    fn(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace detail

/// Closed-form parity at every grid point.
inline ParityCurve parity_curve(const InputState& state, const GainConfig& gain, const PhaseGrid& grid,
                                unsigned threads = 1) {
    ParityCurve out{grid, state, gain, std::vector<double>(grid.points())};
    detail::parallel_for(grid.points(), threads, [&](std::size_t i) {
        out.values[i] = parity_signal(state, gain, grid.at(i)).value;
    });
    return out;
}

/// Oracle mean photon number inside the interferometer.
inline OracleEvaluation interferometer_photons(const InputState& state, const GainConfig& gain,
                                               const SweepOptions& opts) {
    if (opts.n_max) {
        return mean_photons_detailed(state, gain, FockCutoff(*opts.n_max, opts.dimension_cap),
                                     opts.oracle);
    }
    return mean_photons_converged(state, gain, opts.oracle, opts.dimension_cap);
}

/// Error-propagation sensitivity over the grid; stationary points are skipped.
inline SensitivityResult sensitivity_curve(const InputState& state, const GainConfig& gain,
                                           const PhaseGrid& grid, const SweepOptions& opts = {}) {
    struct Slot {
        std::optional<SensitivityPoint> point;
        std::optional<SkippedPoint> skipped;
    };
    std::vector<Slot> slots(grid.points());
    detail::parallel_for(grid.points(), opts.threads, [&](std::size_t i) {
        const double phi = grid.at(i);
        try {
            const double dphi = phase_sensitivity(state, gain, phi, opts.fd_step);
            slots[i].point = SensitivityPoint{phi, parity_signal(state, gain, phi).value, dphi};
        } catch (const DerivativeVanishes&) {
            slots[i].skipped = SkippedPoint{phi, "stationary"};
        }
    });

    SensitivityResult out;
    for (const Slot& s : slots) {
        if (s.point) {
            out.curve.push_back(*s.point);
        } else {
            out.skipped.push_back(*s.skipped);
        }
    }
    if (out.curve.empty()) {
        throw EmptyResult("every grid point is stationary");
    }
    const auto best = std::min_element(out.curve.begin(), out.curve.end(),
                                       [](const SensitivityPoint& a, const SensitivityPoint& b) {
                                           return a.delta_phi < b.delta_phi;
                                       });
    out.phi_opt = best->phi;
    out.delta_phi_min = best->delta_phi;

    const OracleEvaluation photons = interferometer_photons(state, gain, opts);
    out.n_bar = photons.value;
    out.photon_n_max = photons.n_max;
    constexpr double inf = std::numeric_limits<double>::infinity();
    out.snl = out.n_bar > 0.0 ? 1.0 / std::sqrt(out.n_bar) : inf;
    out.hl = out.n_bar > 0.0 ? 1.0 / out.n_bar : inf;
    out.below_hl = out.delta_phi_min < out.hl;
    return out;
}

struct VerifyRow {
    double phi = 0.0;
    double closed_form = 0.0;
    double oracle = 0.0;
    double abs_diff = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    /// Fock inputs only: the magnitude-only form without the (-1)^n factor.
    std::vector<VerifyRow> printed_form_rows;
    double tolerance = 1e-6;
    double max_diff = 0.0;
    double printed_form_max_diff = 0.0;
    std::size_t n_max = 0;
    std::size_t companion_n_max = 0;

    [[nodiscard]] bool passed() const noexcept { return max_diff <= tolerance; }
};

/// Closed form against the oracle at every grid point.
inline VerifyReport verify_closed_form(const InputState& state, const GainConfig& gain,
                                       const PhaseGrid& grid, const SweepOptions& opts = {},
                                       double tolerance = 1e-6) {
    std::vector<OracleEvaluation> evals(grid.points());
    detail::parallel_for(grid.points(), opts.threads, [&](std::size_t i) {
        const double phi = grid.at(i);
        evals[i] = opts.n_max ? parity_expectation_detailed(
                                    state, gain, phi, FockCutoff(*opts.n_max, opts.dimension_cap),
                                    opts.oracle)
                              : parity_expectation_converged(state, gain, phi, opts.oracle,
                                                             opts.dimension_cap);
    });

    VerifyReport out;
    out.tolerance = tolerance;
    const auto* fock = std::get_if<VacuumFock>(&state);
    for (std::size_t i = 0; i < grid.points(); ++i) {
        const double phi = grid.at(i);
        auto row = [&](double closed) {
            const double diff = std::abs(closed - evals[i].value);
            return VerifyRow{phi, closed, evals[i].value, diff, diff <= tolerance};
        };
        out.rows.push_back(row(parity_signal(state, gain, phi).value));
        out.max_diff = std::max(out.max_diff, out.rows.back().abs_diff);
        if (fock) {
            out.printed_form_rows.push_back(row(parity_vacuum_fock_unsigned(fock->n(), gain, phi).value));
            out.printed_form_max_diff =
                std::max(out.printed_form_max_diff, out.printed_form_rows.back().abs_diff);
        }
        out.n_max = std::max(out.n_max, evals[i].n_max);
        out.companion_n_max = std::max(out.companion_n_max, evals[i].companion_n_max);
    }
    return out;
}

}  // namespace su11
