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

// Dense matrices of the squeezer, the interferometer unitary and the parity
// measurement operator, each built two ways: from the defining exponentials
// and from the normal-ordered factorizations.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "su11/fock/chain.hpp"
#include "su11/fock/space.hpp"
#include "su11/params.hpp"

namespace su11 {
namespace detail {

inline std::vector<Eigen::Index> sector_indices(const FockCutoff& cutoff, const SectorChain& chain,
                                                std::size_t block) {
    std::vector<Eigen::Index> idx(block);
    for (std::size_t k = 0; k < block; ++k) {
        idx[k] = static_cast<Eigen::Index>(cutoff.index(chain.na(k), chain.nb(k)));
    }
    return idx;
}

inline std::size_t safe_window(const FockCutoff& cutoff, std::optional<std::size_t> window) {
    return window.value_or(cutoff.n_max() / 2);
}

/// Assembles a sector-diagonal operator from `block_of(chain, block)`.
template <class BlockOf>
FockOperator assemble_by_sector(const FockCutoff& cutoff, BlockOf&& block_of) {
    FockOperator out = FockOperator::zero(cutoff);
    const auto n = static_cast<long>(cutoff.n_max());
    for (long delta = -n; delta <= n; ++delta) {
        const std::size_t block = sector_block_size(cutoff.n_max(), delta);
        const SectorChain chain{delta, block};
        const Eigen::MatrixXcd m = block_of(chain, block);
        const auto idx = sector_indices(cutoff, chain, block);
        for (std::size_t j = 0; j < block; ++j) {
            for (std::size_t i = 0; i < block; ++i) {
                out.matrix()(idx[i], idx[j]) =
                    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
    }
    return out;
}

/// exp(c a+b+) on the first `block` chain levels. The truncated shift is
/// nilpotent, so column j holds the finite series c^m/m! (K+)^m |j>.
inline Eigen::MatrixXcd raising_exponential(const SectorChain& chain, std::size_t block, complex c) {
    const auto b = static_cast<Eigen::Index>(block);
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(b, b);
    for (std::size_t j = 0; j < block; ++j) {
        complex term = 1.0;
        e(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = term;
        for (std::size_t m = 1; j + m < block; ++m) {
            term *= c * chain.hopping(j + m - 1) / static_cast<double>(m);
            if (term == complex{}) {
                break;
            }
            e(static_cast<Eigen::Index>(j + m), static_cast<Eigen::Index>(j)) = term;
        }
    }
    return e;
}

/// base^0 .. base^(count-1) by repeated multiplication.
inline std::vector<complex> integer_powers(complex base, std::size_t count) {
    std::vector<complex> p(count);
    complex v = 1.0;
    for (std::size_t n = 0; n < count; ++n) {
        p[n] = v;
        v *= base;
    }
    return p;
}

/// prefactor exp(up a+b+) base_a^Na base_b^Nb exp(down ab) on one sector.
inline Eigen::MatrixXcd normal_ordered_block(const SectorChain& chain, std::size_t block,
                                             complex prefactor, complex up, complex base_a,
                                             complex base_b, complex down,
                                             std::size_t n_max) {
    const auto pa = integer_powers(base_a, n_max + 1);
    const auto pb = integer_powers(base_b, n_max + 1);
    Eigen::VectorXcd middle(static_cast<Eigen::Index>(block));
    for (std::size_t k = 0; k < block; ++k) {
        middle(static_cast<Eigen::Index>(k)) = pa[chain.na(k)] * pb[chain.nb(k)];
    }
    // ab lowers along the chain with the same real weights, so exp(down ab) is
    // the transpose of the raising series.
    const Eigen::MatrixXcd lower = raising_exponential(chain, block, down).transpose();
    return prefactor * raising_exponential(chain, block, up) * middle.asDiagonal() * lower;
}

/// Basis columns of one sector after `evolution`. Window columns run on the
/// padded chain, the rest on the bare block.
struct BasisPropagation {
    std::vector<Eigen::Index> window_cols;
    std::vector<Eigen::Index> edge_cols;
    ChainPropagation window;
    ChainPropagation edge;
};

template <class Evolution>
BasisPropagation propagate_basis(const FockCutoff& cutoff, const SectorChain& chain,
                                 std::size_t block, const DirectRouteOptions& opts,
                                 const Evolution& evolution) {
    const std::size_t window = safe_window(cutoff, opts.window);
    BasisPropagation out;
    for (std::size_t k = 0; k < block; ++k) {
        (chain.na(k) + chain.nb(k) <= window ? out.window_cols : out.edge_cols)
            .push_back(static_cast<Eigen::Index>(k));
    }
    auto unit_columns = [&](const std::vector<Eigen::Index>& cols) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(block),
                                                    static_cast<Eigen::Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            m(cols[c], static_cast<Eigen::Index>(c)) = 1.0;
        }
        return m;
    };
    DirectRouteOptions edge_opts = opts;
    edge_opts.padding = 0;
    out.window = propagate_sector(chain.delta, unit_columns(out.window_cols),
                                  out.window_cols.empty() ? edge_opts : opts, evolution);
    out.edge = propagate_sector(chain.delta, unit_columns(out.edge_cols), edge_opts, evolution);
    return out;
}

/// Block rows of the propagated basis, i.e. the operator restricted to the sector.
inline Eigen::MatrixXcd basis_block(const BasisPropagation& p, std::size_t block) {
    const auto b = static_cast<Eigen::Index>(block);
    Eigen::MatrixXcd m(b, b);
    for (std::size_t c = 0; c < p.window_cols.size(); ++c) {
        m.col(p.window_cols[c]) = p.window.columns.col(static_cast<Eigen::Index>(c)).head(b);
    }
    for (std::size_t c = 0; c < p.edge_cols.size(); ++c) {
        m.col(p.edge_cols[c]) = p.edge.columns.col(static_cast<Eigen::Index>(c)).head(b);
    }
    return m;
}

inline Eigen::VectorXd parity_signs(const SectorChain& chain) {
    Eigen::VectorXd sign(static_cast<Eigen::Index>(chain.length));
    for (std::size_t k = 0; k < chain.length; ++k) {
        sign(static_cast<Eigen::Index>(k)) = chain.parity_b(k);
    }
    return sign;
}

}  // namespace detail

/// I (x) (-1)^Nb.
inline FockOperator parity_b_operator(const FockCutoff& cutoff) {
    FockOperator out = FockOperator::zero(cutoff);
    for (std::size_t na = 0; na <= cutoff.n_max(); ++na) {
        for (std::size_t nb = 0; nb <= cutoff.n_max(); ++nb) {
            const auto i = static_cast<Eigen::Index>(cutoff.index(na, nb));
            out.matrix()(i, i) = nb % 2 == 0 ? 1.0 : -1.0;
        }
    }
    return out;
}

/// exp(xi a+b+ - xi* ab) restricted to the cutoff square.
inline FockOperator squeezer_direct(const GainConfig& gain, const FockCutoff& cutoff,
                                    const DirectRouteOptions& opts = {}) {
    return detail::assemble_by_sector(cutoff, [&](const detail::SectorChain& chain, std::size_t block) {
        return detail::basis_block(
            detail::propagate_basis(cutoff, chain, block, opts, detail::squeezer_evolution(gain.xi())),
            block);
    });
}

/// sech g exp(e^{i theta} tanh g a+b+) (sech g)^(Na+Nb) exp(-e^{-i theta} tanh g ab).
inline FockOperator squeezer_factored(const GainConfig& gain, const FockCutoff& cutoff) {
    const double sech = 1.0 / std::cosh(gain.g());
    const complex t = std::polar(std::tanh(gain.g()), gain.theta());
    return detail::assemble_by_sector(cutoff, [&](const detail::SectorChain& chain, std::size_t block) {
        return detail::normal_ordered_block(chain, block, sech, t, sech, sech, -std::conj(t),
                                            cutoff.n_max());
    });
}

/// S(-xi) (e^{i phi Na} (x) I) S(xi) restricted to the cutoff square.
inline FockOperator interferometer_unitary_direct(const GainConfig& gain, double phi,
                                                  const FockCutoff& cutoff,
                                                  const DirectRouteOptions& opts = {}) {
    detail::require_finite(phi, "phi");
    return detail::assemble_by_sector(cutoff, [&](const detail::SectorChain& chain, std::size_t block) {
        return detail::basis_block(
            detail::propagate_basis(cutoff, chain, block, opts,
                                    detail::interferometer_evolution(gain.xi(), phi)),
            block);
    });
}

/// prefactor_U exp(e^{i theta} tanh g A a+b+) (1+A)^Na (1+B)^Nb exp(e^{-i theta} tanh g A ab).
inline FockOperator interferometer_unitary_normal_ordered(const GainConfig& gain, double phi,
                                                          const FockCutoff& cutoff) {
    const InterferometerCoefficients k = interferometer_coeffs(gain, phi);
    const double th = std::tanh(gain.g());
    const complex up = std::polar(th, gain.theta()) * k.A;
    const complex down = std::polar(th, -gain.theta()) * k.A;
    return detail::assemble_by_sector(cutoff, [&](const detail::SectorChain& chain, std::size_t block) {
        return detail::normal_ordered_block(chain, block, k.prefactor_U, up, 1.0 + k.A, 1.0 + k.B,
                                            down, cutoff.n_max());
    });
}

/// U+ (I (x) Pi_b) U on the cutoff square, with U propagated exactly.
inline FockOperator mu_operator_conjugated(const GainConfig& gain, double phi,
                                           const FockCutoff& cutoff,
                                           const DirectRouteOptions& opts = {}) {
    detail::require_finite(phi, "phi");
    return detail::assemble_by_sector(cutoff, [&](const detail::SectorChain& chain, std::size_t block) {
        const auto p = detail::propagate_basis(cutoff, chain, block, opts,
                                               detail::interferometer_evolution(gain.xi(), phi));
        const Eigen::MatrixXcd& vw = p.window.columns;
        const Eigen::MatrixXcd& ve = p.edge.columns;
        const Eigen::VectorXd sw = detail::parity_signs(p.window.chain);
        const Eigen::VectorXd se = detail::parity_signs(p.edge.chain);
        const auto b = static_cast<Eigen::Index>(block);

        // window entries use the full padded columns; anything touching an
        // edge column only sees the block
        const Eigen::MatrixXcd ww = vw.adjoint() * sw.asDiagonal() * vw;
        const Eigen::MatrixXcd ee = ve.adjoint() * se.asDiagonal() * ve;
        const Eigen::MatrixXcd we = vw.topRows(b).adjoint() * se.head(b).asDiagonal() * ve;
        Eigen::MatrixXcd mu(b, b);
        const auto& wi = p.window_cols;
        const auto& ei = p.edge_cols;
        for (std::size_t c = 0; c < wi.size(); ++c) {
            for (std::size_t r = 0; r < wi.size(); ++r) {
                mu(wi[r], wi[c]) = ww(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
            for (std::size_t r = 0; r < ei.size(); ++r) {
                const complex v = we(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(r));
                mu(wi[c], ei[r]) = v;
                mu(ei[r], wi[c]) = std::conj(v);
            }
        }
        for (std::size_t c = 0; c < ei.size(); ++c) {
            for (std::size_t r = 0; r < ei.size(); ++r) {
                mu(ei[r], ei[c]) = ee(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
        }
        return mu;
    });
}

/// prefactor exp(M* a+b+) (1-C)^Na (1-D)^Nb exp(M ab).
inline FockOperator mu_operator_normal_ordered(const GainConfig& gain, double phi,
                                               const FockCutoff& cutoff) {
    const MeasurementCoefficients k = measurement_coeffs(gain, phi);
    return detail::assemble_by_sector(cutoff, [&](const detail::SectorChain& chain, std::size_t block) {
        return detail::normal_ordered_block(chain, block, k.prefactor, std::conj(k.M), 1.0 - k.C,
                                            1.0 - k.D, k.M, cutoff.n_max());
    });
}

/// max |x_ij - y_ij| over rows and columns with na + nb <= window
/// (default n_max / 2).
inline double safe_block_max_diff(const FockOperator& x, const FockOperator& y,
                                  std::optional<std::size_t> window = std::nullopt) {
    if (!(x.cutoff() == y.cutoff())) {
        throw DomainError("operator cutoffs differ");
    }
    const FockCutoff& c = x.cutoff();
    const std::size_t w = detail::safe_window(c, window);
    std::vector<Eigen::Index> safe;
    for (std::size_t i = 0; i < c.dimension(); ++i) {
        const auto [na, nb] = c.occupations(i);
        if (na + nb <= w) {
            safe.push_back(static_cast<Eigen::Index>(i));
        }
    }
    double worst = 0.0;
    for (Eigen::Index j : safe) {
        for (Eigen::Index i : safe) {
            worst = std::max(worst, std::abs(x.matrix()(i, j) - y.matrix()(i, j)));
        }
    }
    return worst;
}

/// max |(U+U - I)_ij| on the safe sub-block.
inline double safe_block_unitarity_residual(const FockOperator& u,
                                            std::optional<std::size_t> window = std::nullopt) {
    const FockOperator uu = u.adjoint() * u;
    return safe_block_max_diff(uu, FockOperator::identity(u.cutoff()), window);
}

/// max |O - O+|.
inline double hermiticity_residual(const Eigen::MatrixXcd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace su11
