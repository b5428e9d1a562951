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

// Sector chains and the exact-exponential propagator of the direct route.
//
// Every operator built from a+b+, ab, Na and Nb conserves delta = na - nb, so
// the two-mode space splits into independent chains
//   |k + max(delta, 0)>_a |k + max(-delta, 0)>_b,   k = 0, 1, 2, ...
// on which K+ = a+b+ is a weighted shift with <k+1|K+|k> = sqrt((k+|delta|+1)(k+1)).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "su11/errors.hpp"

namespace su11 {

/// Controls the working space of the direct (exponential) route.
///
/// With `padding` unset each sector chain starts `initial_padding` levels past
/// the cutoff and the exponential is applied in steps; whenever a step leaves
/// more than `tail_tolerance` (column norm times tail norm) in the outer rows of
/// the chain, the chain is lengthened and the step redone. A fixed padding applies
/// the exponential once on that length; padding 0 is the plain exponential of
/// the generator truncated at n_max. Dense operators propagate only the
/// columns with na + nb <= window (default n_max / 2) on the growing chain;
/// the others get the plain truncated exponential.
struct DirectRouteOptions {
    std::optional<std::size_t> padding;
    std::optional<std::size_t> window;
    double tail_tolerance = 1e-14;
    std::size_t initial_padding = 16;
    double step_argument = 96.0;  ///< Chebyshev argument g * rho per step
    std::size_t max_chain_length = std::size_t{1} << 15;

    static DirectRouteOptions literal() {
        DirectRouteOptions o;
        o.padding = 0;
        return o;
    }
};

namespace detail {

struct SectorChain {
    long delta = 0;
    std::size_t length = 0;

    [[nodiscard]] std::size_t offset() const noexcept {
        return static_cast<std::size_t>(std::labs(delta));
    }
    [[nodiscard]] std::size_t na(std::size_t k) const noexcept {
        return delta >= 0 ? k + offset() : k;
    }
    [[nodiscard]] std::size_t nb(std::size_t k) const noexcept {
        return delta >= 0 ? k : k + offset();
    }
    /// <k+1| a+b+ |k>
    [[nodiscard]] double hopping(std::size_t k) const noexcept {
        return std::sqrt(static_cast<double>(k + offset() + 1) * static_cast<double>(k + 1));
    }
    [[nodiscard]] double parity_b(std::size_t k) const noexcept {
        return nb(k) % 2 == 0 ? 1.0 : -1.0;
    }
};

/// Number of chain levels of sector `delta` inside the n_max x n_max square.
inline std::size_t sector_block_size(std::size_t n_max, long delta) {
    return n_max + 1 - static_cast<std::size_t>(std::labs(delta));
}

/// J_0(x) .. J_kmax(x) by Miller's backward recurrence, normalized with
/// J_0 + 2 sum_k J_2k = 1.
inline std::vector<double> bessel_j_sequence(double x, std::size_t kmax) {
    std::vector<double> j(kmax + 1, 0.0);
    if (!(x > 1e-200)) {
        j[0] = 1.0;
        return j;
    }
    const auto top = static_cast<double>(std::max<std::size_t>(kmax, static_cast<std::size_t>(std::ceil(x))));
    auto m = static_cast<std::size_t>(top + 20.0 + std::sqrt(40.0 * top));
    m += m % 2;

    double next = 0.0;
    double cur = 1.0;
    double sum = 2.0 * cur;
    for (std::size_t k = m; k >= 1; --k) {
        const double prev = (2.0 * static_cast<double>(k) / x) * cur - next;
        next = cur;
        cur = prev;
        const std::size_t idx = k - 1;
        if (idx <= kmax) {
            j[idx] = cur;
        }
        if (idx % 2 == 0) {
            sum += idx == 0 ? cur : 2.0 * cur;
        }
        if (std::abs(cur) > 1e250) {
            constexpr double scale = 1e-250;
            cur *= scale;
            next *= scale;
            sum *= scale;
            for (std::size_t i = idx; i <= kmax; ++i) {
                j[i] *= scale;
            }
        }
    }
    for (double& v : j) {
        v /= sum;
    }
    return j;
}

/// exp(xi K+ - xi* K-) X on the chain truncated at X.rows() levels.
///
/// The generator equals F (-i g T) F^-1 with F_k = e^{ik(theta + pi/2)} and T
/// the real symmetric tridiagonal hopping matrix, so the exponential is the
/// Chebyshev (Jacobi-Anger) series e^{-i tau x} = J_0(tau) + 2 sum (-i)^k J_k(tau) T_k(x)
/// in x = T / rho, tau = g rho, rho a Gershgorin bound on the spectrum of T.
inline Eigen::MatrixXcd chain_squeeze(const SectorChain& chain, std::complex<double> xi,
                                      const Eigen::MatrixXcd& x) {
    using cd = std::complex<double>;
    const auto len = x.rows();
    const auto cols = x.cols();
    const double g = std::abs(xi);
    if (g == 0.0 || len < 2 || cols == 0) {
        return x;
    }

    std::vector<double> h(static_cast<std::size_t>(len - 1));
    double rho = 0.0;
    for (Eigen::Index k = 0; k + 1 < len; ++k) {
        h[static_cast<std::size_t>(k)] = chain.hopping(static_cast<std::size_t>(k));
    }
    for (Eigen::Index k = 0; k < len; ++k) {
        const double left = k > 0 ? h[static_cast<std::size_t>(k - 1)] : 0.0;
        const double right = k + 1 < len ? h[static_cast<std::size_t>(k)] : 0.0;
        rho = std::max(rho, left + right);
    }
    for (double& v : h) {
        v /= rho;
    }
    const double tau = g * rho;

    // gauge phases F_k
    const cd step = std::polar(1.0, std::arg(xi) + 0.5 * std::numbers::pi);
    Eigen::VectorXcd gauge(len);
    gauge(0) = 1.0;
    for (Eigen::Index k = 1; k < len; ++k) {
        gauge(k) = gauge(k - 1) * step;
    }

    const auto kmax = static_cast<std::size_t>(tau + 10.0 * std::cbrt(tau) + 40.0);
    const std::vector<double> jk = bessel_j_sequence(tau, kmax);
    std::size_t terms = kmax;
    while (terms > 1 && static_cast<double>(terms) > tau && std::abs(jk[terms]) < 1e-18) {
        --terms;
    }

    Eigen::MatrixXcd prev = gauge.conjugate().asDiagonal() * x;
    Eigen::MatrixXcd cur(len, cols);
    Eigen::MatrixXcd acc(len, cols);

    // The recurrence is real, so columns are walked as interleaved (re, im)
    // doubles. The coefficients 2 (-i)^n J_n are real for even n and
    // imaginary for odd n.
    const double* hp = h.data();
    const Eigen::Index n2 = 2 * len;

    auto shift = [&](const double* in, Eigen::Index t) {
        const Eigen::Index k = t / 2;
        double v = 0.0;
        if (k > 0) {
            v += hp[k - 1] * in[t - 2];
        }
        if (k + 1 < len) {
            v += hp[k] * in[t + 2];
        }
        return v;
    };

    auto accumulate = [](double* a, const double* w, Eigen::Index n2, std::size_t n, double jn) {
        const double c = 2.0 * jn;
        switch (n % 4) {
            case 0:
            case 2: {
                const double r = n % 4 == 0 ? c : -c;
                for (Eigen::Index t = 0; t < n2; ++t) {
                    a[t] += r * w[t];
                }
                break;
            }
            default: {
                // i m w: (re, im) += (-m w_im, m w_re)
                const double m = n % 4 == 1 ? -c : c;
                for (Eigen::Index t = 0; t < n2; t += 2) {
                    a[t] -= m * w[t + 1];
                    a[t + 1] += m * w[t];
                }
                break;
            }
        }
    };

    for (Eigen::Index c = 0; c < cols; ++c) {
        const double* p = reinterpret_cast<const double*>(prev.col(c).data());
        double* q = reinterpret_cast<double*>(cur.col(c).data());
        double* a = reinterpret_cast<double*>(acc.col(c).data());
        for (Eigen::Index t = 0; t < n2; ++t) {
            q[t] = shift(p, t);
            a[t] = jk[0] * p[t];
        }
        accumulate(a, q, n2, 1, jk[1]);
    }

    // T_{n+1} = 2 x T_n - T_{n-1}, written over the T_{n-1} buffer
    for (std::size_t n = 2; n <= terms; ++n) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            const double* q = reinterpret_cast<const double*>(cur.col(c).data());
            double* p = reinterpret_cast<double*>(prev.col(c).data());
            double* a = reinterpret_cast<double*>(acc.col(c).data());
            p[0] = 2.0 * hp[0] * q[2] - p[0];
            p[1] = 2.0 * hp[0] * q[3] - p[1];
            for (Eigen::Index k = 1; k + 1 < len; ++k) {
                const double lo = hp[k - 1];
                const double hi = hp[k];
                const Eigen::Index t = 2 * k;
                p[t] = 2.0 * (lo * q[t - 2] + hi * q[t + 2]) - p[t];
                p[t + 1] = 2.0 * (lo * q[t - 1] + hi * q[t + 3]) - p[t + 1];
            }
            const Eigen::Index t = n2 - 2;
            p[t] = 2.0 * hp[len - 2] * q[t - 2] - p[t];
            p[t + 1] = 2.0 * hp[len - 2] * q[t - 1] - p[t + 1];
            accumulate(a, p, n2, n, jk[n]);
        }
        prev.swap(cur);
    }

    return gauge.asDiagonal() * acc;
}

/// Gershgorin bound on the spectrum of the hopping matrix of `chain`.
inline double chain_spectral_bound(const SectorChain& chain) {
    double rho = 0.0;
    for (std::size_t k = 0; k < chain.length; ++k) {
        const double left = k > 0 ? chain.hopping(k - 1) : 0.0;
        const double right = k + 1 < chain.length ? chain.hopping(k) : 0.0;
        rho = std::max(rho, left + right);
    }
    return rho;
}

/// Columns living on one sector chain that grows as the evolution spreads them.
class WorkingChain {
public:
    WorkingChain(long delta, const Eigen::MatrixXcd& initial, const DirectRouteOptions& opts)
        : delta_(delta), block_(static_cast<std::size_t>(initial.rows())), opts_(opts) {
        const std::size_t pad = opts.padding.value_or(opts.initial_padding);
        x_ = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(block_ + pad), initial.cols());
        x_.topRows(initial.rows()) = initial;
    }

    [[nodiscard]] SectorChain chain() const {
        return SectorChain{delta_, static_cast<std::size_t>(x_.rows())};
    }
    [[nodiscard]] std::size_t block_rows() const noexcept { return block_; }
    [[nodiscard]] const Eigen::MatrixXcd& columns() const noexcept { return x_; }

    /// X <- exp(xi K+ - xi* K-) X
    void squeeze(std::complex<double> xi) {
        if (opts_.padding || x_.cols() == 0) {
            x_ = chain_squeeze(chain(), xi, x_);
            return;
        }
        while (tail(x_) > opts_.tail_tolerance) {
            grow();
        }
        const double theta = std::arg(xi);
        double remaining = std::abs(xi);
        while (remaining > 0.0) {
            const double limit = opts_.step_argument / chain_spectral_bound(chain());
            const bool last = limit >= remaining;
            const double dt = last ? remaining : limit;
            Eigen::MatrixXcd y = chain_squeeze(chain(), std::polar(dt, theta), x_);
            if (tail(y) > opts_.tail_tolerance) {
                grow();
                continue;
            }
            x_ = std::move(y);
            remaining = last ? 0.0 : remaining - dt;
        }
    }

    /// X <- e^{i phi Na} X
    void phase_a(double phi) {
        const SectorChain c = chain();
        for (Eigen::Index k = 0; k < x_.rows(); ++k) {
            x_.row(k) *= std::polar(1.0, phi * static_cast<double>(c.na(static_cast<std::size_t>(k))));
        }
    }

private:
    /// Largest |column| * |tail of column| over the outer rows. A column's
    /// error in a quadratic expectation is bounded by twice this product, so
    /// light columns may reach further out before the chain has to grow.
    [[nodiscard]] double tail(const Eigen::MatrixXcd& y) const {
        const Eigen::Index reach = 2 * static_cast<Eigen::Index>(std::ceil(opts_.step_argument));
        const Eigen::Index q = std::min<Eigen::Index>(
            y.rows(), std::max<Eigen::Index>(8, std::min<Eigen::Index>(y.rows() / 4, reach)));
        double worst = 0.0;
        for (Eigen::Index c = 0; c < y.cols(); ++c) {
            worst = std::max(worst, y.col(c).tail(q).norm() * y.col(c).norm());
        }
        return worst;
    }

    void grow() {
        const auto len = static_cast<std::size_t>(x_.rows());
        const auto reach = static_cast<std::size_t>(std::ceil(opts_.step_argument));
        const std::size_t next = len + std::max<std::size_t>(8, std::min(len / 2, 4 * reach));
        if (next > opts_.max_chain_length) {
            throw NotConverged("direct-route working chain for sector " + std::to_string(delta_) +
                                   " exceeds " + std::to_string(opts_.max_chain_length) + " levels",
                               block_, next);
        }
        const Eigen::Index old = x_.rows();
        x_.conservativeResize(static_cast<Eigen::Index>(next), Eigen::NoChange);
        x_.bottomRows(x_.rows() - old).setZero();
    }

    long delta_;
    std::size_t block_;
    DirectRouteOptions opts_;
    Eigen::MatrixXcd x_;
};

/// Propagated columns of one sector.
struct ChainPropagation {
    Eigen::MatrixXcd columns;  ///< chain.length rows
    SectorChain chain;
    std::size_t block_rows = 0;  ///< levels inside the n_max square
};

/// Embeds `initial` (block rows x c) in a working chain and runs `evolve` on it.
template <class Evolve>
ChainPropagation propagate_sector(long delta, const Eigen::MatrixXcd& initial,
                                  const DirectRouteOptions& opts, const Evolve& evolve) {
    WorkingChain w(delta, initial, opts);
    evolve(w);
    return ChainPropagation{w.columns(), w.chain(), w.block_rows()};
}

/// S(xi) X.
inline auto squeezer_evolution(std::complex<double> xi) {
    return [xi](WorkingChain& w) { w.squeeze(xi); };
}

/// S(-xi) (e^{i phi Na} (x) I) S(xi) X.
inline auto interferometer_evolution(std::complex<double> xi, double phi) {
    return [xi, phi](WorkingChain& w) {
        w.squeeze(xi);
        w.phase_a(phi);
        w.squeeze(-xi);
    };
}

}  // namespace detail
}  // namespace su11
