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

#include <cmath>

#include <Eigen/Dense>

#include "su11/fock/space.hpp"

namespace su11 {

struct LadderOperators {
    FockOperator a;
    FockOperator a_dag;
    FockOperator b;
    FockOperator b_dag;
};

/// a|n> = sqrt(n)|n-1> on one mode of dimension n_max+1.
inline Eigen::MatrixXcd single_mode_annihilation(std::size_t n_max) {
    const auto d = static_cast<Eigen::Index>(n_max + 1);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index n = 1; n < d; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

namespace detail {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
    Eigen::MatrixXcd out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        }
    }
    return out;
}

}  // namespace detail

inline LadderOperators ladder_ops(const FockCutoff& cutoff) {
    const Eigen::MatrixXcd a1 = single_mode_annihilation(cutoff.n_max());
    const auto d = static_cast<Eigen::Index>(cutoff.mode_dimension());
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    FockOperator a(cutoff, detail::kron(a1, id));
    FockOperator b(cutoff, detail::kron(id, a1));
    auto a_dag = a.adjoint();
    auto b_dag = b.adjoint();
    return {std::move(a), std::move(a_dag), std::move(b), std::move(b_dag)};
}

}  // namespace su11
