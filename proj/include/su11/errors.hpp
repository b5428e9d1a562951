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
#include <cstdio>
#include <stdexcept>
#include <string>

namespace su11 {
namespace detail {

inline std::string short_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace detail

/// Invalid argument or non-finite input to a numeric routine.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The phase derivative of the parity signal is below the floor, so the
/// error-propagation sensitivity diverges.
class DerivativeVanishes : public std::runtime_error {
public:
    DerivativeVanishes(double phi, double derivative)
        : std::runtime_error("parity derivative vanishes at phi=" + detail::short_number(phi) +
                             " (|dP/dphi|=" + detail::short_number(std::abs(derivative)) + ")"),
          phi_(phi),
          derivative_(derivative) {}

    [[nodiscard]] double phi() const noexcept { return phi_; }
    [[nodiscard]] double derivative() const noexcept { return derivative_; }

private:
    double phi_;
    double derivative_;
};

/// Requested two-mode Fock dimension exceeds the configured memory cap.
class CutoffCapExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A state cannot be represented at the requested cutoff: the probability
/// mass lost to truncation exceeds the allowed leakage.
class TruncationLeakage : public std::runtime_error {
public:
    TruncationLeakage(double leakage, double allowed, std::size_t n_max)
        : std::runtime_error("truncation leakage " + detail::short_number(leakage) + " exceeds " +
                             detail::short_number(allowed) + " at n_max=" + std::to_string(n_max)),
          leakage_(leakage) {}

    [[nodiscard]] double leakage() const noexcept { return leakage_; }

private:
    double leakage_;
};

/// Two successive cutoffs disagree by more than the convergence tolerance, or
/// the padded working space hit its length limit.
class NotConverged : public std::runtime_error {
public:
    NotConverged(const std::string& what, std::size_t previous_n_max, std::size_t last_n_max)
        : std::runtime_error(what), previous_(previous_n_max), last_(last_n_max) {}

    [[nodiscard]] std::size_t previous_n_max() const noexcept { return previous_; }
    [[nodiscard]] std::size_t last_n_max() const noexcept { return last_; }

private:
    std::size_t previous_;
    std::size_t last_;
};

/// Every point of a sensitivity sweep was stationary.
class EmptyResult : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(what) + " must be finite");
    }
}

}  // namespace detail
}  // namespace su11
