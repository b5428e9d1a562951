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

// Vacuum-input sensitivity near the dark fringe against 1/sinh(2g), with the
// Fock-space photon number inside the interferometer.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "su11/sweep.hpp"

int main() {
    using namespace su11;
    const PhaseGrid grid(1e-3, std::numbers::pi - 1e-3, 400);
    std::printf("%6s %12s %12s %10s %10s\n", "g", "dphi_min", "1/sinh(2g)", "n_bar", "hl");
    for (double g : {0.3, 0.5, 1.0, 1.5}) {
        const SensitivityResult s = sensitivity_curve(TwoModeVacuum{}, GainConfig(g), grid);
        std::printf("%6.2f %12.6f %12.6f %10.5f %10.5f\n", g, s.delta_phi_min,
                    vacuum_optimal_sensitivity(g), s.n_bar, s.hl);
    }
}
