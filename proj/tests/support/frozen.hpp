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

// Values of the Fock-space reference in reference.hpp (dense Pade
// exponentials per sector, 120 levels, states on n <= 34), frozen.

namespace su11::reference {

inline constexpr double frozen_coherent = 0.263411081877299;       // alpha=0.8, beta=0.5i, g=0.5, phi=0.7
inline constexpr double frozen_coherent_svs = 0.521898986931518;   // alpha=0.5, r=0.6, theta_s=0.4, g=0.5, phi=0.9
inline constexpr double frozen_thermal_svs = 0.608021282543796;    // nbar=0.8, r=0.5, g=0.6, phi=0.5
inline constexpr double frozen_fock_one = -0.176378447614133;      // n=1, g=0.5, phi=pi/2

}  // namespace su11::reference
