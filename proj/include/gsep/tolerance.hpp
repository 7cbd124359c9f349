// Copyright 2026 The gsep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace gsep {

/// Numerical policy shared by every verdict-producing operation.
///
/// Relative tolerances are multiplied by the scale of the matrix under test
/// (its largest absolute entry).
struct Tolerance {
  /// PSD verdicts: min eigenvalue >= -psd * scale.
  double psd = 1e-9;
  /// Entrywise structural equality (partial-gate invariance, commutators).
  double structural = 1e-12;
  /// |Tr(rho) - 1| bound for a validated density matrix.
  double trace = 1e-12;
  /// TH1 feasibility gap accepted at the iteration cap.
  double feasibility = 1e-10;
  /// Singular values above this count towards the Schmidt rank.
  double schmidt = 1e-9;
  /// Top eigenvalue >= 1 - purity marks a pure state.
  double purity = 1e-9;
  /// |lambda_max - N1/|E|| bound for the spectral criterion.
  double spectral = 1e-9;
  /// Alternating-projection sweeps before TH1 gives up.
  int th1_max_iterations = 5000;
};

inline constexpr Tolerance kDefaultTolerance{};

}  // namespace gsep
