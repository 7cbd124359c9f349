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

#include <array>
#include <string>
#include <string_view>
#include <utility>

namespace gsep {

/// Stable criterion ids, in report order.
namespace criterion {
inline constexpr std::string_view kTh1 = "th1";
inline constexpr std::string_view kC1 = "c1";
inline constexpr std::string_view kTh3 = "th3";
inline constexpr std::string_view kEdgeParity = "edge-parity";
inline constexpr std::string_view kSameBlock = "same-block";
inline constexpr std::string_view kGraphPgateInv = "graph-pgate-inv";
inline constexpr std::string_view kDensityPgateInv = "density-pgate-inv";
inline constexpr std::string_view kLastQubitSx = "last-qubit-sx";
inline constexpr std::string_view kPairedEdge = "paired-edge";
inline constexpr std::string_view kNbhdSwap = "nbhd-swap";
inline constexpr std::string_view kNbhdShiftOffdiag = "nbhd-shift-offdiag";
inline constexpr std::string_view kNbhdShiftAll = "nbhd-shift-all";
inline constexpr std::string_view kNbhdCardEquiv = "nbhd-card-equiv";
inline constexpr std::string_view kBlockrowCardEquiv = "blockrow-card-equiv";
inline constexpr std::string_view kCommuteEquiv = "commute-equiv";
inline constexpr std::string_view kSpectralNbhd = "spectral-nbhd";

inline constexpr std::array<std::string_view, 16> kCatalog = {
    kTh1,           kC1,         kTh3,           kEdgeParity,       kSameBlock,
    kGraphPgateInv, kDensityPgateInv, kLastQubitSx, kPairedEdge,     kNbhdSwap,
    kNbhdShiftOffdiag, kNbhdShiftAll, kNbhdCardEquiv, kBlockrowCardEquiv, kCommuteEquiv,
    kSpectralNbhd};

/// Criteria that read the graph itself rather than its density operator.
inline constexpr bool needs_graph(std::string_view id) {
  return id == kEdgeParity || id == kSameBlock || id == kGraphPgateInv || id == kPairedEdge ||
         id == kNbhdSwap || id == kNbhdShiftOffdiag || id == kNbhdShiftAll ||
         id == kNbhdCardEquiv || id == kBlockrowCardEquiv || id == kSpectralNbhd;
}

inline constexpr bool in_catalog(std::string_view id) {
  for (auto c : kCatalog)
    if (c == id) return true;
  return false;
}
}  // namespace criterion

enum class VerdictKind { Separable, Inconclusive };

inline std::string_view to_string(VerdictKind k) {
  return k == VerdictKind::Separable ? "separable" : "inconclusive";
}

/// Outcome of one criterion. Criteria never claim entanglement.
struct Verdict {
  std::string criterion;
  VerdictKind kind = VerdictKind::Inconclusive;
  std::string detail;

  bool fired() const noexcept { return kind == VerdictKind::Separable; }

  static Verdict separable(std::string_view id, std::string detail) {
    return {std::string(id), VerdictKind::Separable, std::move(detail)};
  }
  static Verdict inconclusive(std::string_view id, std::string detail) {
    return {std::string(id), VerdictKind::Inconclusive, std::move(detail)};
  }
};

}  // namespace gsep
