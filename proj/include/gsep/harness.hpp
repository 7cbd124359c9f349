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

// Seeded random ensembles, criterion-vs-oracle audits, disagreement records
// and the versioned JSON report.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gsep/criteria.hpp"
#include "gsep/fixtures.hpp"
#include "gsep/graph.hpp"
#include "gsep/graph_io.hpp"
#include "gsep/oracle.hpp"
#include "gsep/th1.hpp"

namespace gsep {

inline constexpr int kReportSchema = 1;

// ---------------------------------------------------------------------------
// Deterministic generator

/// SplitMix64 (Steele, Lea, Flood 2014). The output sequence for a seed is
/// fixed by the constants below and is platform independent.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Ensembles

enum class WeightMode { Simple, Real, Complex };

inline std::string_view to_string(WeightMode m) {
  switch (m) {
    case WeightMode::Simple: return "simple";
    case WeightMode::Real: return "real";
    case WeightMode::Complex: return "complex";
  }
  return "simple";
}

inline WeightMode parse_weight_mode(std::string_view s) {
  if (s == "simple") return WeightMode::Simple;
  if (s == "real") return WeightMode::Real;
  if (s == "complex") return WeightMode::Complex;
  throw Error(ErrorKind::InvalidArgument, "unknown weight mode '" + std::string(s) + "'");
}

struct EnsembleSpec {
  int qubits = 2;
  int count = 1;
  std::uint64_t seed = 0;
  WeightMode weights = WeightMode::Simple;
  double p = 0.5;
  /// Outer-qubit counts; empty means every cut 1..qubits-1.
  std::vector<int> cuts;

  void validate() const {
    if (qubits < 2 || qubits > kMaxQubits)
      throw Error(ErrorKind::Range, "ensemble qubits must lie in [2, " +
                                        std::to_string(kMaxQubits) + "]");
    if (count < 0) throw Error(ErrorKind::Range, "ensemble count must be non-negative");
    if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::Range, "edge probability must lie in (0, 1)");
    for (int m : cuts)
      if (m < 1 || m >= qubits) throw Error(ErrorKind::Range, "cut m must lie in [1, qubits)");
  }

  std::vector<Cut> cut_list() const {
    std::vector<Cut> out;
    if (cuts.empty())
      for (int m = 1; m < qubits; ++m) out.emplace_back(qubits, m);
    else
      for (int m : cuts) out.emplace_back(qubits, m);
    return out;
  }
};

namespace detail {

inline WeightedGraph draw_graph(const EnsembleSpec& spec, SplitMix64& rng) {
  const Field field = spec.weights == WeightMode::Complex ? Field::Complex : Field::Real;
  const int n_vertices = 1 << spec.qubits;
  WeightedGraph g(spec.qubits, field);
  for (int u = 1; u <= n_vertices; ++u)
    for (int v = u + 1; v <= n_vertices; ++v) {
      if (rng.uniform() >= spec.p) continue;
      switch (spec.weights) {
        case WeightMode::Simple:
          g.add_edge(u, v, 1.0);
          break;
        case WeightMode::Real: {
          double w = 0.0;
          while (w == 0.0) w = rng.uniform(-3.0, 3.0);
          g.add_edge(u, v, w);
          break;
        }
        case WeightMode::Complex:
          g.add_edge(u, v, std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform()));
          break;
      }
    }
  if (spec.weights == WeightMode::Real && g.edge_count() > 0) {
    const double shift = std::max(0.0, -detail::min_eigenvalue(laplacian(g).matrix()));
    if (shift > 0.0)
      for (int v = 1; v <= n_vertices; ++v) g.add_loop(v, shift);
  }
  return g;
}

}  // namespace detail

/// Erdos-Renyi graphs from one SplitMix64 stream. Edgeless draws have zero
/// trace and are redrawn.
inline std::vector<WeightedGraph> generate_ensemble(const EnsembleSpec& spec) {
  spec.validate();
  SplitMix64 rng(spec.seed);
  std::vector<WeightedGraph> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  while (static_cast<int>(out.size()) < spec.count) {
    WeightedGraph g = detail::draw_graph(spec, rng);
    if (g.edge_count() > 0) out.push_back(std::move(g));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports

struct WitnessSummary {
  std::string source;
  std::size_t terms = 0;
  double reconstruction_error = 0.0;
};

struct CriterionReport {
  std::string input;
  Cut cut;
  std::vector<CriterionOutcome> criteria;
  std::optional<OracleVerdict> oracle;
  std::optional<WitnessSummary> witness;
};

struct DisagreementRecord {
  std::string input;
  Cut cut;
  std::string criterion;
  OracleVerdict oracle;
  nlohmann::ordered_json replay;
};

/// Replayable serialization of a density matrix.
inline nlohmann::ordered_json density_to_json(const DensityMatrix& rho) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Index r = 0; r < rho.dim(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Index c = 0; c < rho.dim(); ++c)
      row.push_back({rho.matrix()(r, c).real(), rho.matrix()(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return {{"density", std::move(rows)}};
}

inline DensityMatrix density_from_json(const nlohmann::json& j,
                                       const Tolerance& tol = kDefaultTolerance) {
  try {
    const auto& rows = j.at("density");
    const auto d = static_cast<Index>(rows.size());
    CMatrix m(d, d);
    for (Index r = 0; r < d; ++r) {
      if (static_cast<Index>(rows[r].size()) != d)
        throw Error(ErrorKind::DimensionMismatch, "density rows must be square");
      for (Index c = 0; c < d; ++c)
        m(r, c) = cd(rows[r][c].at(0).get<double>(), rows[r][c].at(1).get<double>());
    }
    return DensityMatrix::validate(HermitianMatrix(std::move(m)), tol);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed density JSON: ") + e.what());
  }
}

/// Self-describing input for `audit`.
struct AuditItem {
  std::string descriptor;
  AnalysisInput input;
  nlohmann::ordered_json replay;

  static AuditItem from_graph(std::string descriptor, WeightedGraph g,
                              const Tolerance& tol = kDefaultTolerance) {
    nlohmann::ordered_json replay = {{"graph", graph_to_json(g)}};
    return {std::move(descriptor), AnalysisInput::from_graph(std::move(g), tol), std::move(replay)};
  }
  static AuditItem from_density(std::string descriptor, DensityMatrix rho) {
    nlohmann::ordered_json replay = density_to_json(rho);
    return {std::move(descriptor), AnalysisInput::from_density(std::move(rho)), std::move(replay)};
  }
};

/// Rebuilds an AnalysisInput from a DisagreementRecord replay blob.
inline AnalysisInput replay_input(const nlohmann::json& replay,
                                  const Tolerance& tol = kDefaultTolerance) {
  if (replay.contains("graph")) return AnalysisInput::from_graph(graph_from_json(replay["graph"]), tol);
  return AnalysisInput::from_density(density_from_json(replay, tol));
}

struct AnalyzeOptions {
  std::vector<std::string_view> criteria{criterion::kCatalog.begin(), criterion::kCatalog.end()};
  bool oracle = true;
  bool witness = true;
  Tolerance tol = kDefaultTolerance;
};

/// run_all plus optional oracle verdict and witness expansion.
inline CriterionReport analyze(const std::string& descriptor, const AnalysisInput& in,
                               const Cut& cut, const AnalyzeOptions& opt = {}) {
  CriteriaRun run = run_all(in, cut, opt.criteria, opt.tol);
  CriterionReport rep{descriptor, cut, std::move(run.outcomes), std::nullopt, std::nullopt};
  if (opt.oracle) rep.oracle = oracle_verdict(in.rho, cut, opt.tol);
  if (opt.witness) {
    const Th1Witness* w = run.th1_witness ? &*run.th1_witness
                          : run.c1_witness ? &*run.c1_witness
                                           : nullptr;
    if (w) {
      const SeparableDecomposition dec = th1_expand_witness(*w, in.rho, cut, opt.tol);
      rep.witness = WitnessSummary{run.th1_witness ? "th1" : "c1", dec.terms.size(),
                                   dec.reconstruction_error(in.rho.matrix())};
    }
  }
  return rep;
}

/// A criterion claiming Separable while the oracle proves entanglement.
inline std::vector<DisagreementRecord> disagreements_of(const CriterionReport& rep,
                                                        const nlohmann::ordered_json& replay) {
  std::vector<DisagreementRecord> out;
  if (!rep.oracle || !rep.oracle->entangled()) return out;
  for (const auto& c : rep.criteria)
    if (c.verdict.fired())
      out.push_back({rep.input, rep.cut, c.verdict.criterion, *rep.oracle, replay});
  return out;
}

struct CriterionTally {
  int evaluated = 0;
  int fired = 0;
  int disagreements = 0;
};

struct AuditResult {
  std::vector<CriterionReport> reports;
  std::vector<DisagreementRecord> disagreements;
  std::map<std::string, CriterionTally> tallies;
  int oracle_separable = 0;
  int oracle_entangled = 0;
  int oracle_unknown = 0;

  int disagreement_count(std::string_view id) const {
    auto it = tallies.find(std::string(id));
    return it == tallies.end() ? 0 : it->second.disagreements;
  }
};

/// Runs every item at every cut whose qubit count matches. Work is spread
/// over `threads` workers; results are ordered by (descriptor, cut) so the
/// output does not depend on scheduling.
inline AuditResult audit(const std::vector<AuditItem>& items, const std::vector<Cut>& cuts,
                         const AnalyzeOptions& opt = {}, unsigned threads = 1) {
  struct Job {
    std::size_t item;
    Cut cut;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < items.size(); ++i)
    for (const Cut& c : cuts)
      if (c.dim() == items[i].input.rho.dim()) jobs.push_back({i, c});

  std::vector<std::optional<CriterionReport>> slots(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++)
      slots[k] = analyze(items[jobs[k].item].descriptor, items[jobs[k].item].input, jobs[k].cut, opt);
  };
  threads = std::max(1U, threads);
  if (threads == 1 || jobs.size() < 2) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<std::size_t> order(jobs.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& da = items[jobs[a].item].descriptor;
    const auto& db = items[jobs[b].item].descriptor;
    if (da != db) return da < db;
    return jobs[a].cut.outer_qubits() < jobs[b].cut.outer_qubits();
  });

  AuditResult res;
  for (std::size_t k : order) {
    CriterionReport& rep = *slots[k];
    for (const auto& c : rep.criteria) {
      auto& t = res.tallies[c.verdict.criterion];
      ++t.evaluated;
      if (c.verdict.fired()) ++t.fired;
    }
    if (rep.oracle) {
      switch (rep.oracle->kind) {
        case OracleKind::Separable: ++res.oracle_separable; break;
        case OracleKind::Entangled: ++res.oracle_entangled; break;
        case OracleKind::Unknown: ++res.oracle_unknown; break;
      }
    }
    for (auto& d : disagreements_of(rep, items[jobs[k].item].replay)) {
      ++res.tallies[d.criterion].disagreements;
      res.disagreements.push_back(std::move(d));
    }
    res.reports.push_back(std::move(rep));
  }
  return res;
}

// ---------------------------------------------------------------------------
// JSON. Timings are left out so reports are byte-reproducible.

inline nlohmann::ordered_json to_json(const Cut& cut) {
  return {{"qubits", cut.qubits()}, {"m", cut.outer_qubits()}};
}

inline nlohmann::ordered_json to_json(const OracleVerdict& o) {
  nlohmann::ordered_json j = {{"verdict", to_string(o.kind)},
                              {"reason", to_string(o.reason)},
                              {"min_pt_eig", o.min_pt_eig}};
  if (o.schmidt_rank > 0) j["schmidt_rank"] = o.schmidt_rank;
  return j;
}

inline nlohmann::ordered_json to_json(const DisagreementRecord& d) {
  return {{"input", d.input},
          {"cut", to_json(d.cut)},
          {"criterion", d.criterion},
          {"criterion_verdict", "separable"},
          {"oracle", to_json(d.oracle)},
          {"min_pt_eig", d.oracle.min_pt_eig},
          {"replay", d.replay}};
}

inline nlohmann::ordered_json to_json(const CriterionReport& rep,
                                      const std::vector<DisagreementRecord>& disagreements = {}) {
  nlohmann::ordered_json crit = nlohmann::ordered_json::array();
  for (const auto& c : rep.criteria)
    crit.push_back({{"id", c.verdict.criterion},
                    {"verdict", to_string(c.verdict.kind)},
                    {"detail", c.verdict.detail}});
  nlohmann::ordered_json j = {{"schema", kReportSchema},
                              {"input", rep.input},
                              {"cut", to_json(rep.cut)},
                              {"criteria", std::move(crit)}};
  if (rep.oracle) j["oracle"] = to_json(*rep.oracle);
  if (rep.witness)
    j["witness"] = {{"source", rep.witness->source},
                    {"terms", rep.witness->terms},
                    {"reconstruction_error", rep.witness->reconstruction_error}};
  nlohmann::ordered_json dis = nlohmann::ordered_json::array();
  for (const auto& d : disagreements) dis.push_back(to_json(d));
  j["disagreements"] = std::move(dis);
  return j;
}

inline nlohmann::ordered_json to_json(const AuditResult& res) {
  nlohmann::ordered_json tallies = nlohmann::ordered_json::object();
  for (auto id : criterion::kCatalog) {
    auto it = res.tallies.find(std::string(id));
    if (it == res.tallies.end()) continue;
    tallies[std::string(id)] = {{"evaluated", it->second.evaluated},
                                {"fired", it->second.fired},
                                {"disagreements", it->second.disagreements}};
  }
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (const auto& r : res.reports) {
    std::vector<DisagreementRecord> mine;
    for (const auto& d : res.disagreements)
      if (d.input == r.input && d.cut == r.cut) mine.push_back(d);
    reports.push_back(to_json(r, mine));
  }
  nlohmann::ordered_json dis = nlohmann::ordered_json::array();
  for (const auto& d : res.disagreements) dis.push_back(to_json(d));
  return {{"schema", kReportSchema},
          {"summary",
           {{"reports", res.reports.size()},
            {"oracle", {{"separable", res.oracle_separable},
                        {"entangled", res.oracle_entangled},
                        {"unknown", res.oracle_unknown}}},
            {"criteria", std::move(tallies)},
            {"disagreements", res.disagreements.size()}}},
          {"reports", std::move(reports)},
          {"disagreements", std::move(dis)}};
}

inline nlohmann::ordered_json to_json(const EnsembleSpec& spec) {
  nlohmann::ordered_json cuts = nlohmann::ordered_json::array();
  for (const Cut& c : spec.cut_list()) cuts.push_back(c.outer_qubits());
  return {{"qubits", spec.qubits}, {"count", spec.count},     {"seed", spec.seed},
          {"weights", to_string(spec.weights)}, {"p", spec.p}, {"cuts", std::move(cuts)}};
}

/// Ensemble items named "<mode>-<index>" with zero-padded indices.
inline std::vector<AuditItem> ensemble_items(const EnsembleSpec& spec,
                                             const Tolerance& tol = kDefaultTolerance) {
  std::vector<AuditItem> items;
  const auto graphs = generate_ensemble(spec);
  items.reserve(graphs.size());
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    char name[48];
    std::snprintf(name, sizeof name, "%s-q%d-%06zu", std::string(to_string(spec.weights)).c_str(),
                  spec.qubits, k);
    items.push_back(AuditItem::from_graph(name, graphs[k], tol));
  }
  return items;
}

/// Every fixture, named "fixture:<id>", in table order.
inline std::vector<AuditItem> corpus_items() {
  std::vector<AuditItem> items;
  for (const auto& f : kFixtures) {
    const std::string desc = "fixture:" + std::string(f.id);
    items.push_back(f.kind == FixtureKind::Graph ? AuditItem::from_graph(desc, paper_graph(f.id))
                                                 : AuditItem::from_density(desc, appendix_state(f.id)));
  }
  return items;
}

/// The seeded sweep behind `gsep sweep`: spec echo plus audit JSON.
inline nlohmann::ordered_json sweep_json(const EnsembleSpec& spec, unsigned threads = 1,
                                         const AnalyzeOptions& opt = {}) {
  const AuditResult res = audit(ensemble_items(spec, opt.tol), spec.cut_list(), opt, threads);
  nlohmann::ordered_json j = {{"schema", kReportSchema}, {"spec", to_json(spec)}};
  nlohmann::ordered_json body = to_json(res);
  for (auto& [key, value] : body.items())
    if (key != "schema") j[key] = value;
  return j;
}

}  // namespace gsep
