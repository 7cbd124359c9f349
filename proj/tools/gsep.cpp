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

// gsep command-line interface.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gsep/gsep.hpp"

namespace {

using gsep::Cut;

constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gsep::Error(gsep::ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// FNV-1a 64, used only to label file inputs in reports.
std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string file_descriptor(const std::string& path, const std::string& bytes) {
  const auto slash = path.find_last_of('/');
  return "file:" + (slash == std::string::npos ? path : path.substr(slash + 1)) + "#" +
         content_hash(bytes);
}

std::vector<std::string_view> parse_selection(const std::string& list) {
  std::vector<std::string_view> out;
  if (list.empty() || list == "all") return {gsep::criterion::kCatalog.begin(),
                                             gsep::criterion::kCatalog.end()};
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t end = std::min(list.find(',', pos), list.size());
    const std::string_view name(list.data() + pos, end - pos);
    bool found = false;
    for (auto id : gsep::criterion::kCatalog)
      if (id == name) {
        out.push_back(id);
        found = true;
      }
    if (!found)
      throw gsep::Error(gsep::ErrorKind::InvalidArgument,
                        "unknown criterion '" + std::string(name) + "'");
    pos = end + 1;
  }
  return out;
}

void print_report_text(const gsep::CriterionReport& rep) {
  std::printf("input  %s\n", rep.input.c_str());
  std::printf("cut    n=%d m=%d (%lldx%lld blocks of %lldx%lld)\n", rep.cut.qubits(),
              rep.cut.outer_qubits(), static_cast<long long>(rep.cut.outer_dim()),
              static_cast<long long>(rep.cut.outer_dim()),
              static_cast<long long>(rep.cut.inner_dim()),
              static_cast<long long>(rep.cut.inner_dim()));
  for (const auto& c : rep.criteria)
    std::printf("  %-20s %-12s %s\n", c.verdict.criterion.c_str(),
                std::string(gsep::to_string(c.verdict.kind)).c_str(), c.verdict.detail.c_str());
  if (rep.oracle)
    std::printf("oracle %s (%s), min PT eigenvalue %.6e\n",
                std::string(gsep::to_string(rep.oracle->kind)).c_str(),
                std::string(gsep::to_string(rep.oracle->reason)).c_str(), rep.oracle->min_pt_eig);
  if (rep.witness)
    std::printf("witness %s: %zu terms, reconstruction error %.3e\n", rep.witness->source.c_str(),
                rep.witness->terms, rep.witness->reconstruction_error);
}

void emit(const gsep::CriterionReport& rep, bool json, const nlohmann::ordered_json& replay) {
  if (json)
    std::cout << gsep::to_json(rep, gsep::disagreements_of(rep, replay)).dump(2) << "\n";
  else
    print_report_text(rep);
}

std::string format_params(const gsep::StateParams& p) {
  std::string s;
  auto add = [&](const char* name, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%s=%.6g", s.empty() ? "" : ",", name, v);
    s += buf;
  };
  if (p.theta) add("theta", *p.theta);
  if (p.phi) add("phi", *p.phi);
  if (p.a) add("a", *p.a);
  if (p.delta) add("delta", *p.delta);
  if (p.nparam) add("n", *p.nparam);
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"Separability criteria for graph Laplacian states"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Evaluate criteria on a graph file");
  std::string a_path;
  int a_cut = 1;
  std::string a_criteria = "all";
  bool a_oracle = false;
  bool a_json = false;
  analyze->add_option("path", a_path, "Graph file (text or JSON)")->required();
  analyze->add_option("--cut", a_cut, "Number of outer qubits");
  analyze->add_option("--criteria", a_criteria, "Comma-separated ids or 'all'");
  analyze->add_flag("--oracle", a_oracle, "Add the PPT/Schmidt oracle verdict");
  analyze->add_flag("--json", a_json, "Emit the JSON report");

  // state
  auto* state = app.add_subcommand("state", "Evaluate criteria on a built-in fixture");
  std::string s_id;
  gsep::StateParams s_params;
  std::optional<int> s_cut;
  bool s_json = false;
  state->add_option("id", s_id, "Fixture id")->required();
  state->add_option("--theta", s_params.theta);
  state->add_option("--phi", s_params.phi);
  state->add_option("--a", s_params.a);
  state->add_option("--delta", s_params.delta);
  state->add_option("--nparam", s_params.nparam);
  state->add_option("--cut", s_cut, "Number of outer qubits (default: canonical)");
  state->add_flag("--json", s_json);

  // corpus
  auto* corpus = app.add_subcommand("corpus", "Run every fixture at its canonical cut");
  bool c_json = false;
  corpus->add_flag("--json", c_json);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Audit a seeded random graph ensemble");
  gsep::EnsembleSpec spec;
  std::string w_mode = "simple";
  std::string cut_list;
  std::string out_path;
  unsigned threads = 1;
  sweep->add_option("--qubits", spec.qubits)->required();
  sweep->add_option("--count", spec.count)->required();
  sweep->add_option("--seed", spec.seed)->required();
  sweep->add_option("--weights", w_mode)->required()->check(
      CLI::IsMember({"simple", "real", "complex"}));
  sweep->add_option("--p", spec.p, "Edge probability");
  sweep->add_option("--cuts", cut_list, "Comma-separated outer qubit counts");
  sweep->add_option("--out", out_path, "Write JSON here instead of stdout");
  sweep->add_option("--threads", threads, "Worker threads");

  // witness
  auto* witness = app.add_subcommand("witness", "Print an explicit separable decomposition");
  std::string w_path;
  int w_cut = 1;
  witness->add_option("path", w_path)->required();
  witness->add_option("--cut", w_cut)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (*analyze) {
    const std::string bytes = read_file(a_path);
    gsep::WeightedGraph g = gsep::parse_graph(bytes);
    const Cut cut(g.qubits(), a_cut);
    const auto item = gsep::AuditItem::from_graph(file_descriptor(a_path, bytes), std::move(g));
    gsep::AnalyzeOptions opt;
    opt.criteria = parse_selection(a_criteria);
    opt.oracle = a_oracle;
    emit(gsep::analyze(item.descriptor, item.input, cut, opt), a_json, item.replay);
    return 0;
  }

  if (*state) {
    const auto& info = gsep::fixture_info(s_id);
    const Cut cut = s_cut ? Cut(info.qubits, *s_cut) : gsep::canonical_cut(s_id);
    const std::string params = format_params(s_params);
    const std::string desc = "fixture:" + s_id + (params.empty() ? "" : "(" + params + ")");
    const auto item = info.kind == gsep::FixtureKind::Graph
                          ? gsep::AuditItem::from_graph(desc, gsep::paper_graph(s_id))
                          : gsep::AuditItem::from_density(desc, gsep::appendix_state(s_id, s_params));
    emit(gsep::analyze(item.descriptor, item.input, cut), s_json, item.replay);
    return 0;
  }

  if (*corpus) {
    const auto items = gsep::corpus_items();
    // One audit per fixture keeps each at its own canonical cut.
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    if (!c_json)
      std::printf("%-16s %-5s %-10s %-10s %-9s %s\n", "fixture", "cut", "expected", "oracle",
                  "agree", "criteria fired");
    for (std::size_t k = 0; k < items.size(); ++k) {
      const auto& f = gsep::kFixtures[k];
      const auto res = gsep::audit({items[k]}, {gsep::canonical_cut(f.id)});
      const auto& rep = res.reports.front();
      std::string fired;
      for (const auto& c : rep.criteria)
        if (c.verdict.fired()) fired += (fired.empty() ? "" : ",") + c.verdict.criterion;
      const auto o = rep.oracle->kind;
      const bool agree = o == gsep::OracleKind::Unknown ||
                         (o == gsep::OracleKind::Separable) ==
                             (f.expected == gsep::Expectation::Separable);
      if (c_json) {
        nlohmann::ordered_json row = gsep::to_json(rep, res.disagreements);
        row["expected"] = gsep::to_string(f.expected);
        rows.push_back(std::move(row));
      } else {
        std::printf("%-16s m=%-3d %-10s %-10s %-9s %s\n", std::string(f.id).c_str(),
                    rep.cut.outer_qubits(), std::string(gsep::to_string(f.expected)).c_str(),
                    std::string(gsep::to_string(o)).c_str(),
                    o == gsep::OracleKind::Unknown ? "n/a" : (agree ? "yes" : "NO"),
                    fired.empty() ? "-" : fired.c_str());
      }
    }
    if (c_json)
      std::cout << nlohmann::ordered_json{{"schema", gsep::kReportSchema}, {"fixtures", rows}}.dump(2)
                << "\n";
    return 0;
  }

  if (*sweep) {
    spec.weights = gsep::parse_weight_mode(w_mode);
    if (!cut_list.empty()) {
      std::stringstream ss(cut_list);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        try {
          spec.cuts.push_back(std::stoi(tok));
        } catch (const std::exception&) {
          throw gsep::Error(gsep::ErrorKind::InvalidArgument, "bad cut '" + tok + "'");
        }
      }
    }
    const std::string text = gsep::sweep_json(spec, threads).dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw gsep::Error(gsep::ErrorKind::InvalidArgument, "cannot write '" + out_path + "'");
      out << text;
    }
    return 0;
  }

  if (*witness) {
    const gsep::WeightedGraph g = gsep::load_graph(w_path);
    const gsep::DensityMatrix rho = gsep::density_from_graph(g);
    const Cut cut(g.qubits(), w_cut);
    auto r = gsep::th1_check(rho, cut);
    if (!r.witness) {
      std::printf("no witness: %s\n", r.verdict.detail.c_str());
      return 0;
    }
    const auto dec = gsep::th1_expand_witness(*r.witness, rho, cut);
    std::printf("rho = sum_k p_k rho_out(k) (x) rho_in(k), %zu terms, weight sum %.12g\n",
                dec.terms.size(), dec.weight_sum());
    for (std::size_t k = 0; k < dec.terms.size(); ++k) {
      const auto& t = dec.terms[k];
      std::printf("\nterm %zu  p = %.12g\nouter =\n%s\ninner =\n%s\n", k + 1, t.weight,
                  gsep::format_matrix(t.outer).c_str(), gsep::format_matrix(t.inner).c_str());
    }
    std::printf("\nreconstruction error %.3e\n", dec.reconstruction_error(rho.matrix()));
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const gsep::Error& e) {
    std::fprintf(stderr, "gsep: %s: %s\n", std::string(gsep::to_string(e.kind())).c_str(), e.what());
    return gsep::is_input_error(e.kind()) ? kExitInput : kExitInternal;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "gsep: internal error: %s\n", e.what());
    return kExitInternal;
  }
}
