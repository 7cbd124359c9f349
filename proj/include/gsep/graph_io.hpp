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

// Graph file format, one directive per line, '#' starts a comment:
//
//   graph qubits=<n> field=<real|complex>
//   loop <v> <re>[ <im>]
//   edge <u> <v> <re>[ <im>]
//
// Vertices are 1-based. <im> is rejected in real-field files. A JSON mirror
// {qubits, field, edges: [{u, v, re, im}], loops: [{v, re, im}]} is accepted
// wherever the text form is.

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gsep/error.hpp"
#include "gsep/graph.hpp"

namespace gsep {

namespace detail {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

inline std::vector<Token> tokenize_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
           line[i] != '#')
      ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

inline int parse_int(const detail::Token& t, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size())
    throw SyntaxError(ErrorKind::Syntax, line, t.column,
                      "expected an integer, got '" + std::string(t.text) + "'");
  return v;
}

inline double parse_double(const detail::Token& t, int line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size())
    throw SyntaxError(ErrorKind::Syntax, line, t.column,
                      "expected a number, got '" + std::string(t.text) + "'");
  return v;
}

inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline Field parse_field(std::string_view s, int line, int column) {
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  throw SyntaxError(ErrorKind::Syntax, line, column,
                    "field must be 'real' or 'complex', got '" + std::string(s) + "'");
}

}  // namespace detail

inline WeightedGraph parse_graph_text(std::string_view text) {
  std::optional<WeightedGraph> g;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tokens = detail::tokenize_line(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const detail::Token& head = tokens[0];
    if (!g) {
      if (head.text != "graph")
        throw SyntaxError(ErrorKind::Syntax, line_no, head.column,
                          "file must start with a 'graph' header");
      int qubits = -1;
      std::optional<Field> field;
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        const auto& t = tokens[k];
        const auto eq = t.text.find('=');
        if (eq == std::string_view::npos)
          throw SyntaxError(ErrorKind::Syntax, line_no, t.column,
                            "expected key=value, got '" + std::string(t.text) + "'");
        const auto key = t.text.substr(0, eq);
        const detail::Token value{t.text.substr(eq + 1), t.column + static_cast<int>(eq) + 1};
        if (key == "qubits") {
          qubits = detail::parse_int(value, line_no);
        } else if (key == "field") {
          field = detail::parse_field(value.text, line_no, value.column);
        } else {
          throw SyntaxError(ErrorKind::Syntax, line_no, t.column,
                            "unknown header key '" + std::string(key) + "'");
        }
      }
      if (qubits < 0 || !field)
        throw SyntaxError(ErrorKind::Syntax, line_no, head.column,
                          "header needs qubits=<n> and field=<real|complex>");
      try {
        g.emplace(qubits, *field);
      } catch (const Error& e) {
        throw SyntaxError(e.kind(), line_no, head.column, e.what());
      }
      if (end == text.size()) break;
      continue;
    }

    const bool is_edge = head.text == "edge";
    const bool is_loop = head.text == "loop";
    if (!is_edge && !is_loop)
      throw SyntaxError(ErrorKind::Syntax, line_no, head.column,
                        "unknown directive '" + std::string(head.text) + "'");
    const std::size_t n_idx = is_edge ? 2 : 1;
    if (tokens.size() < n_idx + 2 || tokens.size() > n_idx + 3)
      throw SyntaxError(ErrorKind::Syntax, line_no, head.column,
                        is_edge ? "expected: edge <u> <v> <re> [<im>]"
                                : "expected: loop <v> <re> [<im>]");
    const detail::Token& re_tok = tokens[n_idx + 1];
    double re = detail::parse_double(re_tok, line_no);
    double im = 0.0;
    if (tokens.size() == n_idx + 3) {
      const detail::Token& im_tok = tokens[n_idx + 2];
      if (g->field() == Field::Real)
        throw SyntaxError(ErrorKind::FieldMismatch, line_no, im_tok.column,
                          "imaginary part given in a real-field graph");
      im = detail::parse_double(im_tok, line_no);
    }
    const int u = detail::parse_int(tokens[1], line_no);
    try {
      if (is_edge) {
        const int v = detail::parse_int(tokens[2], line_no);
        g->add_edge(u, v, cd(re, im));
      } else {
        g->add_loop(u, cd(re, im));
      }
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      throw SyntaxError(e.kind(), line_no, tokens[1].column, e.what());
    }
    if (end == text.size()) break;
  }
  if (!g) throw SyntaxError(ErrorKind::Syntax, line_no, 1, "missing 'graph' header");
  return std::move(*g);
}

/// Canonical text form: header, loops by vertex, then edges by (u, v).
inline std::string serialize_graph(const WeightedGraph& g) {
  std::string out = "graph qubits=" + std::to_string(g.qubits()) +
                    " field=" + std::string(to_string(g.field())) + "\n";
  for (const auto& [v, w] : g.loops())
    out += "loop " + std::to_string(v) + " " + detail::format_double(w.real()) + "\n";
  for (const auto& [key, w] : g.edges()) {
    out += "edge " + std::to_string(key.first) + " " + std::to_string(key.second) + " " +
           detail::format_double(w.real());
    if (g.field() == Field::Complex) out += " " + detail::format_double(w.imag());
    out += "\n";
  }
  return out;
}

inline nlohmann::ordered_json graph_to_json(const WeightedGraph& g) {
  nlohmann::ordered_json j;
  j["qubits"] = g.qubits();
  j["field"] = std::string(to_string(g.field()));
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& [key, w] : g.edges())
    j["edges"].push_back({{"u", key.first}, {"v", key.second}, {"re", w.real()}, {"im", w.imag()}});
  j["loops"] = nlohmann::ordered_json::array();
  for (const auto& [v, w] : g.loops())
    j["loops"].push_back({{"v", v}, {"re", w.real()}, {"im", w.imag()}});
  return j;
}

inline WeightedGraph graph_from_json(const nlohmann::json& j) {
  try {
    const int qubits = j.at("qubits").get<int>();
    const std::string field = j.at("field").get<std::string>();
    WeightedGraph g(qubits, detail::parse_field(field, 1, 1));
    const auto number = [](const nlohmann::json& obj, const char* key) {
      return obj.contains(key) ? obj.at(key).get<double>() : 0.0;
    };
    if (j.contains("loops"))
      for (const auto& l : j.at("loops")) g.add_loop(l.at("v").get<int>(), cd(number(l, "re"), number(l, "im")));
    if (j.contains("edges"))
      for (const auto& e : j.at("edges")) {
        const double im = number(e, "im");
        if (g.field() == Field::Real && im != 0.0)
          throw Error(ErrorKind::FieldMismatch, "imaginary weight in a real-field graph");
        g.add_edge(e.at("u").get<int>(), e.at("v").get<int>(), cd(number(e, "re"), im));
      }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Syntax, std::string("malformed graph JSON: ") + e.what());
  }
}

/// Accepts either the text form or the JSON mirror.
inline WeightedGraph parse_graph(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::Syntax, std::string("JSON: ") + e.what());
    }
    return graph_from_json(j);
  }
  return parse_graph_text(text);
}

inline WeightedGraph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

}  // namespace gsep
