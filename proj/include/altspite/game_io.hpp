// Copyright 2026 The altspite Authors
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
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "altspite/game.hpp"

namespace altspite {

// Game text format:
//   line 1:            n_rows n_cols
//   next n_rows lines: rows of R
//   next n_rows lines: rows of C
// Lines starting with '#' are comments; blank lines are skipped.
// Errors carry the 1-based line number of the offending line.

namespace detail {

struct GameLine {
  std::size_t number = 0;
  std::vector<double> values;
};

inline std::vector<GameLine> tokenize_game_text(std::istream& in,
                                                const std::string& name) {
  std::vector<GameLine> lines;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view sv(raw);
    auto first = sv.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (sv[first] == '#') continue;
    GameLine line;
    line.number = lineno;
    std::istringstream iss(raw);
    std::string token;
    while (iss >> token) {
      if (token[0] == '#') break;  // trailing comment
      std::size_t consumed = 0;
      double v = 0.0;
      try {
        v = std::stod(token, &consumed);
      } catch (const std::exception&) {
        consumed = 0;
      }
      if (consumed != token.size() || !std::isfinite(v)) {
        throw std::invalid_argument(name + ":" + std::to_string(lineno) +
                                    ": invalid payoff entry '" + token + "'");
      }
      line.values.push_back(v);
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace detail

inline BimatrixGame parse_game(std::istream& in,
                               const std::string& name = "<game>") {
  auto lines = detail::tokenize_game_text(in, name);
  if (lines.empty()) {
    throw std::invalid_argument(name + ":1: empty game file");
  }
  const auto& header = lines[0];
  if (header.values.size() != 2) {
    throw std::invalid_argument(name + ":" + std::to_string(header.number) +
                                ": expected header 'n_rows n_cols'");
  }
  auto as_dim = [&](double v) {
    if (v < 1.0 || v != std::floor(v) || v > 1e6) {
      throw std::invalid_argument(name + ":" + std::to_string(header.number) +
                                  ": dimensions must be positive integers");
    }
    return static_cast<std::size_t>(v);
  };
  const std::size_t n_rows = as_dim(header.values[0]);
  const std::size_t n_cols = as_dim(header.values[1]);

  const std::size_t needed = 1 + 2 * n_rows;
  if (lines.size() < needed) {
    throw std::invalid_argument(
        name + ": expected " + std::to_string(2 * n_rows) +
        " payoff rows, found " + std::to_string(lines.size() - 1));
  }
  if (lines.size() > needed) {
    throw std::invalid_argument(name + ":" +
                                std::to_string(lines[needed].number) +
                                ": unexpected extra data");
  }

  auto read_matrix = [&](std::size_t first_line) {
    Matrix m(n_rows, n_cols);
    for (std::size_t i = 0; i < n_rows; ++i) {
      const auto& line = lines[first_line + i];
      if (line.values.size() != n_cols) {
        throw std::invalid_argument(
            name + ":" + std::to_string(line.number) + ": expected " +
            std::to_string(n_cols) + " entries, got " +
            std::to_string(line.values.size()));
      }
      for (std::size_t j = 0; j < n_cols; ++j) m(i, j) = line.values[j];
    }
    return m;
  };

  return BimatrixGame(read_matrix(1), read_matrix(1 + n_rows));
}

inline BimatrixGame load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument(path + ": cannot open game file");
  }
  return parse_game(in, path);
}

// 17 significant digits round-trip doubles exactly through decimal text.
inline std::string format_game(const BimatrixGame& g) {
  std::string out;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%zu %zu\n", g.n_rows(), g.n_cols());
  out += buf;
  auto emit = [&](const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
        out += buf;
        out += (j + 1 == m.cols()) ? '\n' : ' ';
      }
    }
  };
  emit(g.r);
  emit(g.c);
  return out;
}

inline void save_game(const BimatrixGame& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error(path + ": cannot write game file");
  }
  out << format_game(g);
  if (!out) {
    throw std::runtime_error(path + ": write failed");
  }
}

}  // namespace altspite
