// Copyright 2026 The rspir authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rspir/graph.h"

#include <array>

#include <fmt/format.h>

namespace rspir {

namespace {

constexpr std::array<std::string_view, 12> kPalette = {
    "red",  "yellow", "green",   "blue",  "purple", "orange",
    "cyan", "magenta", "brown", "gray", "pink",   "olivedrab",
};

}  // namespace

std::string MessageColor(size_t k) {
  if (k < kPalette.size()) return std::string(kPalette[k]);
  // Golden-ratio hue steps keep consecutive colors apart.
  const double hue = static_cast<double>(k - kPalette.size()) * 0.618033988749895;
  return fmt::format("{:.3f} 0.850 0.900", hue - static_cast<int64_t>(hue));
}

std::string ExportBipartiteDot(const Scheme& scheme, const DecodeTable& table) {
  std::string out = "graph rspir {\n";
  out += fmt::format("  label=\"{} K={} L={} R={}\";\n",
                     VariantName(scheme.variant), scheme.num_messages,
                     scheme.message_length, scheme.randomness_count);
  out += "  rankdir=LR;\n";
  out += "  node [shape=circle];\n";
  out += "  subgraph db1 {\n    rank=same;\n";
  for (size_t a = 0; a < table.m1(); ++a) {
    out += fmt::format("    A{} [label=\"A_{}\"];\n", a + 1, a + 1);
  }
  out += "  }\n  subgraph db2 {\n    rank=same;\n";
  for (size_t b = 0; b < table.m2(); ++b) {
    out += fmt::format("    B{} [label=\"B_{}\"];\n", b + 1, b + 1);
  }
  out += "  }\n";
  for (size_t a = 0; a < table.m1(); ++a) {
    for (size_t b = 0; b < table.m2(); ++b) {
      const PairDecoding& cell = table.At(a, b);
      if (cell.status == PairStatus::kNotReliable) {
        out += fmt::format(
            "  A{} -- B{} [color=\"black\", style=\"dashed\", "
            "label=\"none\"];\n",
            a + 1, b + 1);
        continue;
      }
      out += fmt::format("  A{} -- B{} [color=\"{}\", label=\"W_{}\"];\n",
                         a + 1, b + 1, MessageColor(cell.theta),
                         cell.theta + 1);
    }
  }
  out += "}\n";
  return out;
}

}  // namespace rspir
