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

#pragma once

#include <string>
#include <string_view>

#include "rspir/decode.h"
#include "rspir/scheme.h"

namespace rspir {

// Edge color for message k (0-based). The first four are red, yellow, green
// and blue; later messages continue through a fixed palette and then an HSV
// sweep.
std::string MessageColor(size_t k);

// Undirected DOT graph with nodes A1..A{M1} and B1..B{M2} and one edge per
// answer pair, colored and labelled by the decoded message. Pairs that
// decode nothing are drawn dashed black.
std::string ExportBipartiteDot(const Scheme& scheme, const DecodeTable& table);

}  // namespace rspir
