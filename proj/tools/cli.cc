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

#include "cli.h"

#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rspir/decode.h"
#include "rspir/graph.h"
#include "rspir/protocol.h"
#include "rspir/scheme.h"
#include "rspir/search.h"
#include "rspir/verifier.h"

namespace rspir {

namespace {

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open {}", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteOrPrint(const std::string& text, const std::string& path,
                  std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error(fmt::format("cannot write {}", path));
  file << text;
}

struct Options {
  std::string variant;
  size_t k = 3;
  size_t l = 1;
  size_t r = 0;
  int m = 1;
  size_t max_len = 1;
  size_t m1 = 0;
  size_t m2 = 0;
  uint64_t budget = 1'000'000;
  uint64_t seed = 0;
  size_t blocks = 1;
  std::string file;
  std::string out;
  std::string messages_file;
  std::string format = "text";
};

int Build(const Options& o, std::ostream& out) {
  const auto variant = ParseVariant(o.variant);
  if (!variant || *variant == SchemeVariant::kCustom) {
    throw CLI::ValidationError("variant",
                               fmt::format("unknown variant '{}'", o.variant));
  }
  WriteOrPrint(SerializeScheme(BuildScheme(*variant, o.k, BinaryField(o.m))),
               o.out, out);
  return kExitOk;
}

int VerifyCommand(const Options& o, std::ostream& out) {
  const Scheme scheme = ReadSchemeFile(o.file);
  const VerificationReport report = Verify(scheme, o.blocks);
  out << (o.format == "lines" ? report.ToLines() : report.ToText());
  return report.AllPassed() ? kExitOk : kExitFailure;
}

int Run(const Options& o, std::ostream& out) {
  const Scheme scheme = ReadSchemeFile(o.file);
  const MessageSet messages =
      o.messages_file.empty()
          ? MessageSet::Random(scheme.field, scheme.num_messages,
                               scheme.message_length * o.blocks, o.seed)
          : ParseMessages(ReadText(o.messages_file), scheme.field);
  out << RunProtocol(scheme, messages, o.seed, o.blocks).Serialize();
  return kExitOk;
}

int Rate(const Options& o, std::ostream& out) {
  const Scheme scheme = ReadSchemeFile(o.file);
  const RateAudit rate = AuditRate(scheme, o.blocks);
  const RandomnessAudit randomness = AuditRandomness(scheme);
  out << fmt::format("download_cost {}\n", rate.download_cost);
  out << fmt::format("rate {}\n", FormatRational(rate.rate));
  out << fmt::format("capacity {}\n", rate.capacity
                                          ? FormatRational(*rate.capacity)
                                          : std::string("unknown"));
  out << fmt::format("meets_capacity {}\n", rate.meets_capacity ? "yes" : "no");
  out << fmt::format("index_bits {}\n", rate.index_bits);
  out << fmt::format("finite_rate {} blocks {}\n",
                     FormatRational(rate.finite_rate), rate.blocks);
  out << fmt::format("randomness_per_L {}\n",
                     FormatRational(randomness.per_message_length));
  out << fmt::format("randomness_minimum {}\n",
                     randomness.minimum ? FormatRational(*randomness.minimum)
                                        : std::string("unknown"));
  return kExitOk;
}

int Graph(const Options& o, std::ostream& out) {
  const Scheme scheme = ReadSchemeFile(o.file);
  WriteOrPrint(ExportBipartiteDot(scheme, DeriveDecodeTable(scheme)), o.out,
               out);
  return kExitOk;
}

int Search(const Options& o, std::ostream& out, std::ostream& err) {
  SearchSpace space{o.k, o.l, o.r, o.m, o.max_len, o.m1, o.m2};
  auto print = [&](const SearchResult& result) {
    for (size_t i = 0; i < result.schemes.size(); ++i) {
      out << fmt::format("# scheme {}\n", i + 1);
      out << SerializeScheme(result.schemes[i]);
    }
    out << fmt::format("# found {} scheme(s), {} node(s), {} answer space(s)\n",
                       result.schemes.size(), result.nodes, result.subspaces);
  };
  try {
    SearchResult result = SearchSchemes(space, o.budget);
    print(result);
    if (result.schemes.empty()) out << "# exhausted with none\n";
    return kExitOk;
  } catch (const SearchBudgetExceeded& e) {
    print(e.partial());
    err << e.what() << "\n";
    err << fmt::format("cursor {}\n", fmt::join(e.cursor(), " "));
    return kExitFailure;
  }
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Two-database random symmetric private information retrieval"};
  app.name("rspir");
  app.require_subcommand(1);
  Options o;

  auto* build = app.add_subcommand("build", "Construct a scheme file");
  build->add_option("variant", o.variant,
                    "rotation-randomness, rotation-messages, pairwise, k4")
      ->required();
  build->add_option("--k", o.k, "Number of messages")->check(CLI::Range(2, 64));
  build->add_option("--m", o.m, "Field GF(2^m)")->check(CLI::Range(1, 16));
  build->add_option("--out", o.out, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Verify every constraint");
  verify->add_option("scheme", o.file)->required();
  verify->add_option("--blocks", o.blocks, "Blocks for finite-length rate")
      ->check(CLI::PositiveNumber);
  verify->add_option("--format", o.format)
      ->check(CLI::IsMember({"text", "lines"}));

  auto* run = app.add_subcommand("run", "Simulate one retrieval");
  run->add_option("scheme", o.file)->required();
  run->add_option("--seed", o.seed);
  run->add_option("--blocks", o.blocks)->check(CLI::PositiveNumber);
  run->add_option("--messages-file", o.messages_file,
                  "K lines of L*blocks symbols (default: seeded random)");

  auto* rate = app.add_subcommand("rate", "Download cost and rate audit");
  rate->add_option("scheme", o.file)->required();
  rate->add_option("--blocks", o.blocks)->check(CLI::PositiveNumber);

  auto* graph = app.add_subcommand("graph", "Bipartite answer graph as DOT");
  graph->add_option("scheme", o.file)->required();
  graph->add_option("--out", o.out, "Output file (default stdout)");

  auto* search = app.add_subcommand("search", "Exhaustive scheme search");
  search->add_option("--k", o.k)->check(CLI::Range(1, 16));
  search->add_option("--l", o.l)->check(CLI::Range(1, 8));
  search->add_option("--r", o.r)->check(CLI::Range(0, 16));
  search->add_option("--m", o.m)->check(CLI::Range(1, 16));
  search->add_option("--max-len", o.max_len);
  search->add_option("--m1", o.m1, "Database 1 answers (default K)");
  search->add_option("--m2", o.m2, "Database 2 answers (default K)");
  search->add_option("--budget", o.budget, "Node limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*build) return Build(o, out);
    if (*verify) return VerifyCommand(o, out);
    if (*run) return Run(o, out);
    if (*rate) return Rate(o, out);
    if (*graph) return Graph(o, out);
    if (*search) return Search(o, out, err);
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace rspir
