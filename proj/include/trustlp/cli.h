// Copyright 2026 The trustlp Authors
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

#ifndef TRUSTLP_CLI_H_
#define TRUSTLP_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trustlp/game.h"

namespace trustlp::cli {

enum ExitCode {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kInvalidInstance = 3,
  kResourceLimit = 4,
  kVerification = 5,
};

struct ParsedMatrix {
  UtilityMatrix u;
  // Set when the diagonal was subtracted: sum_x of the original u(x, x).
  std::optional<Rational> shift;
};

// Text format: the first non-comment line holds q, then q rows of q
// whitespace-separated numbers ("a/b", integers or finite decimals). Blank
// lines and lines starting with '#' are skipped. Without `normalize` a
// nonzero diagonal raises InvalidInstance naming the cell.
ParsedMatrix parse_matrix_text(std::string_view text, bool normalize);
ParsedMatrix parse_matrix(const std::string& path, bool normalize);

struct RunConfig {
  // sgv | info | eps-ses | graph | compare | verify
  std::string command;
  std::string input;
  // text | json
  std::string format = "text";
  bool normalize = false;
  bool decimal = false;
  // eps-ses
  std::optional<std::string> delta;
  std::vector<int> ks;
  // verify: finest grid resolution; 0 picks one within budget.
  int grid = 0;
  std::uint64_t seed = 1;
  // info
  bool joint_informativeness = false;
  // graph: optional edge-list output file.
  std::string export_edges;
};

// Runs one command. The report goes to `out`, diagnostics to `err`; the
// return value is an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv, then run().
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

}  // namespace trustlp::cli

#endif  // TRUSTLP_CLI_H_
