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

#include "trustlp/cli.h"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "trustlp/equilibrium.h"
#include "trustlp/graph.h"
#include "trustlp/oracle.h"
#include "trustlp/programs.h"

namespace trustlp::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr int kPropertyRunCount = 200;

struct Token {
  std::string text;
  int column;
};

std::vector<Token> split_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) {
      out.push_back({std::string(line.substr(start, i - start)),
                     static_cast<int>(start) + 1});
    }
  }
  return out;
}

// U+2212 MINUS SIGN reads as '-'.
std::string ascii_minus(std::string text) {
  const std::string minus = "\xE2\x88\x92";
  for (std::size_t p; (p = text.find(minus)) != std::string::npos;) {
    text.replace(p, minus.size(), "-");
  }
  return text;
}

Json rational(const Rational& v) { return to_string(v); }

Json matrix(const Matrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json optional_rational(const std::optional<Rational>& v) {
  return v ? Json(to_string(*v)) : Json(nullptr);
}

Json edge(const Edge& e) {
  return Json{{"tail", e.tail + 1}, {"head", e.head + 1}, {"weight", rational(e.weight)}};
}

// Mirror of `j` with every non-integer rational string rounded.
Json decimal_mirror(const Json& j) {
  if (j.is_object()) {
    Json out = Json::object();
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "schema" || it.key() == "command") continue;
      out[it.key()] = decimal_mirror(it.value());
    }
    return out;
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& v : j) out.push_back(decimal_mirror(v));
    return out;
  }
  if (j.is_string()) {
    if (auto v = parse_rational(j.get<std::string>())) return to_decimal_string(*v);
  }
  return j;
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "n/a";
  return j.dump();
}

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

bool all_of(const Json& j, bool (*pred)(const Json&)) {
  for (const auto& v : j) {
    if (!pred(v)) return false;
  }
  return true;
}

bool is_scalar_array(const Json& j) { return j.is_array() && all_of(j, is_scalar); }

bool is_flat_object(const Json& j) {
  if (!j.is_object()) return false;
  for (const auto& v : j) {
    if (!is_scalar(v)) return false;
  }
  return true;
}

void render(const Json& j, std::ostream& out, int indent);

void render_value(const std::string& key, const Json& v, std::ostream& out,
                  int indent) {
  std::string pad(indent, ' ');
  if (is_scalar(v)) {
    out << pad << key << ": " << scalar_text(v) << "\n";
  } else if (is_scalar_array(v)) {
    out << pad << key << ": [";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar_text(v[i]);
    out << "]\n";
  } else if (v.is_array() && !v.empty() && all_of(v, is_scalar_array)) {
    // Matrix, columns right-aligned.
    std::size_t width = 0;
    for (const auto& row : v) {
      for (const auto& x : row) width = std::max(width, scalar_text(x).size());
    }
    out << pad << key << ":\n";
    for (const auto& row : v) {
      out << pad << " ";
      for (const auto& x : row) {
        std::string s = scalar_text(x);
        out << " " << std::string(width - s.size(), ' ') << s;
      }
      out << "\n";
    }
  } else if (v.is_array() && !v.empty() && all_of(v, is_flat_object)) {
    // Table keyed by the first row's fields.
    std::vector<std::string> keys;
    for (auto it = v[0].begin(); it != v[0].end(); ++it) keys.push_back(it.key());
    std::vector<std::size_t> width;
    for (const auto& k : keys) {
      std::size_t w = k.size();
      for (const auto& row : v) w = std::max(w, scalar_text(row.value(k, Json())).size());
      width.push_back(w);
    }
    out << pad << key << ":\n" << pad << " ";
    for (std::size_t c = 0; c < keys.size(); ++c) {
      out << " " << std::string(width[c] - keys[c].size(), ' ') << keys[c];
    }
    out << "\n";
    for (const auto& row : v) {
      out << pad << " ";
      for (std::size_t c = 0; c < keys.size(); ++c) {
        std::string s = scalar_text(row.value(keys[c], Json()));
        out << " " << std::string(width[c] - s.size(), ' ') << s;
      }
      out << "\n";
    }
  } else if (v.is_array()) {
    out << pad << key << ":" << (v.empty() ? " []" : "") << "\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      render_value("[" + std::to_string(i + 1) + "]", v[i], out, indent + 2);
    }
  } else {
    out << pad << key << ":\n";
    render(v, out, indent + 2);
  }
}

void render(const Json& j, std::ostream& out, int indent) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    render_value(it.key(), it.value(), out, indent);
  }
}

std::vector<int> grid_chain(int finest) {
  std::vector<int> chain{finest};
  for (int i = 0; i < 2 && chain.front() % 2 == 0 && chain.front() > 1; ++i) {
    chain.insert(chain.begin(), chain.front() / 2);
  }
  return chain;
}

int default_grid(int q, std::uint64_t budget) {
  for (int n : {16, 8, 4, 2, 1}) {
    if (grid_size(q, n) <= budget) return n;
  }
  return 0;
}

Json strategies_json(const StrategyPair& p) {
  return Json{{"sender", matrix(p.sender.matrix())},
              {"receiver", matrix(p.receiver.matrix())}};
}

Json cmd_sgv(const UtilityMatrix& u) {
  LpCertificate cert = solve_certified(u);
  int q = u.size();
  RecoveryKernel mu = kernel_from_solution(q, cert.primal);
  DualAssignment dual = dual_assignment(q, cert);
  Json w = Json::array();
  for (const auto& x : dual.w) w.push_back(rational(x));
  StrategyPair witness = kernel_to_strategies(mu);
  return Json{
      {"sgv", rational(cert.objective)},
      {"kernel", matrix(mu.matrix())},
      {"dual", {{"w", w}, {"v", matrix(dual.v)}}},
      {"certification",
       {{"status", lp::to_string(cert.status)},
        {"strong_duality", cert.strong_duality_verified},
        {"complementary_slackness", cert.complementary_slackness_verified}}},
      {"attained_exactly", wceu(u, witness.sender).value == cert.objective},
  };
}

Json cmd_info(const UtilityMatrix& u, bool joint) {
  EquilibriumReport r = solve_game(
      u, joint ? InformativenessForm::kJoint : InformativenessForm::kTwoStage);
  Json bounds = nullptr;
  if (auto b = sgv_info_bounds(u, r.sgv)) {
    bounds = Json{{"lower", rational(b->lower)},
                  {"upper", rational(b->upper)},
                  {"u_plus", optional_rational(b->u_plus)},
                  {"u_minus", optional_rational(b->u_minus)}};
  }
  return Json{
      {"informativeness", rational(r.informativeness)},
      {"sgv", rational(r.sgv)},
      {"program", joint ? "joint" : "two-stage"},
      {"kernel", matrix(r.kernel.matrix())},
      {"witness", strategies_json(r.witness)},
      {"full_disclosure", r.full_disclosure},
      {"all_off_diagonal_negative", full_disclosure_check(u)},
      {"bounds", bounds},
  };
}

Json cmd_eps_ses(const UtilityMatrix& u, const RunConfig& config, std::ostream& err) {
  std::optional<Rational> delta;
  if (config.delta) {
    delta = parse_rational(*config.delta);
    if (!delta) throw InvalidInstance("--delta is not a number: " + *config.delta);
  }
  std::vector<int> ks = config.ks.empty() ? std::vector<int>{1, 10, 100} : config.ks;
  EquilibriumReport r = solve_game(u);
  EpsSesSequence seq = eps_ses_sequence(u, r.kernel, ks, delta);
  if (seq.attained) err << "note: the limit strategy attains the value\n";
  Json steps = Json::array();
  for (const auto& s : seq.steps) {
    steps.push_back({{"k", s.k},
                     {"epsilon", rational(s.epsilon)},
                     {"wceu", rational(s.wceu)},
                     {"unique_br", s.unique_br}});
  }
  return Json{{"sgv", rational(seq.sgv)},
              {"delta", rational(seq.delta)},
              {"attained", seq.attained},
              {"steps", steps},
              {"limit", strategies_json(seq.limit)}};
}

Json cmd_graph(const UtilityMatrix& u, const RunConfig& config, std::string& failure) {
  ObfuscationGraph g = obfuscation_graph(u);
  GraphShape shape = detect_shape(g);
  Matching m = max_weight_matching(g, shape);
  EquilibriumReport r = solve_game(u);

  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back(edge(e));
  Json order = Json::array();
  for (int v : shape.order) order.push_back(v + 1);
  Json matched = Json::array();
  for (const Edge& e : m.edges) matched.push_back(edge(e));

  std::optional<Rational> cf_sgv, cf_info;
  try {
    cf_sgv = closed_form_sgv(shape, g);
  } catch (const NotApplicable&) {
  }
  try {
    cf_info = closed_form_informativeness(shape, g);
  } catch (const NotApplicable&) {
  }
  Json agreement{{"sgv", cf_sgv ? Json(*cf_sgv == r.sgv) : Json(nullptr)},
                 {"informativeness",
                  cf_info ? Json(*cf_info == r.informativeness) : Json(nullptr)},
                 {"matching_lower_bound", m.weight <= r.sgv}};
  if (cf_sgv && *cf_sgv != r.sgv) failure = "closed-form sgv disagrees with the LP";
  if (cf_info && *cf_info != r.informativeness) {
    failure = "closed-form informativeness disagrees with the LP";
  }
  if (m.weight > r.sgv) failure = "matching weight exceeds the LP value";

  if (!config.export_edges.empty()) {
    std::ofstream file(config.export_edges);
    file << edge_list_text(g);
    if (!file) throw Error("cannot write " + config.export_edges);
  }
  return Json{
      {"edges", edges},
      {"shape",
       {{"tag", to_string(shape.tag)},
        {"order", order},
        {"uniform_weight", optional_rational(shape.uniform_weight)}}},
      {"matching", {{"weight", rational(m.weight)}, {"edges", matched}}},
      {"closed_form",
       {{"sgv", optional_rational(cf_sgv)}, {"informativeness", optional_rational(cf_info)}}},
      {"lp",
       {{"sgv", rational(r.sgv)}, {"informativeness", rational(r.informativeness)}}},
      {"agreement", agreement},
  };
}

Json cmd_compare(const UtilityMatrix& u) {
  SettingsComparison c = compare_settings(u);
  Json cover = Json::array();
  for (const auto& clique : c.cover.cliques) {
    Json members = Json::array();
    for (int v : clique) members.push_back(v + 1);
    cover.push_back(members);
  }
  return Json{{"behavioral", rational(c.behavioral)},
              {"deterministic", c.deterministic},
              {"ordering", c.ordering},
              {"cover", cover}};
}

Json cmd_verify(const UtilityMatrix& u, const RunConfig& config) {
  int q = u.size();
  GridSpec spec;
  int finest = config.grid > 0 ? config.grid : default_grid(q, spec.budget);
  std::vector<int> chain = finest > 0 ? grid_chain(finest) : std::vector<int>{};
  OracleReport report = cross_check(u, chain, spec);
  PropertyRun run = trust_closure_run(q, config.seed, kPropertyRunCount);

  Json grid = Json::array();
  for (const auto& level : report.grid) {
    grid.push_back({{"resolution", level.result.resolution},
                    {"best_wceu", rational(level.result.best_wceu)},
                    {"gap", rational(level.gap)},
                    {"evaluated", level.result.evaluated},
                    {"witness", matrix(level.result.witness.matrix())}});
  }
  Json vertex = nullptr;
  if (report.vertex) {
    vertex = Json{{"value", rational(report.vertex->best_value)},
                  {"vertices", report.vertex->vertices.size()},
                  {"witness", matrix(report.vertex->witness.matrix())}};
  }
  return Json{{"lp_sgv", rational(report.lp_sgv)},
              {"grid", grid},
              {"vertex_enumeration", vertex},
              {"kernels_checked", report.kernels_checked},
              {"trust_closure",
               {{"seed", run.seed},
                {"strategies", run.strategies},
                {"kernels", run.kernels}}},
              {"status", "ok"}};
}

}  // namespace

ParsedMatrix parse_matrix_text(std::string_view text, bool normalize) {
  std::vector<std::pair<int, std::string>> lines;  // (line number, content)
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line = ascii_minus(std::string(text.substr(pos, end - pos)));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++number;
    auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] != '#') lines.emplace_back(number, line);
    if (end == text.size()) break;
    pos = end + 1;
  }
  if (lines.empty()) throw ParseError("empty input, expected the matrix size", number, 0);

  auto header = split_line(lines[0].second);
  if (header.size() != 1) {
    throw ParseError("expected a single matrix size", lines[0].first,
                     header.size() > 1 ? header[1].column : 0);
  }
  auto size = parse_rational(header[0].text);
  if (!size || denominator(*size) != 1 || *size < 1 || *size > 1000) {
    throw ParseError("matrix size must be an integer in [1, 1000], got '" +
                         header[0].text + "'",
                     lines[0].first, header[0].column);
  }
  int q = static_cast<int>(numerator(*size));
  if (static_cast<int>(lines.size()) - 1 < q) {
    throw ParseError("expected " + std::to_string(q) + " rows, found " +
                         std::to_string(lines.size() - 1),
                     number, 0);
  }
  if (static_cast<int>(lines.size()) - 1 > q) {
    throw ParseError("unexpected row after the " + std::to_string(q) + "x" +
                         std::to_string(q) + " matrix",
                     lines[q + 1].first, 0);
  }

  Matrix m(q, q);
  for (int r = 0; r < q; ++r) {
    auto [line_no, content] = lines[r + 1];
    auto tokens = split_line(content);
    if (static_cast<int>(tokens.size()) != q) {
      int column = static_cast<int>(tokens.size()) > q ? tokens[q].column
                                                        : static_cast<int>(content.size()) + 1;
      throw ParseError("expected " + std::to_string(q) + " entries, found " +
                           std::to_string(tokens.size()),
                       line_no, column);
    }
    for (int c = 0; c < q; ++c) {
      auto value = parse_rational(tokens[c].text);
      if (!value) {
        throw ParseError("malformed number '" + tokens[c].text + "'", line_no,
                         tokens[c].column);
      }
      m(r, c) = *value;
    }
  }
  if (normalize) {
    auto [u, shift] = UtilityMatrix::normalized(std::move(m));
    return {std::move(u), shift};
  }
  return {UtilityMatrix(std::move(m)), std::nullopt};
}

ParsedMatrix parse_matrix(const std::string& path, bool normalize) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot open " + path, 0, 0);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_matrix_text(buffer.str(), normalize);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.format != "text" && config.format != "json") {
      err << "error: unknown format '" << config.format << "'\n";
      return kUsage;
    }
    ParsedMatrix input = parse_matrix(config.input, config.normalize);
    const UtilityMatrix& u = input.u;
    if (input.shift) {
      err << "note: diagonal subtracted per column; objective shift "
          << to_string(*input.shift) << "\n";
    }

    std::string failure;
    Json body;
    if (config.command == "sgv") {
      body = cmd_sgv(u);
    } else if (config.command == "info") {
      body = cmd_info(u, config.joint_informativeness);
    } else if (config.command == "eps-ses") {
      body = cmd_eps_ses(u, config, err);
    } else if (config.command == "graph") {
      body = cmd_graph(u, config, failure);
    } else if (config.command == "compare") {
      body = cmd_compare(u);
    } else if (config.command == "verify") {
      body = cmd_verify(u, config);
    } else {
      err << "error: unknown command '" << config.command << "'\n";
      return kUsage;
    }

    Json report{{"schema", kSchemaVersion}, {"command", config.command}, {"q", u.size()}};
    if (input.shift) report["objective_shift"] = rational(*input.shift);
    for (auto it = body.begin(); it != body.end(); ++it) report[it.key()] = it.value();
    if (config.decimal) report["decimal"] = decimal_mirror(body);

    if (config.format == "json") {
      out << report.dump(2) << "\n";
    } else {
      render(report, out, 0);
    }
    if (!failure.empty()) {
      err << "verification failure: " << failure << "\n";
      return kVerification;
    }
    return kOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const InvalidInstance& e) {
    err << "invalid instance: " << e.what() << "\n";
    return kInvalidInstance;
  } catch (const NotApplicable& e) {
    err << "not applicable: " << e.what() << "\n";
    return kInvalidInstance;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const CertificationFailure& e) {
    err << "certification failure: " << e.what() << "\n";
    return kVerification;
  } catch (const VerificationFailure& e) {
    err << "verification failure: " << e.what() << "\n";
    return kVerification;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kVerification;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Exact analysis of trust-constrained sender-receiver games."};
  app.require_subcommand(1, 1);
  RunConfig config;

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", config.input, "utility matrix text file")->required();
    sub->add_option("--format", config.format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--normalize", config.normalize,
                  "subtract the diagonal from each column instead of rejecting it");
    sub->add_flag("--decimal", config.decimal, "add rounded decimal values");
  };
  common(app.add_subcommand("sgv", "game value with a certified optimal kernel"));
  auto* info = app.add_subcommand("info", "informativeness and its bounds");
  common(info);
  info->add_flag("--joint-informativeness", config.joint_informativeness,
                 "solve the single joint program instead of two stages");
  auto* eps = app.add_subcommand("eps-ses", "approximate equilibrium sequence");
  common(eps);
  eps->add_option("--delta", config.delta, "perturbation size (rational)");
  eps->add_option("--ks", config.ks, "sequence indices, comma separated")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  auto* graph = app.add_subcommand("graph", "obfuscation graph analysis");
  common(graph);
  graph->add_option("--export", config.export_edges, "write the edge list here");
  common(app.add_subcommand("compare", "randomized vs deterministic informativeness"));
  auto* verify = app.add_subcommand("verify", "brute-force oracle cross-check");
  common(verify);
  verify->add_option("--grid", config.grid, "finest grid resolution")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", config.seed, "seed for the randomized property run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  config.command = app.get_subcommands().front()->get_name();
  return run(config, out, err);
}

}  // namespace trustlp::cli
