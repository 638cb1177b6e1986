#include "nsflow/dimacs.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "nsflow/error.hpp"

namespace nsflow::dimacs {

namespace {

struct Line {
  std::int64_t number;
  std::vector<std::string_view> tokens;
};

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Non-blank, non-comment lines.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::int64_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++number;
    auto tokens = split(text.substr(pos, end - pos));
    if (!tokens.empty() && tokens.front() != "c") out.push_back({number, std::move(tokens)});
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

[[noreturn]] void fail(ErrorCode code, const Line& line, const std::string& what) {
  throw FlowError(code, "line " + std::to_string(line.number) + ": " + what, line.number);
}

Quantity integer(const Line& line, std::size_t i) {
  const std::string_view tok = line.tokens[i];
  Quantity out = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    fail(ErrorCode::kParseError, line, "expected an integer, got '" + std::string(tok) + "'");
  }
  return out;
}

void expect_arity(const Line& line, std::size_t count) {
  if (line.tokens.size() != count) {
    fail(ErrorCode::kParseError, line,
         "expected " + std::to_string(count) + " fields, got " + std::to_string(line.tokens.size()));
  }
}

VertexId vertex(const Line& line, std::size_t i, VertexId n) {
  const Quantity id = integer(line, i);
  if (id < 1 || id > n) {
    fail(ErrorCode::kParseError, line, "vertex id " + std::to_string(id) + " outside 1.." +
                                           std::to_string(n));
  }
  return static_cast<VertexId>(id - 1);
}

struct Problem {
  VertexId vertices = 0;
  EdgeId arcs = 0;
};

Problem problem_line(const Line& line, std::string_view kind, std::optional<Problem>& seen) {
  if (seen) fail(ErrorCode::kDuplicateProblemLine, line, "second problem line");
  expect_arity(line, 4);
  if (line.tokens[1] != kind) {
    fail(ErrorCode::kParseError, line,
         "expected problem type '" + std::string(kind) + "', got '" + std::string(line.tokens[1]) +
             "'");
  }
  const Quantity n = integer(line, 2);
  const Quantity m = integer(line, 3);
  if (n < 0 || m < 0 || n > INT32_MAX || m > INT32_MAX) {
    fail(ErrorCode::kParseError, line, "vertex and arc counts must be non-negative");
  }
  seen = Problem{static_cast<VertexId>(n), static_cast<EdgeId>(m)};
  return *seen;
}

void require_problem(const Line& line, const std::optional<Problem>& seen) {
  if (!seen) fail(ErrorCode::kParseError, line, "descriptor before the problem line");
}

void check_arc_total(const std::optional<Problem>& problem, std::size_t arcs) {
  if (!problem) throw FlowError(ErrorCode::kParseError, "missing problem line");
  if (static_cast<std::size_t>(problem->arcs) != arcs) {
    throw FlowError(ErrorCode::kParseError, "problem line declares " +
                                                std::to_string(problem->arcs) + " arcs, found " +
                                                std::to_string(arcs));
  }
}

Arc arc_endpoints(const Line& line, VertexId n) {
  const Arc a{vertex(line, 1, n), vertex(line, 2, n)};
  if (a.tail == a.head) fail(ErrorCode::kParseError, line, "self-loop arc");
  return a;
}

}  // namespace

MfpNetwork parse_max(std::string_view text) {
  std::optional<Problem> problem;
  std::optional<VertexId> source, sink;
  std::vector<Arc> arcs;
  std::vector<Quantity> capacity;

  for (const Line& line : content_lines(text)) {
    const std::string_view kind = line.tokens.front();
    if (kind == "p") {
      problem_line(line, "max", problem);
    } else if (kind == "n") {
      require_problem(line, problem);
      expect_arity(line, 3);
      const VertexId v = vertex(line, 1, problem->vertices);
      auto& slot = line.tokens[2] == "s" ? source : sink;
      if (line.tokens[2] != "s" && line.tokens[2] != "t") {
        fail(ErrorCode::kParseError, line, "node designation must be 's' or 't'");
      }
      if (slot) {
        fail(ErrorCode::kMissingSourceOrSink, line,
             std::string("second '") + std::string(line.tokens[2]) + "' node line");
      }
      slot = v;
    } else if (kind == "a") {
      require_problem(line, problem);
      expect_arity(line, 4);
      arcs.push_back(arc_endpoints(line, problem->vertices));
      const Quantity c = integer(line, 3);
      if (c < 0) fail(ErrorCode::kParseError, line, "negative capacity");
      capacity.push_back(c);
    } else {
      fail(ErrorCode::kParseError, line, "unknown line type '" + std::string(kind) + "'");
    }
  }
  check_arc_total(problem, arcs.size());
  if (!source || !sink) {
    throw FlowError(ErrorCode::kMissingSourceOrSink, "need exactly one 's' and one 't' node line");
  }
  return MfpNetwork(Digraph::build(problem->vertices, std::move(arcs)), std::move(capacity),
                    *source, *sink);
}

std::string write_max(const MfpNetwork& net) {
  const Digraph& g = net.graph();
  std::ostringstream out;
  out << "p max " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  out << "n " << net.source() + 1 << " s\n";
  out << "n " << net.sink() + 1 << " t\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out << "a " << g.tail(e) + 1 << ' ' << g.head(e) + 1 << ' ' << net.capacity(e) << '\n';
  }
  return out.str();
}

McfpNetwork parse_min(std::string_view text) {
  std::optional<Problem> problem;
  std::vector<Quantity> demand;
  std::vector<char> demand_set;
  std::vector<Arc> arcs;
  std::vector<Quantity> lower, upper, cost;

  for (const Line& line : content_lines(text)) {
    const std::string_view kind = line.tokens.front();
    if (kind == "p") {
      problem_line(line, "min", problem);
      demand.assign(static_cast<std::size_t>(problem->vertices), 0);
      demand_set.assign(static_cast<std::size_t>(problem->vertices), 0);
    } else if (kind == "n") {
      require_problem(line, problem);
      expect_arity(line, 3);
      const auto v = static_cast<std::size_t>(vertex(line, 1, problem->vertices));
      if (demand_set[v]) fail(ErrorCode::kParseError, line, "second node line for this vertex");
      demand_set[v] = 1;
      demand[v] = integer(line, 2);
    } else if (kind == "a") {
      require_problem(line, problem);
      expect_arity(line, 6);
      arcs.push_back(arc_endpoints(line, problem->vertices));
      lower.push_back(integer(line, 3));
      upper.push_back(integer(line, 4));
      cost.push_back(integer(line, 5));
      if (lower.back() < 0 || lower.back() > upper.back()) {
        fail(ErrorCode::kParseError, line, "bounds must satisfy 0 <= low <= cap");
      }
    } else {
      fail(ErrorCode::kParseError, line, "unknown line type '" + std::string(kind) + "'");
    }
  }
  check_arc_total(problem, arcs.size());
  return McfpNetwork(Digraph::build(problem->vertices, std::move(arcs)), std::move(lower),
                     std::move(upper), std::move(cost), std::move(demand));
}

std::string write_min(const McfpNetwork& net) {
  const Digraph& g = net.graph();
  std::ostringstream out;
  out << "p min " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (net.demand(v) != 0) out << "n " << v + 1 << ' ' << net.demand(v) << '\n';
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out << "a " << g.tail(e) + 1 << ' ' << g.head(e) + 1 << ' ' << net.lower(e) << ' '
        << net.upper(e) << ' ' << net.cost(e) << '\n';
  }
  return out.str();
}

ProblemKind detect_kind(std::string_view text) {
  for (const Line& line : content_lines(text)) {
    if (line.tokens.front() != "p") continue;
    if (line.tokens.size() >= 2 && line.tokens[1] == "max") return ProblemKind::kMax;
    if (line.tokens.size() >= 2 && line.tokens[1] == "min") return ProblemKind::kMin;
    fail(ErrorCode::kParseError, line, "unknown problem type");
  }
  throw FlowError(ErrorCode::kParseError, "missing problem line");
}

Flow parse_flow(std::string_view text, EdgeId edge_count) {
  Flow f(static_cast<std::size_t>(edge_count));
  std::vector<char> seen(static_cast<std::size_t>(edge_count), 0);
  for (const Line& line : content_lines(text)) {
    if (line.tokens.front() != "f") {
      fail(ErrorCode::kParseError, line, "expected an 'f <arc> <value>' line");
    }
    expect_arity(line, 3);
    const Quantity arc = integer(line, 1);
    if (arc < 1 || arc > edge_count) {
      fail(ErrorCode::kParseError, line, "arc number outside 1.." + std::to_string(edge_count));
    }
    const auto e = static_cast<EdgeId>(arc - 1);
    if (seen[static_cast<std::size_t>(e)]) fail(ErrorCode::kParseError, line, "arc listed twice");
    seen[static_cast<std::size_t>(e)] = 1;
    f[e] = integer(line, 2);
  }
  return f;
}

std::string write_flow(const Flow& f) {
  std::ostringstream out;
  for (std::size_t e = 0; e < f.size(); ++e) {
    out << "f " << e + 1 << ' ' << f[static_cast<EdgeId>(e)] << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FlowError(ErrorCode::kParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace nsflow::dimacs
