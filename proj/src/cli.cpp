#include "nsflow/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <string>

#include "nsflow/dimacs.hpp"
#include "nsflow/error.hpp"
#include "nsflow/maxflow_simplex.hpp"
#include "nsflow/mcfp_simplex.hpp"
#include "nsflow/oracles.hpp"
#include "nsflow/reduction.hpp"
#include "nsflow/trace_io.hpp"

namespace nsflow::cli {

namespace {

using nlohmann::json;

struct GuardTripped {};

LeavingRule leaving_rule(const std::string& text) {
  auto rule = parse_leaving_rule(text);
  if (!rule) throw FlowError(ErrorCode::kParseError, "--leaving must be 'first' or 'last'");
  return *rule;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::trunc);
  if (!file) throw FlowError(ErrorCode::kParseError, "cannot write '" + path + "'");
  file << text;
}

std::string one_based(const std::vector<std::int32_t>& ids) {
  std::string out;
  for (auto id : ids) {
    if (!out.empty()) out += ' ';
    out += std::to_string(id + 1);
  }
  return out;
}

struct MaxflowArgs {
  std::string file;
  std::string algo = "simplex";
  std::string leaving = "first";
  std::string trace;
  std::string flow_out;
  bool json = false;
  bool cut = false;
};

int solve_maxflow(const MaxflowArgs& args, std::ostream& out) {
  const MfpNetwork net = dimacs::parse_max(dimacs::read_file(args.file));
  json report{{"tau", nullptr},     {"cost", nullptr},         {"pivots", nullptr},
              {"degenerate_pivots", nullptr}, {"cut_capacity", nullptr}, {"status", nullptr}};
  Flow flow;
  std::optional<MinCut> cut;

  if (args.algo == "simplex") {
    MaxFlowOptions options;
    options.leaving = leaving_rule(args.leaving);
    // solve_mfp normalizes the same way, so trace ids can be mapped back.
    const NormalizedMfp norm = normalize_mfp(net);
    std::optional<trace_io::TraceWriter> writer;
    if (!args.trace.empty()) {
      writer.emplace(args.trace, norm.edge_to_original);
      options.observer = [&](const MfpPivotView& view) {
        if (view.record == nullptr) {
          writer->initial(view.structure.hash(), 0);
        } else {
          writer->record(*view.record);
        }
      };
    }
    const MaxFlowResult result = solve_mfp(net, options);
    if (result.status == MaxFlowStatus::kGuardTripped) throw GuardTripped{};
    report["tau"] = result.tau;
    report["cost"] = -result.tau;
    report["pivots"] = result.trace.pivots.size();
    report["degenerate_pivots"] = result.degenerate_pivots;
    report["cut_capacity"] = result.min_cut.capacity;
    report["status"] = to_string(result.status);
    flow = result.flow;
    cut = result.min_cut;
  } else if (args.algo == "reduction") {
    McfpSolveOptions options;
    options.leaving = leaving_rule(args.leaving);
    const ReferenceMaxFlow result = solve_mfp_via_mcfp(net, options);
    if (result.status == McfpStatus::kGuardTripped) throw GuardTripped{};
    report["tau"] = result.tau;
    report["cost"] = -result.tau;
    report["pivots"] = result.pivots;
    report["degenerate_pivots"] = result.degenerate_pivots;
    report["status"] = to_string(result.status);
    flow = result.flow;
  } else if (args.algo == "ek") {
    const oracles::MaxFlowValue result = oracles::edmonds_karp(net);
    report["tau"] = result.tau;
    report["cost"] = -result.tau;
    report["status"] = "optimal";
    flow = result.flow;
  } else {
    throw FlowError(ErrorCode::kParseError, "--algo must be simplex, reduction or ek");
  }

  if (!args.flow_out.empty()) write_text(args.flow_out, dimacs::write_flow(flow));

  if (args.json) {
    out << report.dump() << '\n';
    return kSuccess;
  }
  out << "tau " << report["tau"].get<Quantity>() << '\n';
  if (!report["pivots"].is_null()) {
    out << "pivots " << report["pivots"].dump() << '\n';
    out << "degenerate_pivots " << report["degenerate_pivots"].dump() << '\n';
  }
  if (args.cut && cut) {
    out << "cut_capacity " << cut->capacity << '\n';
    out << "source_side " << one_based(cut->source_side) << '\n';
    out << "cut_arcs " << one_based(cut->cut_edges) << '\n';
  }
  return kSuccess;
}

int solve_mcfp_command(const std::string& file, const std::string& leaving, bool as_json,
                       const std::string& flow_out, std::ostream& out) {
  const McfpNetwork net = dimacs::parse_min(dimacs::read_file(file));
  McfpSolveOptions options;
  options.leaving = leaving_rule(leaving);
  const McfpSolveResult result = solve_mcfp(net, options);
  if (result.status == McfpStatus::kGuardTripped) throw GuardTripped{};
  const bool optimal = result.status == McfpStatus::kOptimal;
  if (optimal && !flow_out.empty()) write_text(flow_out, dimacs::write_flow(result.flow));

  if (as_json) {
    json report{{"tau", nullptr},
                {"cost", optimal ? json(result.cost) : json(nullptr)},
                {"pivots", result.trace.size()},
                {"degenerate_pivots", result.degenerate_pivots},
                {"cut_capacity", nullptr},
                {"status", to_string(result.status)}};
    out << report.dump() << '\n';
  } else if (optimal) {
    out << "cost " << result.cost << '\n';
    out << "pivots " << result.trace.size() << '\n';
  } else {
    out << "infeasible\n";
  }
  return optimal ? kSuccess : kInfeasibleOrDisagreement;
}

void print_report(const ValidityReport& report, std::ostream& out) {
  for (const auto& v : report.capacity) {
    out << "capacity arc " << v.edge + 1 << " flow " << v.value << " bounds [" << v.lower << ", "
        << v.upper << "]\n";
  }
  for (const auto& v : report.balance) {
    out << "balance node " << v.vertex + 1 << " net_inflow " << v.net_inflow << " expected "
        << v.expected << '\n';
  }
}

int verify(const std::string& file, const std::string& flow_file, std::ostream& out) {
  const std::string text = dimacs::read_file(file);
  const std::string flow_text = dimacs::read_file(flow_file);
  if (dimacs::detect_kind(text) == dimacs::ProblemKind::kMax) {
    const MfpNetwork net = dimacs::parse_max(text);
    const Flow f = dimacs::parse_flow(flow_text, net.graph().edge_count());
    const ValidityReport report = validate_mfp_flow(net, f);
    if (!report.ok()) {
      print_report(report, out);
      out << "invalid\n";
      return kInfeasibleOrDisagreement;
    }
    out << "valid\ntau " << flow_value(net, f) << '\n';
    return kSuccess;
  }
  const McfpNetwork net = dimacs::parse_min(text);
  const Flow f = dimacs::parse_flow(flow_text, net.graph().edge_count());
  const ValidityReport report = validate_mcfp_flow(net, f);
  if (!report.ok()) {
    print_report(report, out);
    out << "invalid\n";
    return kInfeasibleOrDisagreement;
  }
  out << "valid\ncost " << flow_cost(net, f) << '\n';
  return kSuccess;
}

int check_cycling(const std::string& path, std::ostream& out) {
  const PivotTrace trace = trace_io::parse_trace(dimacs::read_file(path));
  const CyclingReport report = detect_cycling(trace);
  for (const auto& r : report.repeats) {
    out << "cycle structure " << hash_to_hex(r.structure_hash) << " at pivots " << r.first_index
        << " and " << r.repeat_index << '\n';
  }
  for (const auto& le : report.leaving_entering) {
    out << "leaving-entering arc " << le.edge + 1 << " left at pivot " << le.left_at
        << " re-entered at pivot " << le.entered_at << '\n';
  }
  out << "pivots " << trace.pivots.size() << '\n';
  if (report.cycling()) {
    out << "cycling detected\n";
    return kInfeasibleOrDisagreement;
  }
  out << "no cycling detected\n";
  return kSuccess;
}

std::pair<std::uint64_t, std::uint64_t> seed_range(const std::string& text) {
  const auto dots = text.find("..");
  auto parse = [&](std::string_view s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw FlowError(ErrorCode::kParseError, "--seeds expects A..B");
    }
    return v;
  };
  if (dots == std::string::npos) {
    const auto v = parse(text);
    return {v, v};
  }
  const std::string_view sv(text);
  const auto lo = parse(sv.substr(0, dots));
  const auto hi = parse(sv.substr(dots + 2));
  if (hi < lo) throw FlowError(ErrorCode::kParseError, "--seeds range is empty");
  return {lo, hi};
}

int bench(const std::string& seeds, const std::string& leaving, oracles::InstanceParams params,
          std::ostream& out) {
  const auto [lo, hi] = seed_range(seeds);
  const LeavingRule rule = leaving_rule(leaving);
  std::uint64_t agree = 0;
  std::int64_t simplex_pivots = 0, simplex_degenerate = 0;
  std::int64_t reduction_pivots = 0;
  bool guard = false;
  for (std::uint64_t seed = lo; seed <= hi; ++seed) {
    params.seed = seed;
    const MfpNetwork net = oracles::random_network(params);
    MaxFlowOptions mf;
    mf.leaving = rule;
    const MaxFlowResult simplex = solve_mfp(net, mf);
    McfpSolveOptions mc;
    mc.leaving = rule;
    const ReferenceMaxFlow reduction = solve_mfp_via_mcfp(net, mc);
    const Quantity ek = oracles::edmonds_karp(net).tau;
    guard = guard || simplex.status != MaxFlowStatus::kOptimal ||
            reduction.status != McfpStatus::kOptimal;
    simplex_pivots += static_cast<std::int64_t>(simplex.trace.pivots.size());
    simplex_degenerate += simplex.degenerate_pivots;
    reduction_pivots += reduction.pivots;
    if (simplex.tau == ek && reduction.tau == ek) {
      ++agree;
    } else {
      out << "seed " << seed << " disagreement: simplex " << simplex.tau << " reduction "
          << reduction.tau << " ek " << ek << '\n';
    }
    if (seed == hi) break;
  }
  const std::uint64_t total = hi - lo + 1;
  out << "agreement " << agree << '/' << total << '\n';
  out << "simplex_pivots " << simplex_pivots << '\n';
  out << "simplex_degenerate_pivots " << simplex_degenerate << '\n';
  out << "reduction_pivots " << reduction_pivots << '\n';
  if (guard) return kGuardTripped;
  return agree == total ? kSuccess : kInfeasibleOrDisagreement;
}

int exit_code_for(const FlowError& e) {
  return e.code() == ErrorCode::kInternalInvariantViolation ? kGuardTripped : kInputError;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Network simplex solvers for maximum flow and minimum cost flow", "nsflow"};
  app.require_subcommand(1);

  MaxflowArgs mf;
  auto* maxflow = app.add_subcommand("solve-maxflow", "Solve a DIMACS max-flow instance");
  maxflow->add_option("file", mf.file, "DIMACS max-flow file")->required();
  maxflow->add_option("--algo", mf.algo, "simplex | reduction | ek")
      ->check(CLI::IsMember({"simplex", "reduction", "ek"}));
  maxflow->add_option("--leaving", mf.leaving, "Leaving-edge rule: first | last")
      ->check(CLI::IsMember({"first", "last"}));
  maxflow->add_option("--trace", mf.trace, "Write pivot records to this file");
  maxflow->add_option("--flow-out", mf.flow_out, "Write the flow to this file");
  maxflow->add_flag("--json", mf.json, "Print a JSON summary");
  maxflow->add_flag("--cut", mf.cut, "Print the minimum cut");

  std::string mc_file, mc_leaving = "first", mc_flow_out;
  bool mc_json = false;
  auto* mcfp = app.add_subcommand("solve-mcfp", "Solve a DIMACS min-cost-flow instance");
  mcfp->add_option("file", mc_file, "DIMACS min-cost file")->required();
  mcfp->add_option("--leaving", mc_leaving, "Leaving-edge rule: first | last")
      ->check(CLI::IsMember({"first", "last"}));
  mcfp->add_option("--flow-out", mc_flow_out, "Write the flow to this file");
  mcfp->add_flag("--json", mc_json, "Print a JSON summary");

  std::string verify_file, verify_flow;
  auto* ver = app.add_subcommand("verify", "Check a flow file against an instance");
  ver->add_option("file", verify_file, "DIMACS max or min file")->required();
  ver->add_option("--flow", verify_flow, "Flow file")->required();

  std::uint64_t gen_seed = 0;
  VertexId gen_nodes = 10;
  EdgeId gen_edges = 0;
  Quantity gen_maxcap = 20;
  double gen_zero = 0.2;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a random max-flow instance");
  gen->add_option("--seed", gen_seed, "Random seed")->required();
  gen->add_option("--nodes", gen_nodes, "Vertex count")->check(CLI::Range(2, 1 << 20));
  gen->add_option("--edges", gen_edges, "Edge count (default 2 * nodes)")
      ->check(CLI::Range(1, 1 << 24));
  gen->add_option("--maxcap", gen_maxcap, "Maximum capacity")->check(CLI::NonNegativeNumber);
  gen->add_option("--zero-prob", gen_zero, "Probability of zero capacity")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("-o", gen_out, "Output file (default: standard output)");

  std::string cycling_trace;
  auto* cyc = app.add_subcommand("check-cycling", "Look for repeated structures in a trace");
  cyc->add_option("--trace", cycling_trace, "Trace file")->required();

  std::string bench_seeds, bench_leaving = "first";
  oracles::InstanceParams bench_params;
  auto* bn = app.add_subcommand("bench", "Cross-check all max-flow solvers on random instances");
  bn->add_option("--seeds", bench_seeds, "Seed range A..B")->required();
  bn->add_option("--leaving", bench_leaving, "Leaving-edge rule: first | last")
      ->check(CLI::IsMember({"first", "last"}));
  bn->add_option("--nodes", bench_params.max_vertices, "Maximum vertex count")
      ->check(CLI::Range(2, 1 << 20));
  bn->add_option("--edges", bench_params.max_edges, "Maximum edge count")
      ->check(CLI::Range(1, 1 << 24));
  bn->add_option("--maxcap", bench_params.max_capacity, "Maximum capacity")
      ->check(CLI::NonNegativeNumber);
  bn->add_option("--zero-prob", bench_params.zero_capacity_probability,
                 "Probability of zero capacity")
      ->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*maxflow) return solve_maxflow(mf, out);
    if (*mcfp) return solve_mcfp_command(mc_file, mc_leaving, mc_json, mc_flow_out, out);
    if (*ver) return verify(verify_file, verify_flow, out);
    if (*gen) {
      oracles::InstanceParams p;
      p.seed = gen_seed;
      p.min_vertices = p.max_vertices = gen_nodes;
      p.min_edges = p.max_edges = gen_edges > 0 ? gen_edges : 2 * gen_nodes;
      p.max_capacity = gen_maxcap;
      p.zero_capacity_probability = gen_zero;
      const std::string text = dimacs::write_max(oracles::random_network(p));
      if (gen_out.empty()) {
        out << text;
      } else {
        write_text(gen_out, text);
      }
      return kSuccess;
    }
    if (*cyc) return check_cycling(cycling_trace, out);
    if (*bn) return bench(bench_seeds, bench_leaving, bench_params, out);
  } catch (const GuardTripped&) {
    err << "error: pivot cap reached\n";
    return kGuardTripped;
  } catch (const FlowError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kInputError;
}

}  // namespace nsflow::cli
