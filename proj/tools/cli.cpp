#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ballsat/bench.hpp"
#include "ballsat/covering_code.hpp"
#include "ballsat/csp.hpp"
#include "ballsat/error.hpp"
#include "ballsat/formats.hpp"
#include "ballsat/sat_solver.hpp"

namespace ballsat::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << content;
}

struct SolveOptions {
  std::string input;
  std::string mode = "det";
  std::string format;
  unsigned t = 0;
  double epsilon = 0.1;
  unsigned block_len = 0;
  double rho = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t trial_cap = 0;
  unsigned jobs = 1;
  unsigned box_block_len = 4;
  std::string stats;
  std::string code_cache;
};

struct GencodeOptions {
  unsigned q = 2;
  unsigned t = 1;
  unsigned radius = 0;
  std::string method = "greedy";
  std::uint64_t size = 0;
  std::uint64_t seed = 0;
  unsigned attempts = 10;
  std::string out;
};

struct ReduceOptions {
  std::string input;
  std::string outdir;
  unsigned box_block_len = 4;
};

struct BenchOptions {
  unsigned k = 3;
  unsigned t = 6;
  std::string r_range = "4:14";
  std::uint64_t trials = 50;
  std::uint64_t seed = 1;
  std::size_t n = 0;
  double density = 4.2;
  std::vector<std::string> engines{"searchball", "searchball_fast"};
  std::string csv;
};

int status_exit(SolveStatus s) {
  switch (s) {
    case SolveStatus::kSat: return kExitSat;
    case SolveStatus::kUnsat: return kExitUnsat;
    case SolveStatus::kUnknown: return kExitUnknown;
  }
  return kExitUnknown;
}

const char* status_line(SolveStatus s) {
  switch (s) {
    case SolveStatus::kSat: return "s SATISFIABLE";
    case SolveStatus::kUnsat: return "s UNSATISFIABLE";
    case SolveStatus::kUnknown: return "s UNKNOWN";
  }
  return "s UNKNOWN";
}

json stats_json(const SearchStats& s) {
  return json{{"recursion_nodes", s.recursion_nodes}, {"leaves", s.leaves},
              {"max_depth", s.max_depth},             {"inner_nodes", s.inner_nodes},
              {"inner_leaves", s.inner_leaves},       {"max_branching", s.max_branching}};
}

int do_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  if (!o.code_cache.empty()) CodeCache::global().set_directory(fs::path(o.code_cache));
  const std::string text = read_file(o.input);
  std::string format = o.format.empty() ? sniff_format(text) : o.format;
  if (format.empty()) throw UsageError("cannot tell whether '" + o.input + "' is cnf or csp");

  SolverConfig cfg;
  if (o.mode == "det") {
    cfg.mode = SolveMode::kDeterministic;
  } else if (o.mode == "rand") {
    cfg.mode = SolveMode::kRandomized;
  } else {
    cfg.mode = SolveMode::kBrute;
  }
  cfg.t = o.t;
  cfg.epsilon = o.epsilon;
  cfg.block_len = o.block_len;
  cfg.rho = o.rho;
  cfg.seed = o.seed;
  cfg.trial_cap = o.trial_cap;
  cfg.jobs = o.jobs;
  cfg.box_block_len = o.box_block_len;
  cfg.validate();

  json report{{"schema", 1}, {"input", o.input}, {"format", format}, {"mode", to_string(cfg.mode)}};
  SolveStatus status;
  if (format == "cnf") {
    std::vector<std::string> warnings;
    const Formula f = parse_dimacs(text, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    const SolveResult r = solve(f, cfg);
    status = r.status;
    out << "c ballsat " << to_string(cfg.mode) << " n=" << f.num_vars()
        << " m=" << f.num_clauses() << " k=" << f.max_width() << '\n';
    out << status_line(r.status) << '\n';
    if (r.witness) {
      out << 'v';
      for (Var v = 1; v <= r.witness->size(); ++v) {
        out << ' ' << (r.witness->value(v) ? static_cast<long long>(v) : -static_cast<long long>(v));
      }
      out << " 0\n";
    }
    report["status"] = to_string(r.status);
    report["num_vars"] = f.num_vars();
    report["num_clauses"] = f.num_clauses();
    report["k"] = r.k;
    report["t"] = r.t;
    report["outer_code_size"] = r.outer_code_size;
    report["outer_radius"] = r.outer_radius;
    report["codewords_tried"] = r.codewords_tried;
    report["trials"] = r.trials;
    report["stats"] = stats_json(r.stats);
    report["wall_time_s"] = r.wall_time_s;
  } else if (format == "csp") {
    const CspFormula f = parse_csp(text);
    const CspSolveResult r = solve_csp(f, cfg);
    status = r.status;
    out << "c ballsat csp " << to_string(cfg.mode) << " d=" << f.domain_size()
        << " n=" << f.num_vars() << " m=" << f.constraints().size() << '\n';
    out << status_line(r.status) << '\n';
    if (r.witness) {
      for (std::size_t i = 0; i < r.witness->size(); ++i) {
        out << "v x" << (i + 1) << '=' << (*r.witness)[i] << '\n';
      }
    }
    report["status"] = to_string(r.status);
    report["domain_size"] = f.domain_size();
    report["num_vars"] = f.num_vars();
    report["num_constraints"] = f.constraints().size();
    report["cover_size"] = r.cover_size;
    report["boxes_tried"] = r.boxes_tried;
    report["stats"] = stats_json(r.stats);
    report["wall_time_s"] = r.wall_time_s;
  } else {
    throw UsageError("unknown input format '" + format + "'");
  }
  if (!o.stats.empty()) write_file(o.stats, report.dump(2) + "\n");
  return status_exit(status);
}

int do_gencode(const GencodeOptions& o, std::ostream& out, std::ostream& err) {
  CoveringCode code;
  if (o.method == "greedy") {
    code = greedy_code(o.q, o.t, o.radius);
  } else {
    const std::uint64_t size = o.size != 0 ? o.size : code_size_bound(o.q, o.t, o.radius);
    unsigned used = 0;
    code = random_code(o.q, o.t, o.radius, size, o.seed, o.attempts, &used);
    err << "c random code covered after " << used << " attempt(s)\n";
  }
  const std::string text = write_code(code);
  if (o.out.empty()) {
    out << text;
  } else {
    write_file(o.out, text);
    out << "c wrote " << code.size() << " words (q=" << o.q << " t=" << o.t << " r=" << o.radius
        << ") to " << o.out << '\n';
  }
  return kExitOk;
}

int do_verifycode(const std::string& file, std::ostream& out) {
  CoveringCode code = read_code(read_file(file));
  const bool ok = verify_cover(code);
  out << "c q=" << code.q << " t=" << code.t << " r=" << code.r << " size=" << code.size()
      << " bound=" << code_size_bound(code.q, code.t, code.r) << '\n';
  out << (ok ? "covering" : "NOT covering") << '\n';
  return ok ? kExitOk : kExitNotCovering;
}

int do_reduce(const ReduceOptions& o, std::ostream& out) {
  const CspFormula f = parse_csp(read_file(o.input));
  if (f.domain_size() < 2) throw UsageError("reduce needs d >= 2");
  const BoxCover cover = two_box_cover(f.domain_size(), f.num_vars(), o.box_block_len);
  const fs::path dir(o.outdir);
  fs::create_directories(dir);
  json manifest{{"schema", 1},
                {"input", o.input},
                {"domain_size", f.domain_size()},
                {"num_vars", f.num_vars()},
                {"encoding", "y_i true iff x_i takes the larger value of its pair"},
                {"boxes", json::array()}};
  for (std::uint64_t i = 0; i < cover.size(); ++i) {
    const TwoBox box = cover.box(i);
    char name[32];
    std::snprintf(name, sizeof name, "box_%06llu.cnf", static_cast<unsigned long long>(i));
    write_file(dir / name, write_dimacs(restrict_to_box(f, box)));
    json pairs = json::array();
    for (const auto& [lo, hi] : box.pairs) pairs.push_back({lo, hi});
    manifest["boxes"].push_back({{"file", name}, {"pairs", pairs}});
  }
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  out << "c wrote " << cover.size() << " reduced formulas to " << dir.string() << '\n';
  return kExitOk;
}

std::pair<unsigned, unsigned> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("--r expects LO:HI");
  try {
    const unsigned long lo = std::stoul(s.substr(0, colon));
    const unsigned long hi = std::stoul(s.substr(colon + 1));
    if (lo > hi || hi > 1000) throw UsageError("--r expects LO <= HI <= 1000");
    return {static_cast<unsigned>(lo), static_cast<unsigned>(hi)};
  } catch (const std::logic_error&) {
    throw UsageError("--r expects LO:HI");
  }
}

int do_bench(const BenchOptions& o, std::ostream& out) {
  ScalingConfig cfg;
  cfg.k = o.k;
  cfg.t = o.t;
  std::tie(cfg.r_lo, cfg.r_hi) = parse_range(o.r_range);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.n = o.n;
  cfg.density = o.density;
  cfg.engines.clear();
  for (const auto& name : o.engines) {
    auto e = parse_bench_engine(name);
    if (!e) throw UsageError("unknown engine '" + name + "'");
    cfg.engines.push_back(*e);
  }
  const auto records = run_scaling(cfg);
  if (!o.csv.empty()) {
    std::ofstream csv(o.csv, std::ios::trunc);
    if (!csv) throw UsageError("cannot write '" + o.csv + "'");
    write_csv(csv, records);
  }
  out << std::fixed << std::setprecision(4);
  for (BenchEngine e : cfg.engines) {
    if (e == BenchEngine::kWalk) {
      std::uint64_t hits = 0, total = 0;
      for (const auto& r : records) {
        if (r.engine != e) continue;
        ++total;
        hits += r.found ? 1 : 0;
      }
      out << to_string(e) << ": success rate " << static_cast<double>(hits) / total << '\n';
      continue;
    }
    if (cfg.r_hi - cfg.r_lo < 1) continue;
    const BaseFit leaves = fit_exponential_base(records, e);
    const BaseFit nodes = fit_exponential_base(records, e, true);
    out << to_string(e) << ": leaves base " << leaves.base << " [" << leaves.base_lo << ", "
        << leaves.base_hi << "], total-node base " << nodes.base << " [" << nodes.base_lo << ", "
        << nodes.base_hi << "]\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic k-SAT / CSP solving by covering-code ball search", "ballsat"};
  app.require_subcommand(1);

  SolveOptions so;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a DIMACS CNF or 'p csp' file");
  solve_cmd->add_option("--input", so.input, "Input file")->required();
  solve_cmd->add_option("--mode", so.mode, "det | rand | brute")
      ->check(CLI::IsMember({"det", "rand", "brute"}));
  solve_cmd->add_option("--format", so.format, "Override input sniffing: cnf | csp")
      ->check(CLI::IsMember({"cnf", "csp"}));
  solve_cmd->add_option("--t", so.t, "Inner code block size (0 = default for k)");
  solve_cmd->add_option("--epsilon", so.epsilon, "Slack in the outer radius choice");
  solve_cmd->add_option("--block-len", so.block_len, "Outer Boolean block length (0 = auto)");
  solve_cmd->add_option("--rho", so.rho, "Outer radius fraction in (0, 1/2] (0 = auto)");
  solve_cmd->add_option("--seed", so.seed, "Seed for randomized mode");
  solve_cmd->add_option("--trial-cap", so.trial_cap, "Randomized trial cap (0 = auto)");
  solve_cmd->add_option("--jobs", so.jobs, "Worker threads")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--box-block-len", so.box_block_len, "2-box cover block length (odd d)");
  solve_cmd->add_option("--stats", so.stats, "Write a JSON stats report here");
  solve_cmd->add_option("--code-cache", so.code_cache, "Directory for cached code files");

  GencodeOptions go;
  auto* gencode_cmd = app.add_subcommand("gencode", "Construct a q-ary covering code");
  gencode_cmd->add_option("--q", go.q, "Alphabet size")->required();
  gencode_cmd->add_option("--t", go.t, "Word length")->required();
  gencode_cmd->add_option("--radius", go.radius, "Covering radius")->required();
  gencode_cmd->add_option("--method", go.method, "greedy | random")
      ->check(CLI::IsMember({"greedy", "random"}));
  gencode_cmd->add_option("--size", go.size, "Sample size for --method random (0 = bound)");
  gencode_cmd->add_option("--seed", go.seed, "Seed for --method random");
  gencode_cmd->add_option("--attempts", go.attempts, "Retries for --method random");
  gencode_cmd->add_option("--out", go.out, "Output file (default stdout)");

  std::string verify_file;
  auto* verify_cmd = app.add_subcommand("verifycode", "Exhaustively check a code file");
  verify_cmd->add_option("file", verify_file, "Code file")->required();

  ReduceOptions ro;
  auto* reduce_cmd = app.add_subcommand("reduce", "Write one DIMACS file per 2-box");
  reduce_cmd->add_option("--input", ro.input, "CSP input file")->required();
  reduce_cmd->add_option("--outdir", ro.outdir, "Output directory")->required();
  reduce_cmd->add_option("--box-block-len", ro.box_block_len, "2-box cover block length (odd d)");

  BenchOptions bo;
  auto* bench_cmd = app.add_subcommand("bench", "Paired node-count scaling run");
  bench_cmd->add_option("--k", bo.k, "Clause width");
  bench_cmd->add_option("--t", bo.t, "Code block size for searchball_fast");
  bench_cmd->add_option("--r", bo.r_range, "Radius range LO:HI");
  bench_cmd->add_option("--trials", bo.trials, "Trials per radius");
  bench_cmd->add_option("--seed", bo.seed, "Base seed");
  bench_cmd->add_option("--n", bo.n, "Variables (0 = max(30, 3*HI))");
  bench_cmd->add_option("--density", bo.density, "Clauses per variable");
  bench_cmd->add_option("--engines", bo.engines, "searchball, searchball_fast, schoening_walk");
  bench_cmd->add_option("--csv", bo.csv, "Write per-trial records here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return do_solve(so, out, err);
    if (gencode_cmd->parsed()) return do_gencode(go, out, err);
    if (verify_cmd->parsed()) return do_verifycode(verify_file, out);
    if (reduce_cmd->parsed()) return do_reduce(ro, out);
    if (bench_cmd->parsed()) return do_bench(bo, out);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ballsat::cli
