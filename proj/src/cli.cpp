// Copyright 2026 The fairnet Authors
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

#include "fairnet/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fairnet/instance_io.hpp"
#include "fairnet/reductions.hpp"
#include "fairnet/solvers.hpp"

namespace fairnet {

namespace {

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Label> parse_labels(const std::string& text, const char* what) {
  std::vector<Label> out;
  for (const auto& tok : split_on(text, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InputError(std::string("bad integer '") + tok + "' in " + what);
    }
  }
  return out;
}

Deadline deadline_for(double seconds) {
  if (seconds <= 0) return {};
  return Deadline::after(std::chrono::duration<double>(seconds));
}

void print_labels(std::ostream& out, std::span<const Label> labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? " " : "") << labels[i];
}

void print_parameters(std::ostream& out, const ParameterReport& p) {
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("?"); };
  out << "parameters: n=" << p.vertices << " max_degree=" << p.max_degree << " alpha=" << p.alpha
      << " fvs=" << opt(p.fvs) << " vc=" << opt(p.vc);
  if (p.regular_degree) out << " r=" << *p.regular_degree;
  out << '\n';
}

int exit_for(const SolveOutcome& o) {
  switch (o.verdict) {
    case Verdict::Fair:
      return kExitFair;
    case Verdict::Unfair:
      return kExitUnfair;
    case Verdict::Refused:
      return kExitRefused;
  }
  return kExitRefused;
}

struct SolveArgs {
  std::string file;
  std::string algo = "auto";
  std::optional<Label> k;
  double timeout = 0;
  bool timing = false;
  int cap = 0;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const auto algorithm = parse_algorithm(a.algo);
  if (!algorithm) throw InputError("unknown algorithm '" + a.algo + "'");
  const Instance inst = load_instance(a.file);
  SolveOptions opts;
  opts.deadline = deadline_for(a.timeout);
  opts.fixed_k = a.k;
  if (a.cap > 0) opts.oracle_cap = a.cap;
  const SolveOutcome o = solve(*algorithm, inst.graph, inst.labels, opts);
  out << "algorithm: " << to_string(*algorithm) << '\n';
  out << "verdict: " << to_string(o.verdict) << '\n';
  if (o.verdict == Verdict::Refused) out << "reason: " << o.refusal_reason << '\n';
  if (o.certificate) {
    out << "k: " << o.certificate->constant << '\n';
    out << "certificate: ";
    print_labels(out, o.certificate->labeling);
    out << '\n';
  }
  print_parameters(out, parameter_report(inst.graph, inst.labels, deadline_for(a.timeout)));
  out << "stats: nodes=" << o.stats.nodes << " ilp_calls=" << o.stats.ilp_calls << '\n';
  for (const auto& line : o.stats.trace) out << "trace: " << line << '\n';
  if (a.timing) out << "time_ms: " << std::fixed << std::setprecision(3) << o.stats.elapsed_ms << '\n';
  return exit_for(o);
}

int cmd_verify(const std::string& file, std::ostream& out) {
  const Instance inst = load_instance(file);
  if (!inst.certificate) throw InputError("'" + file + "' carries no certificate");
  const auto k = verify(inst.graph, inst.labels, inst.certificate->labeling);
  if (k && *k == inst.certificate->constant) {
    out << "verifies: yes\nk: " << *k << '\n';
    return kExitFair;
  }
  out << "verifies: no\n";
  if (k) out << "note: labeling is fair with k=" << *k << " but the file claims " << inst.certificate->constant << '\n';
  return kExitUnfair;
}

struct GenerateArgs {
  std::string family;
  std::string w, clauses, truth, entries, labels, shape = "gnp";
  int n = 0, r = 0, maxlabel = 6;
  std::uint64_t seed = 0;
  bool planted = false;
  std::string out_file;
};

Instance generate(const GenerateArgs& a) {
  if (a.family == "3part-k33" || a.family == "3part-stars") {
    ThreePartitionInstance tp;
    tp.w = parse_labels(a.w, "--w");
    if (tp.w.empty() || tp.w.size() % 3 != 0) throw InputError("--w needs 3m comma-separated elements");
    tp.m = static_cast<int>(tp.w.size() / 3);
    Instance inst = a.family == "3part-k33" ? gen_3partition_k33(tp) : gen_3partition_stars(tp);
    if (tp.w.size() <= 12) inst.metadata["three_partition"] = brute_3partition(tp) ? "yes" : "no";
    return inst;
  }
  if (a.family == "xsat") {
    XsatFormula phi;
    std::vector<bool> truth;
    if (a.planted) {
      phi = planted_xsat(a.n, a.seed, &truth);
    } else {
      phi.n = a.n;
      for (const auto& clause : split_on(a.clauses, ';')) {
        const auto vars = parse_labels(clause, "--clauses");
        if (vars.size() != 3) throw InputError("every clause needs exactly 3 variables");
        phi.clauses.push_back({static_cast<int>(vars[0]), static_cast<int>(vars[1]), static_cast<int>(vars[2])});
      }
      for (Label t : parse_labels(a.truth, "--truth")) truth.push_back(t != 0);
    }
    Instance inst = gen_xsat(phi);
    if (!truth.empty()) {
      inst.certificate = certificate_from_xsat_assignment(phi, truth);
      inst.metadata["verdict"] = "fair";
    }
    return inst;
  }
  if (a.family == "semimagic") {
    SemiMagicSpec square;
    square.n = a.n > 0 ? a.n : 3;
    square.entries = parse_labels(a.entries, "--entries");
    if (square.entries.empty()) {
      square.entries.resize(static_cast<std::size_t>(square.n) * square.n);
      std::iota(square.entries.begin(), square.entries.end(), Label{1});
    }
    return gen_semimagic(square);
  }
  if (a.family == "circulant") {
    Instance inst;
    inst.graph = gen_circulant(a.n, a.r);
    std::vector<Label> labels = parse_labels(a.labels, "--labels");
    if (labels.empty()) labels.assign(static_cast<std::size_t>(a.n), 1);
    if (labels.size() != static_cast<std::size_t>(a.n)) throw InputError("--labels needs one label per vertex");
    inst.labels = LabelMultiset(std::move(labels));
    inst.metadata["generator"] = "circulant";
    inst.metadata["n"] = std::to_string(a.n);
    inst.metadata["r"] = std::to_string(a.r);
    return inst;
  }
  if (a.family == "random") {
    const auto shape = parse_random_shape(a.shape);
    if (!shape) throw InputError("unknown shape '" + a.shape + "'");
    return random_instance(*shape, a.n, a.maxlabel, a.seed);
  }
  throw InputError("unknown family '" + a.family + "'");
}

struct BenchArgs {
  std::string dir;
  std::string algos = "oracle,auto";
  std::string tsv;
  double timeout = 10;
  int jobs = 1;
  bool timing = false;
};

struct BenchRow {
  std::string instance;
  std::string algo;
  std::string verdict;
  std::string k = "-";
  std::uint64_t nodes = 0;
  std::uint64_t ilp_calls = 0;
  double ms = 0;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<Algorithm> algos;
  for (const auto& name : split_on(a.algos, ',')) {
    const auto algo = parse_algorithm(name);
    if (!algo) throw InputError("unknown algorithm '" + name + "'");
    algos.push_back(*algo);
  }
  if (algos.empty()) throw InputError("--algos is empty");
  namespace fs = std::filesystem;
  if (!fs::is_directory(a.dir)) throw InputError("'" + a.dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".fairnet") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError("no .fairnet files in '" + a.dir + "'");

  struct Result {
    std::vector<BenchRow> rows;
    std::string expected;
    std::string error;
  };
  std::vector<Result> results(files.size());
  auto work = [&](std::size_t i) {
    Result& res = results[i];
    const std::string name = files[i].filename().string();
    try {
      const Instance inst = load_instance(files[i].string());
      if (auto it = inst.metadata.find("verdict"); it != inst.metadata.end()) res.expected = it->second;
      for (Algorithm algo : algos) {
        SolveOptions opts;
        opts.deadline = deadline_for(a.timeout);
        BenchRow row{name, to_string(algo), ""};
        try {
          const SolveOutcome o = solve(algo, inst.graph, inst.labels, opts);
          row.verdict = to_string(o.verdict);
          if (o.certificate) row.k = std::to_string(o.certificate->constant);
          row.nodes = o.stats.nodes;
          row.ilp_calls = o.stats.ilp_calls;
          row.ms = o.stats.elapsed_ms;
        } catch (const InputError&) {
          row.verdict = "n/a";  // algorithm does not apply to this graph
        }
        res.rows.push_back(std::move(row));
      }
    } catch (const std::exception& e) {
      res.error = e.what();
    }
  };
  const int jobs = std::max(1, a.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < files.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < files.size();) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::ostringstream tsv;
  tsv << "instance\talgorithm\tverdict\tk\tnodes\tilp_calls";
  if (a.timing) tsv << "\ttime_ms";
  tsv << '\n';
  out << std::left << std::setw(28) << "instance" << std::setw(17) << "algorithm" << std::setw(9) << "verdict"
      << std::setw(8) << "k" << std::setw(12) << "nodes" << "ilp_calls";
  if (a.timing) out << "  time_ms";
  out << '\n';
  int code = kExitFair;
  std::size_t disagreements = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto& res = results[i];
    if (!res.error.empty()) {
      err << "error: " << files[i].filename().string() << ": " << res.error << '\n';
      code = std::max(code, static_cast<int>(kExitInputError));
      continue;
    }
    std::vector<std::string> decided;
    for (const auto& row : res.rows) {
      out << std::left << std::setw(28) << row.instance << std::setw(17) << row.algo << std::setw(9) << row.verdict
          << std::setw(8) << row.k << std::setw(12) << row.nodes << row.ilp_calls;
      tsv << row.instance << '\t' << row.algo << '\t' << row.verdict << '\t' << row.k << '\t' << row.nodes << '\t'
          << row.ilp_calls;
      if (a.timing) {
        out << "  " << std::fixed << std::setprecision(3) << row.ms;
        tsv << '\t' << std::fixed << std::setprecision(3) << row.ms;
      }
      out << '\n';
      tsv << '\n';
      if (row.verdict == "fair" || row.verdict == "unfair") decided.push_back(row.verdict);
    }
    if (res.expected == "fair" || res.expected == "unfair") decided.push_back(res.expected);
    if (std::adjacent_find(decided.begin(), decided.end(), std::not_equal_to<>()) != decided.end()) {
      ++disagreements;
      err << "disagreement: " << files[i].filename().string();
      if (!res.expected.empty()) err << " (expected " << res.expected << ")";
      err << '\n';
    }
  }
  if (!a.tsv.empty()) {
    std::ofstream f(a.tsv, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write '" + a.tsv + "'");
    f << tsv.str();
  }
  out << files.size() << " instances, " << disagreements << " disagreements\n";
  return disagreements > 0 ? static_cast<int>(kExitDisagreement) : code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide whether a graph admits a neighbourhood-sum labeling from a given multiset"};
  app.name("fairnet");
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Decide an instance and print a certificate");
  solve_cmd->add_option("file", solve_args.file, "Instance file")->required();
  solve_cmd->add_option("--algo", solve_args.algo, "auto|oracle|fvs-alpha-delta|vc-alpha|regular-fvs|vc-delta");
  solve_cmd->add_option("--k", solve_args.k, "Only try this fairness constant");
  solve_cmd->add_option("--timeout", solve_args.timeout, "Seconds before giving up (0 = none)");
  solve_cmd->add_flag("--timing", solve_args.timing, "Print wall-clock time");

  SolveArgs oracle_args;
  oracle_args.algo = "oracle";
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive twin-class search");
  oracle_cmd->add_option("file", oracle_args.file, "Instance file")->required();
  oracle_cmd->add_option("--k", oracle_args.k, "Only try this fairness constant");
  oracle_cmd->add_option("--cap", oracle_args.cap, "Twin-class cap (default 12 or FAIRNET_ORACLE_CAP)");
  oracle_cmd->add_option("--timeout", oracle_args.timeout, "Seconds before giving up (0 = none)");
  oracle_cmd->add_flag("--timing", oracle_args.timing, "Print wall-clock time");

  std::string verify_file;
  auto* verify_cmd = app.add_subcommand("verify", "Check the certificate stored in an instance file");
  verify_cmd->add_option("file", verify_file, "Instance file")->required();

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a generated instance");
  gen_cmd->add_option("family", gen.family, "3part-k33|3part-stars|xsat|semimagic|circulant|random")->required();
  gen_cmd->add_option("--w", gen.w, "3-Partition elements, comma separated");
  gen_cmd->add_option("--n", gen.n, "Variables (xsat), grid size (semimagic) or vertices");
  gen_cmd->add_option("--r", gen.r, "Circulant degree");
  gen_cmd->add_option("--clauses", gen.clauses, "xsat clauses: 0,1,2;0,1,2;...");
  gen_cmd->add_option("--truth", gen.truth, "xsat assignment as 0/1 list; attaches a certificate");
  gen_cmd->add_flag("--planted", gen.planted, "xsat: planted satisfiable formula on --n variables");
  gen_cmd->add_option("--entries", gen.entries, "semimagic entries (default 1..n^2)");
  gen_cmd->add_option("--labels", gen.labels, "circulant labels (default all 1)");
  gen_cmd->add_option("--shape", gen.shape, "random: gnp|stars|cycles|bipartite|circulant");
  gen_cmd->add_option("--maxlabel", gen.maxlabel, "random: largest label");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--out", gen.out_file, "Output file (default stdout)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run several algorithms over a directory of .fairnet files");
  bench_cmd->add_option("dir", bench.dir, "Corpus directory")->required();
  bench_cmd->add_option("--algos", bench.algos, "Comma separated algorithms");
  bench_cmd->add_option("--tsv", bench.tsv, "Also write tab-separated rows here");
  bench_cmd->add_option("--timeout", bench.timeout, "Seconds per run (0 = none)");
  bench_cmd->add_option("--jobs", bench.jobs, "Instances solved concurrently");
  bench_cmd->add_flag("--timing", bench.timing, "Include wall-clock times");

  std::vector<std::string> argv_store{"fairnet"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args, out);
    if (*oracle_cmd) return cmd_solve(oracle_args, out);
    if (*verify_cmd) return cmd_verify(verify_file, out);
    if (*gen_cmd) {
      const std::string text = write_instance(generate(gen));
      if (gen.out_file.empty()) {
        out << text;
      } else {
        std::ofstream f(gen.out_file, std::ios::binary | std::ios::trunc);
        if (!f) throw InputError("cannot write '" + gen.out_file + "'");
        f << text;
      }
      return kExitFair;
    }
    if (*bench_cmd) return cmd_bench(bench, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace fairnet
