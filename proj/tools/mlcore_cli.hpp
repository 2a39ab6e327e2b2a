#pragma once

// Command-line front end. run() is kept separate from main() so tests can
// drive every subcommand in-process.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 resource cap exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mlcore/mlcore.hpp"
#include "mlcore/records.hpp"

namespace mlcore::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kCap = 3 };

inline constexpr const char* kThreadsEnv = "MLCORE_THREADS";

inline constexpr const char* kFormatsHelp = R"(Input formats (one edge per line, tokens separated by spaces or tabs,
'#' starts a comment, blank lines ignored):
  multilayer  u v layer      e.g.  alice bob work
  temporal    u v t          e.g.  alice bob 17     (t a non-negative integer)
  signed      u v sign       e.g.  alice bob -1     (sign one of +1 -1 + -)

Output is one JSON record per line, for example
  ml-cores     {"vector":[2,2],"size":3,"vertices":["1","2","3"]}
  span-cores   {"k":2,"span":[0,1],"size":3,"vertices":["a","b","c"]}
  ml-densest   {"delta":2.0,"beta":1.0,"support_layers":["A","B"],"vertices":[...],"guarantee":0.25}
  polarity     {"algorithm":"deterministic","polarity":3.0,"lambda1":3.0,"community_pos":[...],
                "community_neg":[...],"neutral_count":0,"seed":0}

Exit codes: 0 ok, 1 usage error, 2 data error, 3 resource cap exceeded.
The default worker count is read from MLCORE_THREADS (1 when unset).)";

namespace detail {

inline unsigned default_threads() {
  if (const char* env = std::getenv(kThreadsEnv)) {
    try {
      long v = std::stol(env);
      if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return 1;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open input file '" + path + "'");
  return in;
}

inline MultilayerGraph load_multilayer(const std::string& path) {
  auto in = open_input(path);
  return parse_multilayer(in);
}

inline TemporalGraph load_temporal(const std::string& path) {
  auto in = open_input(path);
  return parse_temporal(in);
}

inline SignedGraph load_signed(const std::string& path) {
  auto in = open_input(path);
  return parse_signed(in);
}

inline std::vector<std::string> split_labels(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

}  // namespace detail

struct RunConfig {
  std::string input;
  std::string output;
  std::string truth_output;
  bool naive = false;
  bool with_vertices = false;
  bool distinct_sets = false;
  bool enumerate = false;
  double beta = 1.0;
  double gamma = 1.0;
  std::uint32_t min_size = 2;
  double min_sup = 1.0;
  std::vector<std::string> query;
  std::string algo = "det";
  double tol = 1e-9;
  std::size_t max_iter = 0;
  std::size_t trials = 32;
  std::uint64_t seed = 0;
  std::size_t cap = 10'000'000;
  unsigned threads = 1;
  // generators
  std::string kind = "multilayer";
  std::size_t n = 100;
  std::size_t layers = 3;
  std::size_t timestamps = 10;
  double p = 0.1;
  std::size_t size1 = 15;
  std::size_t size2 = 15;
  double p_in = 0.9;
  double p_out = 0.9;
  double noise = 0.01;
};

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.threads = detail::default_threads();

  CLI::App app{"Core decompositions and dense structures in multilayer, temporal and signed networks", "mlcore"};
  app.require_subcommand(1, 1);
  app.footer(kFormatsHelp);

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("-i,--input", cfg.input, "input edge-list file");
    if (needs_input) in->required();
    sub->add_option("-o,--output", cfg.output, "output file (default: standard output)");
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_option("--cap", cfg.cap, "maximum number of emitted records")->check(CLI::PositiveNumber);
  };

  auto* ml_cores = app.add_subcommand("ml-cores", "all multilayer cores");
  add_common(ml_cores, true);
  ml_cores->add_flag("--vertices", cfg.with_vertices, "include vertex labels");
  ml_cores->add_flag("--distinct-sets", cfg.distinct_sets, "one record per distinct vertex set (maximal vectors)");
  ml_cores->add_flag("--naive", cfg.naive, "peel every core from the whole graph");

  auto* ml_maximal = app.add_subcommand("ml-maximal", "maximal multilayer cores");
  add_common(ml_maximal, true);
  ml_maximal->add_flag("--vertices", cfg.with_vertices, "include vertex labels");
  ml_maximal->add_flag("--naive", cfg.naive, "filter a full naive decomposition");

  auto* ml_densest = app.add_subcommand("ml-densest", "multilayer densest subgraph");
  add_common(ml_densest, true);
  ml_densest->add_option("--beta", cfg.beta, "density/support trade-off (>= 0)");
  ml_densest->add_flag("--naive", cfg.naive, "score the naive decomposition");

  auto* ml_qc = app.add_subcommand("ml-qc-prune", "search-space pruning for frequent cross-graph quasi-cliques");
  add_common(ml_qc, true);
  ml_qc->add_option("--gamma", cfg.gamma, "quasi-clique density in (0, 1]");
  ml_qc->add_option("--min-size", cfg.min_size, "minimum quasi-clique size (>= 2)");
  ml_qc->add_option("--min-sup", cfg.min_sup, "minimum fraction of layers in (0, 1]");
  ml_qc->add_flag("--enumerate", cfg.enumerate, "also list every quasi-clique inside the pruned set");
  ml_qc->add_flag("--naive", cfg.naive, "take the union over a full naive decomposition");

  auto* ml_comm = app.add_subcommand("ml-community", "multilayer community search");
  add_common(ml_comm, true);
  ml_comm->add_option("-q,--query", cfg.query, "query vertex labels (comma separated or repeated)")->required();
  ml_comm->add_option("--beta", cfg.beta, "degree/support trade-off (>= 0)");
  ml_comm->add_flag("--naive", cfg.naive, "search the naive decomposition");

  auto* span_cores = app.add_subcommand("span-cores", "all span-cores of a temporal graph");
  add_common(span_cores, true);
  span_cores->add_flag("--naive", cfg.naive, "rebuild every span graph from scratch");

  auto* span_maximal = app.add_subcommand("span-maximal", "maximal span-cores");
  add_common(span_maximal, true);
  span_maximal->add_flag("--naive", cfg.naive, "filter a full naive decomposition");

  auto* span_stats = app.add_subcommand("span-stats", "span-length distribution of maximal span-cores");
  add_common(span_stats, true);
  span_stats->add_flag("--naive", cfg.naive, "filter a full naive decomposition");

  auto* pol = app.add_subcommand("polarity", "two polarized communities in a signed graph");
  add_common(pol, true);
  pol->add_option("--algo", cfg.algo, "det | rand | brute")->check(CLI::IsMember({"det", "rand", "brute"}));
  pol->add_option("--tol", cfg.tol, "eigensolver residual tolerance")->check(CLI::PositiveNumber);
  pol->add_option("--max-iter", cfg.max_iter, "eigensolver iteration limit (0: 10n + 1000)");
  pol->add_option("--trials", cfg.trials, "randomized rounding trials")->check(CLI::PositiveNumber);
  pol->add_option("--seed", cfg.seed, "random seed");
  pol->add_flag("--naive", cfg.naive, "same as --algo brute");

  auto* gen_planted = app.add_subcommand("gen-planted", "signed graph with two planted polarized communities");
  add_common(gen_planted, false);
  gen_planted->add_option("--n", cfg.n, "vertex count");
  gen_planted->add_option("--size1", cfg.size1, "first community size");
  gen_planted->add_option("--size2", cfg.size2, "second community size");
  gen_planted->add_option("--p-in", cfg.p_in, "positive edge probability inside communities");
  gen_planted->add_option("--p-out", cfg.p_out, "negative edge probability across communities");
  gen_planted->add_option("--noise", cfg.noise, "random-sign edge probability elsewhere");
  gen_planted->add_option("--seed", cfg.seed, "random seed");
  gen_planted->add_option("--truth", cfg.truth_output, "write the ground truth ('label community' lines) here");

  auto* gen_random = app.add_subcommand("gen-random", "Erdos-Renyi multilayer, temporal or signed graph");
  add_common(gen_random, false);
  gen_random->add_option("--kind", cfg.kind, "multilayer | temporal | signed")
      ->check(CLI::IsMember({"multilayer", "temporal", "signed"}));
  gen_random->add_option("--n", cfg.n, "vertex count");
  gen_random->add_option("--layers", cfg.layers, "layer count (multilayer)");
  gen_random->add_option("--timestamps", cfg.timestamps, "timestamp count (temporal)");
  gen_random->add_option("--p", cfg.p, "edge probability");
  gen_random->add_option("--seed", cfg.seed, "random seed");

  std::vector<std::string> argv_store;
  argv_store.emplace_back("mlcore");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::ostringstream buf;
  auto emit = [&](const records::Json& j) { records::write_line(buf, j); };
  const DecomposeOptions dopt{cfg.cap, cfg.threads};
  const SpanOptions sopt{cfg.cap, cfg.threads};

  try {
    if (ml_cores->parsed()) {
      auto g = detail::load_multilayer(cfg.input);
      auto cores = cfg.naive ? decompose_naive(g, dopt) : decompose_all(g, dopt);
      if (cfg.distinct_sets) cores = collapse_distinct_sets(cores);
      for (const auto& c : cores) emit(records::core(g, c, cfg.with_vertices));
    } else if (ml_maximal->parsed()) {
      auto g = detail::load_multilayer(cfg.input);
      auto cores = cfg.naive ? filter_maximal(decompose_naive(g, dopt)) : maximal_cores(g, dopt);
      for (const auto& c : cores) emit(records::core(g, c, cfg.with_vertices));
    } else if (ml_densest->parsed()) {
      mlcore::detail::check_beta(cfg.beta);
      auto g = detail::load_multilayer(cfg.input);
      auto r = cfg.naive ? densest_from_cores(g, decompose_naive(g, dopt), cfg.beta, cfg.threads)
                         : densest_subgraph(g, cfg.beta, dopt);
      emit(records::densest(g, r));
    } else if (ml_qc->parsed()) {
      QuasiCliqueParams params{cfg.gamma, cfg.min_size, cfg.min_sup};
      params.validate();
      auto g = detail::load_multilayer(cfg.input);
      auto kept = cfg.naive ? quasi_clique_prune_from_cores(decompose_naive(g, dopt), params, g.layer_count())
                            : quasi_clique_prune(g, params);
      emit(records::quasi_clique_prune(g, params, kept));
      if (cfg.enumerate)
        for (const auto& s : quasi_clique_enumerate(g, params, kept)) emit(records::quasi_clique(g, s));
    } else if (ml_comm->parsed()) {
      mlcore::detail::check_beta(cfg.beta);
      auto g = detail::load_multilayer(cfg.input);
      std::vector<VertexId> ids;
      for (const auto& label : detail::split_labels(cfg.query)) ids.push_back(g.labels().id(label));
      VertexSet query(std::move(ids));
      if (query.empty()) throw ContractViolation("empty query");
      auto r = cfg.naive ? community_from_cores(g, decompose_naive(g, dopt), query, cfg.beta, cfg.threads)
                         : community_search(g, query, cfg.beta, dopt);
      emit(records::community(g, r, cfg.beta));
    } else if (span_cores->parsed()) {
      auto g = detail::load_temporal(cfg.input);
      auto cores = cfg.naive ? span_cores_naive(g, sopt) : span_cores_all(g, sopt);
      for (const auto& c : cores) emit(records::span_core(g, c));
    } else if (span_maximal->parsed()) {
      auto g = detail::load_temporal(cfg.input);
      auto cores = cfg.naive ? filter_maximal_spans(span_cores_naive(g, sopt)) : maximal_span_cores(g, sopt);
      for (const auto& c : cores) emit(records::span_core(g, c));
    } else if (span_stats->parsed()) {
      auto g = detail::load_temporal(cfg.input);
      auto cores = cfg.naive ? filter_maximal_spans(span_cores_naive(g, sopt)) : maximal_span_cores(g, sopt);
      emit(records::span_stats(span_statistics(cores)));
    } else if (pol->parsed()) {
      auto g = detail::load_signed(cfg.input);
      const std::string algo = cfg.naive ? "brute" : cfg.algo;
      auto spec = leading_eigenvector(g, EigenOptions{cfg.tol, cfg.max_iter, EigenTarget::largest_algebraic});
      PolarizedPartition part;
      if (algo == "det")
        part = round_deterministic(g, spec);
      else if (algo == "rand")
        part = round_randomized(g, spec, RandomizedOptions{cfg.trials, cfg.seed, cfg.threads});
      else
        part = brute_force_polarity(g);
      emit(records::polarity(g, part, spec.lambda1, cfg.seed));
    } else if (gen_planted->parsed()) {
      auto inst = generate_planted(PlantedParams{cfg.n, cfg.size1, cfg.size2, cfg.p_in, cfg.p_out, cfg.noise, cfg.seed});
      write_signed(buf, inst.graph);
      if (!cfg.truth_output.empty()) {
        std::ofstream truth(cfg.truth_output);
        if (!truth) throw ParseError(0, "cannot write '" + cfg.truth_output + "'");
        for (VertexId u = 0; u < inst.truth.size(); ++u)
          truth << inst.graph.labels().label(u) << ' ' << static_cast<int>(inst.truth[u]) << '\n';
      }
    } else if (gen_random->parsed()) {
      if (cfg.kind == "multilayer")
        write_multilayer(buf, random_multilayer(cfg.n, cfg.layers, cfg.p, cfg.seed));
      else if (cfg.kind == "temporal")
        write_temporal(buf, random_temporal(cfg.n, cfg.timestamps, cfg.p, cfg.seed));
      else
        write_signed(buf, random_signed(cfg.n, cfg.p, cfg.seed));
    }
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCap;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  }

  if (cfg.output.empty()) {
    out << buf.str();
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << cfg.output << "'\n";
      return kData;
    }
    file << buf.str();
  }
  return kOk;
}

}  // namespace mlcore::cli
