// bidir: build bi-directed de Bruijn graphs and solve postman problems on them.
//
// Exit codes: 0 ok, 1 usage, 2 unreadable file, 3 bad k, 4 malformed input,
// 5 no cyclic CP walk, 6 disconnected graph in a cyclic mode.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bidir/bidir.hpp"
#include "bidir/oracle.hpp"

namespace {

using namespace bidir;

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kUnreadable = 2,
  kBadK = 3,
  kMalformed = 4,
  kNoCyclicWalk = 5,
  kDisconnected = 6,
};

struct ExitError {
  int code;
  std::string message;
};

struct Common {
  std::string graph;
  std::string vertices;
  std::string out;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  bool verbose = false;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ExitError{kUnreadable, "cannot read '" + path + "'"};
  return in;
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ExitError{kUnreadable, "cannot write '" + path + "'"};
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

EdgeListFile load_graph(const Common& c) {
  if (c.graph.empty()) throw ExitError{kUsage, "--graph is required"};
  auto in = open_input(c.graph);
  return read_edge_list(in);
}

// Explicit --vertices, else a sibling "<stem>.vertices" next to "<stem>.edges".
std::optional<DeBruijnGraph> load_vertex_table(const Common& c, const BiGraph& g) {
  std::string path = c.vertices;
  if (path.empty()) {
    std::filesystem::path p(c.graph);
    if (p.extension() == ".edges") {
      p.replace_extension(".vertices");
      if (std::filesystem::exists(p)) path = p.string();
    }
  }
  if (path.empty()) return std::nullopt;
  auto in = open_input(path);
  return attach_vertex_table(g, in);
}

std::string fmt(double x) {
  if (x == kInfinity) return "INF";
  return detail::format_double(x);
}

Vertex vertex_arg(const BiGraph& g, Label l) {
  if (auto v = g.find(l)) return *v;
  throw ExitError{kMalformed, "vertex " + std::to_string(l) + " is not in the graph"};
}

// --- build ---------------------------------------------------------------

struct BuildArgs {
  std::string fasta;
  unsigned k = 0;
  std::string prefix;
};

int cmd_build(const BuildArgs& a, const Common& c) {
  if (a.k < kMinK || a.k > kMaxK) {
    throw ExitError{kBadK, "k must lie in [" + std::to_string(kMinK) + ", " + std::to_string(kMaxK) + "]"};
  }
  auto in = open_input(a.fasta);
  std::vector<std::string> reads;
  FastaReader reader(in);
  FastaRecord rec;
  while (reader.next(rec)) reads.push_back(std::move(rec.sequence));
  const auto dbg = build_graph(reads, a.k);
  const EdgeListMeta meta{dbg.report.reads, a.k};
  if (a.prefix.empty()) {
    write_edge_list(std::cout, dbg.graph, meta);
  } else {
    std::ofstream edges(a.prefix + ".edges"), verts(a.prefix + ".vertices");
    if (!edges || !verts) throw ExitError{kUnreadable, "cannot write outputs with prefix '" + a.prefix + "'"};
    write_edge_list(edges, dbg.graph, meta);
    write_vertex_table(verts, dbg);
    std::cout << "vertices\t" << dbg.graph.vertex_count() << '\n'
              << "edges\t" << dbg.graph.edge_count() << '\n'
              << "reads\t" << dbg.report.reads << '\n'
              << "short_reads\t" << dbg.report.short_reads << '\n'
              << "rejected_reads\t" << dbg.report.rejected_reads << '\n';
  }
  if (c.verbose && (dbg.report.short_reads || dbg.report.rejected_reads)) {
    std::cerr << "skipped " << dbg.report.short_reads << " reads shorter than k, rejected "
              << dbg.report.rejected_reads << " reads with non-ACGT characters\n";
  }
  return kOk;
}

// --- stats / compare-matching --------------------------------------------

int cmd_stats(const Common& c) {
  const auto file = load_graph(c);
  Output out(c.out);
  write_stats_header(out.stream());
  write_stats_row(out.stream(), compute_stats(file.graph, file.meta.reads, file.meta.k));
  return kOk;
}

int cmd_compare(const Common& c) {
  const auto file = load_graph(c);
  const auto b = build_balancing_bipartite(file.graph, c.threads);
  if (c.verbose) write_tsv(std::cerr, b.replica_costs());
  Output out(c.out);
  write_approx_header(out.stream());
  write_approx_row(out.stream(), compare_matchings(b));
  return kOk;
}

// --- shortest --------------------------------------------------------------

struct ShortestArgs {
  Label source = 0;
  std::optional<Label> target;
  bool terminal = false;
};

int cmd_shortest(const ShortestArgs& a, const Common& c) {
  const auto file = load_graph(c);
  const BiGraph& g = file.graph;
  const Vertex s = vertex_arg(g, a.source);
  const auto labels = a.terminal ? terminal_shortest(g, s, Engine::automatic) : shortest_bidirected(g, s, Engine::automatic);
  Output out(c.out);
  auto& os = out.stream();
  os << "target\tdistance\twalk\n";
  auto row = [&](Vertex t) {
    const double d = labels.distance(t);
    os << g.label(t) << '\t' << fmt(d) << '\t';
    if (const auto w = labels.walk_to(t); w && d != kInfinity) os << format_walk(g, *w);
    os << '\n';
  };
  if (a.target) {
    row(vertex_arg(g, *a.target));
  } else {
    for (Vertex t = 0; t < g.vertex_count(); ++t) row(t);
  }
  return kOk;
}

// --- cpp / contigs -----------------------------------------------------------

struct CppArgs {
  bool greedy = false;
  bool contigs = false;
  bool oracle = false;
  std::string fasta_out;
};

void write_contig_fasta(std::ostream& os, const DeBruijnGraph& dbg, const CppSolution& s) {
  for (std::size_t i = 0; i < s.contigs.size(); ++i) {
    const auto seq = spell_walk(dbg, s.contigs[i]);
    write_fasta(os, "contig_" + std::to_string(i + 1) + " edges=" + std::to_string(s.contigs[i].size()) +
                        " length=" + std::to_string(seq.size()),
                seq);
  }
}

void write_report(std::ostream& os, const BiGraph& g, const CppSolution& s) {
  os << "kind\t" << (s.kind == SolutionKind::cyclic_walk ? "CYCLIC_CP_WALK" : "CONTIG_SET") << '\n';
  os << "base=" << fmt(s.breakdown.base) << " matching=" << fmt(s.breakdown.matching) << " total=" << fmt(s.cost)
     << '\n';
  if (s.kind == SolutionKind::cyclic_walk) {
    os << "walk\t" << format_walk(g, s.walk) << '\n';
  } else {
    for (std::size_t i = 0; i < s.contigs.size(); ++i) {
      os << "contig\t" << (i + 1) << '\t' << format_walk(g, s.contigs[i]) << '\n';
    }
  }
}

int cmd_cpp(const CppArgs& a, const Common& c) {
  const auto file = load_graph(c);
  const BiGraph& g = file.graph;
  const auto dbg = load_vertex_table(c, g);
  Output out(c.out);
  auto& os = out.stream();
  if (a.oracle) {
    try {
      const auto o = oracle_cpp(g);
      os << "oracle=" << (o ? fmt(*o) : std::string("NONE")) << '\n';
    } catch (const BudgetExceeded&) {
      os << "oracle=BUDGET_EXCEEDED\n";
    }
  }
  if (c.verbose) write_tsv(std::cerr, build_balancing_bipartite(g, c.threads).replica_costs());
  CppSolution s;
  if (a.contigs) {
    s = solve_contigs(g, a.greedy ? MatchStrategy::greedy : MatchStrategy::exact, c.threads);
  } else if (a.greedy) {
    s = solve_cpp_greedy(g, c.threads);
  } else {
    auto exact = solve_cpp_exact(g, c.threads);
    if (!exact) {
      os << "kind\tNO_CYCLIC_CP_WALK\n";
      os.flush();
      throw ExitError{kNoCyclicWalk, "NO_CYCLIC_CP_WALK: the graph has no cyclic walk covering every edge"};
    }
    s = std::move(*exact);
  }
  write_report(os, g, s);
  if (!a.fasta_out.empty()) {
    if (!dbg) throw ExitError{kMalformed, "FASTA output needs a vertex table (--vertices)"};
    std::ofstream fa(a.fasta_out);
    if (!fa) throw ExitError{kUnreadable, "cannot write '" + a.fasta_out + "'"};
    if (s.kind == SolutionKind::cyclic_walk) {
      write_fasta(fa, "sddna length=" + std::to_string(dbg->k + s.walk.size()), spell_walk(*dbg, s.walk));
    } else {
      write_contig_fasta(fa, *dbg, s);
    }
  }
  return kOk;
}

// Contig FASTA when a vertex table is available, the walk report otherwise.
int cmd_contigs(const CppArgs& a, const Common& c) {
  const auto file = load_graph(c);
  const BiGraph& g = file.graph;
  const auto dbg = load_vertex_table(c, g);
  const auto s = solve_contigs(g, a.greedy ? MatchStrategy::greedy : MatchStrategy::exact, c.threads);
  Output out(c.out);
  if (dbg) {
    write_contig_fasta(out.stream(), *dbg, s);
  } else {
    write_report(out.stream(), g, s);
  }
  return kOk;
}

// --- simulate ----------------------------------------------------------------

struct SimulateArgs {
  std::size_t genome_length = 10000;
  std::size_t genomes = 1;
  std::size_t read_length = 100;
  double coverage = 5.0;
  std::string genome_out;
};

int cmd_simulate(const SimulateArgs& a, const Common& c) {
  if (a.read_length == 0 || a.read_length > a.genome_length) {
    throw ExitError{kUsage, "--read-length must lie in [1, genome length]"};
  }
  std::mt19937_64 rng(c.seed);
  static constexpr char kBases[] = "ACGT";
  std::uniform_int_distribution<int> base(0, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  std::unique_ptr<std::ofstream> genome_file;
  if (!a.genome_out.empty()) {
    genome_file = std::make_unique<std::ofstream>(a.genome_out);
    if (!*genome_file) throw ExitError{kUnreadable, "cannot write '" + a.genome_out + "'"};
  }
  Output out(c.out);
  std::size_t id = 0;
  for (std::size_t gi = 0; gi < a.genomes; ++gi) {
    std::string genome(a.genome_length, 'A');
    for (auto& ch : genome) ch = kBases[base(rng)];
    if (genome_file) write_fasta(*genome_file, "genome_" + std::to_string(gi + 1) + " seed=" + std::to_string(c.seed), genome);
    const auto count = static_cast<std::size_t>(a.coverage * static_cast<double>(a.genome_length) /
                                                    static_cast<double>(a.read_length) +
                                                0.5);
    std::uniform_int_distribution<std::size_t> pos(0, a.genome_length - a.read_length);
    for (std::size_t r = 0; r < count; ++r) {
      std::string read = genome.substr(pos(rng), a.read_length);
      if (coin(rng)) read = reverse_complement(read);
      write_fasta(out.stream(), "read_" + std::to_string(++id) + " genome=" + std::to_string(gi + 1) +
                                    " seed=" + std::to_string(c.seed),
                  read);
    }
  }
  return kOk;
}

void add_common(CLI::App* sub, Common& c, bool graph) {
  if (graph) {
    sub->add_option("--graph", c.graph, "edge-list file")->required();
    sub->add_option("--vertices", c.vertices, "vertex table (default: sibling .vertices file)");
  }
  sub->add_option("--out", c.out, "output file (default: stdout)");
  sub->add_option("--threads", c.threads, "worker threads for shortest-walk runs (0: all cores)");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_flag("--verbose", c.verbose, "diagnostics on stderr");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-directed de Bruijn graphs and Chinese Postman walks"};
  app.require_subcommand(1);
  Common common;

  BuildArgs build;
  auto* b = app.add_subcommand("build", "build a de Bruijn graph from FASTA reads");
  b->add_option("--fasta", build.fasta, "input reads")->required();
  b->add_option("-k", build.k, "k-mer length")->required();
  b->add_option("--prefix", build.prefix, "write <prefix>.edges and <prefix>.vertices");
  add_common(b, common, false);

  auto* st = app.add_subcommand("stats", "imbalance statistics as TSV");
  add_common(st, common, true);

  ShortestArgs sh;
  auto* sp = app.add_subcommand("shortest", "shortest bi-directed walks from a source");
  sp->add_option("--source", sh.source, "source vertex id")->required();
  sp->add_option("--target", sh.target, "single target vertex id");
  sp->add_flag("--terminal", sh.terminal, "terminal-oriented walks (leave OUT, arrive IN)");
  add_common(sp, common, true);

  CppArgs cpp;
  auto* cp = app.add_subcommand("cpp", "cyclic Chinese Postman walk");
  cp->add_flag("--greedy", cpp.greedy, "greedy matching instead of the exact one");
  cp->add_flag("--contigs", cpp.contigs, "contig mode");
  cp->add_flag("--oracle", cpp.oracle, "also print the brute-force optimum (tiny graphs only)");
  cp->add_option("--fasta-out", cpp.fasta_out, "spell the walk or contigs to FASTA (needs a vertex table)");
  add_common(cp, common, true);

  CppArgs contigs;
  auto* ct = app.add_subcommand("contigs", "contig set as FASTA");
  ct->add_flag("--greedy", contigs.greedy, "greedy matching instead of the exact one");
  add_common(ct, common, true);

  auto* cm = app.add_subcommand("compare-matching", "greedy versus optimal matching size proxies as TSV");
  add_common(cm, common, true);

  SimulateArgs sim;
  auto* sm = app.add_subcommand("simulate", "error-free reads from random genomes as FASTA");
  sm->add_option("--genome-length", sim.genome_length, "bases per genome");
  sm->add_option("--genomes", sim.genomes, "number of genomes");
  sm->add_option("--read-length", sim.read_length, "bases per read");
  sm->add_option("--coverage", sim.coverage, "mean coverage");
  sm->add_option("--genome-out", sim.genome_out, "also write the genomes as FASTA");
  add_common(sm, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (b->parsed()) return cmd_build(build, common);
    if (st->parsed()) return cmd_stats(common);
    if (sp->parsed()) return cmd_shortest(sh, common);
    if (cp->parsed()) return cmd_cpp(cpp, common);
    if (ct->parsed()) return cmd_contigs(contigs, common);
    if (cm->parsed()) return cmd_compare(common);
    if (sm->parsed()) return cmd_simulate(sim, common);
  } catch (const ExitError& e) {
    std::cerr << "bidir: " << e.message << '\n';
    return e.code;
  } catch (const DisconnectedGraphError& e) {
    std::cerr << "bidir: " << e.what() << '\n';
    return kDisconnected;
  } catch (const InputError& e) {
    std::cerr << "bidir: " << e.what() << '\n';
    return kMalformed;
  } catch (const DomainError& e) {
    std::cerr << "bidir: " << e.what() << '\n';
    return kMalformed;
  }
  return kUsage;
}
