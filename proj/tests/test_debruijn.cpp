#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "support/generators.hpp"

using namespace bidir;
using namespace bidir::testing;

namespace {

// String-only reference: canonical k-mers of reads and their reverse
// complements, no packing involved.
std::set<std::string> canonical_strings(const std::vector<std::string>& reads, std::size_t len) {
  std::set<std::string> out;
  for (const auto& r : reads) {
    for (std::size_t i = 0; i + len <= r.size(); ++i) {
      const std::string z = r.substr(i, len);
      const std::string rc = reverse_complement(z);
      out.insert(std::min(z, rc));
    }
  }
  return out;
}

std::set<std::string> spelled_edges(const DeBruijnGraph& dbg) {
  std::set<std::string> out;
  for (EdgeId e = 0; e < dbg.graph.edge_count(); ++e) {
    BiWalk w;
    w.start = dbg.graph.edge(e).u;
    w.steps = {Step{e, true}};
    const auto z = spell_walk(dbg, w);
    out.insert(std::min(z, reverse_complement(z)));
  }
  return out;
}

std::string edges_text(const BiGraph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

}  // namespace

TEST_CASE("reverse complement", "[dna]") {
  CHECK(reverse_complement("AAGTA") == "TACTT");
  CHECK(reverse_complement("AT") == "AT");
  CHECK(reverse_complement(reverse_complement("GATTACA")) == "GATTACA");
  CHECK(reverse_complement("acgt") == "ACGT");
  CHECK_THROWS_AS(reverse_complement("ACNT"), InputError);
}

TEST_CASE("canonical k-molecules", "[dna]") {
  CHECK(canonical("TACTT").positive == "AAGTA");
  CHECK(canonical("TACTT").negative == "TACTT");
  CHECK(canonical("AAGTA") == canonical("TACTT"));
  CHECK(canonical("ACGT").positive == "ACGT");
  CHECK(canonical("ACGT").negative == "ACGT");
}

TEST_CASE("packed k-mers agree with strings", "[dna][property]") {
  Rng rng(3);
  for (int iter = 0; iter < 500; ++iter) {
    const auto k = static_cast<unsigned>(uniform(rng, 1, 32));
    const auto s = random_dna(rng, k);
    const auto code = pack(s);
    CHECK(unpack(code, k) == s);
    CHECK(unpack(reverse_complement(code, k), k) == reverse_complement(s));
    CHECK(unpack(canonical(code, k), k) == canonical(s).positive);
  }
  CHECK_THROWS_AS(pack(std::string(33, 'A')), DomainError);
}

TEST_CASE("FASTA reader", "[fasta]") {
  std::istringstream in(">r1 first\r\nacg\nTT\n\n>r2\n>r3\nGG GG\n");
  const auto recs = read_fasta(in);
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].name == "r1 first");
  CHECK(recs[0].sequence == "ACGTT");
  CHECK(recs[1].sequence.empty());
  CHECK(recs[2].sequence == "GGGG");

  std::istringstream empty("");
  CHECK(read_fasta(empty).empty());
  std::istringstream headless("ACGT\n>r\nA\n");
  CHECK_THROWS_AS(read_fasta(headless), InputError);
}

TEST_CASE("FASTA writer wraps at 70 columns", "[fasta]") {
  std::ostringstream os;
  write_fasta(os, "x", std::string(141, 'A'));
  CHECK(os.str() == ">x\n" + std::string(70, 'A') + "\n" + std::string(70, 'A') + "\nA\n");
}

TEST_CASE("k bounds", "[debruijn]") {
  CHECK_THROWS_AS(build_graph({"ACGT"}, 1), DomainError);
  CHECK_THROWS_AS(build_graph({"ACGT"}, 32), DomainError);
  CHECK_NOTHROW(build_graph({"ACGT"}, 31));
}

TEST_CASE("build_graph small cases", "[debruijn]") {
  SECTION("ACGGT, k=3") {
    const auto dbg = build_graph({"ACGGT"}, 3);
    CHECK(dbg.graph.edge_count() == 2);
    CHECK(dbg.graph.vertex_count() == 3);
    CHECK(dbg.strands == std::vector<std::string>{"ACC", "ACG", "CCG"});
    CHECK(spelled_edges(dbg) == std::set<std::string>{"ACGG", "ACCG"});
  }
  SECTION("AAAA, k=3 is a single self-loop") {
    const auto dbg = build_graph({"AAAA"}, 3);
    REQUIRE(dbg.graph.vertex_count() == 1);
    REQUIRE(dbg.graph.edge_count() == 1);
    CHECK(dbg.graph.edge(0).is_loop());
    CHECK(dbg.strands[0] == "AAA");
  }
  SECTION("short and rejected reads are counted") {
    const auto dbg = build_graph({"AC", "ACGNT", "ACGT"}, 3);
    CHECK(dbg.report.reads == 3);
    CHECK(dbg.report.short_reads == 1);
    CHECK(dbg.report.rejected_reads == 1);
    CHECK(dbg.graph.edge_count() == 1);
  }
  SECTION("palindromic (k+1)-mer") {
    // ACGT is its own reverse complement, so the edge joins ACG to itself.
    const auto dbg = build_graph({"ACGT"}, 3);
    REQUIRE(dbg.graph.edge_count() == 1);
    CHECK(dbg.graph.edge(0).is_loop());
    CHECK(spelled_edges(dbg) == std::set<std::string>{"ACGT"});
  }
}

TEST_CASE("graph matches the string spectra", "[debruijn][property]") {
  Rng rng(17);
  for (int iter = 0; iter < 200; ++iter) {
    const auto k = static_cast<unsigned>(uniform(rng, 2, 9));
    std::vector<std::string> reads;
    for (auto n = uniform(rng, 1, 4); n > 0; --n) reads.push_back(random_dna(rng, uniform(rng, 1, 30)));
    const auto dbg = build_graph(reads, k);
    const auto kmers = canonical_strings(reads, k);
    CHECK(std::set<std::string>(dbg.strands.begin(), dbg.strands.end()) == kmers);
    CHECK(spelled_edges(dbg) == canonical_strings(reads, k + 1));
    CHECK(dbg.graph.edge_count() == canonical_strings(reads, k + 1).size());
  }
}

TEST_CASE("strand symmetry", "[debruijn][property]") {
  Rng rng(23);
  for (int iter = 0; iter < 100; ++iter) {
    const auto k = static_cast<unsigned>(uniform(rng, 2, 12));
    const auto s = random_dna(rng, uniform(rng, 1, 60));
    const auto a = build_graph({s}, k);
    const auto b = build_graph({reverse_complement(s)}, k);
    CHECK(a.strands == b.strands);
    CHECK(edges_text(a.graph) == edges_text(b.graph));
  }
}

TEST_CASE("spell_walk", "[debruijn]") {
  SECTION("empty walk spells one strand") {
    const auto dbg = build_graph({"ACG"}, 3);
    BiWalk w;
    CHECK(spell_walk(dbg, w) == "ACG");
    w.start_spin = Spin::in;
    CHECK(spell_walk(dbg, w) == "CGT");
  }
  SECTION("two-edge walk on ACGGT") {
    const auto dbg = build_graph({"ACGGT"}, 3);
    const auto& g = dbg.graph;
    // ACG -> CCG -> ACC: find the valid step directions.
    BiWalk w;
    w.start = g.vertex(1);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (g.edge(e).u == w.start || g.edge(e).v == w.start) w.steps.push_back(Step{e, g.edge(e).u == w.start});
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (e != w.steps[0].edge) w.steps.push_back(Step{e, g.edge(e).u == arrival_vertex(g, w.steps[0])});
    REQUIRE(validate_walk(g, w));
    const auto s = spell_walk(dbg, w);
    CHECK((s == "ACGGT" || s == "ACCGT"));
    CHECK(canonical_strings({s}, 4) == std::set<std::string>{"ACGG", "ACCG"});
  }
  SECTION("invalid walk is rejected before output") {
    const auto dbg = build_graph({"ACGGT"}, 3);
    BiWalk w;
    w.start = dbg.graph.edge(0).u;
    w.steps = {Step{0, true}, Step{0, true}};
    CHECK_THROWS_AS(spell_walk(dbg, w), DomainError);
  }
}

namespace {

bool interior_palindrome(const std::string& read, unsigned k) {
  for (std::size_t i = 1; i + k < read.size(); ++i) {
    const auto x = read.substr(i, k);
    if (x == reverse_complement(x)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("spelling a read's walk recovers the read", "[debruijn][property]") {
  Rng rng(29);
  int checked = 0;
  for (int iter = 0; iter < 150; ++iter) {
    const auto k = static_cast<unsigned>(uniform(rng, 3, 15));
    const auto read = random_dna(rng, uniform(rng, k + 1, 80));
    // Passing through a palindromic k-mer is not a walk; see the next case.
    if (interior_palindrome(read, k)) continue;
    ++checked;
    const auto dbg = build_graph({read}, k);
    const auto& g = dbg.graph;
    // Follow the read: each (k+1)-mer names one edge.
    BiWalk w;
    const auto first = canonical(read.substr(0, k));
    w.start = g.vertex(static_cast<Label>(
        std::lower_bound(dbg.strands.begin(), dbg.strands.end(), first.positive) - dbg.strands.begin()));
    for (std::size_t i = 0; i + k + 1 <= read.size(); ++i) {
      const auto z = read.substr(i, k + 1);
      bool found = false;
      for (EdgeId e = 0; e < g.edge_count() && !found; ++e) {
        for (bool fwd : {true, false}) {
          BiWalk one;
          one.start = g.edge(e).endpoint(fwd ? End::u : End::v);
          one.steps = {Step{e, fwd}};
          if (spell_walk(dbg, one) != z) continue;
          // A palindromic (k+1)-mer spells the same both ways; keep the
          // direction that continues the walk.
          w.steps.push_back(one.steps[0]);
          if (validate_walk(g, w)) {
            found = true;
            break;
          }
          w.steps.pop_back();
        }
      }
      REQUIRE(found);
    }
    REQUIRE(validate_walk(g, w));
    CHECK(spell_walk(dbg, w) == read);
  }
  CHECK(checked > 100);
}

TEST_CASE("a palindromic k-mer gives both neighbours the same spin", "[debruijn]") {
  // CAGTACTG is its own reverse complement. Both (k+1)-mers of the read are
  // canonical with the palindrome as prefix, so both edges leave it OUT.
  const auto dbg = build_graph({"GCAGTACTGA"}, 8);
  const auto& g = dbg.graph;
  REQUIRE(g.vertex_count() == 3);
  REQUIRE(g.edge_count() == 2);
  const auto mid = std::find(dbg.strands.begin(), dbg.strands.end(), "CAGTACTG") - dbg.strands.begin();
  const Vertex x = g.vertex(static_cast<Label>(mid));
  const auto& inc = g.incidences(x);
  REQUIRE(inc.size() == 2);
  CHECK(inc[0].spin == Spin::out);
  CHECK(inc[1].spin == Spin::out);
}
