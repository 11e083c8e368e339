#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "webtrace/graph.hpp"
#include "webtrace/multiweb.hpp"

namespace webtrace {

// Maximal alternating single/double chain: vertices[i] joins edges[i-1] and
// edges[i]; closed chains have vertices.size() == edges.size() and wrap.
struct Chain {
  std::vector<int> edges;
  std::vector<int> vertices;
  bool closed = false;
};

struct ChainDecomposition {
  std::vector<Chain> chains;
  std::set<int> trivalent;     // vertices with three single edges
  std::vector<int> tripled;    // edges of multiplicity 3
};

ChainDecomposition find_chains(const EmbeddedBipartiteGraph& g, const Multiweb& m);

// Directed walk along a chain; single edges run black -> white.
Walk chain_walk(const EmbeddedBipartiteGraph& g, const Multiweb& m,
                const Chain& chain);

struct SkeinTerm {
  long coeff = 1;
  Multiweb web;
};

// Contractible closed chain: doubles promoted to triples, singles dropped,
// overall factor 3.
SkeinTerm apply_loop_move(const EmbeddedBipartiteGraph& g, const Multiweb& m,
                          const Chain& chain);

// Bigon/square boundary cycles: alternate +-1 around the cycle, two ways.
std::pair<SkeinTerm, SkeinTerm> apply_bigon_move(const EmbeddedBipartiteGraph& g,
                                                 const Multiweb& m,
                                                 const Walk& cycle);
std::pair<SkeinTerm, SkeinTerm> apply_square_move(const EmbeddedBipartiteGraph& g,
                                                  const Multiweb& m,
                                                  const Walk& cycle);

struct MoveCandidate {
  enum class Kind { Loop, Bigon, Square };
  Kind kind;
  Chain chain;  // for loop moves
  Walk cycle;   // for bigon/square moves
};

// Deterministic move search: loops first, then bigons, then squares.
std::optional<MoveCandidate> find_move(const EmbeddedBipartiteGraph& g,
                                       const Multiweb& m);

// Reduced-web invariant of one multiweb on the annulus: coefficients per
// loop class (j counterclockwise, k clockwise noncontractible loops).
struct ReductionResult {
  std::map<std::pair<int, int>, long> classes;
};

ReductionResult reduce_annulus(const EmbeddedBipartiteGraph& g, const Multiweb& m);

// Counts of (number of trivalent vertices, number of single edges); the
// lexicographic measure every move strictly decreases.
std::pair<int, int> reduction_measure(const EmbeddedBipartiteGraph& g,
                                      const Multiweb& m);

// Pants decomposition coefficients for a graph whose two marked boundary
// faces are adjacent: det of the block matrix under the parametrized flat
// connection is Z0 + Z1*(6 + a^2).
std::pair<long, long> pants_Z1(const EmbeddedBipartiteGraph& g);

}  // namespace webtrace
