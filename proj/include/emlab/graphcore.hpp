#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "emlab/algebra.hpp"

namespace emlab {

// Undirected graph on vertices 0..n-1 with positive integer edge weights.
// Weight w is read as w parallel edges.  No self-loops.  Neighbor lists are
// kept sorted by neighbor id.
struct Graph {
    int64_t n = 0;
    std::vector<std::vector<std::pair<int64_t, int64_t>>> adj;
    std::vector<std::string> labels; // empty, or exactly one per vertex

    Graph() = default;
    explicit Graph(int64_t nv) : n(nv), adj(nv) {}

    // Accumulates weight if the edge already exists.
    void add_edge(int64_t u, int64_t v, int64_t w = 1);
    int64_t append_vertex();

    int64_t weight(int64_t u, int64_t v) const;
    int64_t weighted_degree(int64_t u) const;
};

// Sum over distinct edges of their multiplicity.
int64_t edge_unit_count(const Graph& g);
int64_t max_degree(const Graph& g);
bool is_connected(const Graph& g);

// A selection of parallel-edge copies: take `mult` of the copies of {u, v}.
struct EdgeRef {
    int64_t u, v, mult;
};
struct EdgeSelection {
    std::vector<EdgeRef> edges;
};

// Every edge of g at full multiplicity.
EdgeSelection all_edges(const Graph& g);

// Cayley graph of S.parent with respect to the symmetric multiset S: the
// weight of {g, h} is #{s in S : gs = h}.  Degree is |S| at every vertex.
// Vertex i is the group element with index i; labels carry its text form.
Graph cayley_graph(const GeneratingSet& s);

// Edge-weight sum of two graphs on the same vertex set.
Graph overlay(const Graph& a, const Graph& b);

// Replace each selected edge copy by a path of m edges through m-1 fresh
// vertices.  m = 1 returns the graph unchanged.  Fresh vertices are appended
// in sorted (u, v) order of the selection, copy by copy, path position by
// path position, so the result is reproducible.  Throws
// InvalidSelectionError if the selection exceeds the available multiplicity.
Graph subdivide(const Graph& g, const EdgeSelection& sel, int64_t m);

// The two-level construction over a 3-regular base graph H on N vertices:
// one K4 per base vertex (block v holds vertices 4v..4v+3), plus 4 copies of
// H connecting the blocks, every copy edge subdivided into an ell-edge path.
// Total size (6*ell - 2) * N.  Throws NotRegularError unless H is 3-regular
// and TooSmallError when ell < 2.
Graph build_G_of_H(const Graph& h, int64_t ell);

// Text format: header "graph v1 <n>", then one line "u v w" per distinct
// edge with u < v, sorted lexicographically.  serialize/deserialize are
// mutually inverse, bit for bit.
std::string serialize(const Graph& g);
Graph deserialize(const std::string& text);

Graph complete_graph(int64_t k);
Graph cycle_graph(int64_t k);
Graph petersen();

} // namespace emlab
