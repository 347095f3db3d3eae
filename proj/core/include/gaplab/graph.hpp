#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gaplab/rng.hpp"

namespace gaplab {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>; // stored with first < second

// Simple undirected graph in compressed adjacency form.  Immutable after
// construction; connected components are computed once up front because
// almost every consumer (kernel deflation, census statistics, sweep rows)
// needs them anyway.
struct Graph {
    Vertex n = 0;
    std::vector<std::uint64_t> offsets;       // size n+1
    std::vector<Vertex> neighbors;            // size 2m, ascending per vertex
    std::vector<Vertex> degrees;              // size n
    std::vector<Vertex> component_id;         // size n, labels 0..k-1 in order of smallest member
    std::vector<std::uint64_t> component_sizes; // size k

    std::uint64_t edge_count() const { return neighbors.size() / 2; }
    std::size_t component_count() const { return component_sizes.size(); }

    std::span<const Vertex> adj(Vertex x) const {
        return {neighbors.data() + offsets[x], neighbors.data() + offsets[x + 1]};
    }
    bool has_edge(Vertex u, Vertex v) const;
};

// Builds the compressed form from an edge list.  Edges may be given in any
// order and orientation; self loops and duplicates are rejected.
Graph build_graph(Vertex n, const std::vector<Edge>& edges);

// Erdos-Renyi sample G(n, p) with p = d/n: every unordered pair is an edge
// independently.  Runs in O(n + |E|) by jumping between successful pairs
// with geometric skips instead of testing all n(n-1)/2 of them.
// Requires n >= 2 and 0 < d <= n (d = n means p = 1, the complete graph).
Graph generate_er(Vertex n, double d, RngSeed seed);

// Spheres S_0 .. S_r around center (S_k = vertices at graph distance
// exactly k), each ascending; later spheres may be empty.
std::vector<std::vector<Vertex>> ball(const Graph& g, Vertex center, Vertex radius);

// out = L v with L = D - A, never materializing L.
void laplacian_apply(const Graph& g, const std::vector<double>& v, std::vector<double>& out);
std::vector<double> laplacian_apply(const Graph& g, const std::vector<double>& v);

// Plain-text edge list: header "n m", then one "u v" line per edge with
// u < v, 0-indexed, ascending, newline terminated.
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list(const Graph& g, const std::string& path);
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

} // namespace gaplab
