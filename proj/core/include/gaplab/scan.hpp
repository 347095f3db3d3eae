#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gaplab/graph.hpp"

namespace gaplab {

// Result of restricting a graph to its low-degree vertices.
struct LowDegreeScan {
    double tau = 0.0;                        // threshold fraction in (0,1)
    std::vector<Vertex> vset;                // vertices with degree <= tau*d, ascending
    bool is_forest = false;                  // induced subgraph acyclic?
    std::vector<std::vector<Vertex>> trees;  // induced components when a forest, else empty
};

// A pendant line: an induced path attached to the rest of the graph by a
// single edge at one end.  path is listed free end first, so path.back() is
// the attached vertex and anchor_vertex its neighbour outside the path.
struct LineDetection {
    std::vector<Vertex> path;
    Vertex anchor_vertex = 0;
    Vertex anchor_degree = 0;
    std::uint64_t s2_size = 0; // vertices at distance exactly 2 from the anchor
};

// Restricts g to vertices of degree <= tau*d and reports the induced forest
// structure.  Requires 0 < tau < 1 and d > 0.
LowDegreeScan low_degree_scan(const Graph& g, double tau, double d);

// Largest tau on the grid {1e-4, 2e-4, ...} with -tau*log(tau) + tau <= epsilon/2.
// Requires epsilon in (0, 1/4).
double choose_tau(double epsilon);

// Outgoing-edge count per vertex of t_set: how many edges leave the set from
// each member.  Returned as (vertex, count) pairs for members with count > 0,
// ascending by vertex.
std::vector<std::pair<Vertex, std::uint32_t>> anchor_multiset(const Graph& g,
                                                              const std::vector<Vertex>& t_set);

// All vertex sets Y of size t whose induced subgraph is a path with exactly
// one edge leaving Y, attached at a path endpoint.  Found by walking from
// degree-1 vertices through degree-2 vertices, which characterizes such sets
// exactly.  Sorted by smallest vertex in the path.
std::vector<LineDetection> find_pendant_lines(const Graph& g, Vertex t);

// First-moment estimate n * d^t * exp(-t*d) for the number of pendant
// t-lines in an Erdos-Renyi graph with mean degree d.
double expected_line_count(std::uint64_t n, double d, Vertex t);

// One JSON object per detection, fields: path, anchor, anchor_degree, s2_size.
void write_detections_jsonl(const std::vector<LineDetection>& detections, std::ostream& out);

} // namespace gaplab
