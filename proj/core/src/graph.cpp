#include "gaplab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gaplab {

namespace {

// Union-find with path halving; small enough that rank tracking is not worth it.
struct UnionFind {
    std::vector<Vertex> parent;
    explicit UnionFind(Vertex n) : parent(n) {
        std::iota(parent.begin(), parent.end(), Vertex{0});
    }
    Vertex find(Vertex x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(Vertex a, Vertex b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

void label_components(Graph& g) {
    UnionFind uf(g.n);
    for (Vertex u = 0; u < g.n; ++u)
        for (Vertex v : g.adj(u))
            if (u < v) uf.unite(u, v);

    g.component_id.assign(g.n, 0);
    g.component_sizes.clear();
    std::vector<Vertex> label(g.n, g.n); // root -> component label
    for (Vertex x = 0; x < g.n; ++x) {
        Vertex r = uf.find(x);
        if (label[r] == g.n) {
            label[r] = static_cast<Vertex>(g.component_sizes.size());
            g.component_sizes.push_back(0);
        }
        g.component_id[x] = label[r];
        ++g.component_sizes[label[r]];
    }
}

Graph from_sorted_pairs(Vertex n, const std::vector<Edge>& pairs) {
    Graph g;
    g.n = n;
    g.degrees.assign(n, 0);
    for (const auto& [u, v] : pairs) {
        ++g.degrees[u];
        ++g.degrees[v];
    }
    g.offsets.assign(n + 1, 0);
    for (Vertex x = 0; x < n; ++x) g.offsets[x + 1] = g.offsets[x] + g.degrees[x];
    g.neighbors.resize(2 * pairs.size());
    std::vector<std::uint64_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
    // Pairs are lexicographic with u < v, so both endpoint lists fill in
    // ascending order and no per-vertex sort is needed.
    for (const auto& [u, v] : pairs) {
        g.neighbors[cursor[u]++] = v;
        g.neighbors[cursor[v]++] = u;
    }
    label_components(g);
    return g;
}

} // namespace

bool Graph::has_edge(Vertex u, Vertex v) const {
    auto nb = adj(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

Graph build_graph(Vertex n, const std::vector<Edge>& edges) {
    if (n == 0) throw std::invalid_argument("build_graph: n must be positive");
    std::vector<Edge> pairs;
    pairs.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u == v) throw std::invalid_argument("build_graph: self loop");
        if (u > v) std::swap(u, v);
        if (v >= n) throw std::invalid_argument("build_graph: vertex out of range");
        pairs.emplace_back(u, v);
    }
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end())
        throw std::invalid_argument("build_graph: duplicate edge");
    return from_sorted_pairs(n, pairs);
}

Graph generate_er(Vertex n, double d, RngSeed seed) {
    if (n < 2) throw std::invalid_argument("generate_er: need n >= 2");
    if (!(d > 0.0) || d > static_cast<double>(n))
        throw std::invalid_argument("generate_er: need 0 < d <= n");

    const double p = d / static_cast<double>(n);
    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    std::vector<Edge> pairs;
    pairs.reserve(static_cast<std::size_t>(1.1 * 0.5 * d * n + 16));

    if (p >= 1.0) {
        for (Vertex u = 0; u + 1 < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        return from_sorted_pairs(n, pairs);
    }

    // Enumerate pairs (u,v), u < v, in lexicographic order as linear indices
    // 0..total-1 and draw the run of absent pairs before the next edge
    // geometrically: skip = floor(log(1-U)/log(1-p)).
    Xoshiro256PlusPlus rng(seed);
    const double log1mp = std::log1p(-p);
    std::uint64_t pos = 0;        // next undecided linear index
    Vertex u = 0;
    std::uint64_t row_start = 0;  // linear index of pair (u, u+1)
    std::uint64_t row_len = n - 1;
    while (pos < total) {
        const double x = std::log1p(-rng.next_double()); // log(1-U), U in [0,1)
        const double skip = std::floor(x / log1mp);
        if (skip >= static_cast<double>(total - pos)) break;
        pos += static_cast<std::uint64_t>(skip);
        while (pos >= row_start + row_len) {
            row_start += row_len;
            --row_len;
            ++u;
        }
        pairs.emplace_back(u, static_cast<Vertex>(u + 1 + (pos - row_start)));
        ++pos;
    }
    return from_sorted_pairs(n, pairs);
}

std::vector<std::vector<Vertex>> ball(const Graph& g, Vertex center, Vertex radius) {
    if (center >= g.n) throw std::invalid_argument("ball: center out of range");
    std::vector<std::vector<Vertex>> spheres(radius + 1);
    std::vector<Vertex> dist(g.n, g.n);
    dist[center] = 0;
    spheres[0] = {center};
    for (Vertex r = 0; r < radius; ++r) {
        for (Vertex x : spheres[r])
            for (Vertex y : g.adj(x))
                if (dist[y] == g.n) {
                    dist[y] = r + 1;
                    spheres[r + 1].push_back(y);
                }
        std::sort(spheres[r + 1].begin(), spheres[r + 1].end());
    }
    return spheres;
}

void laplacian_apply(const Graph& g, const std::vector<double>& v, std::vector<double>& out) {
    if (v.size() != g.n) throw std::invalid_argument("laplacian_apply: dimension mismatch");
    out.resize(g.n);
    for (Vertex x = 0; x < g.n; ++x) {
        double acc = static_cast<double>(g.degrees[x]) * v[x];
        for (Vertex y : g.adj(x)) acc -= v[y];
        out[x] = acc;
    }
}

std::vector<double> laplacian_apply(const Graph& g, const std::vector<double>& v) {
    std::vector<double> out;
    laplacian_apply(g, v, out);
    return out;
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << g.n << ' ' << g.edge_count() << '\n';
    for (Vertex u = 0; u < g.n; ++u)
        for (Vertex v : g.adj(u))
            if (u < v) out << u << ' ' << v << '\n';
}

void write_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_edge_list: cannot open " + path);
    write_edge_list(g, out);
}

Graph read_edge_list(std::istream& in) {
    std::uint64_t n = 0, m = 0;
    if (!(in >> n >> m)) throw std::invalid_argument("read_edge_list: bad header");
    if (n == 0 || n > 0xFFFFFFFFull) throw std::invalid_argument("read_edge_list: bad vertex count");
    std::vector<Edge> pairs;
    pairs.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        std::uint64_t u = 0, v = 0;
        if (!(in >> u >> v)) throw std::invalid_argument("read_edge_list: truncated edge list");
        if (u >= v || v >= n) throw std::invalid_argument("read_edge_list: bad pair");
        pairs.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end())
        throw std::invalid_argument("read_edge_list: duplicate pair");
    return from_sorted_pairs(static_cast<Vertex>(n), pairs);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_edge_list: cannot open " + path);
    return read_edge_list(in);
}

} // namespace gaplab
