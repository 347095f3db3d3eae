#include "gaplab/scan.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace gaplab {

LowDegreeScan low_degree_scan(const Graph& g, double tau, double d) {
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("low_degree_scan: tau outside (0,1)");
    if (!(d > 0.0)) throw std::invalid_argument("low_degree_scan: d must be positive");

    LowDegreeScan scan;
    scan.tau = tau;
    const double cutoff = tau * d;
    std::vector<char> in_set(g.n, 0);
    for (Vertex x = 0; x < g.n; ++x)
        if (static_cast<double>(g.degrees[x]) <= cutoff) {
            in_set[x] = 1;
            scan.vset.push_back(x);
        }

    // Components of the induced subgraph by BFS over members only.
    std::vector<Vertex> comp(g.n, g.n);
    std::vector<std::vector<Vertex>> comps;
    std::uint64_t induced_edges = 0;
    std::vector<Vertex> queue;
    for (Vertex s : scan.vset) {
        if (comp[s] != g.n) continue;
        const Vertex label = static_cast<Vertex>(comps.size());
        comps.emplace_back();
        comp[s] = label;
        queue.assign(1, s);
        while (!queue.empty()) {
            Vertex x = queue.back();
            queue.pop_back();
            comps[label].push_back(x);
            for (Vertex y : g.adj(x)) {
                if (!in_set[y]) continue;
                if (x < y) ++induced_edges;
                if (comp[y] == g.n) {
                    comp[y] = label;
                    queue.push_back(y);
                }
            }
        }
        std::sort(comps[label].begin(), comps[label].end());
    }

    scan.is_forest = induced_edges + comps.size() == scan.vset.size();
    if (scan.is_forest) scan.trees = std::move(comps);
    return scan;
}

double choose_tau(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.25))
        throw std::invalid_argument("choose_tau: epsilon outside (0, 1/4)");
    const double budget = epsilon / 2.0;
    double best = 0.0;
    for (int k = 1; k < 10000; ++k) {
        const double tau = k * 1e-4;
        if (-tau * std::log(tau) + tau <= budget)
            best = tau;
        else
            break; // -tau*log(tau) + tau is increasing on (0,1)
    }
    if (best == 0.0) throw std::invalid_argument("choose_tau: no grid point satisfies the budget");
    return best;
}

std::vector<std::pair<Vertex, std::uint32_t>> anchor_multiset(const Graph& g,
                                                              const std::vector<Vertex>& t_set) {
    if (t_set.empty()) throw std::invalid_argument("anchor_multiset: empty vertex set");
    std::vector<char> member(g.n, 0);
    for (Vertex x : t_set) {
        if (x >= g.n) throw std::invalid_argument("anchor_multiset: vertex out of range");
        member[x] = 1;
    }
    std::vector<Vertex> sorted(t_set);
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<Vertex, std::uint32_t>> counts;
    for (Vertex x : sorted) {
        std::uint32_t out = 0;
        for (Vertex y : g.adj(x))
            if (!member[y]) ++out;
        if (out > 0) counts.emplace_back(x, out);
    }
    return counts;
}

std::vector<LineDetection> find_pendant_lines(const Graph& g, Vertex t) {
    if (t == 0) throw std::invalid_argument("find_pendant_lines: t must be positive");
    std::vector<LineDetection> found;

    for (Vertex leaf = 0; leaf < g.n; ++leaf) {
        if (g.degrees[leaf] != 1) continue;
        // Walk from the free end through internal degree-2 vertices.
        std::vector<Vertex> path{leaf};
        Vertex prev = leaf;
        Vertex cur = g.adj(leaf)[0];
        bool walk_ok = true;
        while (path.size() < t) {
            if (g.degrees[cur] != 2) {
                walk_ok = false; // cannot be an internal or attached line vertex
                break;
            }
            path.push_back(cur);
            auto nb = g.adj(cur);
            Vertex next = nb[0] == prev ? nb[1] : nb[0];
            prev = cur;
            cur = next;
        }
        if (!walk_ok) continue;
        // After the loop, cur is the neighbour of path.back() beyond the path
        // (for t == 1 that is leaf's only neighbour).  The walk guarantees the
        // induced path plus exactly one outgoing edge at path.back().
        LineDetection det;
        det.path = std::move(path);
        det.anchor_vertex = cur;
        det.anchor_degree = g.degrees[cur];
        auto spheres = ball(g, cur, 2);
        det.s2_size = spheres[2].size();
        found.push_back(std::move(det));
    }

    std::sort(found.begin(), found.end(), [](const LineDetection& a, const LineDetection& b) {
        return *std::min_element(a.path.begin(), a.path.end()) <
               *std::min_element(b.path.begin(), b.path.end());
    });
    return found;
}

double expected_line_count(std::uint64_t n, double d, Vertex t) {
    if (n == 0 || t == 0 || !(d > 0.0))
        throw std::invalid_argument("expected_line_count: need n >= 1, d > 0, t >= 1");
    const double td = static_cast<double>(t);
    return static_cast<double>(n) * std::pow(d, td) * std::exp(-td * d);
}

void write_detections_jsonl(const std::vector<LineDetection>& detections, std::ostream& out) {
    for (const auto& det : detections) {
        out << "{\"path\":[";
        for (std::size_t i = 0; i < det.path.size(); ++i) {
            if (i) out << ',';
            out << det.path[i];
        }
        out << "],\"anchor\":" << det.anchor_vertex << ",\"anchor_degree\":" << det.anchor_degree
            << ",\"s2_size\":" << det.s2_size << "}\n";
    }
}

} // namespace gaplab
