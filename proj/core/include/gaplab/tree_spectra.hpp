#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace gaplab {

using TreeEdge = std::pair<std::uint32_t, std::uint32_t>;

// Tree on vertices 0..t-1 with a boundary weight ("anchor multiplicity") per
// vertex.  The anchor list holds (vertex, multiplicity) pairs with
// multiplicity >= 1; vertices not listed carry weight zero.
struct AnchoredTree {
    std::uint32_t t = 0;
    std::vector<TreeEdge> edges;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> anchor;
};

// Small dense symmetric matrix, row-major.
struct DenseSymMatrix {
    std::uint32_t dim = 0;
    std::vector<double> a;

    DenseSymMatrix() = default;
    explicit DenseSymMatrix(std::uint32_t d) : dim(d), a(static_cast<std::size_t>(d) * d, 0.0) {}
    double& at(std::uint32_t i, std::uint32_t j) { return a[static_cast<std::size_t>(i) * dim + j]; }
    double at(std::uint32_t i, std::uint32_t j) const {
        return a[static_cast<std::size_t>(i) * dim + j];
    }
    void add_sym(std::uint32_t i, std::uint32_t j, double v) {
        at(i, j) += v;
        if (i != j) at(j, i) += v;
    }
    double frobenius_norm() const;
};

struct SpectrumResult {
    std::vector<double> eigenvalues; // ascending
    double residual_bound = 0.0;     // max ||M v - lambda v|| over computed pairs
};

// Full decomposition; column j of `vectors` is the eigenvector of eigenvalues[j].
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    DenseSymMatrix vectors;
    double residual_bound = 0.0;
};

// L(T) plus diag(anchor multiplicities): the tree Laplacian a boundary of
// outgoing edges induces.  Rejects inputs that are not a tree on 0..t-1.
DenseSymMatrix weighted_laplacian(const AnchoredTree& tree);

// Cyclic Jacobi to off-diagonal Frobenius norm 1e-13 * (1 + ||m||).  Chosen
// over fancier reductions because every matrix this module builds is tiny
// (dim <= 64) and Jacobi is deterministic and accurate on symmetric input.
SpectrumResult sym_eigen(const DenseSymMatrix& m);
EigenDecomposition sym_eigen_full(const DenseSymMatrix& m);

// Eigenvalues 2 - 2cos(pi(2k+1)/(2t+1)), k = 0..t-1, of the length-t path
// anchored by one extra unit weight at an endpoint, ascending.
std::vector<double> line_spectrum_closed_form(std::uint32_t t);

// One tree per isomorphism class, vertices relabelled canonically.
struct CanonicalTree {
    std::uint32_t t = 0;
    std::vector<TreeEdge> edges;
    std::string code; // canonical parenthesis encoding, equal iff isomorphic
};

// All free trees with exactly t vertices, 1 <= t <= 10, deterministic order.
std::vector<CanonicalTree> enumerate_trees(std::uint32_t t);

// Canonical encoding of an arbitrary tree edge list (center-rooted, children
// sorted); two trees get the same code iff they are isomorphic.
std::string canonical_tree_code(std::uint32_t t, const std::vector<TreeEdge>& edges);

// Exhaustive minimum scan over anchored trees.
struct MinimalityRow {
    std::string tree_code;
    std::string anchor;      // "v:m" pairs joined by ';'
    double min_nonzero = 0.0;
    bool is_argmin = false;
};
struct MinimalityReport {
    std::uint32_t t = 0;
    double bound = 0.0; // 2 - 2cos(pi/(2t+1))
    bool ok = false;
    std::vector<MinimalityRow> rows;
    std::vector<std::size_t> violations;     // row indices below bound - 1e-10
    std::vector<std::size_t> equality_cases; // row indices within 1e-10 of the bound
    std::size_t argmin_index = 0;
};

// Checks every tree of size <= t against every nonempty anchor assignment
// with per-vertex multiplicity <= multiplicity_cap: the smallest nonzero
// eigenvalue must stay above the length-t line bound, with equality exactly
// at the endpoint-anchored line.  Requires 1 <= t <= 8, multiplicity_cap >= 1.
// threshold_offset shifts the asserted bound and exists for fault-injection
// tests; production callers leave it at zero.
MinimalityReport minimality_oracle(std::uint32_t t, std::uint32_t multiplicity_cap,
                                   double threshold_offset = 0.0);

void write_minimality_csv(const MinimalityReport& report, std::ostream& out);

// Aggregated operator for a pendant line of length t_star hung on an anchor
// of degree d_z whose second neighbourhood has s2 vertices: tridiagonal with
// diagonal (1, 2, ..., 2, d_z, s2/d_z) and couplings (-1, ..., -1, sqrt(d_z)).
DenseSymMatrix second_order_matrix(std::uint32_t t_star, double d_z, double s2);

// First-order eigenvalue correction lambda + <v, (M - lambda) v> for a unit
// vector v with residual eps = ||(M - lambda) v||.  Refuses unless 5*eps <=
// delta, the half-width of an interval around lambda containing exactly one
// eigenvalue; under that condition the result is within O(eps^2/delta) of it.
double rayleigh_refine(const DenseSymMatrix& m, double lambda, const std::vector<double>& v,
                       double delta);

// Spectral norm of the adjacency matrix of a tree given by its edge list.
double tree_adjacency_norm(const std::vector<TreeEdge>& edges);

} // namespace gaplab
