#include "gaplab/gap_solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "gaplab/predict.hpp"
#include "gaplab/rng.hpp"
#include "gaplab/tree_spectra.hpp"

namespace gaplab {

namespace {

// Exact kernel deflation: the kernel of L is spanned by the component
// indicators, so projecting them out is just removing per-component means.
void project_out_kernel(const Graph& g, std::vector<double>& v,
                        std::vector<double>& scratch_sums) {
    scratch_sums.assign(g.component_count(), 0.0);
    for (Vertex x = 0; x < g.n; ++x) scratch_sums[g.component_id[x]] += v[x];
    for (std::size_t c = 0; c < g.component_count(); ++c)
        scratch_sums[c] /= static_cast<double>(g.component_sizes[c]);
    for (Vertex x = 0; x < g.n; ++x) v[x] -= scratch_sums[g.component_id[x]];
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

Eigen::MatrixXd dense_laplacian(const Graph& g) {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(g.n, g.n);
    for (Vertex x = 0; x < g.n; ++x) {
        L(x, x) = static_cast<double>(g.degrees[x]);
        for (Vertex y : g.adj(x)) L(x, y) = -1.0;
    }
    return L;
}

SpectralReport lambda2_dense(const Graph& g, double tol, std::vector<double>* eigenvector) {
    const std::vector<double> eigs = dense_spectrum(g);
    const std::uint32_t kernel_dim = static_cast<std::uint32_t>(g.component_count());
    SpectralReport report;
    report.lambda2 = eigs[kernel_dim];
    report.kernel_dim = kernel_dim;
    report.iterations = 0;
    report.method = "dense";

    // Recover a vector for the reported eigenvalue with shifted inverse
    // iteration; the shift sits a hair off the eigenvalue so the solve is
    // violently ill-conditioned exactly along the wanted direction.
    const Eigen::MatrixXd L = dense_laplacian(g);
    const double shift = report.lambda2 + 1e-9 * (1.0 + report.lambda2);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(L - shift * Eigen::MatrixXd::Identity(g.n, g.n));
    Xoshiro256PlusPlus rng({0x9E3779B97F4A7C15ULL, g.n});
    std::vector<double> x(g.n), sums;
    for (auto& xi : x) xi = rng.next_double() - 0.5;
    project_out_kernel(g, x, sums);
    Eigen::Map<Eigen::VectorXd> xv(x.data(), g.n);
    for (int step = 0; step < 3; ++step) {
        xv = lu.solve(xv);
        project_out_kernel(g, x, sums);
        xv /= xv.norm();
    }
    const Eigen::VectorXd r = L * xv - report.lambda2 * xv;
    report.residual = r.norm();
    (void)tol;
    if (eigenvector) eigenvector->assign(x.begin(), x.end());
    return report;
}

SpectralReport lambda2_iterative(const Graph& g, double tol, std::uint64_t max_iterations,
                                 std::vector<double>* eigenvector) {
    const Vertex n = g.n;
    const std::uint32_t kernel_dim = static_cast<std::uint32_t>(g.component_count());
    const std::uint64_t deflated_dim = n - kernel_dim;
    const std::uint64_t budget =
        max_iterations ? max_iterations
                       : 20 * static_cast<std::uint64_t>(std::ceil(std::sqrt(double(n))));

    const std::uint32_t basis_cap =
        static_cast<std::uint32_t>(std::min<std::uint64_t>(deflated_dim, 180));
    const std::uint32_t keep = std::max(1u, std::min(48u, basis_cap / 3));

    std::vector<std::vector<double>> V; // orthonormal basis, all kernel-free
    V.reserve(basis_cap);
    DenseSymMatrix H(basis_cap); // leading k x k block is V^T L V
    std::vector<double> sums, u(n);

    Xoshiro256PlusPlus rng({0x6A09E667F3BCC908ULL, (std::uint64_t(n) << 20) ^ g.edge_count()});
    std::vector<double> w(n);
    for (auto& wi : w) wi = rng.next_double() - 0.5;
    project_out_kernel(g, w, sums);

    std::uint64_t matvecs = 0;
    double theta = 0.0, best_residual = std::numeric_limits<double>::infinity();
    std::vector<double> ritz_min(n, 0.0);

    auto orthonormalize_against_basis = [&](std::vector<double>& vec) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : V) axpy(-dot(b, vec), b, vec);
        project_out_kernel(g, vec, sums);
        const double nrm = norm2(vec);
        if (nrm > 1e-10) {
            for (auto& x : vec) x /= nrm;
            return true;
        }
        return false;
    };

    while (true) {
        // Expand until the basis is full or the budget runs out.
        while (V.size() < basis_cap && matvecs < budget) {
            if (!orthonormalize_against_basis(w)) {
                // Krylov branch exhausted; continue from a fresh direction.
                bool revived = false;
                for (int attempt = 0; attempt < 4 && !revived; ++attempt) {
                    for (auto& wi : w) wi = rng.next_double() - 0.5;
                    revived = orthonormalize_against_basis(w);
                }
                if (!revived) break; // complement fully spanned
            }
            const std::uint32_t k = static_cast<std::uint32_t>(V.size());
            V.push_back(w);
            laplacian_apply(g, V[k], u);
            ++matvecs;
            project_out_kernel(g, u, sums);
            for (std::uint32_t j = 0; j <= k; ++j) {
                const double hjk = dot(V[j], u);
                H.at(j, k) = hjk;
                H.at(k, j) = hjk;
            }
            w = u; // next Krylov direction
        }

        // Rayleigh-Ritz on the current subspace.
        const std::uint32_t k = static_cast<std::uint32_t>(V.size());
        DenseSymMatrix Hk(k);
        for (std::uint32_t i = 0; i < k; ++i)
            for (std::uint32_t j = 0; j < k; ++j) Hk.at(i, j) = H.at(i, j);
        const EigenDecomposition dec = sym_eigen_full(Hk);

        const std::uint32_t keep_now = std::min<std::uint32_t>(keep, k);
        std::vector<std::vector<double>> compressed(keep_now, std::vector<double>(n, 0.0));
        for (std::uint32_t j = 0; j < keep_now; ++j)
            for (std::uint32_t i = 0; i < k; ++i)
                axpy(dec.vectors.at(i, j), V[i], compressed[j]);

        theta = dec.eigenvalues.front();
        ritz_min = compressed[0];
        laplacian_apply(g, ritz_min, u);
        ++matvecs;
        std::vector<double> resid = u;
        axpy(-theta, ritz_min, resid);
        const double res_norm = norm2(resid);
        best_residual = std::min(best_residual, res_norm);

        SpectralReport report;
        report.lambda2 = theta;
        report.kernel_dim = kernel_dim;
        report.iterations = matvecs;
        report.residual = res_norm;
        report.method = "iterative";

        if (res_norm <= tol * (1.0 + std::abs(theta))) {
            if (eigenvector) *eigenvector = ritz_min;
            return report;
        }
        if (matvecs >= budget)
            throw SolverStall("lambda2: iteration budget exhausted before convergence", report);

        // Thick restart: keep the best Ritz vectors, restart the Krylov
        // chain from the current residual direction.
        V = std::move(compressed);
        H = DenseSymMatrix(basis_cap);
        for (std::uint32_t j = 0; j < keep_now; ++j) H.at(j, j) = dec.eigenvalues[j];
        w = resid;
    }
}

char* fmt_double(char (&buf)[32], double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::vector<double> dense_spectrum(const Graph& g) {
    if (g.n > 2000) throw std::invalid_argument("dense_spectrum: n > 2000");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_laplacian(g),
                                                          Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

SpectralReport lambda2(const Graph& g, double tol, SolveMethod method,
                       std::uint64_t max_iterations, std::vector<double>* eigenvector) {
    if (g.edge_count() == 0)
        throw std::invalid_argument("lambda2: edgeless graph has no nonzero spectrum");
    if (!(tol > 0.0)) throw std::invalid_argument("lambda2: tol must be positive");

    SolveMethod chosen = method;
    if (chosen == SolveMethod::automatic)
        chosen = g.n <= 2000 ? SolveMethod::dense : SolveMethod::iterative;
    if (chosen == SolveMethod::dense && g.n > 2000)
        throw std::invalid_argument("lambda2: dense method limited to n <= 2000");

    return chosen == SolveMethod::dense ? lambda2_dense(g, tol, eigenvector)
                                        : lambda2_iterative(g, tol, max_iterations, eigenvector);
}

GapReport gap_report(const Graph& g, std::uint32_t t_star, double tol) {
    GapReport report;
    report.solve = lambda2(g, tol);
    report.t_star = t_star;
    report.prediction = predict_first_order(t_star);
    report.deviation = std::abs(report.solve.lambda2 - report.prediction);
    report.mean_degree = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.n);
    return report;
}

std::string to_json(const SpectralReport& report) {
    char buf[32];
    std::string s = "{\"lambda2\":";
    s += fmt_double(buf, report.lambda2);
    s += ",\"kernel_dim\":" + std::to_string(report.kernel_dim);
    s += ",\"iterations\":" + std::to_string(report.iterations);
    s += ",\"residual\":";
    s += fmt_double(buf, report.residual);
    s += ",\"method\":\"" + report.method + "\"}";
    return s;
}

std::string to_json(const GapReport& report) {
    char buf[32];
    std::string s = "{\"solve\":" + to_json(report.solve);
    s += ",\"t_star\":" + std::to_string(report.t_star);
    s += ",\"prediction\":";
    s += fmt_double(buf, report.prediction);
    s += ",\"deviation\":";
    s += fmt_double(buf, report.deviation);
    s += ",\"mean_degree\":";
    s += fmt_double(buf, report.mean_degree);
    s += "}";
    return s;
}

} // namespace gaplab
