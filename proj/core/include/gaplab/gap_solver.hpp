#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaplab/graph.hpp"

namespace gaplab {

struct SpectralReport {
    double lambda2 = 0.0;
    std::uint32_t kernel_dim = 0;  // = number of connected components
    std::uint64_t iterations = 0;  // operator applications (0 for the dense path)
    double residual = 0.0;         // ||L v - lambda2 v|| for the final vector
    std::string method;            // "dense" or "iterative"
};

enum class SolveMethod { automatic, dense, iterative };

// Thrown when the iterative solver runs out of its iteration budget; carries
// the best estimate seen so the caller can still inspect or log it.
struct SolverStall : std::runtime_error {
    SpectralReport best;
    SolverStall(const std::string& msg, SpectralReport partial)
        : std::runtime_error(msg), best(std::move(partial)) {}
};

// Full Laplacian spectrum, ascending.  Dense oracle for n <= 2000.
std::vector<double> dense_spectrum(const Graph& g);

// Smallest eigenvalue of L above the kernel of component indicators.
// automatic picks dense for n <= 2000 and a deflated Krylov iteration above;
// the kernel is handled exactly by projecting component means out of every
// vector rather than hoping the iteration avoids it.  max_iterations = 0
// means the default budget of 20*sqrt(n) operator applications.  When
// eigenvector is non-null the final vector is written there so callers can
// recheck the residual.
SpectralReport lambda2(const Graph& g, double tol = 1e-8,
                       SolveMethod method = SolveMethod::automatic,
                       std::uint64_t max_iterations = 0,
                       std::vector<double>* eigenvector = nullptr);

// Measured gap next to the pendant-line limit value for the given length.
struct GapReport {
    SpectralReport solve;
    std::uint32_t t_star = 0;
    double prediction = 0.0;
    double deviation = 0.0;   // |lambda2 - prediction|
    double mean_degree = 0.0; // 2m/n of the graph at hand
};
GapReport gap_report(const Graph& g, std::uint32_t t_star, double tol = 1e-8);

// Flat JSON objects with stable key order and %.17g doubles.
std::string to_json(const SpectralReport& report);
std::string to_json(const GapReport& report);

} // namespace gaplab
