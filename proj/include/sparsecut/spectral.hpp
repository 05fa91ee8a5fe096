#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sparsecut/graph.hpp"
#include "sparsecut/parallel.hpp"

namespace sparsecut {

/// Smallest eigenpair of the restricted normalized Laplacian on S, i.e. the
/// S x S block of I - D^-1/2 A D^-1/2 (degrees taken in the whole graph).
struct LocalEigenpair {
  std::vector<Vertex> subset;  // sorted
  double lambda = 0.0;
  /// Unit-norm positive eigenvector, indexed like `subset`.
  std::vector<double> vector;
  /// sqrt(d(v)) * vector(v), scaled to sum to one.
  std::vector<double> seed_distribution;
  std::int64_t iterations = 0;
};

struct EigenOptions {
  double tol = 1e-10;
  std::int64_t max_iterations = 1'000'000;
};

/// Power iteration on the symmetric form of the restricted lazy walk
/// (I + D_S^-1/2 A_S D_S^-1/2) / 2, whose top eigenvalue is 1 - lambda/2.
/// Starts from D_S^1/2 1, so the estimate of lambda only decreases from phi(S).
/// Stops when both the relative change of the Rayleigh quotient and the
/// infinity-norm residual drop below tol.
///
/// Throws DomainError if S is empty, has an out-of-range id, or does not
/// induce a connected subgraph (call once per component), and
/// ConvergenceError when max_iterations is exhausted.
LocalEigenpair restricted_eigenpair(const Graph& g, std::span<const Vertex> subset,
                                    const EigenOptions& opts = {});

struct CertificateStep {
  std::int64_t t = 0;
  double mass_in_set = 0.0;       // p_t(S)
  double lower_bound = 0.0;       // (1 - lambda/2)^t
  double margin = 0.0;            // p_t(S) - (1 - lambda/2)^t p_0(S)
  double component_margin = 0.0;  // min over v in S of p_t(v) - (1 - lambda/2)^t p_0(v)
};

struct CertificateReport {
  LocalEigenpair pair;
  Cut cut;
  std::vector<CertificateStep> steps;

  double worst_margin() const noexcept;
};

/// Walks exactly from the eigenvector seed distribution for `horizon` steps and
/// checks p_t(S) >= (1 - lambda/2)^t both in aggregate and per vertex of S.
/// Throws CertificateViolation if either margin drops below -tol. The
/// eigenvector error feeds every step of the walk, so the eigenpair is solved
/// well below tol by default.
CertificateReport certify_lower_bound(const Graph& g, std::span<const Vertex> subset,
                                      std::int64_t horizon, double tol = 1e-10,
                                      const EigenOptions& opts = {1e-13, 1'000'000});

struct SeedChoice {
  Vertex vertex = 0;
  double achieved = 0.0;    // p_T(S) from the point mass on `vertex`
  double guaranteed = 0.0;  // (1 - phi(S)/2)^T
};

/// Runs an exact walk of `horizon` steps from every vertex of S and returns
/// the one retaining the most mass in S (ties to the smaller id). Throws
/// CertificateViolation if the winner retains less than (1 - phi(S)/2)^T.
SeedChoice best_seed_vertex(const Graph& g, std::span<const Vertex> subset,
                            std::int64_t horizon, Execution exec = Execution::parallel);

/// p_T(S) starting from an arbitrary distribution, by the exact walk.
double retained_mass(const Graph& g, std::span<const double> start, std::span<const Vertex> subset,
                     std::int64_t horizon, Execution exec = Execution::parallel);

}  // namespace sparsecut
