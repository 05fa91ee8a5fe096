#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sparsecut/graph.hpp"
#include "sparsecut/random_walk.hpp"

namespace sparsecut {

/// Concave piecewise-linear curve of cumulative mass against cumulative volume
/// when vertices are taken in decreasing order of p(v)/d(v).
///
/// points[j] = (x_j, y_j) with x_0 = y_0 = 0. For j in 1..order.size() the
/// point is the j-th vertex prefix. When the distribution is sparse, order
/// covers only its support and one closing point (2m, total mass) is appended;
/// the curve is flat beyond the support since every other vertex carries zero.
struct LSCurve {
  std::vector<Volume> x;
  std::vector<double> y;
  /// Vertices in sweep order: decreasing p(v)/d(v), ties by ascending id.
  std::vector<Vertex> order;

  Volume total_volume() const noexcept { return x.back(); }
  double total_mass() const noexcept { return y.back(); }
  /// Number of vertex prefixes (level sets) the curve carries.
  std::size_t prefix_count() const noexcept { return order.size(); }
};

/// Sweep order of a distribution. Only vertices of `p` with positive mass are
/// listed for sparse input; every vertex for dense input. With `limit`, only
/// the first `limit` vertices of the order are produced.
std::vector<Vertex> sweep_order(const Graph& g, const Distribution& p,
                                std::size_t limit = static_cast<std::size_t>(-1));
std::vector<Vertex> sweep_order(const Graph& g, std::span<const double> dense, std::size_t limit);
std::vector<Vertex> sweep_order(const Graph& g, const SparseDistribution& p, std::size_t limit);

LSCurve build_curve(const Graph& g, const Distribution& p);

/// Linear interpolation between extreme points. Throws DomainError outside [0, 2m].
double eval(const LSCurve& c, double x);

/// Level sets S_j = first j vertices of the sweep order, for every j with
/// vol(S_j) <= vol_cap.
std::vector<Cut> level_sets(const Graph& g, const LSCurve& c, Volume vol_cap);

/// f_t(x) = x / cap + sqrt(x) (1 - phi1^2 / 8)^t, the mixing envelope.
struct Envelope {
  double cap = 1.0;
  double phi1 = 0.0;
  std::int64_t t = 0;
};

double envelope_value(const Envelope& e, double x);

struct ChordViolation {
  std::size_t prefix = 0;  // j
  Volume x = 0;
  double value = 0.0;  // C_next(x)
  double chord = 0.0;  // (C_prev(x - phi x) + C_prev(x + phi x)) / 2
};

inline constexpr double kChordTolerance = 1e-9;

/// Checks C_next(x) <= (C_prev(x - phi x) + C_prev(x + phi x)) / 2 + tol at
/// every extreme point x = x_j <= m of c_next whose level set has volume at
/// most vol_cap, phi being that level set's conductance.
std::vector<ChordViolation> check_chord_bound(const Graph& g, const LSCurve& c_prev,
                                              const LSCurve& c_next, Volume vol_cap,
                                              double tol = kChordTolerance);

}  // namespace sparsecut
