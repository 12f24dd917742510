#pragma once

#include <map>
#include <utility>
#include <vector>

#include "chfif/inner_product.hpp"
#include "chfif/system.hpp"

namespace chfif {

// One affine image of a canonical attractor. On [a, b] the value is
//   cy f1(t) + cz f2(t) + slope t + offset,  t = (x - a) / (b - a),
// where (f1, f2) is the attractor pair of sys, built on uniform [0, 1] knots.
// Linear combinations of attractors sharing parameters collapse into a single
// system (the attractor is linear in the interpolation data), so one system
// per piece is enough for every construction in this library.
struct Piece {
    double a = 0.0;
    double b = 1.0;
    SystemPtr sys;
    double cy = 1.0;
    double cz = 0.0;
    double slope = 0.0;
    double offset = 0.0;

    double width() const { return b - a; }
};

// Memoizes the exact pairing tables between canonical systems; keyed by
// object identity, so share systems through SystemPtr to benefit.
class PairingCache {
public:
    const InnerProductTable& table(const SystemPtr& a, const SystemPtr& b);

private:
    std::map<std::pair<const CoalescenceSystem*, const CoalescenceSystem*>, InnerProductTable>
        tables_;
    std::vector<SystemPtr> pins_;  // keeps the keyed systems alive
};

// A function of compact support assembled from non-overlapping pieces,
// extended by zero. Closed under translation, dilation, scaling and
// refinement splitting, which keeps every inner product in the library exact.
class PiecewiseFunction {
public:
    PiecewiseFunction() = default;
    explicit PiecewiseFunction(std::vector<Piece> pieces);

    // component 1 or 2 of the attractor of sys, carried onto [a, b]
    static PiecewiseFunction from_system(SystemPtr sys, int component, double a, double b);

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }
    double support_left() const;
    double support_right() const;

    PiecewiseFunction translated(double dx) const;
    PiecewiseFunction dilated(double s) const;  // x -> f(x / s), s > 0
    PiecewiseFunction scaled(double c) const;

    // replaces every piece by its images under the cell maps of its system
    // (one refinement level); values are unchanged
    PiecewiseFunction split() const;

    double evaluate(double x, int depth = 12) const;
    std::vector<double> sample(const std::vector<double>& xs, int depth = 12) const;

private:
    std::vector<Piece> pieces_;  // sorted by interval, non-overlapping
};

// Exact L2 pairing. Pieces are split until the two subdivisions coincide;
// throws std::invalid_argument if the supports never align (incommensurable
// intervals).
double inner(const PiecewiseFunction& f, const PiecewiseFunction& g, PairingCache& cache);
double inner(const PiecewiseFunction& f, const PiecewiseFunction& g);

double norm2(const PiecewiseFunction& f, PairingCache& cache);

// Exact squared L2 norm of sum_k w_k f_k for functions whose pieces all share
// one parameter family (same interval count, alpha, beta, gamma). Each cell of
// the combination is reduced to coordinates over the unit-data attractors of
// the family, and the norm is the value of one positive quadratic form on
// those coordinates. A combination that cancels exactly therefore comes out
// at coordinate-roundoff level, far below the cancellation floor of expanding
// norm2(f) - 2 inner(f, g) + norm2(g) term by term. Throws
// std::invalid_argument on mixed families or non-commensurable piece widths.
double combo_norm2(const std::vector<std::pair<double, PiecewiseFunction>>& terms,
                   PairingCache& cache);

}  // namespace chfif
