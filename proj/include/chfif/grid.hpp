#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "chfif/system.hpp"

namespace chfif {

// Samples of the attractor pair (f1, f2) on the depth-d refinement of the
// knot grid. Depth 0 is the knot grid itself; each pass maps the previous
// grid through every omega_n, so depth d holds N^(d+1) + 1 points.
struct GridSamples {
    int depth = 0;
    std::vector<double> xs;
    std::vector<double> f1;
    std::vector<double> f2;

    std::size_t size() const { return xs.size(); }
};

inline constexpr std::size_t kDefaultSampleCap = std::size_t{1} << 24;

// Iterates the Read-Bajraktarevic operator on the knot grid. Values at knot
// images are pinned to the interpolation data (the join-up conditions make
// that exact), so restricting a deeper grid to a shallower one reproduces it
// bitwise. Throws std::length_error when the grid would exceed max_samples.
GridSamples refine(const CoalescenceSystem& sys, int depth,
                   std::size_t max_samples = kDefaultSampleCap);

// Nearest-grid-point evaluation at resolution depth; error decays like the
// contraction modulus to the power depth. Requires x in [x_0, x_N].
std::pair<double, double> evaluate_at(const CoalescenceSystem& sys, double x, int depth);

// CSV emission: header "x,f1,f2" then one row per grid point.
void write_csv(std::ostream& os, const GridSamples& g);

}  // namespace chfif
