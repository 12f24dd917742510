#include "chfif/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace chfif {

GridSamples refine(const CoalescenceSystem& sys, int depth, std::size_t max_samples) {
    if (depth < 0)
        throw std::invalid_argument("refine: depth must be non-negative");
    const std::size_t n = sys.intervals();

    double count = static_cast<double>(n + 1);
    for (int d = 0; d < depth; ++d)
        count = count * static_cast<double>(n) - static_cast<double>(n - 1);
    if (count > static_cast<double>(max_samples))
        throw std::length_error("refine: requested depth exceeds the sample cap");

    GridSamples g;
    g.depth = 0;
    g.xs = sys.knots().points();
    g.f1 = sys.data().y;
    g.f2 = sys.data().z;

    const auto& pr = sys.params();
    const auto& mc = sys.coeffs();
    for (int d = 0; d < depth; ++d) {
        const std::size_t m = g.xs.size() - 1;  // intervals of the current grid
        GridSamples next;
        next.depth = d + 1;
        next.xs.resize(n * m + 1);
        next.f1.resize(n * m + 1);
        next.f2.resize(n * m + 1);
        for (std::size_t k = 1; k <= n; ++k) {
            const std::size_t base = (k - 1) * m;
            for (std::size_t j = 0; j <= m; ++j) {
                const std::size_t idx = base + j;
                if (j == 0) {  // L_k(x_0) = x_{k-1}; join-up pins the data
                    next.xs[idx] = sys.knots()[k - 1];
                    next.f1[idx] = sys.data().y[k - 1];
                    next.f2[idx] = sys.data().z[k - 1];
                } else if (j == m) {
                    next.xs[idx] = sys.knots()[k];
                    next.f1[idx] = sys.data().y[k];
                    next.f2[idx] = sys.data().z[k];
                } else {
                    const double x = g.xs[j];
                    next.xs[idx] = sys.knots().map(k, x);
                    next.f1[idx] = pr.alpha[k - 1] * g.f1[j] + pr.beta[k - 1] * g.f2[j] +
                                   mc.c[k - 1] * x + mc.d[k - 1];
                    next.f2[idx] = pr.gamma[k - 1] * g.f2[j] + mc.e[k - 1] * x + mc.h[k - 1];
                }
            }
        }
        g = std::move(next);
    }
    return g;
}

std::pair<double, double> evaluate_at(const CoalescenceSystem& sys, double x, int depth) {
    if (!(x >= sys.knots().left() && x <= sys.knots().right()))
        throw std::domain_error("evaluate_at: x outside the interpolation interval");
    const GridSamples g = refine(sys, depth);
    auto it = std::lower_bound(g.xs.begin(), g.xs.end(), x);
    std::size_t i = static_cast<std::size_t>(it - g.xs.begin());
    if (i == g.xs.size() || (i > 0 && x - g.xs[i - 1] < g.xs[i] - x))
        --i;
    return {g.f1[i], g.f2[i]};
}

void write_csv(std::ostream& os, const GridSamples& g) {
    os.precision(std::numeric_limits<double>::max_digits10);
    os << "x,f1,f2\n";
    for (std::size_t i = 0; i < g.size(); ++i)
        os << g.xs[i] << ',' << g.f1[i] << ',' << g.f2[i] << '\n';
}

}  // namespace chfif
