#include "chfif/system.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chfif {

Knots::Knots(std::vector<double> xs) : x_(std::move(xs)) {
    if (x_.size() < 2)
        throw std::invalid_argument("knots: need at least two abscissae");
    for (std::size_t i = 0; i + 1 < x_.size(); ++i)
        if (!(x_[i] < x_[i + 1]))
            throw std::invalid_argument("knots: abscissae must be strictly increasing");
}

Knots Knots::uniform(std::size_t intervals) {
    if (intervals == 0)
        throw std::invalid_argument("knots: need at least one interval");
    std::vector<double> xs(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i)
        xs[i] = static_cast<double>(i) / static_cast<double>(intervals);
    return Knots(std::move(xs));
}

double Knots::a(std::size_t n) const { return (x_[n] - x_[n - 1]) / span(); }

double Knots::b(std::size_t n) const {
    return (right() * x_[n - 1] - left() * x_[n]) / span();
}

double Knots::map(std::size_t n, double x) const { return a(n) * x + b(n); }

double Knots::unmap(std::size_t n, double x) const { return (x - b(n)) / a(n); }

void HiddenParams::validate(std::size_t intervals) const {
    if (alpha.size() != intervals || beta.size() != intervals || gamma.size() != intervals)
        throw std::invalid_argument("params: alpha/beta/gamma must have one entry per interval");
    for (std::size_t i = 0; i < intervals; ++i) {
        if (!(std::abs(alpha[i]) < 1.0))
            throw std::invalid_argument("params: |alpha_" + std::to_string(i + 1) + "| must be < 1");
        if (!(std::abs(gamma[i]) < 1.0))
            throw std::invalid_argument("params: |gamma_" + std::to_string(i + 1) + "| must be < 1");
        if (!(std::abs(beta[i]) + std::abs(gamma[i]) < 1.0))
            throw std::invalid_argument("params: |beta_" + std::to_string(i + 1) + "| + |gamma_" +
                                        std::to_string(i + 1) + "| must be < 1");
    }
}

double HiddenParams::contraction_modulus() const {
    double m = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        m = std::max(m, std::abs(alpha[i]) + std::abs(beta[i]));
        m = std::max(m, std::abs(gamma[i]));
    }
    return m;
}

CoalescenceSystem::CoalescenceSystem(Knots k, HiddenParams p, DataPoints d, MapCoefficients m)
    : knots_(std::move(k)), params_(std::move(p)), data_(std::move(d)), coeffs_(std::move(m)) {}

double CoalescenceSystem::p(std::size_t n, double x) const {
    return coeffs_.c[n - 1] * x + coeffs_.d[n - 1];
}

double CoalescenceSystem::q(std::size_t n, double x) const {
    return coeffs_.e[n - 1] * x + coeffs_.h[n - 1];
}

std::array<double, 3> CoalescenceSystem::apply_map(std::size_t n,
                                                   const std::array<double, 3>& pt) const {
    if (n < 1 || n > intervals())
        throw std::out_of_range("apply_map: interval index out of range");
    const double x = pt[0];
    if (!(x >= knots_.left() && x <= knots_.right()))
        throw std::domain_error("apply_map: x outside the interpolation interval");
    const auto& pr = params_;
    return {knots_.map(n, x),
            pr.alpha[n - 1] * pt[1] + pr.beta[n - 1] * pt[2] + p(n, x),
            pr.gamma[n - 1] * pt[2] + q(n, x)};
}

CoalescenceSystem build_system(Knots knots, HiddenParams params, DataPoints data) {
    const std::size_t n = knots.intervals();
    params.validate(n);
    if (data.y.size() != n + 1 || data.z.size() != n + 1)
        throw std::invalid_argument("data: y/z must have one value per knot");

    const double x0 = knots.left(), w = knots.span();
    const double y0 = data.y.front(), yN = data.y.back();
    const double z0 = data.z.front(), zN = data.z.back();

    MapCoefficients mc;
    mc.c.resize(n);
    mc.d.resize(n);
    mc.e.resize(n);
    mc.h.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double al = params.alpha[i], be = params.beta[i], ga = params.gamma[i];
        mc.c[i] = ((data.y[i + 1] - data.y[i]) - al * (yN - y0) - be * (zN - z0)) / w;
        mc.d[i] = data.y[i] - al * y0 - be * z0 - mc.c[i] * x0;
        mc.e[i] = ((data.z[i + 1] - data.z[i]) - ga * (zN - z0)) / w;
        mc.h[i] = data.z[i] - ga * z0 - mc.e[i] * x0;
    }
    return CoalescenceSystem(std::move(knots), std::move(params), std::move(data), std::move(mc));
}

SystemPtr make_system(Knots knots, HiddenParams params, DataPoints data) {
    return std::make_shared<const CoalescenceSystem>(
        build_system(std::move(knots), std::move(params), std::move(data)));
}

}  // namespace chfif
