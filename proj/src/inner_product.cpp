#include "chfif/inner_product.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace chfif {

namespace {

// \int_{x0}^{x1} (c x + d) x^k dx
double poly_moment(double c, double d, int k, double x0, double x1) {
    const double hi = std::pow(x1, k + 2), lo = std::pow(x0, k + 2);
    const double hi1 = std::pow(x1, k + 1), lo1 = std::pow(x0, k + 1);
    return c * (hi - lo) / (k + 2) + d * (hi1 - lo1) / (k + 1);
}

// \int_{x0}^{x1} (c1 x + d1)(c2 x + d2) dx
double poly_pair(double c1, double d1, double c2, double d2, double x0, double x1) {
    const double s3 = (x1 * x1 * x1 - x0 * x0 * x0) / 3.0;
    const double s2 = (x1 * x1 - x0 * x0) / 2.0;
    const double s1 = x1 - x0;
    return c1 * c2 * s3 + (c1 * d2 + d1 * c2) * s2 + d1 * d2 * s1;
}

double binom(int m, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (m - k + i) / i;
    return r;
}

Eigen::VectorXd solve_guarded(const Eigen::MatrixXd& A, const Eigen::VectorXd& rhs,
                              const char* what) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible()) throw std::domain_error(what);
    return lu.solve(rhs);
}

}  // namespace

Moments moments(const CoalescenceSystem& sys, int maxdeg) {
    if (maxdeg < 0) throw std::invalid_argument("moments: maxdeg must be >= 0");
    const Knots& kn = sys.knots();
    const std::size_t N = kn.intervals();
    const double x0 = kn.left(), x1 = kn.right();
    const MapCoefficients& mc = sys.coeffs();
    const int D = maxdeg + 1;

    // Unknowns: [M_{1,0..maxdeg}, M_{2,0..maxdeg}]. Substituting x = L_n(xi)
    // expands x^m binomially, coupling degree m to degrees k <= m.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * D, 2 * D);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * D);
    for (int m = 0; m <= maxdeg; ++m) {
        A(m, m) += 1.0;
        A(D + m, D + m) += 1.0;
        for (std::size_t n = 1; n <= N; ++n) {
            const double an = kn.a(n), bn = kn.b(n);
            const double al = sys.params().alpha[n - 1];
            const double be = sys.params().beta[n - 1];
            const double ga = sys.params().gamma[n - 1];
            double apow = 1.0;  // an^k
            for (int k = 0; k <= m; ++k) {
                const double w = an * binom(m, k) * apow * std::pow(bn, m - k);
                A(m, k) -= w * al;
                A(m, D + k) -= w * be;
                rhs(m) += w * poly_moment(mc.c[n - 1], mc.d[n - 1], k, x0, x1);
                A(D + m, D + k) -= w * ga;
                rhs(D + m) += w * poly_moment(mc.e[n - 1], mc.h[n - 1], k, x0, x1);
                apow *= an;
            }
        }
    }
    const Eigen::VectorXd sol =
        solve_guarded(A, rhs, "moments: refinement system is singular; check contractivity");
    Moments out;
    out.f1.assign(sol.data(), sol.data() + D);
    out.f2.assign(sol.data() + D, sol.data() + 2 * D);
    return out;
}

InnerProductTable cross_inner(const CoalescenceSystem& a, const CoalescenceSystem& b) {
    if (!(a.knots() == b.knots()))
        throw std::invalid_argument("cross_inner: systems must share the same knots");
    const Knots& kn = a.knots();
    const std::size_t N = kn.intervals();

    InnerProductTable t;
    t.a = moments(a, 1);
    t.b = moments(b, 1);
    const double MA10 = t.a.f1[0], MA11 = t.a.f1[1], MA20 = t.a.f2[0], MA21 = t.a.f2[1];
    const double MB10 = t.b.f1[0], MB11 = t.b.f1[1], MB20 = t.b.f2[0], MB21 = t.b.f2[1];
    const double x0 = kn.left(), x1 = kn.right();
    const MapCoefficients& ca = a.coeffs();
    const MapCoefficients& cb = b.coeffs();

    // Unknowns [ip11, ip12, ip21, ip22]. Each pairing restricted to cell n and
    // pulled back through L_n picks up the affine recursions of both systems;
    // the moment terms are already known.
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(4, 4);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(4);
    for (std::size_t n = 1; n <= N; ++n) {
        const double an = kn.a(n);
        const double al = a.params().alpha[n - 1], be = a.params().beta[n - 1],
                     ga = a.params().gamma[n - 1];
        const double alh = b.params().alpha[n - 1], beh = b.params().beta[n - 1],
                     gah = b.params().gamma[n - 1];
        const double pc = ca.c[n - 1], pd = ca.d[n - 1], qe = ca.e[n - 1], qh = ca.h[n - 1];
        const double pch = cb.c[n - 1], pdh = cb.d[n - 1], qeh = cb.e[n - 1], qhh = cb.h[n - 1];
        const double fa1_pb = pch * MA11 + pdh * MA10;  // <f1, p_n of b>
        const double fa2_pb = pch * MA21 + pdh * MA20;
        const double fa1_qb = qeh * MA11 + qhh * MA10;
        const double fa2_qb = qeh * MA21 + qhh * MA20;
        const double fb1_pa = pc * MB11 + pd * MB10;  // <g1, p_n of a>
        const double fb2_pa = pc * MB21 + pd * MB20;
        const double fb1_qa = qe * MB11 + qh * MB10;
        const double fb2_qa = qe * MB21 + qh * MB20;

        A(0, 0) -= an * al * alh;
        A(0, 1) -= an * al * beh;
        A(0, 2) -= an * be * alh;
        A(0, 3) -= an * be * beh;
        rhs(0) += an * (al * fa1_pb + be * fa2_pb + alh * fb1_pa + beh * fb2_pa +
                        poly_pair(pc, pd, pch, pdh, x0, x1));

        A(1, 1) -= an * al * gah;
        A(1, 3) -= an * be * gah;
        rhs(1) +=
            an * (al * fa1_qb + be * fa2_qb + gah * fb2_pa + poly_pair(pc, pd, qeh, qhh, x0, x1));

        A(2, 2) -= an * ga * alh;
        A(2, 3) -= an * ga * beh;
        rhs(2) += an * (ga * fa2_pb + alh * fb1_qa + beh * fb2_qa +
                        poly_pair(qe, qh, pch, pdh, x0, x1));

        A(3, 3) -= an * ga * gah;
        rhs(3) += an * (ga * fa2_qb + gah * fb2_qa + poly_pair(qe, qh, qeh, qhh, x0, x1));
    }
    const Eigen::VectorXd sol =
        solve_guarded(A, rhs, "cross_inner: pairing system is singular; check contractivity");
    t.ip11 = sol(0);
    t.ip12 = sol(1);
    t.ip21 = sol(2);
    t.ip22 = sol(3);
    return t;
}

double pairing_identity_residual(const CoalescenceSystem& a, const CoalescenceSystem& b,
                                 const InnerProductTable& t) {
    const Knots& kn = a.knots();
    const std::size_t N = kn.intervals();
    const double x0 = kn.left(), x1 = kn.right();
    const MapCoefficients& ca = a.coeffs();
    const MapCoefficients& cb = b.coeffs();
    double lhs_factor = 1.0;
    double rhs = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
        const double an = kn.a(n);
        const double al = a.params().alpha[n - 1], be = a.params().beta[n - 1];
        const double alh = b.params().alpha[n - 1], beh = b.params().beta[n - 1];
        lhs_factor -= an * al * alh;
        rhs += an * (al * beh * t.ip12 + be * alh * t.ip21 + be * beh * t.ip22 +
                     al * (cb.c[n - 1] * t.a.f1[1] + cb.d[n - 1] * t.a.f1[0]) +
                     alh * (ca.c[n - 1] * t.b.f1[1] + ca.d[n - 1] * t.b.f1[0]) +
                     be * (cb.c[n - 1] * t.a.f2[1] + cb.d[n - 1] * t.a.f2[0]) +
                     beh * (ca.c[n - 1] * t.b.f2[1] + ca.d[n - 1] * t.b.f2[0]) +
                     poly_pair(ca.c[n - 1], ca.d[n - 1], cb.c[n - 1], cb.d[n - 1], x0, x1));
    }
    return t.ip11 * lhs_factor - rhs;
}

double quad_inner(const GridSamples& a, int comp_a, const GridSamples& b, int comp_b) {
    auto pick = [](const GridSamples& g, int comp) -> const std::vector<double>& {
        if (comp == 1) return g.f1;
        if (comp == 2) return g.f2;
        throw std::invalid_argument("quad_inner: component selector must be 1 or 2");
    };
    const std::vector<double>& va = pick(a, comp_a);
    const std::vector<double>& vb = pick(b, comp_b);
    if (a.xs.size() != b.xs.size())
        throw std::invalid_argument("quad_inner: grids must have the same size");
    for (std::size_t i = 0; i < a.xs.size(); ++i)
        if (a.xs[i] != b.xs[i])
            throw std::invalid_argument("quad_inner: grids must share abscissae");
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < a.xs.size(); ++i) {
        const double w = a.xs[i + 1] - a.xs[i];
        acc += 0.5 * w * (va[i] * vb[i] + va[i + 1] * vb[i + 1]);
    }
    return acc;
}

double translated_inner(const CoalescenceSystem& a, const CoalescenceSystem& b, int shift) {
    const auto unit = [](const CoalescenceSystem& s) {
        return s.knots().left() == 0.0 && s.knots().right() == 1.0;
    };
    if (!unit(a) || !unit(b))
        throw std::invalid_argument("translated_inner: systems must be supported on [0, 1]");
    if (shift != 0) return 0.0;
    return cross_inner(a, b).ip11;
}

}  // namespace chfif
