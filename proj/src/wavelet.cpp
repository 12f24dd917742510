#include "chfif/wavelet.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace chfif {

WaveletGauge WaveletGauge::zero_pattern() {
    WaveletGauge g;
    g.pins = {{0, 1, 0}, {0, 1, 1}, {0, 2, 0}};
    return g;
}

WaveletSolution reference_table() {
    WaveletSolution s;
    s.a << -1.04784, 0.0125935, -1.04663, 0.0231596, 0.00599567, -0.00795969, 0.00391617,
        0.0, 0.0, -0.298716, 1.32346, -2.4746, 1.12432, -0.553166,
        0.0, 0.0, 0.0, 0.0, 1.06312, 0.0, 0.983686;
    s.b << 19.1929, -21.6229, 11.8901, -11.1171, -4.93066, 1.19803, 0.567807,
        0.0, 0.0, 0.0, 0.0, -11.6825, -15.2071, -3.19525,
        0.0, 0.0, 0.0, 0.0, -13.3015, 33.9169, -11.0405;
    s.gauge = WaveletGauge::zero_pattern();
    return s;
}

namespace {

void check_basis(const ScalingBasis& basis) {
    if (basis.n != 2)
        throw std::invalid_argument("wavelet construction requires a two-interval basis");
}

}  // namespace

std::pair<PiecewiseFunction, PiecewiseFunction> assemble_psi(const WaveletSolution& sol,
                                                             const ScalingBasis& basis, int i) {
    check_basis(basis);
    if (i < 1 || i > 3) throw std::invalid_argument("assemble_psi: index must be 1, 2 or 3");

    std::array<double, 9> av{}, bv{};
    for (int l = 1; l <= 7; ++l) {
        av[static_cast<std::size_t>(l)] = sol.a(i - 1, l - 1);
        bv[static_cast<std::size_t>(l)] = sol.b(i - 1, l - 1);
    }

    const Knots kn = Knots::uniform(2);
    std::vector<Piece> vis, hid;
    for (int j = 0; j < 4; ++j) {
        DataPoints d;
        d.y = {av[static_cast<std::size_t>(2 * j)], av[static_cast<std::size_t>(2 * j + 1)],
               av[static_cast<std::size_t>(2 * j + 2)]};
        d.z = {bv[static_cast<std::size_t>(2 * j)], bv[static_cast<std::size_t>(2 * j + 1)],
               bv[static_cast<std::size_t>(2 * j + 2)]};
        const SystemPtr sys = make_system(kn, basis.params, std::move(d));
        vis.push_back(Piece{0.5 * j, 0.5 * (j + 1), sys, 1.0, 0.0, 0.0, 0.0});
        hid.push_back(Piece{0.5 * j, 0.5 * (j + 1), sys, 0.0, 1.0, 0.0, 0.0});
    }
    return {PiecewiseFunction(std::move(vis)), PiecewiseFunction(std::move(hid))};
}

Eigen::VectorXd residuals(const WaveletSolution& sol, const ScalingBasis& basis) {
    check_basis(basis);

    std::vector<PiecewiseFunction> psi1, psi2;
    for (int i = 1; i <= 3; ++i) {
        auto [v, h] = assemble_psi(sol, basis, i);
        psi1.push_back(std::move(v));
        psi2.push_back(std::move(h));
    }

    PairingCache cache;
    Eigen::VectorXd res(39);
    int row = 0;
    int conditions = 0;

    // visible components against every scaling-function translate whose
    // support meets [0, 2]
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < basis.count(); ++j) {
            const bool wide = j == basis.count() - 1;  // the two-cell concatenation
            for (int l = wide ? -1 : 0; l <= 1; ++l) {
                res(row++) = inner(psi1[static_cast<std::size_t>(i)],
                                   basis.phi1[static_cast<std::size_t>(j)].translated(l), cache);
                ++conditions;
            }
        }

    // pairwise orthogonality of the visible components
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            res(row++) = inner(psi1[static_cast<std::size_t>(i)],
                               psi1[static_cast<std::size_t>(j)], cache);
            ++conditions;
        }

    // hidden components against the hidden component of the second scaling
    // function and its overlapping translates
    for (int i = 0; i < 3; ++i)
        for (int l = 0; l <= 1; ++l) {
            res(row++) = inner(psi2[static_cast<std::size_t>(i)],
                               basis.phi2[1].translated(l), cache);
            ++conditions;
        }

    // hidden components against the first two scaling functions
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) {
            res(row++) = inner(psi2[static_cast<std::size_t>(i)],
                               basis.phi1[static_cast<std::size_t>(j)], cache);
            ++conditions;
        }

    if (conditions != 36)
        throw std::logic_error("wavelet conditions enumerate to " + std::to_string(conditions) +
                               ", expected 36");

    for (int i = 0; i < 3; ++i)
        res(row++) = norm2(psi1[static_cast<std::size_t>(i)], cache) - 1.0;

    return res;
}

namespace {

Eigen::VectorXd pack(const WaveletSolution& s) {
    Eigen::VectorXd x(42);
    for (int i = 0; i < 3; ++i)
        for (int l = 0; l < 7; ++l) {
            x(7 * i + l) = s.a(i, l);
            x(21 + 7 * i + l) = s.b(i, l);
        }
    return x;
}

void unpack(const Eigen::VectorXd& x, WaveletSolution& s) {
    for (int i = 0; i < 3; ++i)
        for (int l = 0; l < 7; ++l) {
            s.a(i, l) = x(7 * i + l);
            s.b(i, l) = x(21 + 7 * i + l);
        }
}

int pin_index(const std::array<int, 3>& pin) {
    return 21 * pin[0] + 7 * pin[1] + pin[2];
}

}  // namespace

Eigen::MatrixXd residual_jacobian(const WaveletSolution& sol, const ScalingBasis& basis) {
    WaveletSolution probe = sol;
    Eigen::VectorXd x = pack(sol);
    const double h = 1e-7;
    Eigen::MatrixXd jac(39, 42);
    for (int c = 0; c < 42; ++c) {
        Eigen::VectorXd xp = x, xm = x;
        xp(c) += h;
        xm(c) -= h;
        unpack(xp, probe);
        const Eigen::VectorXd rp = residuals(probe, basis);
        unpack(xm, probe);
        const Eigen::VectorXd rm = residuals(probe, basis);
        jac.col(c) = (rp - rm) / (2.0 * h);
    }
    return jac;
}

WaveletSolution solve_wavelets(const ScalingBasis& basis, const WaveletSolution& seed,
                               const WaveletSolveOptions& options) {
    check_basis(basis);
    const int gauge_rows = static_cast<int>(seed.gauge.pins.size());
    const int rows = 39 + gauge_rows;

    WaveletSolution cur = seed;
    Eigen::VectorXd x = pack(cur);

    auto eval = [&](const Eigen::VectorXd& v) {
        unpack(v, cur);
        Eigen::VectorXd full(rows);
        full.head(39) = residuals(cur, basis);
        for (int g = 0; g < gauge_rows; ++g)
            full(39 + g) = v(pin_index(seed.gauge.pins[static_cast<std::size_t>(g)]));
        return full;
    };

    Eigen::VectorXd r = eval(x);
    double lambda = 1e-3;
    int it = 0;
    for (; it < options.max_iterations; ++it) {
        if (r.head(39).lpNorm<Eigen::Infinity>() < options.tolerance &&
            r.tail(gauge_rows).lpNorm<Eigen::Infinity>() < options.tolerance)
            break;

        const double h = 1e-7;
        Eigen::MatrixXd jac(rows, 42);
        for (int c = 0; c < 42; ++c) {
            Eigen::VectorXd xp = x, xm = x;
            xp(c) += h;
            xm(c) -= h;
            jac.col(c) = (eval(xp) - eval(xm)) / (2.0 * h);
        }

        const double cur_sq = r.squaredNorm();
        Eigen::VectorXd cand_x;
        Eigen::VectorXd cand_r;
        double cand_sq = cur_sq;
        {
            // undamped least-norm candidate, converges quadratically near a root
            const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-r);
            const Eigen::VectorXd xc = x + step;
            const Eigen::VectorXd rc = eval(xc);
            if (rc.squaredNorm() < cand_sq) {
                cand_sq = rc.squaredNorm();
                cand_x = xc;
                cand_r = rc;
            }
        }

        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd jtr = jac.transpose() * r;
        // diagonal scaling keeps the damping meaningful across the very
        // different magnitudes of the two coefficient blocks
        const Eigen::VectorXd scale = jtj.diagonal().cwiseMax(1e-12);
        for (int attempt = 0; attempt < 25; ++attempt) {
            Eigen::MatrixXd damped = jtj;
            damped.diagonal() += lambda * scale;
            const Eigen::VectorXd step = damped.ldlt().solve(-jtr);
            const Eigen::VectorXd xc = x + step;
            const Eigen::VectorXd rc = eval(xc);
            if (rc.squaredNorm() < cur_sq) {
                if (rc.squaredNorm() < cand_sq) {
                    cand_sq = rc.squaredNorm();
                    cand_x = xc;
                    cand_r = rc;
                }
                lambda = std::max(lambda / 3.0, 1e-12);
                break;
            }
            lambda *= 4.0;
        }
        if (cand_sq >= cur_sq) break;
        x = cand_x;
        r = cand_r;
    }

    unpack(x, cur);
    cur.gauge = seed.gauge;
    cur.residual = r.head(39).lpNorm<Eigen::Infinity>();
    cur.iterations = it;
    cur.converged = cur.residual < options.tolerance;
    // a zero function cannot satisfy the normalizations, but guard anyway
    if (cur.converged && cur.a.norm() + cur.b.norm() < 1e-6) cur.converged = false;
    return cur;
}

WaveletSolution solve_wavelets(const ScalingBasis& basis, const std::string& seed,
                               const WaveletSolveOptions& options) {
    if (seed == "reference") return solve_wavelets(basis, reference_table(), options);
    if (seed != "random")
        throw std::invalid_argument("solve_wavelets: seed must be 'reference' or 'random'");

    std::mt19937 rng(options.rng_seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    WaveletSolution best;
    best.residual = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < std::max(1, options.starts); ++attempt) {
        WaveletSolution start;
        start.gauge = WaveletGauge::zero_pattern();
        for (int i = 0; i < 3; ++i)
            for (int l = 0; l < 7; ++l) {
                start.a(i, l) = gauss(rng);
                start.b(i, l) = 5.0 * gauss(rng);
            }
        for (const auto& pin : start.gauge.pins) {
            if (pin[0] == 0)
                start.a(pin[1], pin[2]) = 0.0;
            else
                start.b(pin[1], pin[2]) = 0.0;
        }
        WaveletSolution out = solve_wavelets(basis, start, options);
        if (out.converged) return out;
        if (out.residual < best.residual) best = out;
    }
    return best;
}

}  // namespace chfif
