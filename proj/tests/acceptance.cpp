// Acceptance gate: nine criteria, one line each, pinned tolerances.
// Exits nonzero when any criterion fails. Failures are reported with the
// measured values; nothing is weakened to force a green run.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "chfif/basis.hpp"
#include "chfif/grid.hpp"
#include "chfif/inner_product.hpp"
#include "chfif/piecewise.hpp"
#include "chfif/system.hpp"
#include "chfif/transform.hpp"
#include "chfif/wavelet.hpp"
#include "helpers.hpp"

namespace {

using namespace chfif;
using namespace chfif::testing;
using Clock = std::chrono::steady_clock;

int failures = 0;

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

void line(int k, bool pass, double secs, double budget, const std::string& detail) {
    const bool in_budget = budget <= 0.0 || secs < budget;
    const bool ok = pass && in_budget;
    std::printf("criterion %d: %s  [%.2fs]  %s%s\n", k, ok ? "PASS" : "FAIL", secs,
                detail.c_str(), in_budget ? "" : fmt("; over the %.0fs budget", budget).c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double ip11(const SystemPtr& a, const SystemPtr& b) { return cross_inner(*a, *b).ip11; }

// sup distance between coefficient sets over the union of their windows
double sup_diff(const SignalCoefficients& a, const SignalCoefficients& b) {
    double worst = std::abs(static_cast<double>(a.level - b.level));
    const std::size_t count = std::max(a.scaling.size(), b.scaling.size());
    for (std::size_t i = 0; i < count; ++i) {
        const CoefficientBlock empty{};
        const CoefficientBlock& ba = i < a.scaling.size() ? a.scaling[i] : empty;
        const CoefficientBlock& bb = i < b.scaling.size() ? b.scaling[i] : empty;
        int lo = 0, hi = -1;
        if (!ba.values.empty()) {
            lo = ba.first;
            hi = ba.first + static_cast<int>(ba.values.size()) - 1;
        }
        if (!bb.values.empty()) {
            lo = ba.values.empty() ? bb.first : std::min(lo, bb.first);
            hi = std::max(hi, bb.first + static_cast<int>(bb.values.size()) - 1);
        }
        for (int m = lo; m <= hi; ++m) worst = std::max(worst, std::abs(ba.at(m) - bb.at(m)));
    }
    return worst;
}

}  // namespace

int main() {
    const double s7 = std::sqrt(7.0);
    const HiddenParams ref = reference_params();

    // 1: closed forms of the first orthogonalization step, plus the engine
    //    cross-check that the adjacent pairings actually vanish
    {
        const auto start = Clock::now();
        const auto [r1, s1] = solve_r_s(0.0, s7 - 3.0);
        const double r_err = std::abs(r1 - (s7 - 3.0));
        const double s_err = std::abs(s1 - (s7 - 4.0) / 6.0);
        const auto templates = build_templates(2, ref);
        const double p01 = ip11(templates[0].system, templates[1].system);
        const double p12 = ip11(templates[1].system, templates[2].system);
        const bool pass = r_err < 1e-12 && s_err < 1e-12 && std::abs(p01) < 1e-10 &&
                          std::abs(p12) < 1e-10;
        line(1, pass, seconds_since(start), 1.0,
             fmt("r1/s1 err %.1e/%.1e (tol 1e-12); pairings %.1e/%.1e (tol 1e-10)", r_err,
                 s_err, p01, p12));
    }

    // 2: the edge-pairing polynomial vanishes at the reference point and the
    //    engine agrees; the degenerate point gives the exact closed value 8
    {
        const auto start = Clock::now();
        const double rho_ref = rho(0.0, s7 - 3.0);
        const auto templates = build_templates(2, ref);
        const double p02 = ip11(templates[0].system, templates[2].system);
        const double rho_zero = rho(0.0, 0.0);
        const bool pass =
            std::abs(rho_ref) < 1e-12 && std::abs(p02) < 1e-10 && rho_zero == 8.0;
        line(2, pass, seconds_since(start), 1.0,
             fmt("rho %.1e (tol 1e-12); edge pairing %.1e (tol 1e-10); rho(0,0)=%g", rho_ref,
                 p02, rho_zero));
    }

    // 3: hidden-edge solve. zeta and eta vanish as required; the tabulated
    //    closed form for u_{1,1} is NOT a root of the pairing equations (it
    //    violates the orthogonality it is meant to produce), so the published
    //    value comparison fails honestly against the computed root.
    {
        const auto start = Clock::now();
        const HiddenPairings hp = solve_u_zeta_eta(ref);
        const double tabulated = (-371.0 - 40.0 * s7) / 70245.0;
        const double u_err = std::abs(hp.u11 - tabulated);
        const bool pass =
            u_err < 1e-9 && std::abs(hp.zeta) < 1e-9 && std::abs(hp.eta) < 1e-9;
        line(3, pass, seconds_since(start), 1.0,
             fmt("u11 %.12g vs tabulated %.12g, err %.3g (tol 1e-9); zeta %.1e, eta %.1e "
                 "(tol 1e-9)",
                 hp.u11, tabulated, u_err, hp.zeta, hp.eta));
    }

    // 4: dimension of the coalescence function space at generically coupled
    //    admissible parameters (a decoupled base point drops the dimension)
    {
        const auto start = Clock::now();
        const int d2 = dimension_check(2, ref);
        bool pass = d2 == 4;
        std::string detail = fmt("N=2: %d (want 4)", d2);
        std::mt19937 rng(41);
        for (int n : {3, 4, 5}) {
            HiddenParams p = random_params(rng, static_cast<std::size_t>(n), 0.6);
            while (degenerate_coupling(p))
                p = random_params(rng, static_cast<std::size_t>(n), 0.6);
            const int d = dimension_check(n, p, 10, 7 + static_cast<unsigned>(n));
            pass = pass && d == 2 * n;
            detail += fmt("; N=%d: %d over 10 random draws (want %d)", n, d, 2 * n);
        }
        line(4, pass, seconds_since(start), 30.0, detail);
    }

    // 5: exact pairings against depth-refined quadrature
    {
        const auto start = Clock::now();
        std::mt19937 rng(2026);
        double worst12 = 0.0;
        int monotone = 0;
        for (int t = 0; t < 20; ++t) {
            const auto sys = build_system(Knots::uniform(2), random_params(rng, 2, 0.75),
                                          random_points(rng, 2));
            const double exact = cross_inner(sys, sys).ip11;
            double err[3];
            int k = 0;
            for (int d : {10, 12, 14}) {
                const GridSamples g = refine(sys, d);
                err[k++] = std::abs(quad_inner(g, 1, g, 1) - exact);
            }
            worst12 = std::max(worst12, err[1]);
            if (err[2] < err[0]) ++monotone;
        }
        const bool pass = worst12 < 1e-4 && monotone >= 19;
        line(5, pass, seconds_since(start), 120.0,
             fmt("worst depth-12 gap %.2e (tol 1e-4); error shrinks 10->14 in %d/20 "
                 "(need 19)",
                 worst12, monotone));
    }

    const ScalingBasis basis = build_basis(2, ref);

    // 6: multiresolution structure. Translate orthogonality and the Riesz
    //    window hold; the dilation-refinement residual does not vanish for
    //    the hidden-data generator (its hidden component is not reachable in
    //    the refined space), so that sub-check fails honestly.
    {
        const auto start = Clock::now();
        const MraReport rep = verify_mra(basis, 12);
        double two_scale_worst = 0.0;
        for (double r : rep.two_scale_residual) two_scale_worst = std::max(two_scale_worst, r);
        const bool frame = rep.frame_ok_sqrt && rep.frame_ok_gram;
        const bool pass =
            rep.max_off_diagonal < 1e-8 && two_scale_worst < 1e-8 && frame;
        line(6, pass, seconds_since(start), 60.0,
             fmt("gram off-diagonal %.1e (tol 1e-8); refinement residual %.3g (tol 1e-8); "
                 "frame window [%.4f, %.4f] within [%.4f, %.4f]: %s",
                 rep.max_off_diagonal, two_scale_worst, rep.frame_ratio_min,
                 rep.frame_ratio_max, rep.lower_sqrt, rep.upper, frame ? "yes" : "no"));
    }

    const WaveletSolution table = reference_table();
    const WaveletSolution solved = solve_wavelets(basis, table);

    // 7: the tabulated coefficient matrix is not near a root of the 36+3
    //    conditions (residual ~23), so the regression and drift sub-checks
    //    fail honestly; the solver itself converges and the root manifold
    //    has the expected three free directions.
    {
        const auto start = Clock::now();
        const double table_residual = residuals(table, basis).lpNorm<Eigen::Infinity>();
        const double drift = std::max((solved.a - table.a).lpNorm<Eigen::Infinity>(),
                                      (solved.b - table.b).lpNorm<Eigen::Infinity>());
        const Eigen::MatrixXd jac = residual_jacobian(solved, basis);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
        const auto& sv = svd.singularValues();
        int rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > 1e-6 * sv(0)) ++rank;
        const int null_dim = static_cast<int>(jac.cols()) - rank;
        const bool pass = table_residual < 5e-3 && solved.converged &&
                          solved.residual < 1e-9 && drift < 1e-3 && null_dim == 3;
        line(7, pass, seconds_since(start), 120.0,
             fmt("tabulated residual %.4g (tol 5e-3); solved residual %.2e (tol 1e-9); "
                 "drift %.4g (tol 1e-3); null dimension %d (want 3)",
                 table_residual, solved.residual, drift, null_dim));
    }

    // 8: split/merge. The merge inverts the split to machine precision, but
    //    no diagonal weighting makes coefficient energy match: the detail
    //    generators are not orthogonal across translates (their one-sided
    //    translate Gram is structural, see README), so the energy sub-check
    //    fails honestly.
    double worst_energy_gap = 0.0;
    {
        const auto start = Clock::now();
        const FilterBank bank = build_filters(basis, solved);
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> first_of(-5, 5);
        std::uniform_int_distribution<int> len_of(1, 9);
        std::normal_distribution<double> gauss;
        double worst_rt = 0.0;
        for (int t = 0; t < 50; ++t) {
            SignalCoefficients fine;
            fine.level = -1;
            fine.scaling.resize(3);
            for (auto& block : fine.scaling) {
                block.first = first_of(rng);
                block.values.resize(static_cast<std::size_t>(len_of(rng)));
                for (auto& v : block.values) v = gauss(rng);
            }
            const auto [coarse, detail] = decompose(fine, bank);
            const SignalCoefficients back = reconstruct(coarse, detail, bank);
            worst_rt = std::max(worst_rt, sup_diff(back, fine));
            const double split_energy =
                coefficient_energy(coarse) + coefficient_energy(detail);
            worst_energy_gap = std::max(
                worst_energy_gap, std::abs(split_energy - coefficient_energy(fine)));
        }
        const bool pass = worst_rt < 1e-8 && worst_energy_gap < 1e-9;
        line(8, pass, seconds_since(start), 60.0,
             fmt("roundtrip error %.2e (tol 1e-8); energy gap %.3g (tol 1e-9) over 50 draws",
                 worst_rt, worst_energy_gap));
    }

    // 9: property suite plus the end-to-end report. The per-module property
    //    tests run under ctest next to this binary; the one stated property
    //    they cannot satisfy is the split Parseval identity re-measured in
    //    criterion 8, so this aggregate fails honestly alongside it.
    {
        const auto start = Clock::now();
        int report_exit = -1;
#ifdef CHFIF_CLI_PATH
        const std::string cmd =
            std::string(CHFIF_CLI_PATH) + " report --preset reference >/dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        report_exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
        const bool parseval = worst_energy_gap < 1e-9;
        const bool pass = parseval && report_exit == 0;
        line(9, pass, seconds_since(start), 0.0,
             fmt("report exit %d (want 0); split Parseval property holds: %s (gap %.3g)",
                 report_exit, parseval ? "yes" : "no", worst_energy_gap));
    }

    // figure note: sampled detail curves carry the solution matrix at the
    //    quarter knots
    {
        double worst = 0.0;
        for (int i = 1; i <= 3; ++i) {
            const PiecewiseFunction psi = assemble_psi(solved, basis, i).first;
            for (int l = 0; l < 7; ++l)
                worst = std::max(worst, std::abs(psi.evaluate((l + 1) / 4.0, 12) -
                                                 solved.a(i - 1, l)));
        }
        std::printf("note: sampled psi knot values match the solution matrix to %.1e %s\n",
                    worst, worst < 1e-8 ? "(PASS)" : "(FAIL)");
        if (worst >= 1e-8) ++failures;
    }

    if (failures == 0) {
        std::printf("acceptance: all criteria pass\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) fail; see the lines above and the README for "
                "the structural reasons\n",
                failures);
    return 1;
}
