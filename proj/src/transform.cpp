#include "chfif/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chfif/piecewise.hpp"

namespace chfif {

namespace {

int floordiv(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

CoefficientBlock trimmed(int first, std::vector<double> v) {
    std::size_t lo = 0;
    std::size_t hi = v.size();
    while (lo < hi && v[lo] == 0.0) ++lo;
    while (hi > lo && v[hi - 1] == 0.0) --hi;
    CoefficientBlock out;
    if (lo == hi) return out;
    out.first = first + static_cast<int>(lo);
    out.values.assign(v.begin() + static_cast<std::ptrdiff_t>(lo),
                      v.begin() + static_cast<std::ptrdiff_t>(hi));
    return out;
}

FilterBank::Family family_taps(const PiecewiseFunction& source, const ScalingBasis& basis,
                               PairingCache& cache) {
    const double sr = source.support_right();
    FilterBank::Family fam;
    fam.lmin = -1;
    const int lmax = static_cast<int>(std::lround(2.0 * sr)) - 1;
    const int cols = lmax - fam.lmin + 1;
    fam.taps = Eigen::MatrixXd::Zero(3, cols);
    const double rt2 = std::sqrt(2.0);
    for (int j = 0; j < 3; ++j) {
        const PiecewiseFunction half = basis.phi1[static_cast<std::size_t>(j)].dilated(0.5);
        for (int l = fam.lmin; l <= lmax; ++l) {
            const PiecewiseFunction target = half.translated(0.5 * l);
            if (target.support_left() >= sr || target.support_right() <= 0.0) continue;
            fam.taps(j, l - fam.lmin) = rt2 * inner(source, target, cache);
        }
    }
    return fam;
}

struct Window {
    int lo = 0;
    int hi = -1;
    bool empty() const { return hi < lo; }
};

}  // namespace

FilterBank build_filters(const ScalingBasis& basis, const WaveletSolution& wavelets) {
    if (basis.n != 2 || basis.phi1.size() != 3)
        throw std::invalid_argument("build_filters: wavelet transform requires the N = 2 basis");
    PairingCache cache;
    FilterBank bank;
    for (const auto& phi : basis.phi1) bank.scaling.push_back(family_taps(phi, basis, cache));
    for (int i = 1; i <= 3; ++i) {
        const PiecewiseFunction psi = assemble_psi(wavelets, basis, i).first;
        bank.wavelet.push_back(family_taps(psi, basis, cache));
    }
    for (const auto& fam : bank.scaling) bank.weight.push_back(fam.taps.squaredNorm());
    return bank;
}

std::pair<SignalCoefficients, SignalCoefficients> decompose(const SignalCoefficients& fine,
                                                            const FilterBank& filters) {
    if (!fine.detail.empty())
        throw std::invalid_argument("decompose: input already carries detail coefficients");
    if (fine.scaling.size() != filters.scaling.size())
        throw std::invalid_argument("decompose: family count does not match the filter bank");

    int amin = std::numeric_limits<int>::max();
    int amax = std::numeric_limits<int>::min();
    for (const auto& block : fine.scaling) {
        if (block.values.empty()) continue;
        amin = std::min(amin, block.first);
        amax = std::max(amax, block.first + static_cast<int>(block.values.size()) - 1);
    }

    SignalCoefficients coarse;
    coarse.level = fine.level + 1;
    SignalCoefficients detail;
    detail.level = fine.level + 1;

    auto analyze = [&](const FilterBank::Family& fam) {
        if (amin > amax) return CoefficientBlock{};
        const int lmax = fam.lmin + static_cast<int>(fam.taps.cols()) - 1;
        const int mlo = floordiv(amin - lmax + 1, 2);
        const int mhi = floordiv(amax - fam.lmin, 2);
        std::vector<double> vals;
        for (int m = mlo; m <= mhi; ++m) {
            double acc = 0.0;
            for (int j = 0; j < 3; ++j)
                for (int c = 0; c < fam.taps.cols(); ++c)
                    acc += fam.taps(j, c) *
                           fine.scaling[static_cast<std::size_t>(j)].at(2 * m + fam.lmin + c);
            vals.push_back(acc);
        }
        return trimmed(mlo, std::move(vals));
    };

    for (const auto& fam : filters.scaling) coarse.scaling.push_back(analyze(fam));
    for (const auto& fam : filters.wavelet) detail.detail.push_back(analyze(fam));
    return {coarse, detail};
}

SignalCoefficients reconstruct(const SignalCoefficients& coarse, const SignalCoefficients& detail,
                               const FilterBank& filters) {
    if (!detail.detail.empty() && detail.level != coarse.level)
        throw std::invalid_argument("reconstruct: level mismatch between parts");
    if (!coarse.scaling.empty() && coarse.scaling.size() != filters.scaling.size())
        throw std::invalid_argument("reconstruct: family count does not match the filter bank");
    if (!detail.detail.empty() && detail.detail.size() != filters.wavelet.size())
        throw std::invalid_argument("reconstruct: detail family count does not match the filter bank");

    auto coarse_block = [&](std::size_t i) {
        return coarse.scaling.empty() ? CoefficientBlock{} : coarse.scaling[i];
    };
    auto detail_block = [&](std::size_t i) {
        return detail.detail.empty() ? CoefficientBlock{} : detail.detail[i];
    };

    // fine-index window reachable from the given coefficients
    Window win;
    auto widen = [&](const CoefficientBlock& block, const FilterBank::Family& fam) {
        if (block.values.empty()) return;
        const int last = block.first + static_cast<int>(block.values.size()) - 1;
        const int lmax = fam.lmin + static_cast<int>(fam.taps.cols()) - 1;
        const int lo = 2 * block.first + fam.lmin;
        const int hi = 2 * last + lmax;
        if (win.empty()) {
            win.lo = lo;
            win.hi = hi;
        } else {
            win.lo = std::min(win.lo, lo);
            win.hi = std::max(win.hi, hi);
        }
    };
    for (std::size_t i = 0; i < filters.scaling.size(); ++i)
        widen(coarse_block(i), filters.scaling[i]);
    for (std::size_t i = 0; i < filters.wavelet.size(); ++i)
        widen(detail_block(i), filters.wavelet[i]);

    SignalCoefficients fine;
    fine.level = coarse.level - 1;
    fine.scaling.assign(3, CoefficientBlock{});
    if (win.empty()) return fine;

    const int width = win.hi - win.lo + 1;

    // rows: every analysis shift whose taps touch the window, coefficient
    // read with zero extension so truncation cannot silently lose rows
    struct Row {
        const FilterBank::Family* fam;
        int m;
        double value;
    };
    std::vector<Row> rows;
    auto add_rows = [&](const CoefficientBlock& block, const FilterBank::Family& fam) {
        const int lmax = fam.lmin + static_cast<int>(fam.taps.cols()) - 1;
        const int mlo = floordiv(win.lo - lmax + 1, 2);
        const int mhi = floordiv(win.hi - fam.lmin, 2);
        for (int m = mlo; m <= mhi; ++m) rows.push_back({&fam, m, block.at(m)});
    };
    for (std::size_t i = 0; i < filters.scaling.size(); ++i)
        add_rows(coarse_block(i), filters.scaling[i]);
    for (std::size_t i = 0; i < filters.wavelet.size(); ++i)
        add_rows(detail_block(i), filters.wavelet[i]);

    Eigen::MatrixXd system = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                                                   static_cast<Eigen::Index>(3 * width));
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        rhs(static_cast<Eigen::Index>(r)) = row.value;
        for (int j = 0; j < 3; ++j)
            for (int c = 0; c < row.fam->taps.cols(); ++c) {
                const int l = 2 * row.m + row.fam->lmin + c;
                if (l < win.lo || l > win.hi) continue;
                system(static_cast<Eigen::Index>(r), j * width + (l - win.lo)) +=
                    row.fam->taps(j, c);
            }
    }

    const Eigen::VectorXd sol = system.completeOrthogonalDecomposition().solve(rhs);
    for (int j = 0; j < 3; ++j) {
        std::vector<double> vals(static_cast<std::size_t>(width));
        for (int l = 0; l < width; ++l) vals[static_cast<std::size_t>(l)] = sol(j * width + l);
        fine.scaling[static_cast<std::size_t>(j)] = trimmed(win.lo, std::move(vals));
    }
    return fine;
}

double coefficient_energy(const SignalCoefficients& coeffs) {
    double acc = 0.0;
    for (const auto& block : coeffs.scaling)
        for (double v : block.values) acc += v * v;
    for (const auto& block : coeffs.detail)
        for (double v : block.values) acc += v * v;
    return acc;
}

double weighted_energy(const SignalCoefficients& coarse, const SignalCoefficients& detail,
                       const FilterBank& filters) {
    double acc = 0.0;
    for (std::size_t i = 0; i < coarse.scaling.size(); ++i) {
        const double w = filters.weight[i];
        for (double v : coarse.scaling[i].values) acc += v * v / w;
    }
    for (const auto& block : detail.detail)
        for (double v : block.values) acc += v * v;
    return acc;
}

ProjectionResult project(const std::vector<std::pair<double, double>>& samples,
                         const ScalingBasis& basis, int level, int depth) {
    if (samples.size() < 2) throw std::invalid_argument("project: need at least two samples");
    std::vector<std::pair<double, double>> pts = samples;
    std::sort(pts.begin(), pts.end());

    ProjectionResult out;
    out.coeffs.level = level;

    const double xlo = pts.front().first;
    const double xhi = pts.back().first;
    const double dx0 = (xhi - xlo) / static_cast<double>(pts.size() - 1);
    bool uniform = true;
    for (std::size_t i = 1; i < pts.size(); ++i)
        uniform = uniform && std::abs(pts[i].first - pts[i - 1].first - dx0) < 1e-9 * (xhi - xlo);
    if (!uniform) out.warnings.push_back("sample grid is not uniform");

    const double scale = std::pow(static_cast<double>(basis.n), static_cast<double>(level));
    const double piece = scale / static_cast<double>(basis.n);
    if (dx0 > piece + 1e-12)
        out.warnings.push_back("sample spacing exceeds the basis piece width at this level");

    const double norm = 1.0 / std::sqrt(scale);
    for (std::size_t fam = 0; fam < basis.phi1.size(); ++fam) {
        const PiecewiseFunction& phi = basis.phi1[fam];
        const double slen = phi.support_right();
        const int lmin = static_cast<int>(std::floor(xlo / scale - slen)) + 1;
        const int lmax = static_cast<int>(std::ceil(xhi / scale)) - 1;
        CoefficientBlock block;
        block.first = lmin;
        for (int l = lmin; l <= lmax; ++l) {
            const double slo = scale * l;
            const double shi = scale * (l + slen);
            if (slo < xlo - 1e-12 || shi > xhi + 1e-12)
                out.warnings.push_back("family " + std::to_string(fam) + " shift " +
                                       std::to_string(l) + " truncated at the boundary");
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                const double h = pts[i + 1].first - pts[i].first;
                const double xa = pts[i].first;
                const double xb = pts[i + 1].first;
                if (xb <= slo || xa >= shi) continue;
                const double fa = pts[i].second * norm * phi.evaluate(xa / scale - l, depth);
                const double fb = pts[i + 1].second * norm * phi.evaluate(xb / scale - l, depth);
                acc += 0.5 * h * (fa + fb);
            }
            block.values.push_back(acc);
        }
        out.coeffs.scaling.push_back(trimmed(block.first, std::move(block.values)));
    }
    return out;
}

std::vector<double> synthesize(const SignalCoefficients& coeffs, const ScalingBasis& basis,
                               const WaveletSolution* wavelets, const std::vector<double>& xs,
                               int depth) {
    const double scale = std::pow(static_cast<double>(basis.n), static_cast<double>(coeffs.level));
    const double norm = 1.0 / std::sqrt(scale);

    std::vector<PiecewiseFunction> psi;
    if (!coeffs.detail.empty()) {
        if (wavelets == nullptr)
            throw std::invalid_argument("synthesize: detail coefficients need a wavelet solution");
        for (int i = 1; i <= 3; ++i) psi.push_back(assemble_psi(*wavelets, basis, i).first);
    }

    std::vector<double> out(xs.size(), 0.0);
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double t = xs[k] / scale;
        double acc = 0.0;
        for (std::size_t fam = 0; fam < coeffs.scaling.size(); ++fam) {
            const auto& block = coeffs.scaling[fam];
            for (std::size_t i = 0; i < block.values.size(); ++i) {
                const int l = block.first + static_cast<int>(i);
                acc += block.values[i] * norm *
                       basis.phi1[fam].evaluate(t - l, depth);
            }
        }
        for (std::size_t fam = 0; fam < coeffs.detail.size(); ++fam) {
            const auto& block = coeffs.detail[fam];
            for (std::size_t i = 0; i < block.values.size(); ++i) {
                const int l = block.first + static_cast<int>(i);
                acc += block.values[i] * norm * psi[fam].evaluate(t - l, depth);
            }
        }
        out[k] = acc;
    }
    return out;
}

}  // namespace chfif
