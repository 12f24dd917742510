#include "chfif/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chfif/grid.hpp"

namespace chfif {

namespace {

void check_canonical(const CoalescenceSystem& sys) {
    const Knots& kn = sys.knots();
    const std::size_t n = kn.intervals();
    for (std::size_t i = 0; i <= n; ++i)
        if (kn[i] != static_cast<double>(i) / static_cast<double>(n))
            throw std::invalid_argument("piecewise: canonical systems need uniform [0, 1] knots");
}

std::vector<Piece> split_piece(const Piece& p) {
    check_canonical(*p.sys);
    const std::size_t n = p.sys->intervals();
    const auto& pr = p.sys->params();
    const auto& mc = p.sys->coeffs();
    const double w = p.width();
    std::vector<Piece> out;
    out.reserve(n);
    double lo = p.a;
    for (std::size_t k = 1; k <= n; ++k) {
        const double hi = (k == n) ? p.b : p.a + w * static_cast<double>(k) / static_cast<double>(n);
        Piece c;
        c.a = lo;
        c.b = hi;
        c.sys = p.sys;
        c.cy = p.cy * pr.alpha[k - 1];
        c.cz = p.cy * pr.beta[k - 1] + p.cz * pr.gamma[k - 1];
        c.slope = p.cy * mc.c[k - 1] + p.cz * mc.e[k - 1] + p.slope / static_cast<double>(n);
        c.offset = p.cy * mc.d[k - 1] + p.cz * mc.h[k - 1] + p.offset +
                   p.slope * static_cast<double>(k - 1) / static_cast<double>(n);
        out.push_back(std::move(c));
        lo = hi;
    }
    return out;
}

double aligned_pair(const Piece& p, const Piece& q, PairingCache& cache) {
    const InnerProductTable& t = cache.table(p.sys, q.sys);
    const double acc =
        p.cy * q.cy * t.ip11 + p.cy * q.cz * t.ip12 + p.cz * q.cy * t.ip21 +
        p.cz * q.cz * t.ip22 +
        p.cy * (q.slope * t.a.f1[1] + q.offset * t.a.f1[0]) +
        p.cz * (q.slope * t.a.f2[1] + q.offset * t.a.f2[0]) +
        q.cy * (p.slope * t.b.f1[1] + p.offset * t.b.f1[0]) +
        q.cz * (p.slope * t.b.f2[1] + p.offset * t.b.f2[0]) +
        p.slope * q.slope / 3.0 + (p.slope * q.offset + p.offset * q.slope) / 2.0 +
        p.offset * q.offset;
    return p.width() * acc;
}

double pair_integral(const Piece& p, const Piece& q, PairingCache& cache, int guard) {
    if (std::min(p.b, q.b) <= std::max(p.a, q.a)) return 0.0;
    if (p.a == q.a && p.b == q.b) return aligned_pair(p, q, cache);
    if (guard == 0)
        throw std::invalid_argument("inner: piece intervals are not commensurable");
    double acc = 0.0;
    if (p.width() >= q.width()) {
        for (const Piece& c : split_piece(p)) acc += pair_integral(c, q, cache, guard - 1);
    } else {
        for (const Piece& c : split_piece(q)) acc += pair_integral(p, c, cache, guard - 1);
    }
    return acc;
}

}  // namespace

const InnerProductTable& PairingCache::table(const SystemPtr& a, const SystemPtr& b) {
    const auto key = std::make_pair(a.get(), b.get());
    auto it = tables_.find(key);
    if (it == tables_.end()) {
        it = tables_.emplace(key, cross_inner(*a, *b)).first;
        pins_.push_back(a);
        pins_.push_back(b);
    }
    return it->second;
}

PiecewiseFunction::PiecewiseFunction(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    for (const Piece& p : pieces_) {
        if (!p.sys) throw std::invalid_argument("piecewise: piece without a system");
        if (!(p.a < p.b)) throw std::invalid_argument("piecewise: piece interval is empty");
    }
    std::sort(pieces_.begin(), pieces_.end(),
              [](const Piece& l, const Piece& r) { return l.a < r.a; });
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i)
        if (pieces_[i].b > pieces_[i + 1].a)
            throw std::invalid_argument("piecewise: pieces overlap");
}

PiecewiseFunction PiecewiseFunction::from_system(SystemPtr sys, int component, double a,
                                                 double b) {
    if (component != 1 && component != 2)
        throw std::invalid_argument("from_system: component must be 1 or 2");
    Piece p;
    p.a = a;
    p.b = b;
    p.sys = std::move(sys);
    p.cy = component == 1 ? 1.0 : 0.0;
    p.cz = component == 2 ? 1.0 : 0.0;
    return PiecewiseFunction({p});
}

double PiecewiseFunction::support_left() const {
    if (pieces_.empty()) throw std::logic_error("support of an empty function");
    return pieces_.front().a;
}

double PiecewiseFunction::support_right() const {
    if (pieces_.empty()) throw std::logic_error("support of an empty function");
    return pieces_.back().b;
}

PiecewiseFunction PiecewiseFunction::translated(double dx) const {
    std::vector<Piece> out = pieces_;
    for (Piece& p : out) {
        p.a += dx;
        p.b += dx;
    }
    return PiecewiseFunction(std::move(out));
}

PiecewiseFunction PiecewiseFunction::dilated(double s) const {
    if (!(s > 0.0)) throw std::invalid_argument("dilated: scale must be positive");
    std::vector<Piece> out = pieces_;
    for (Piece& p : out) {
        p.a *= s;
        p.b *= s;
    }
    return PiecewiseFunction(std::move(out));
}

PiecewiseFunction PiecewiseFunction::scaled(double c) const {
    std::vector<Piece> out = pieces_;
    for (Piece& p : out) {
        p.cy *= c;
        p.cz *= c;
        p.slope *= c;
        p.offset *= c;
    }
    return PiecewiseFunction(std::move(out));
}

PiecewiseFunction PiecewiseFunction::split() const {
    std::vector<Piece> out;
    for (const Piece& p : pieces_)
        for (Piece& c : split_piece(p)) out.push_back(std::move(c));
    return PiecewiseFunction(std::move(out));
}

double PiecewiseFunction::evaluate(double x, int depth) const {
    for (const Piece& p : pieces_) {
        if (x < p.a || x > p.b) continue;
        const double t = std::clamp((x - p.a) / p.width(), 0.0, 1.0);
        const auto [f1, f2] = evaluate_at(*p.sys, t, depth);
        return p.cy * f1 + p.cz * f2 + p.slope * t + p.offset;
    }
    return 0.0;
}

std::vector<double> PiecewiseFunction::sample(const std::vector<double>& xs, int depth) const {
    std::map<const CoalescenceSystem*, GridSamples> grids;
    std::vector<double> out(xs.size(), 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        for (const Piece& p : pieces_) {
            if (x < p.a || x > p.b) continue;
            auto it = grids.find(p.sys.get());
            if (it == grids.end()) it = grids.emplace(p.sys.get(), refine(*p.sys, depth)).first;
            const GridSamples& g = it->second;
            const double t = std::clamp((x - p.a) / p.width(), 0.0, 1.0);
            const auto idx = static_cast<std::size_t>(
                std::llround(t * static_cast<double>(g.size() - 1)));
            out[i] = p.cy * g.f1[idx] + p.cz * g.f2[idx] + p.slope * t + p.offset;
            break;
        }
    }
    return out;
}

double inner(const PiecewiseFunction& f, const PiecewiseFunction& g, PairingCache& cache) {
    double acc = 0.0;
    for (const Piece& p : f.pieces())
        for (const Piece& q : g.pieces()) acc += pair_integral(p, q, cache, 64);
    return acc;
}

double inner(const PiecewiseFunction& f, const PiecewiseFunction& g) {
    PairingCache cache;
    return inner(f, g, cache);
}

double norm2(const PiecewiseFunction& f, PairingCache& cache) { return inner(f, f, cache); }

double combo_norm2(const std::vector<std::pair<double, PiecewiseFunction>>& terms,
                   PairingCache& cache) {
    std::vector<Piece> pieces;
    for (const auto& [w, f] : terms) {
        if (w == 0.0) continue;
        for (Piece p : f.pieces()) {
            p.cy *= w;
            p.cz *= w;
            p.slope *= w;
            p.offset *= w;
            pieces.push_back(std::move(p));
        }
    }
    if (pieces.empty()) return 0.0;

    const HiddenParams& pr = pieces.front().sys->params();
    const std::size_t n = pieces.front().sys->intervals();
    double w_min = pieces.front().width();
    for (const Piece& p : pieces) {
        check_canonical(*p.sys);
        const HiddenParams& q = p.sys->params();
        if (p.sys->intervals() != n || q.alpha != pr.alpha || q.beta != pr.beta ||
            q.gamma != pr.gamma)
            throw std::invalid_argument("combo_norm2: pieces mix parameter families");
        w_min = std::min(w_min, p.width());
    }

    // split everything down to a common cell width; refine further when
    // piece boundaries sit off the candidate grid (e.g. half-cell shifts)
    std::vector<Piece> cells;
    {
        std::vector<Piece> todo(std::move(pieces));
        while (!todo.empty()) {
            Piece c = std::move(todo.back());
            todo.pop_back();
            if (c.width() <= w_min * (1.0 + 1e-9)) {
                if (c.width() < w_min * (1.0 - 1e-9))
                    throw std::invalid_argument(
                        "combo_norm2: piece widths are not commensurable");
                cells.push_back(std::move(c));
            } else {
                for (Piece& s : split_piece(c)) todo.push_back(std::move(s));
            }
        }
    }
    auto aligned = [&]() {
        for (const Piece& p : cells) {
            const double pos = p.a / w_min;
            if (std::abs(pos - std::round(pos)) > 1e-9) return false;
        }
        return true;
    };
    for (int attempt = 0; attempt < 8 && !aligned(); ++attempt) {
        std::vector<Piece> finer;
        for (const Piece& c : cells)
            for (Piece& s : split_piece(c)) finer.push_back(std::move(s));
        cells = std::move(finer);
        w_min /= static_cast<double>(n);
    }
    if (!aligned())
        throw std::invalid_argument("combo_norm2: piece boundaries do not align");

    // unit-data attractors of the family: E_i carries y = e_i, H_i carries
    // z = e_i. Linearity of the attractor in its data gives, for a system
    // with data (y, z),
    //   f1 = sum_i y_i E_i.f1 + sum_i z_i H_i.f1,   f2 = sum_i z_i H_i.f2.
    const Knots kn = Knots::uniform(n);
    std::vector<SystemPtr> unit(2 * (n + 1));
    for (std::size_t i = 0; i <= n; ++i) {
        DataPoints d;
        d.y.assign(n + 1, 0.0);
        d.z.assign(n + 1, 0.0);
        d.y[i] = 1.0;
        unit[i] = make_system(kn, pr, d);
        d.y[i] = 0.0;
        d.z[i] = 1.0;
        unit[n + 1 + i] = make_system(kn, pr, d);
    }

    // atoms spanning every cell value: E_i.f1, H_i.f1, H_i.f2, 1, t
    struct Atom {
        const SystemPtr* sys;
        int comp;
    };
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i <= n; ++i) atoms.push_back({&unit[i], 1});
    for (std::size_t i = 0; i <= n; ++i) atoms.push_back({&unit[n + 1 + i], 1});
    for (std::size_t i = 0; i <= n; ++i) atoms.push_back({&unit[n + 1 + i], 2});
    const std::size_t ka = atoms.size();
    const std::size_t K = ka + 2;  // + constant + linear

    std::vector<double> gram(K * K, 0.0);
    auto at = [&](std::size_t r, std::size_t c) -> double& { return gram[r * K + c]; };
    for (std::size_t r = 0; r < ka; ++r) {
        for (std::size_t c = r; c < ka; ++c) {
            const InnerProductTable& t = cache.table(*atoms[r].sys, *atoms[c].sys);
            double v;
            if (atoms[r].comp == 1)
                v = atoms[c].comp == 1 ? t.ip11 : t.ip12;
            else
                v = atoms[c].comp == 1 ? t.ip21 : t.ip22;
            at(r, c) = at(c, r) = v;
        }
        const InnerProductTable& t = cache.table(*atoms[r].sys, *atoms[r].sys);
        const Moments& m = t.a;
        const std::vector<double>& mm = atoms[r].comp == 1 ? m.f1 : m.f2;
        at(r, ka) = at(ka, r) = mm[0];
        at(r, ka + 1) = at(ka + 1, r) = mm[1];
    }
    at(ka, ka) = 1.0;
    at(ka, ka + 1) = at(ka + 1, ka) = 0.5;
    at(ka + 1, ka + 1) = 1.0 / 3.0;

    // accumulate the coordinate vector of each cell, then apply the form
    std::map<long long, std::vector<double>> coords;
    for (const Piece& p : cells) {
        const long long key = std::llround(p.a / w_min);
        auto it = coords.find(key);
        if (it == coords.end()) it = coords.emplace(key, std::vector<double>(K, 0.0)).first;
        std::vector<double>& c = it->second;
        const DataPoints& d = p.sys->data();
        for (std::size_t i = 0; i <= n; ++i) {
            c[i] += p.cy * d.y[i];
            c[n + 1 + i] += p.cy * d.z[i];
            c[2 * (n + 1) + i] += p.cz * d.z[i];
        }
        c[ka] += p.offset;
        c[ka + 1] += p.slope;
    }

    double total = 0.0;
    for (const auto& [key, c] : coords) {
        double cell = 0.0;
        for (std::size_t r = 0; r < K; ++r) {
            double row = 0.0;
            for (std::size_t col = 0; col < K; ++col) row += at(r, col) * c[col];
            cell += c[r] * row;
        }
        total += cell;
    }
    return w_min * std::max(total, 0.0);
}

}  // namespace chfif
