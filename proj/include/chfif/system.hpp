#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace chfif {

// Strictly increasing abscissae x_0 < ... < x_N of the interpolation mesh.
// L_n(x) = a_n x + b_n maps [x_0, x_N] onto [x_{n-1}, x_n] (n is 1-based).
class Knots {
public:
    explicit Knots(std::vector<double> xs);

    static Knots uniform(std::size_t intervals);  // x_i = i/N on [0, 1]

    std::size_t intervals() const { return x_.size() - 1; }
    std::size_t size() const { return x_.size(); }
    double operator[](std::size_t i) const { return x_[i]; }
    const std::vector<double>& points() const { return x_; }

    double left() const { return x_.front(); }
    double right() const { return x_.back(); }
    double span() const { return right() - left(); }

    double a(std::size_t n) const;
    double b(std::size_t n) const;
    double map(std::size_t n, double x) const;    // L_n
    double unmap(std::size_t n, double x) const;  // L_n^{-1}

    bool operator==(const Knots& o) const { return x_ == o.x_; }

private:
    std::vector<double> x_;
};

// Vertical contraction parameters of the maps
//   F_n(x, y, z) = (alpha_n y + beta_n z + p_n(x), gamma_n z + q_n(x)).
// Admissible iff |alpha_n| < 1, |gamma_n| < 1 and |beta_n| + |gamma_n| < 1,
// all strict.
struct HiddenParams {
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> gamma;

    void validate(std::size_t intervals) const;  // throws std::invalid_argument
    // max over n of max(|alpha_n| + |beta_n|, |gamma_n|): vertical contraction
    // modulus used in oracle error envelopes.
    double contraction_modulus() const;
};

struct DataPoints {
    std::vector<double> y;
    std::vector<double> z;
};

// p_n(x) = c_n x + d_n, q_n(x) = e_n x + h_n (0-based storage, interval n-1).
struct MapCoefficients {
    std::vector<double> c, d, e, h;
};

// An iterated function system {I x R^2; omega_1..omega_N} with
// omega_n(x,y,z) = (L_n(x), F_n(x,y,z)), pinned down by knots, vertical
// parameters and interpolation data through the join-up conditions
//   F_n(x_0, y_0, z_0) = (y_{n-1}, z_{n-1}),  F_n(x_N, y_N, z_N) = (y_n, z_n).
// Immutable once built; safe to share across threads.
class CoalescenceSystem {
public:
    const Knots& knots() const { return knots_; }
    const HiddenParams& params() const { return params_; }
    const DataPoints& data() const { return data_; }
    const MapCoefficients& coeffs() const { return coeffs_; }
    std::size_t intervals() const { return knots_.intervals(); }

    double p(std::size_t n, double x) const;  // 1-based n
    double q(std::size_t n, double x) const;

    // omega_n applied to (x, y, z); requires 1 <= n <= N and x in [x_0, x_N].
    std::array<double, 3> apply_map(std::size_t n, const std::array<double, 3>& pt) const;

    friend CoalescenceSystem build_system(Knots knots, HiddenParams params, DataPoints data);

private:
    CoalescenceSystem(Knots k, HiddenParams p, DataPoints d, MapCoefficients m);

    Knots knots_;
    HiddenParams params_;
    DataPoints data_;
    MapCoefficients coeffs_;
};

// Solves the join-up conditions for the map polynomials. Throws
// std::invalid_argument on inconsistent sizes, non-increasing knots or
// parameter bound violations.
CoalescenceSystem build_system(Knots knots, HiddenParams params, DataPoints data);

using SystemPtr = std::shared_ptr<const CoalescenceSystem>;

SystemPtr make_system(Knots knots, HiddenParams params, DataPoints data);

}  // namespace chfif
