#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "chfif/basis.hpp"
#include "chfif/wavelet.hpp"

namespace chfif {

// One shift-indexed coefficient run: values[k] belongs to shift first + k.
struct CoefficientBlock {
    int first = 0;
    std::vector<double> values;

    double at(int shift) const {
        const int idx = shift - first;
        if (idx < 0 || idx >= static_cast<int>(values.size())) return 0.0;
        return values[static_cast<std::size_t>(idx)];
    }
};

// Coefficients of a signal over the level-k orthonormal frame
// N^{-k/2} phi_i(N^{-k} x - l).  Larger level = coarser.  detail holds
// wavelet-family blocks when a split has been performed.
struct SignalCoefficients {
    int level = 0;
    std::vector<CoefficientBlock> scaling;
    std::vector<CoefficientBlock> detail;
};

// Exact cross-level pairings for one basis + wavelet solution (N = 2).
// taps(j, l - lmin) = <F_i(. - 0), sqrt(2) phi_j(2 . - l)>; integer shifts
// of the source move the tap index by 2.  weight[i] = ||P phi_i||^2, the
// squared norm of the half-scale projection of scaling family i (1 when
// the family is exactly nested).
struct FilterBank {
    struct Family {
        int lmin = 0;
        Eigen::MatrixXd taps;  // rows: target scaling family j
    };
    std::vector<Family> scaling;
    std::vector<Family> wavelet;
    std::vector<double> weight;
};

FilterBank build_filters(const ScalingBasis& basis, const WaveletSolution& wavelets);

// Split level-(k-1) scaling coefficients into level-k scaling + detail
// coefficients: plain correlation against the exact taps (analysis).
// Throws std::invalid_argument if fine already carries detail blocks or
// the family count does not match the filter bank.
std::pair<SignalCoefficients, SignalCoefficients> decompose(const SignalCoefficients& fine,
                                                            const FilterBank& filters);

// Invert the split: solve the windowed frame system so that
// reconstruct(decompose(a)) == a to floating point for any finite-support
// input.  Throws std::invalid_argument on level mismatch.
SignalCoefficients reconstruct(const SignalCoefficients& coarse, const SignalCoefficients& detail,
                               const FilterBank& filters);

double coefficient_energy(const SignalCoefficients& coeffs);

// The energy identity that actually holds across a split:
// ||fine||^2 = sum_i ||c_i||^2 / weight[i] + ||d||^2.
double weighted_energy(const SignalCoefficients& coarse, const SignalCoefficients& detail,
                       const FilterBank& filters);

// Result of projecting samples: coefficients plus any boundary or
// resolution warnings raised along the way.
struct ProjectionResult {
    SignalCoefficients coeffs;
    std::vector<std::string> warnings;
};

// Quadrature projection of a sampled signal onto level-k scaling frames:
// K_{i,l} = <f, N^{-k/2} phi_i(N^{-k} . - l)> by trapezoid over the sample
// grid with the basis functions evaluated at the given depth.  Shifts whose
// support crosses the sample range are truncated and noted in warnings.
ProjectionResult project(const std::vector<std::pair<double, double>>& samples,
                         const ScalingBasis& basis, int level, int depth = 12);

// Evaluate a coefficient set back into sample values at the given points.
std::vector<double> synthesize(const SignalCoefficients& coeffs, const ScalingBasis& basis,
                               const WaveletSolution* wavelets, const std::vector<double>& xs,
                               int depth = 12);

}  // namespace chfif
