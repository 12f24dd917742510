#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "chfif/inner_product.hpp"
#include "chfif/piecewise.hpp"
#include "chfif/system.hpp"

namespace chfif {

// One interpolation template: its index in the 2N+2 scheme, the resolved
// data vectors, and the system built from them.  Indices 0..N carry zero
// hidden data; indices N+1..2N+1 carry a hidden unit vector.
struct BasisTemplate {
    int index = 0;
    DataPoints data;
    SystemPtr system;
};

// Orthogonality parameters solved from the pairing conditions.  u has N+1
// rows (one per hidden template); rows 0 and N are not constrained by any
// pairing condition and are stored as zeros.
struct TemplateParameters {
    int n = 0;
    std::vector<double> r;               // size N-1
    std::vector<double> s;               // size N-1
    std::vector<std::vector<double>> u;  // (N+1) x (N-1)
};

// Closed forms for the two-interval case (N = 2).
std::pair<double, double> solve_r_s(double alpha1, double alpha2);
double rho(double alpha1, double alpha2);

struct HiddenPairings {
    double u11 = 0.0;
    double zeta = 0.0;
    double eta = 0.0;
};

// N = 2 only: u11 is the root of the linear equation <f1,1, f3,1> = 0; zeta
// and eta are the pairings of the hidden template against the two edge
// templates at that root.  Throws std::domain_error when the linear
// coefficient degenerates.
HiddenPairings solve_u_zeta_eta(const HiddenParams& params);

// General-N solve of r, s, u via Gram systems in data space.
TemplateParameters solve_template_parameters(int n, const HiddenParams& params);

// Builds all 2N+2 templates on uniform knots (solves parameters first).
std::vector<BasisTemplate> build_templates(int n, const HiddenParams& params);

// True when alpha_j + beta_j == gamma_j for every interval, which collapses
// the coupled construction onto a single self-affine family.
bool degenerate_coupling(const HiddenParams& params);

// Depth-6 samples of the first component for each of the 2(N+1) unit data
// vectors, one column per data vector (y-block first, then z-block).
Eigen::MatrixXd sampling_matrix(int n, const HiddenParams& params, int depth = 6);

// Numerical rank of the sampling matrix (singular values above
// 1e-9 * sigma_max): the dimension of the function space spanned by the
// first components.  With trials > 0, also computes the rank for `trials`
// randomly drawn admissible parameter sets (seeded); returns the common
// rank when all agree, -1 otherwise.
int dimension_check(int n, const HiddenParams& params, int trials = 0,
                    unsigned seed = 7);

// The assembled scaling basis.  phi1/phi2 hold the first and hidden
// components of the 2N-1 basis functions in output order: the N-1
// interior-data functions, then the N-1 hidden-data functions, then the
// two-interval concatenation last.  gs_coeffs expresses each of the first
// 2N-2 functions in the raw template order {1..N-1, N+2..2N}
// (lower-triangular, normalization folded in); concat_scale is the factor
// applied to both halves of the concatenation.
struct ScalingBasis {
    int n = 0;
    HiddenParams params;
    TemplateParameters tparams;
    std::vector<BasisTemplate> templates;  // all 2N+2
    Eigen::MatrixXd gs_coeffs;             // (2N-2) x (2N-2)
    double concat_scale = 1.0;
    bool normalized = false;
    std::vector<PiecewiseFunction> phi1;   // size 2N-1
    std::vector<PiecewiseFunction> phi2;   // size 2N-1

    int count() const { return 2 * n - 1; }
};

ScalingBasis gram_schmidt(const std::vector<BasisTemplate>& templates,
                          const TemplateParameters& tparams,
                          const HiddenParams& params, bool normalize = true);

// Full pipeline: solve parameters, build templates, orthogonalize.
ScalingBasis build_basis(int n, const HiddenParams& params, bool normalize = true);

struct SearchConfig {
    int n = 2;
    unsigned seed = 1;
    bool wavelet_grade = false;  // additionally require <f0,1, fN,1> = 0
    int max_iterations = 200;    // Newton iterations per start
    int starts = 40;
    double tolerance = 1e-10;    // residual sup-norm target
    std::optional<HiddenParams> initial;
};

struct ConstraintSolution {
    HiddenParams params{{}, {}, {}};
    double residual = 0.0;  // sup-norm of the pairing residual vector
    int iterations = 0;     // Newton steps taken in the successful start
    bool converged = false;
};

// Finds admissible parameters making all hidden-edge pairings vanish
// (zeta_i = eta_i = 0; plus the edge-edge pairing for wavelet-grade bases).
ConstraintSolution solve_constraints(const SearchConfig& config);

struct TranslateGram {
    int shift = 0;
    Eigen::MatrixXd gram;  // <phi_i, phi_j(. - shift)>
};

struct MraReport {
    int n = 0;
    int dimension = 0;

    std::vector<TranslateGram> translate_gram;  // shifts -2..2
    double max_off_diagonal = 0.0;  // excluding the shift-0 diagonal

    std::vector<double> two_scale_residual;  // per basis function
    double two_scale_max = 0.0;

    // Frame-bound data, always in the unnormalized concatenation convention.
    double concat_norm = 0.0;        // ||(f~N,1 | f~0,1 shifted)||
    double tau_sqrt = 0.0;           // entrywise-sqrt matrix reading
    double tau_gram = 0.0;           // plain 2x2 Gram reading
    double lower_sqrt = 0.0;         // sqrt(tau_sqrt) * concat_norm
    double lower_gram = 0.0;
    double upper = 0.0;              // sqrt(3) * concat_norm
    double frame_ratio_min = 0.0;    // empirical ||sum c phi(.-l)|| / ||c||
    double frame_ratio_max = 0.0;
    bool frame_ok_sqrt = false;
    bool frame_ok_gram = false;

    double expansion_data_residual = 0.0;    // constant-one data identity
    double expansion_sample_residual = 0.0;  // sampled deviation from 1

    std::vector<double> zeta;  // recomputed hidden-edge pairings
    std::vector<double> eta;
    double cross_edge = 0.0;   // <f~0,1, f~N,1>
};

MraReport verify_mra(const ScalingBasis& basis, int quad_depth = 12,
                     unsigned seed = 2026, int frame_draws = 100);

}  // namespace chfif
