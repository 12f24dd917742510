#pragma once

#include <vector>

#include "chfif/grid.hpp"
#include "chfif/system.hpp"

namespace chfif {

// Exact moments M_{i,m} = \int_I f_i(x) x^m dx for m = 0..maxdeg, obtained by
// the self-similar change of variables x = L_n(xi), which closes the moments
// into a small linear system.
struct Moments {
    std::vector<double> f1;  // index m
    std::vector<double> f2;
};

Moments moments(const CoalescenceSystem& sys, int maxdeg = 1);

// All four L2 pairings between the components of two systems sharing knots,
//   ip11 = <f1, g1>, ip12 = <f1, g2>, ip21 = <f2, g1>, ip22 = <f2, g2>,
// together with the degree-<=1 moments of both systems. Computed exactly by
// solving the coupled linear system produced by substituting x = L_n(xi)
// into each pairing (size 12, dense LU).
struct InnerProductTable {
    double ip11 = 0, ip12 = 0, ip21 = 0, ip22 = 0;
    Moments a;
    Moments b;
};

InnerProductTable cross_inner(const CoalescenceSystem& a, const CoalescenceSystem& b);

// Residual of the scalar identity relating <f1, g1> to the lower-order
// pairings and map polynomials (the n-summed refinement identity), evaluated
// on an already-computed table. Near machine epsilon when the table is
// consistent; used as a regression guard on the assembly.
double pairing_identity_residual(const CoalescenceSystem& a, const CoalescenceSystem& b,
                                 const InnerProductTable& t);

// Trapezoidal oracle on refined grids; component selectors are 1 or 2.
// Grids must have identical abscissae.
double quad_inner(const GridSamples& a, int comp_a, const GridSamples& b, int comp_b);

// <f1(.), g1(. - shift)> for systems supported on [0, 1] (zero extension):
// exactly 0 for |shift| >= 1, cross_inner().ip11 at shift 0.
double translated_inner(const CoalescenceSystem& a, const CoalescenceSystem& b, int shift);

}  // namespace chfif
