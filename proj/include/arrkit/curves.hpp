#ifndef ARRKIT_CURVES_HPP
#define ARRKIT_CURVES_HPP

#include "arrkit/logmodule.hpp"

namespace arrkit {

struct CurvePair {
    std::vector<Rat> alpha; // (a1, a2): auxiliary direction in the deconed plane
    MPoly c1, c2;           // curves delta_i(alpha) restricted to z0 = 1, two variables
    int e1 = 0, e2 = 0;     // their degrees
    std::vector<PlanarPoint> points; // L_2 of the deconed arrangement
    std::vector<int> mult;           // local intersection multiplicity per point
    std::string to_json() const;
};

// Builds the curve pair of a free rank-3 simple arrangement from a Saito
// certificate: the basis is rebased so that two elements kill alpha_{H0}
// (Euler decomposition), and c_i = delta_i(alpha) on the plane z0 = 1.
// When alpha is not given, small integer directions are tried until one is
// parallel to no deconed line.
CurvePair curve_pair(const Multiarrangement& a, const SaitoCertificate& cert, int h0,
                     std::optional<std::pair<long, long>> alpha = std::nullopt);

// Intersection multiplicity dim C[[u,v]]/(c1, c2) at the point, computed as
// the stabilized corank of truncated-jet multiplication; `budget` bounds the
// jet order (non-stabilization signals a shared component).
int local_mult(const MPoly& c1, const MPoly& c2, const Rat& px, const Rat& py, int budget);

struct BezoutReport {
    long bezout_sum = 0;   // sum of local multiplicities over L_2
    bool sum_matches = false;      // == e1 * e2
    bool mult_equals_mu = false;   // mult_p == mu(p) at every rational L_2 point
    bool zero_set_is_l2 = false;   // resultant roots match L_2 exactly, no leftovers
    int resultant_degree = 0;
    std::string detail;
};

BezoutReport bezout_report(const CurvePair& pair);

struct RefutationReport {
    std::vector<int> hypothetical_exponents; // (1, e1, e2) from the chi factorization
    int line = -1;            // deconed line carrying the most L_2 points
    int points_on_line = 0;
    bool refuted = false;     // more points on one line than either curve degree allows
    std::string detail;
};

// Proof-by-Bezout refutation for a rank-3 candidate whose chi factors: if a
// deconed line carries more L_2 points than either hypothetical curve degree,
// both curves would contain the line and their intersection could not be
// finite.
RefutationReport curves_refute(const Multiarrangement& a, int h0);

// Resultant of two bivariate polynomials eliminating the second variable.
UPoly resultant_v(const MPoly& c1, const MPoly& c2);

} // namespace arrkit

#endif
