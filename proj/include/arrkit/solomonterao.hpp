#ifndef ARRKIT_SOLOMONTERAO_HPP
#define ARRKIT_SOLOMONTERAO_HPP

#include <functional>
#include <map>
#include <string>

#include "arrkit/logmodule.hpp"

namespace arrkit {

struct GradedDims {
    std::string tag;          // e.g. "D(A,m)" or "Omega^1(A,m)"
    std::map<int, long> dims; // degree -> dimension, contiguous keys
    int cutoff = 0;           // highest computed degree
};

// Fitted rational Hilbert series: numerator / (1-x)^denom_pow with a
// Laurent numerator.
struct HilbertRational {
    std::map<int, Rat> numerator;
    int denom_pow = 0;

    long dim_at(int d) const; // coefficient of x^d in the expansion
    std::string to_string() const;
};

// Fits the exact numerator to the computed dims; throws when the numerator
// has not stabilized within the computed window (w trailing zeros).
HilbertRational fit_hilbert(const GradedDims& dims, int denom_pow, int window = 3);

// Computes dims adaptively from degree `dmin` until the fitted numerator
// stabilizes (window w), aborting loudly at `cutoff`.
HilbertRational fit_module_series(const std::function<long(int)>& dim_fn, int denom_pow, int dmin,
                                  int cutoff, int window = 3, GradedDims* out_dims = nullptr);

struct SolomonTeraoResult {
    UPoly chi;
    BiPoly phi;                        // Phi(A; x, y), Laurent in x
    std::vector<HilbertRational> series; // H(Omega^p), p = 0..l
};

// Solomon-Terao: chi(A, t) = lim_{x->1} Phi(A; x, t(1-x)-1), evaluated as an
// exact Laurent expansion around x = 1. Defined for any multiarrangement.
SolomonTeraoResult solomon_terao_chi(const Multiarrangement& a);

struct ChernReport {
    Rat rank, c1, c2;  // from the Hilbert polynomial of D_0(A) via Riemann-Roch
    UPoly chi0;        // chi(A,t)/(t-1)
    std::vector<Rat> expected; // coefficients of t^2 chi0(1/t): (1, b1, b0)
    bool pass = false;
    std::string to_json() const;
};

// Rank-3 check of the Chern-polynomial formula c_t(D~_0) = t^2 chi_0(1/t).
ChernReport chern_check(const Multiarrangement& a);

std::string solomon_terao_json(const Multiarrangement& a);

} // namespace arrkit

#endif
