#ifndef ARRKIT_LATTICE_HPP
#define ARRKIT_LATTICE_HPP

#include <map>
#include <string>
#include <vector>

#include "arrkit/arrangement.hpp"

namespace arrkit {

// A flat of the intersection lattice: canonical row-reduced span of the
// covectors vanishing on it, plus exactly the hyperplanes containing it.
struct Flat {
    std::vector<std::vector<Rat>> span; // canonical RREF rows
    std::vector<int> contains;          // sorted hyperplane indices
    int codim = 0;
    long moebius = 0;

    bool contains_flat(const Flat& other) const; // this >= other as subspaces
};

class IntersectionLattice {
public:
    // Enumerates all intersections of (multiplicity >= 1) hyperplanes by
    // incremental closure and computes the Moebius function recursively.
    static IntersectionLattice build(const Multiarrangement& a);

    int dim() const { return dim_; }
    int max_codim() const { return static_cast<int>(by_codim_.size()) - 1; }
    const std::vector<Flat>& flats(int codim) const { return by_codim_.at(codim); }
    const std::vector<std::vector<Flat>>& all() const { return by_codim_; }

    UPoly char_poly() const;      // chi(A, t) = sum mu(X) t^{dim X}
    UPoly poincare_poly() const;  // (-t)^l chi(-1/t)
    Int chamber_count() const;    // |chi(-1)|

    // Moebius function recomputed by inverting the zeta matrix of the
    // poset; used as an independent cross-check of the recursive values.
    std::vector<long> moebius_by_zeta_inversion() const;

    std::string report_json() const;

private:
    int dim_ = 0;
    std::vector<std::vector<Flat>> by_codim_;
};

// chi(A, q) by direct substitution.
Int fq_count_formula(const Multiarrangement& a, long q);
// Literal count of points of F_q^l off the union, for prime q; rejects
// inputs with q^l above the budget.
Int fq_count_enumerate(const Multiarrangement& a, long q, long budget = 1 << 21);

// Feasibility oracle for chamber counting on small real arrangements:
// counts sign vectors s in {+,-}^n whose open region is nonempty, deciding
// each system of strict inequalities by Fourier-Motzkin elimination.
Int chamber_count_sign_vectors(const Multiarrangement& a);

struct PlanarPoint {
    Rat x, y;
    int mu = 0; // (number of lines through the point) - 1
};

// All pairwise intersection points of the deconed line arrangement d_H(A),
// with mu(p); parallel lines simply contribute no point.
std::vector<PlanarPoint> l2_points(const Multiarrangement& a, int h);

} // namespace arrkit

#endif
