#ifndef ARRKIT_COXETER_HPP
#define ARRKIT_COXETER_HPP

#include "arrkit/logmodule.hpp"

namespace arrkit {

// Rational function with denominator a power of the Jacobian Delta.
struct RatFrac {
    MPoly num;
    int dpow = 0; // num / Delta^dpow
};

// Type A_l Coxeter data in the essential model V = {sum u = 0} with the
// last ambient coordinate eliminated: u_i = x_i (i <= l),
// u_{l+1} = -(x_1+...+x_l). Basic invariants are the restricted power sums
// P_k = p_{k+1}|_V, so deg P_1 = 2 < ... < deg P_l = h = l+1.
class CoxeterData {
public:
    static CoxeterData make_typeA(int l);

    int rank() const { return rank_; }
    int coxeter_number() const { return rank_ + 1; }
    const Multiarrangement& arrangement() const { return arr_; }
    const std::vector<MPoly>& invariants() const { return p_; }
    const MPoly& delta() const { return delta_; }
    const Rat& delta_scalar() const { return delta_scalar_; } // delta = scalar * prod alpha
    int group_order() const { return static_cast<int>(group_.size()); }

    // d f / d P_i via the column-replacement determinant over Delta.
    RatFrac dP(const MPoly& f, int i) const;
    RatFrac dP(const RatFrac& f, int i) const;
    // The primitive derivation D = d/dP_l applied coefficientwise.
    RatFrac nabla_D(const RatFrac& f) const { return dP(f, rank_ - 1); }
    // nabla_delta on a fraction, for a polynomial derivation delta.
    RatFrac nabla_deriv(const Derivation& d, const RatFrac& f) const;

    // Group action and Reynolds averaging.
    MPoly act_poly(int g, const MPoly& f) const;
    Derivation act_deriv(int g, const Derivation& d) const;
    bool is_invariant(const Derivation& d) const;
    Derivation reynolds(const Derivation& d) const;
    // Canonical (echelon) basis of the W-invariant subspace of the span.
    std::vector<Derivation> invariant_subspace(const std::vector<Derivation>& basis) const;

    // Phi_k(delta) = nabla_delta nabla_D^k dP_1, a member of Omega^1(A, 2k-m).
    LogForm phi_k(const Derivation& d, int k) const;

    // Y_j = nabla_D^{-j} theta_E for j = 1..k, each solved uniquely inside the
    // W-invariant derivations of degree 1 + j h.
    std::vector<Derivation> nabla_D_inverse_chain(int k) const;
    // Psi_k(delta) = nabla_delta nabla_D^{-k} theta_E in D(A, 2k+m).
    Derivation psi_k(const Derivation& d, int k) const;

    // Convenience: Psi_k images of a basis of D(A, m01) for m01 in {0,1};
    // a basis of D(A, 2k+m01) by the graded isomorphism.
    std::vector<Derivation> psi_basis(int k, int m01) const;

    // nabla_D applied to a polynomial derivation; throws when the result is
    // not polynomial (it is for W-invariant inputs by the Hodge filtration).
    Derivation nabla_D_poly(const Derivation& d) const;

private:
    int rank_ = 0;
    Multiarrangement arr_;
    std::vector<MPoly> p_;
    std::vector<std::vector<MPoly>> jac_; // jac[i][j] = dP_{i+1}/dx_{j+1}
    MPoly delta_;
    Rat delta_scalar_;
    std::vector<RatMatrix> group_, group_inv_;
    std::vector<MPoly> d_num_; // numerators of D(x_j)

    MPoly det_col_replaced(int i, const std::vector<MPoly>& col) const;
};

struct InvariantBasis {
    std::vector<GeneratorInfo> generators; // S^W-module generators found
    int window = 0;                        // degrees searched, 0..window
    std::map<int, long> invariant_dims;    // dim D(A,m)_d^W per degree
};

// S^W-module generators of D(A, m)^W for constant odd m, detected degree by
// degree inside the searched window via Reynolds averaging.
InvariantBasis invariant_module(const CoxeterData& cox, int m, int window);

// All monomials P_1^{a_1}...P_l^{a_l} of weighted degree d.
std::vector<MPoly> invariant_monomials(const CoxeterData& cox, int d);

} // namespace arrkit

#endif
