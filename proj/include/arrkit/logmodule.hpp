#ifndef ARRKIT_LOGMODULE_HPP
#define ARRKIT_LOGMODULE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arrkit/arrangement.hpp"
#include "arrkit/lattice.hpp"

namespace arrkit {

// Polynomial vector field delta = sum coeffs[i] d/dx_i with homogeneous
// coefficients of a common degree.
struct Derivation {
    std::vector<MPoly> coeffs;

    static Derivation zero(int nvars, int degree = 0);
    static Derivation euler(int nvars); // theta_E = sum x_i d_i
    // delta_p = sum x_i^p d_i over the first n_active variables.
    static Derivation power(int nvars, int p, int n_active = -1);

    int nvars() const { return static_cast<int>(coeffs.size()); }
    bool is_zero() const;
    // Common homogeneous degree of the nonzero coefficients; throws when the
    // coefficients are inhomogeneous or of mixed degrees.
    int degree() const;
    MPoly apply(const MPoly& f) const;      // sum coeffs_i df/dx_i
    MPoly apply_linear(const Covector& a) const; // sum a_i coeffs_i
    Derivation operator+(const Derivation& o) const;
    Derivation operator-(const Derivation& o) const;
    Derivation operator*(const MPoly& f) const;
    Derivation operator*(const Rat& c) const;
    bool operator==(const Derivation& o) const { return coeffs == o.coeffs; }

    std::string to_string(const std::vector<std::string>& names = {}) const;
};

// Membership test: alpha_H^{m(H)} | delta(alpha_H) for every hyperplane.
bool in_derivation_module(const Multiarrangement& a, const Derivation& d);

// A logarithmic p-form numerators / prod alpha_H^{denom_exp[H]}; numerator
// coefficients are indexed by the p-subsets of coordinates in lexicographic
// order.
struct LogForm {
    int nvars = 0;
    int p = 0;
    std::vector<std::vector<int>> subsets;
    std::vector<MPoly> numerators;
    std::vector<int> denom_exp; // one exponent per hyperplane of the arrangement

    // Module degree: numerator degree minus denominator degree.
    int degree() const;
    std::string to_string() const;
};

// Pole test: d alpha_H wedge omega has no pole along H at order m(H).
bool in_omega_module(const Multiarrangement& a, const std::vector<int>& m, const LogForm& w);

// All p-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> p_subsets(int n, int p);

// Basis of the degree-d piece of D(A, m). The divisibility condition is
// linearized per hyperplane by a unimodular change of coordinates sending
// alpha_H to the last coordinate. When kill_h >= 0 the exact condition
// delta(alpha_{kill_h}) = 0 is imposed as well (the D_0^H submodule).
std::vector<Derivation> d_graded_piece(const Multiarrangement& a, int d, int kill_h = -1);

// Basis of the degree-d piece of Omega^p(A, m); degree convention: total
// degree of the Q_m-cleared numerator minus deg Q_m.
std::vector<LogForm> omega_graded_piece(const Multiarrangement& a, int p, int d);

long d_graded_dim(const Multiarrangement& a, int d);
long omega_graded_dim(const Multiarrangement& a, int p, int d);

struct SaitoCertificate {
    std::vector<Derivation> basis;
    MPoly determinant;
    Rat scalar;                 // determinant = scalar * Q(A, m)
    std::vector<int> exponents; // sorted basis degrees
    std::string to_json() const;
};

struct SaitoFailure {
    std::string reason;
    int offending_index = -1; // for non-member candidates
};

// Saito's criterion: the candidates are a basis of D(A, m) iff their
// coefficient determinant is a nonzero constant multiple of Q(A, m).
std::variant<SaitoCertificate, SaitoFailure> saito_check(const Multiarrangement& a,
                                                         const std::vector<Derivation>& candidates);

struct GeneratorInfo {
    int degree;
    Derivation rep;
};

// Minimal module generators of D(A, m) up to the degree cutoff: the new
// generator count in degree d is dim D_d minus the dimension of the span of
// x_j * (degree d-1 elements).
std::vector<GeneratorInfo> minimal_generators(const Multiarrangement& a, int cutoff);

// Exponents of a rank-2 multiarrangement (always free), recovered by
// fitting dim D_d = sum_i max(0, d - e_i + 1) for d <= |m|.
std::pair<int, int> rank2_exponents(const Multiarrangement& a);

// Lemma-zie splitting: delta = (delta alpha_H / alpha_H) theta_E + rest,
// where rest kills alpha_H.
std::pair<Derivation, Derivation> euler_decompose(const Multiarrangement& a, int h,
                                                  const Derivation& d);

struct ZieglerCokerReport {
    int coker_dim = 0;
    std::vector<long> coker_by_degree;
    int b3 = 0;
    std::pair<int, int> restriction_exponents;
    int predicted = 0; // b3 - e1 e2
};

// Dimension of the cokernel of D_0^H(A) -> D(A^H, m^H), computed degree by
// degree until stabilization, together with the b_3 - e_1 e_2 prediction.
ZieglerCokerReport ziegler_coker_dim(const Multiarrangement& a, int h);

struct FreenessVerdict {
    enum class Kind { Free, NotFree, Unknown } kind = Kind::Unknown;
    std::vector<int> exponents; // sorted, for Free
    std::string method;         // rank2 | cor3dim | saito | addel | thmchar
    std::string witness;        // for NotFree
    std::string reason;         // for Unknown
    std::optional<SaitoCertificate> certificate;
    bool is_free() const { return kind == Kind::Free; }
    std::string to_json() const;
};

FreenessVerdict freeness_test(const Multiarrangement& a);

// Multiplicity m*(X) of the Addition-Deletion restriction: the least degree
// of an element of D(A_X, m) outside alpha_{H0} * Der.
int m_star(const Multiarrangement& a, int h0, const std::vector<int>& flat_hyperplanes);

struct AddelRecord {
    std::optional<std::vector<int>> exp_full;     // (A, m)
    std::optional<std::vector<int>> exp_deleted;  // (A', m')
    std::optional<std::vector<int>> exp_restricted; // (A'', m*)
    std::string used_pair; // which two exponent lists produced the inference
    bool inferred_full = false, inferred_deleted = false, inferred_restricted = false;
    bool all_consistent = false;
};

// Addition-Deletion: computes exponents for whichever of (A,m), (A',m'),
// (A'',m*) are directly resolvable and infers the remaining one; when all
// three are resolvable their consistency is asserted.
AddelRecord addition_deletion(const Multiarrangement& a, int h0);

// The multiset pattern of the Addition-Deletion theorem; throws on an
// inconsistent triple.
void check_addel_triple(std::vector<int> full, std::vector<int> deleted,
                        std::vector<int> restricted);

// Exponents when directly resolvable: rank <= 2 exactly, otherwise a Saito
// search up to |m|. The bool is true when a Saito certificate backs it.
std::optional<std::vector<int>> try_exponents(const Multiarrangement& a);

// Exponent recovery purely from graded dimensions: minimal generator
// degrees are collected until their sum reaches |m|, then the dimensions of
// `window` further degrees must match the free-module prediction
// sum_i dim S_{d - e_i}. Returns nullopt when the profile does not match.
std::optional<std::vector<int>> exponents_by_fitting(const Multiarrangement& a, int window = 2);

} // namespace arrkit

#endif
