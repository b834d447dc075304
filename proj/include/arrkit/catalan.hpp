#ifndef ARRKIT_CATALAN_HPP
#define ARRKIT_CATALAN_HPP

#include "arrkit/coxeter.hpp"

namespace arrkit {

// F_{p,i}(x_1, x_2) = ((x_1^{p+1} - x_2^{p+1})/(x_1 - x_2)) (x_1 - x_2)^{2i}
// as a polynomial in nvars variables (supported on the first two).
MPoly fpi_poly(int nvars, int p, int i);

struct FpiTerm {
    int p, r;
    MPoly coeff; // B^{p,r}, symmetric in all variables
};

// Decomposes a polynomial symmetric under S_2 x S_{n-2} as
// G = sum B^{p,r} F_{p,r} with B^{p,r} symmetric in all n variables.
// Columns are ordered constant-B first, so the decomposition agrees with
// the unique constant-coefficient one whenever that exists.
std::vector<FpiTerm> fpi_decompose(const MPoly& g);

struct CatalanCertificate {
    int n = 0;
    std::vector<Derivation> eta;                    // invariant basis of D(braid(n), 3)
    std::vector<std::vector<FpiTerm>> b_coeffs;     // per eta_i
    std::vector<Derivation> eta_tilde;              // lifted to n+1 variables
    SaitoCertificate saito;                         // for Cat_n
    std::string to_json() const;
};

// End-to-end construction of the free basis of D(Cat_n) with exponents
// (0, 1, n+1, ..., 2n-1). The default budget stops at n = 3; larger n must
// be opted into (degree-(2n-1) solves in n+1 variables grow quickly).
CatalanCertificate catalan_basis(int n, bool allow_large = false);

// Bridge from the essential A_{n-1} model (n-1 coordinates on {sum u = 0})
// to the non-essential braid model in n coordinates.
Derivation lift_to_braid(const Derivation& essential, int n);

} // namespace arrkit

#endif
