#ifndef ARRKIT_ARRANGEMENT_HPP
#define ARRKIT_ARRANGEMENT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "arrkit/matrix.hpp"
#include "arrkit/mpoly.hpp"

namespace arrkit {

// Primitive integer covector: not all zero, gcd of entries 1, first nonzero
// entry positive.
struct Covector {
    std::vector<long> coords;

    static Covector canonical(std::vector<long> raw);
    int dim() const { return static_cast<int>(coords.size()); }
    MPoly to_poly() const { return MPoly::linear_form_int(coords); }
    bool operator==(const Covector& o) const { return coords == o.coords; }
    bool operator<(const Covector& o) const { return coords < o.coords; }
    std::string to_string() const;
};

// A central multiarrangement: hyperplanes as canonical covectors with
// nonnegative multiplicities. Hyperplanes with multiplicity 0 are retained
// but impose no derivation condition and are skipped by lattice operations.
class Multiarrangement {
public:
    Multiarrangement() : dim_(0) {}

    // Canonicalizes covectors and merges duplicates by summing multiplicities.
    static Multiarrangement make(int dim, const std::vector<std::vector<long>>& covectors,
                                 const std::vector<int>& mult = {});

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(hyperplanes_.size()); }
    const std::vector<Covector>& hyperplanes() const { return hyperplanes_; }
    const Covector& hyperplane(int i) const { return hyperplanes_.at(i); }
    const std::vector<int>& mult() const { return mult_; }
    int mult(int i) const { return mult_.at(i); }
    long mult_total() const; // |m|, summed over all hyperplanes
    bool is_simple() const;  // every retained hyperplane has multiplicity 1
    // Indices of hyperplanes with multiplicity >= 1.
    std::vector<int> support() const;
    int rank() const; // rank of the covector span over the support

    Multiarrangement with_mult(const std::vector<int>& m) const;
    Multiarrangement with_constant_mult(int m) const;

    // Q(A, m) = prod alpha_i^{m_i} as a polynomial.
    MPoly defining_poly() const;

    bool operator==(const Multiarrangement& o) const;
    std::string to_string() const;

private:
    int dim_;
    std::vector<Covector> hyperplanes_;
    std::vector<int> mult_;
};

// Named constructors from the test corpus.
Multiarrangement braid(int n);            // x_i - x_j in C^n
Multiarrangement boolean_arr(int l);      // coordinate hyperplanes in C^l
Multiarrangement catalan(int n);          // cone of the Catalan arrangement in C^{n+1}
Multiarrangement stanley();               // 7 planes in C^3, chi=(t-1)(t-3)^2, non-free
Multiarrangement stanley_extended();      // stanley plus the extra plane K; free (1,2,5)
// Coxeter arrangement of type A_l in the essential l-coordinate model.
Multiarrangement coxeter_typeA(int l);

struct RestrictionResult {
    Multiarrangement ambient;            // (A^H, m^H) on H = C^{dim-1}
    // For each hyperplane of A^H, the original hyperplane indices that
    // restrict onto it (so m^H(X) is the size of that list).
    std::vector<std::vector<int>> origin;
    int pivot_coord = 0;                 // coordinate of A eliminated on H
};

// Ziegler restriction of a simple arrangement to its hyperplane `h`:
// m^H(X) = #{H' in A | X = H cap H'}.
RestrictionResult ziegler_restrict(const Multiarrangement& a, int h);

// Restriction of an arbitrary multiarrangement A to hyperplane h of A,
// keeping the multiplicities of A on the restricted covectors summed.
// Used for the Addition-Deletion restriction A''.
RestrictionResult plain_restrict(const Multiarrangement& a, int h);

// Keeps only the hyperplanes whose covector lies in the span of `flat_span`
// (i.e. the hyperplanes containing the flat).
Multiarrangement localize(const Multiarrangement& a, const std::vector<int>& flat_hyperplanes);

// Decrements m(h) by one.
Multiarrangement delete_one(const Multiarrangement& a, int h);

// Affine line/hyperplane description of the deconing d_H(A): coordinates
// chosen on {alpha_H = 1} via a unimodular change sending alpha_H to the
// last coordinate.
struct DeconeResult {
    int dim;                                  // ambient affine dimension (l-1)
    std::vector<std::vector<Rat>> lines;      // rows (a_1..a_{l-1}, c): sum a_i y_i + c = 0
    std::vector<int> origin;                  // hyperplane index of A per line
    std::vector<std::vector<long>> transform; // the unimodular matrix used (last row alpha_H)
};
DeconeResult decone(const Multiarrangement& a, int h);

// Essentialization: rewrites the arrangement in `rank` coordinates via a
// rational change of basis of the covector span. Multiplicities carry over.
struct EssentialResult {
    Multiarrangement arr;
    int trivial_dims = 0; // dim - rank
};
EssentialResult essentialize(const Multiarrangement& a);

// `.arr` text format support.
Multiarrangement parse_arr(std::istream& in);
Multiarrangement parse_arr_file(const std::string& path);
std::string format_arr(const Multiarrangement& a);

} // namespace arrkit

#endif
