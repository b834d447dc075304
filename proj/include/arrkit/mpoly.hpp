#ifndef ARRKIT_MPOLY_HPP
#define ARRKIT_MPOLY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arrkit/rat.hpp"

namespace arrkit {

using Expo = std::vector<int>; // exponent vector, one entry per variable

// Descending graded-lexicographic order: higher total degree first, then
// lexicographically larger exponent vector first. map::begin() is the
// leading term under this order, and iteration gives canonical printing.
struct GrlexGreater {
    bool operator()(const Expo& a, const Expo& b) const;
};

int expo_degree(const Expo& e);

// Sparse multivariate polynomial over Rat. Zero coefficients are never
// stored; all exponent vectors have length nvars().
class MPoly {
public:
    using TermMap = std::map<Expo, Rat, GrlexGreater>;

    MPoly() : nvars_(0) {}
    explicit MPoly(int nvars) : nvars_(nvars) {}
    MPoly(int nvars, const Rat& c); // constant polynomial

    static MPoly variable(int nvars, int i, int power = 1);
    static MPoly constant(int nvars, const Rat& c) { return MPoly(nvars, c); }
    static MPoly linear_form(const std::vector<Rat>& coeffs);
    static MPoly linear_form_int(const std::vector<long>& coeffs);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    int total_degree() const; // -1 for the zero polynomial
    bool is_homogeneous() const;
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    Rat coeff(const Expo& e) const;
    void set_coeff(const Expo& e, const Rat& c);
    void add_term(const Expo& e, const Rat& c);
    // Leading term in descending grlex; polynomial must be nonzero.
    const std::pair<const Expo, Rat>& leading() const;

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly operator*(const Rat& c) const;
    bool operator==(const MPoly& o) const;
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly pow(int k) const;
    MPoly derivative(int var) const;
    // Substitutes vals[i] for variable i; all vals share one variable count.
    MPoly substitute(const std::vector<MPoly>& vals) const;
    Rat eval(const std::vector<Rat>& point) const;
    // Sets variable `var` to the given constant, keeping the variable count.
    MPoly eval_var(int var, const Rat& value) const;
    // The homogeneous slice of the given total degree.
    MPoly homogeneous_part(int degree) const;
    // Appends extra variables (exponent 0) on the right.
    MPoly extend_vars(int new_nvars) const;

    std::string to_string(const std::vector<std::string>& names = {}) const;

private:
    int nvars_;
    TermMap terms_;
    void check_same(const MPoly& o) const;
};

inline MPoly operator*(const Rat& c, const MPoly& p) { return p * c; }

// Exact division test: returns the quotient q with f = d*q when it exists.
// Sound for divisibility because a nonzero multiple of d always has leading
// term divisible by the leading term of d.
std::optional<MPoly> mpoly_divide_exact(const MPoly& f, const MPoly& d);
bool mpoly_divides(const MPoly& d, const MPoly& f);

// Dense univariate polynomial over Rat, coefficients lowest degree first.
// The trailing (highest-degree) coefficient is nonzero unless zero.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rat> coeffs);
    static UPoly constant(const Rat& c);
    static UPoly monomial(const Rat& c, int deg);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 if zero
    Rat coeff(int k) const;
    const std::vector<Rat>& coeffs() const { return c_; }

    UPoly operator-() const;
    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly operator*(const Rat& s) const;
    bool operator==(const UPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    Rat eval(const Rat& x) const;
    // Quotient and remainder; divisor must be nonzero.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const;
    UPoly derivative() const;
    // Monic gcd (zero if both zero).
    static UPoly gcd(UPoly a, UPoly b);

    // All rational roots with multiplicities, found by divisor search on the
    // integer-scaled polynomial and deflation.
    std::vector<std::pair<Rat, int>> rational_roots() const;

    std::string to_string(const std::string& var = "t") const;

private:
    std::vector<Rat> c_;
    void trim();
};

// Bivariate polynomial, Laurent in x (negative x-exponents allowed),
// polynomial in y. Used for Phi(A; x, y).
class BiPoly {
public:
    using Key = std::pair<int, int>; // (x-exponent, y-exponent)

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, Rat>& terms() const { return terms_; }
    Rat coeff(int xe, int ye) const;
    void add_term(int xe, int ye, const Rat& c);

    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator*(const BiPoly& o) const;
    bool operator==(const BiPoly& o) const { return terms_ == o.terms_; }

    std::string to_string() const;

private:
    std::map<Key, Rat> terms_;
};

// Binomial coefficient C(n, k) as exact integer (0 for k < 0 or k > n).
Int binom(long n, long k);

// Number of monomials of total degree d in n variables.
long monomial_count(int nvars, int d);
// All exponent vectors of total degree d in n variables, descending grlex.
std::vector<Expo> monomials_of_degree(int nvars, int d);

// Default variable names x1..xn.
std::vector<std::string> default_var_names(int nvars);

// Parses the polynomial serialization produced by MPoly::to_string with
// default names (terms like "-3/2*x1^2*x2", joined by '+'/'-').
MPoly mpoly_from_string(const std::string& s, int nvars);

} // namespace arrkit

#endif
