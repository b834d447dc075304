#ifndef ARRKIT_MATRIX_HPP
#define ARRKIT_MATRIX_HPP

#include <vector>

#include "arrkit/mpoly.hpp"
#include "arrkit/rat.hpp"

namespace arrkit {

// Dense exact rational matrix. All elimination is exact; there is no
// rounding anywhere in the library.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, Rat(0)) {}

    static RatMatrix identity(int n);
    static RatMatrix from_rows(const std::vector<std::vector<Rat>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
    const Rat& at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

    bool operator==(const RatMatrix& o) const;
    RatMatrix operator*(const RatMatrix& o) const;
    std::vector<Rat> apply(const std::vector<Rat>& v) const;
    RatMatrix transposed() const;

    std::string to_string() const;

private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

struct RrefResult {
    RatMatrix rref;
    std::vector<int> pivots; // pivot column per pivot row, ascending
    int rank = 0;
};

// Reduced row echelon form. The parallel kernel eliminates rows
// independently once the pivot row is fixed, so the result is identical to
// the serial reference for any thread count.
RrefResult rref(const RatMatrix& m);
// Serial reference implementation, kept for testing and benchmarking.
RrefResult rref_serial(const RatMatrix& m);

// Basis of the right kernel {v : Mv = 0}; each vector is re-verified by
// exact multiplication before being returned.
std::vector<std::vector<Rat>> kernel_basis(const RatMatrix& m);

// One solution of Mx = b, if the system is consistent.
std::optional<std::vector<Rat>> solve_particular(const RatMatrix& m, const std::vector<Rat>& b);

// Exact determinant via elimination with row swaps. Square input required.
Rat det(const RatMatrix& m);

// Exact inverse; throws if singular.
RatMatrix inverse(const RatMatrix& m);

// Determinant of a square grid of polynomials by Laplace expansion with
// subset memoization (division-free, so no exactness worries).
MPoly det_poly(const std::vector<std::vector<MPoly>>& m);

// Rank of the span of a set of coefficient vectors.
int rank_of(const std::vector<std::vector<Rat>>& vectors, int dim);

// Unimodular integer matrix whose last row is the given primitive vector
// (gcd of entries 1). Keeps per-hyperplane coordinate changes integral.
std::vector<std::vector<long>> unimodular_completion(const std::vector<long>& alpha);

} // namespace arrkit

#endif
