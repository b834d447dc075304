#include "arrkit/matrix.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace arrkit {

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rat>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
    RatMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw std::invalid_argument("RatMatrix::from_rows: ragged rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

bool RatMatrix::operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("RatMatrix::operator*: size mismatch");
    RatMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& aik = at(i, k);
            if (is_zero(aik)) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

std::vector<Rat> RatMatrix::apply(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw std::invalid_argument("RatMatrix::apply: size mismatch");
    std::vector<Rat> r(rows_, Rat(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!is_zero(at(i, j))) r[i] += at(i, j) * v[j];
    return r;
}

RatMatrix RatMatrix::transposed() const {
    RatMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::string RatMatrix::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << "[";
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << rat_to_string(at(i, j));
        os << "]\n";
    }
    return os.str();
}

namespace {

// Shared Gauss-Jordan skeleton; `parallel` toggles the OpenMP row kernel.
RrefResult rref_impl(RatMatrix m, bool parallel) {
    const int rows = m.rows(), cols = m.cols();
    RrefResult res;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (!is_zero(m.at(i, c))) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != r)
            for (int j = c; j < cols; ++j) std::swap(m.at(r, j), m.at(pivot, j));
        const Rat inv = Rat(1) / m.at(r, c);
        if (inv != 1)
            for (int j = c; j < cols; ++j) m.at(r, j) *= inv;
        if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
            for (int i = 0; i < rows; ++i) {
                if (i == r || is_zero(m.at(i, c))) continue;
                const Rat f = m.at(i, c);
                Rat t;
                for (int j = c; j < cols; ++j)
                    if (!is_zero(m.at(r, j))) {
                        t = f;
                        t *= m.at(r, j);
                        m.at(i, j) -= t;
                    }
            }
        } else {
            for (int i = 0; i < rows; ++i) {
                if (i == r || is_zero(m.at(i, c))) continue;
                const Rat f = m.at(i, c);
                Rat t;
                for (int j = c; j < cols; ++j)
                    if (!is_zero(m.at(r, j))) {
                        t = f;
                        t *= m.at(r, j);
                        m.at(i, j) -= t;
                    }
            }
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    res.rref = std::move(m);
    return res;
}

} // namespace

RrefResult rref(const RatMatrix& m) { return rref_impl(m, true); }

RrefResult rref_serial(const RatMatrix& m) { return rref_impl(m, false); }

std::vector<std::vector<Rat>> kernel_basis(const RatMatrix& m) {
    RrefResult rr = rref(m);
    const int cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (int c : rr.pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[f] = 1;
        for (int r = 0; r < rr.rank; ++r) v[rr.pivots[r]] = -rr.rref.at(r, f);
        // Exact post-hoc verification of every kernel vector.
        for (const Rat& entry : m.apply(v))
            if (!is_zero(entry)) throw std::logic_error("kernel_basis: verification failed");
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rat>> solve_particular(const RatMatrix& m, const std::vector<Rat>& b) {
    if (static_cast<int>(b.size()) != m.rows())
        throw std::invalid_argument("solve_particular: size mismatch");
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    RrefResult rr = rref(aug);
    for (int r = 0; r < rr.rank; ++r)
        if (rr.pivots[r] == m.cols()) return std::nullopt; // inconsistent
    std::vector<Rat> x(m.cols(), Rat(0));
    for (int r = 0; r < rr.rank; ++r) x[rr.pivots[r]] = rr.rref.at(r, m.cols());
    std::vector<Rat> mx = m.apply(x);
    for (int i = 0; i < m.rows(); ++i)
        if (mx[i] != b[i]) throw std::logic_error("solve_particular: verification failed");
    return x;
}

Rat det(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: non-square input");
    RatMatrix a = m;
    const int n = a.rows();
    Rat d(1);
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int i = c; i < n; ++i)
            if (!is_zero(a.at(i, c))) {
                pivot = i;
                break;
            }
        if (pivot < 0) return Rat(0);
        if (pivot != c) {
            for (int j = c; j < n; ++j) std::swap(a.at(c, j), a.at(pivot, j));
            d = -d;
        }
        d *= a.at(c, c);
        const Rat inv = Rat(1) / a.at(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (is_zero(a.at(i, c))) continue;
            const Rat f = a.at(i, c) * inv;
            for (int j = c; j < n; ++j)
                if (!is_zero(a.at(c, j))) a.at(i, j) -= f * a.at(c, j);
        }
    }
    return d;
}

RatMatrix inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: non-square input");
    const int n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    RrefResult rr = rref(aug);
    if (rr.rank < n) throw std::domain_error("inverse: singular matrix");
    for (int r = 0; r < n; ++r)
        if (rr.pivots[r] != r) throw std::domain_error("inverse: singular matrix");
    RatMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = rr.rref.at(i, n + j);
    return inv;
}

MPoly det_poly(const std::vector<std::vector<MPoly>>& m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) throw std::invalid_argument("det_poly: empty matrix");
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("det_poly: non-square input");
    const int nv = m[0][0].nvars();
    // dp[S] = determinant of the minor on the first popcount(S) rows and
    // column set S, built up one row at a time (Laplace along rows).
    std::vector<MPoly> dp(std::size_t(1) << n, MPoly(nv));
    dp[0] = MPoly(nv, Rat(1));
    for (unsigned s = 1; s < dp.size(); ++s) {
        int row = __builtin_popcount(s) - 1;
        MPoly acc(nv);
        int pos = 0; // position of column c within the sorted column set s
        for (int c = 0; c < n; ++c) {
            if (!(s & (1u << c))) continue;
            if (!m[row][c].is_zero() && !dp[s & ~(1u << c)].is_zero()) {
                MPoly part = m[row][c] * dp[s & ~(1u << c)];
                if ((row + pos) % 2 != 0)
                    acc -= part;
                else
                    acc += part;
            }
            ++pos;
        }
        dp[s] = std::move(acc);
    }
    return dp.back();
}

int rank_of(const std::vector<std::vector<Rat>>& vectors, int dim) {
    if (vectors.empty()) return 0;
    RatMatrix m(static_cast<int>(vectors.size()), dim);
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(vectors[i].size()) != dim)
            throw std::invalid_argument("rank_of: inconsistent vector lengths");
        for (int j = 0; j < dim; ++j) m.at(i, j) = vectors[i][j];
    }
    return rref(m).rank;
}

std::vector<std::vector<long>> unimodular_completion(const std::vector<long>& alpha) {
    const int n = static_cast<int>(alpha.size());
    // Reduce alpha to (0,...,0,1) by unimodular row ops, mirroring every op
    // on an identity matrix u; then u·alpha = e_n and the wanted matrix is
    // the inverse transpose of u.
    std::vector<std::vector<long>> u(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) u[i][i] = 1;
    std::vector<long> a = alpha;
    // Gather the gcd down into position n-1 by pairwise Bezout steps.
    for (int i = 0; i <= n - 2; ++i) {
        long x = a[i], y = a[i + 1];
        if (x == 0 && y == 0) continue;
        // extended gcd
        long old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
        while (r != 0) {
            long q = old_r / r;
            long tmp = old_r - q * r;
            old_r = r;
            r = tmp;
            tmp = old_s - q * s;
            old_s = s;
            s = tmp;
            tmp = old_t - q * t;
            old_t = t;
            t = tmp;
        }
        long gg = old_r, p = old_s, q = old_t; // p*x + q*y = gg
        if (gg < 0) {
            gg = -gg;
            p = -p;
            q = -q;
        }
        long xr = x / gg, yr = y / gg; // p*x + q*y = gg, yr*x - xr*y... keep det 1
        // New rows i, i+1 of the change-of-basis (acting on coordinates):
        // row(i)   =  yr*e_i - xr*e_{i+1}   (maps alpha-pair to 0)
        // row(i+1) =  p*e_i + q*e_{i+1}     (maps alpha-pair to gg)
        // det = yr*q + xr*p = (x q + y p)/gg = ... equals 1 by Bezout.
        std::vector<long> ri(n), ri1(n);
        for (int j = 0; j < n; ++j) {
            ri[j] = yr * u[i][j] - xr * u[i + 1][j];
            ri1[j] = p * u[i][j] + q * u[i + 1][j];
        }
        u[i] = std::move(ri);
        u[i + 1] = std::move(ri1);
        a[i] = 0;
        a[i + 1] = gg;
    }
    if (a[n - 1] != 1 && a[n - 1] != -1)
        throw std::invalid_argument("unimodular_completion: input not primitive");
    if (a[n - 1] == -1)
        for (int j = 0; j < n; ++j) u[n - 1][j] = -u[n - 1][j];
    // Now u·alpha = (0,...,0,1), i.e. the rows of u send alpha to e_n under
    // the dual pairing. The coordinate change we want has last row alpha:
    // that is the inverse-transpose relation, so invert u over the integers.
    // u is unimodular, so the rational inverse is integral.
    RatMatrix ru(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ru.at(i, j) = Rat(u[i][j]);
    RatMatrix inv = inverse(ru);
    std::vector<std::vector<long>> t(n, std::vector<long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // Transposed inverse: new coordinates y = T x with T[k] rows,
            // T[n-1] = alpha.
            Rat e = inv.at(j, i);
            if (!is_integer(e)) throw std::logic_error("unimodular_completion: non-integral inverse");
            t[i][j] = e.get_num().get_si();
        }
    for (int j = 0; j < n; ++j)
        if (t[n - 1][j] != alpha[j]) throw std::logic_error("unimodular_completion: bad last row");
    return t;
}

} // namespace arrkit
