#include "arrkit/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace arrkit {

int expo_degree(const Expo& e) {
    int d = 0;
    for (int k : e) d += k;
    return d;
}

bool GrlexGreater::operator()(const Expo& a, const Expo& b) const {
    int da = expo_degree(a), db = expo_degree(b);
    if (da != db) return da > db;
    return a > b; // lexicographic on equal degree
}

MPoly::MPoly(int nvars, const Rat& c) : nvars_(nvars) {
    if (!arrkit::is_zero(c)) terms_.emplace(Expo(nvars, 0), c);
}

MPoly MPoly::variable(int nvars, int i, int power) {
    MPoly p(nvars);
    Expo e(nvars, 0);
    e.at(i) = power;
    p.terms_.emplace(std::move(e), Rat(1));
    return p;
}

MPoly MPoly::linear_form(const std::vector<Rat>& coeffs) {
    MPoly p(static_cast<int>(coeffs.size()));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (arrkit::is_zero(coeffs[i])) continue;
        Expo e(coeffs.size(), 0);
        e[i] = 1;
        p.terms_.emplace(std::move(e), coeffs[i]);
    }
    return p;
}

MPoly MPoly::linear_form_int(const std::vector<long>& coeffs) {
    std::vector<Rat> r(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) r[i] = Rat(coeffs[i]);
    return linear_form(r);
}

bool MPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && expo_degree(terms_.begin()->first) == 0);
}

int MPoly::total_degree() const {
    if (terms_.empty()) return -1;
    return expo_degree(terms_.begin()->first); // leading term has max degree
}

bool MPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = expo_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
        if (expo_degree(e) != d) return false;
    return true;
}

Rat MPoly::coeff(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

void MPoly::set_coeff(const Expo& e, const Rat& c) {
    if (arrkit::is_zero(c))
        terms_.erase(e);
    else
        terms_[e] = c;
}

void MPoly::add_term(const Expo& e, const Rat& c) {
    if (arrkit::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (arrkit::is_zero(it->second)) terms_.erase(it);
    }
}

const std::pair<const Expo, Rat>& MPoly::leading() const {
    if (terms_.empty()) throw std::domain_error("MPoly::leading: zero polynomial");
    return *terms_.begin();
}

void MPoly::check_same(const MPoly& o) const {
    if (nvars_ != o.nvars_)
        throw std::invalid_argument("MPoly: mixed variable counts");
}

MPoly MPoly::operator-() const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r = *this;
    r += o;
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    MPoly r = *this;
    r -= o;
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    check_same(o);
    MPoly r(nvars_);
    Expo e(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MPoly MPoly::operator*(const Rat& c) const {
    MPoly r(nvars_);
    if (arrkit::is_zero(c)) return r;
    for (const auto& [e, cc] : terms_) r.terms_.emplace(e, cc * c);
    return r;
}

bool MPoly::operator==(const MPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
}

MPoly MPoly::pow(int k) const {
    if (k < 0) throw std::invalid_argument("MPoly::pow: negative exponent");
    MPoly r(nvars_, Rat(1));
    MPoly base = *this;
    while (k > 0) {
        if (k & 1) r = r * base;
        base = (k >>= 1) ? base * base : base;
    }
    return r;
}

MPoly MPoly::derivative(int var) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Expo d = e;
        d[var] -= 1;
        r.add_term(d, c * Rat(e[var]));
    }
    return r;
}

MPoly MPoly::substitute(const std::vector<MPoly>& vals) const {
    if (static_cast<int>(vals.size()) != nvars_)
        throw std::invalid_argument("MPoly::substitute: wrong number of values");
    int out_vars = vals.empty() ? 0 : vals.front().nvars();
    // Power cache per variable to avoid recomputing vals[i]^k.
    std::vector<std::vector<MPoly>> powers(nvars_);
    for (int i = 0; i < nvars_; ++i) powers[i].push_back(MPoly(out_vars, Rat(1)));
    MPoly r(out_vars);
    for (const auto& [e, c] : terms_) {
        MPoly term(out_vars, c);
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            auto& cache = powers[i];
            while (static_cast<int>(cache.size()) <= e[i])
                cache.push_back(cache.back() * vals[i]);
            term = term * cache[e[i]];
        }
        r += term;
    }
    return r;
}

Rat MPoly::eval(const std::vector<Rat>& point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw std::invalid_argument("MPoly::eval: wrong point size");
    Rat sum(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        sum += t;
    }
    return sum;
}

MPoly MPoly::eval_var(int var, const Rat& value) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int k = 0; k < e[var]; ++k) t *= value;
        Expo d = e;
        d[var] = 0;
        r.add_term(d, t);
    }
    return r;
}

MPoly MPoly::homogeneous_part(int degree) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_)
        if (expo_degree(e) == degree) r.terms_.emplace(e, c);
    return r;
}

MPoly MPoly::extend_vars(int new_nvars) const {
    if (new_nvars < nvars_)
        throw std::invalid_argument("MPoly::extend_vars: cannot shrink");
    MPoly r(new_nvars);
    for (const auto& [e, c] : terms_) {
        Expo d = e;
        d.resize(new_nvars, 0);
        r.terms_.emplace(std::move(d), c);
    }
    return r;
}

std::string MPoly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::vector<std::string> vn = names.empty() ? default_var_names(nvars_) : names;
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat a = c;
        if (first) {
            if (sgn(a) < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (sgn(a) < 0 ? " - " : " + ");
            if (sgn(a) < 0) a = -a;
        }
        first = false;
        bool has_vars = expo_degree(e) > 0;
        bool unit = (a == 1);
        if (!unit || !has_vars) os << rat_to_string(a);
        bool emitted = !unit || !has_vars;
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (emitted) os << "*";
            os << vn[i];
            if (e[i] > 1) os << "^" << e[i];
            emitted = true;
        }
    }
    return os.str();
}

std::optional<MPoly> mpoly_divide_exact(const MPoly& f, const MPoly& d) {
    if (d.is_zero()) throw std::domain_error("mpoly_divide_exact: division by zero polynomial");
    if (f.nvars() != d.nvars())
        throw std::invalid_argument("mpoly_divide_exact: mixed variable counts");
    MPoly q(f.nvars());
    MPoly r = f;
    const auto& [de, dc] = d.leading();
    Expo qe(f.nvars());
    while (!r.is_zero()) {
        const auto& [re, rc] = r.leading();
        for (int i = 0; i < f.nvars(); ++i) {
            qe[i] = re[i] - de[i];
            if (qe[i] < 0) return std::nullopt; // leading term not divisible
        }
        Rat qc = rc / dc;
        MPoly t(f.nvars());
        t.add_term(qe, qc);
        q.add_term(qe, qc);
        r -= t * d;
    }
    return q;
}

bool mpoly_divides(const MPoly& d, const MPoly& f) {
    return mpoly_divide_exact(f, d).has_value();
}

// ---------------------------------------------------------------------------
// UPoly

UPoly::UPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
    while (!c_.empty() && arrkit::is_zero(c_.back())) c_.pop_back();
}

UPoly UPoly::constant(const Rat& c) { return UPoly(std::vector<Rat>{c}); }

UPoly UPoly::monomial(const Rat& c, int deg) {
    std::vector<Rat> v(deg + 1, Rat(0));
    v[deg] = c;
    return UPoly(std::move(v));
}

Rat UPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Rat(0);
    return c_[k];
}

UPoly UPoly::operator-() const {
    std::vector<Rat> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
    return UPoly(std::move(v));
}

UPoly UPoly::operator+(const UPoly& o) const {
    std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return UPoly(std::move(v));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly();
    std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return UPoly(std::move(v));
}

UPoly UPoly::operator*(const Rat& s) const {
    if (arrkit::is_zero(s)) return UPoly();
    std::vector<Rat> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] * s;
    return UPoly(std::move(v));
}

Rat UPoly::eval(const Rat& x) const {
    Rat r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
    if (d.is_zero()) throw std::domain_error("UPoly::divmod: division by zero");
    UPoly r = *this;
    std::vector<Rat> q;
    int dd = d.degree();
    if (degree() >= dd) q.assign(degree() - dd + 1, Rat(0));
    while (!r.is_zero() && r.degree() >= dd) {
        int k = r.degree() - dd;
        Rat f = r.c_.back() / d.c_.back();
        q[k] = f;
        for (int i = 0; i <= dd; ++i) r.c_[k + i] -= f * d.c_[i];
        r.trim();
    }
    return {UPoly(std::move(q)), r};
}

UPoly UPoly::derivative() const {
    if (c_.size() <= 1) return UPoly();
    std::vector<Rat> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return UPoly(std::move(v));
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = a * (Rat(1) / a.c_.back()); // monic
    return a;
}

std::vector<std::pair<Rat, int>> UPoly::rational_roots() const {
    std::vector<std::pair<Rat, int>> roots;
    if (is_zero()) throw std::domain_error("rational_roots: zero polynomial");
    UPoly p = *this;
    // Factor out x^k.
    int k = 0;
    while (arrkit::is_zero(p.c_[0])) {
        p.c_.erase(p.c_.begin());
        ++k;
    }
    if (k > 0) roots.emplace_back(Rat(0), k);
    if (p.degree() == 0) return roots;
    // Scale to integer coefficients.
    Int lcm(1);
    for (const auto& c : p.c_) lcm = lcm * c.get_den() / ::gcd(lcm, Int(c.get_den()));
    std::vector<Int> ic(p.c_.size());
    for (std::size_t i = 0; i < p.c_.size(); ++i) {
        Rat t = p.c_[i] * Rat(lcm);
        ic[i] = t.get_num();
    }
    auto divisors = [](Int n) {
        std::vector<Int> ds;
        n = abs(n);
        for (Int d(1); d * d <= n; ++d)
            if (n % d == 0) {
                ds.push_back(d);
                if (d * d != n) ds.push_back(n / d);
            }
        return ds;
    };
    // Candidates p/q with p | constant term, q | leading term.
    std::vector<Int> ps = divisors(ic.front());
    std::vector<Int> qs = divisors(ic.back());
    std::vector<Rat> candidates;
    for (const auto& pp : ps)
        for (const auto& qq : qs)
            for (int s : {1, -1}) {
                Rat c(pp * s, qq);
                c.canonicalize();
                candidates.push_back(c);
            }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& cand : candidates) {
        int mult = 0;
        while (!p.is_zero() && p.degree() >= 1 && arrkit::is_zero(p.eval(cand))) {
            UPoly lin(std::vector<Rat>{-cand, Rat(1)});
            auto [q2, r2] = p.divmod(lin);
            if (!r2.is_zero()) break;
            p = q2;
            ++mult;
        }
        if (mult > 0) roots.emplace_back(cand, mult);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::string UPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        Rat a = c_[k];
        if (arrkit::is_zero(a)) continue;
        if (first) {
            if (sgn(a) < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (sgn(a) < 0 ? " - " : " + ");
            if (sgn(a) < 0) a = -a;
        }
        first = false;
        if (a != 1 || k == 0) os << rat_to_string(a);
        if (k > 0) {
            if (a != 1) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// BiPoly

Rat BiPoly::coeff(int xe, int ye) const {
    auto it = terms_.find({xe, ye});
    return it == terms_.end() ? Rat(0) : it->second;
}

void BiPoly::add_term(int xe, int ye, const Rat& c) {
    if (arrkit::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(Key{xe, ye}, c);
    if (!inserted) {
        it->second += c;
        if (arrkit::is_zero(it->second)) terms_.erase(it);
    }
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
    BiPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
    return r;
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
    BiPoly r;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_)
            r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
}

std::string BiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << rat_to_string(c) << ")";
        if (k.first != 0) os << "*x^" << k.first;
        if (k.second != 0) os << "*y^" << k.second;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Helpers

Int binom(long n, long k) {
    if (k < 0 || k > n || n < 0) return Int(0);
    Int r(1);
    for (long i = 0; i < k; ++i) {
        r *= Int(n - i);
        r /= Int(i + 1);
    }
    return r;
}

long monomial_count(int nvars, int d) {
    if (d < 0) return 0;
    if (nvars == 0) return d == 0 ? 1 : 0;
    return binom(d + nvars - 1, nvars - 1).get_si();
}

static void monomials_rec(int nvars, int d, int pos, Expo& cur, std::vector<Expo>& out) {
    if (pos == nvars - 1) {
        cur[pos] = d;
        out.push_back(cur);
        return;
    }
    for (int k = d; k >= 0; --k) {
        cur[pos] = k;
        monomials_rec(nvars, d - k, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

std::vector<Expo> monomials_of_degree(int nvars, int d) {
    std::vector<Expo> out;
    if (d < 0) return out;
    if (nvars == 0) {
        if (d == 0) out.push_back(Expo{});
        return out;
    }
    Expo cur(nvars, 0);
    monomials_rec(nvars, d, 0, cur, out);
    return out; // already in descending lex = descending grlex within a degree
}

std::vector<std::string> default_var_names(int nvars) {
    std::vector<std::string> v(nvars);
    for (int i = 0; i < nvars; ++i) v[i] = "x" + std::to_string(i + 1);
    return v;
}

namespace {

struct PolyParser {
    const std::string& s;
    std::size_t pos = 0;
    int nvars;

    explicit PolyParser(const std::string& str, int nv) : s(str), nvars(nv) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::string number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("poly parse: expected number in '" + s + "'");
        return s.substr(start, pos - start);
    }

    // term := [rat] {"*" factor} | factor {"*" factor}
    void term(MPoly& acc, int sign) {
        Rat coeff(sign);
        Expo e(nvars, 0);
        bool expect_factor = true;
        bool saw_any = false;
        while (expect_factor) {
            skip_ws();
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                std::string num = number();
                std::string full = num;
                if (eat('/')) full += "/" + number();
                coeff *= rat_from_string(full);
            } else if (pos < s.size() && s[pos] == 'x') {
                ++pos;
                int idx = std::stoi(number());
                if (idx < 1 || idx > nvars)
                    throw std::invalid_argument("poly parse: variable x" + std::to_string(idx) +
                                                " out of range");
                int p = 1;
                if (eat('^')) p = std::stoi(number());
                e[idx - 1] += p;
            } else {
                throw std::invalid_argument("poly parse: unexpected input in '" + s + "'");
            }
            saw_any = true;
            expect_factor = eat('*');
        }
        if (!saw_any) throw std::invalid_argument("poly parse: empty term");
        acc.add_term(e, coeff);
    }
};

} // namespace

MPoly mpoly_from_string(const std::string& s, int nvars) {
    PolyParser p(s, nvars);
    MPoly acc(nvars);
    p.skip_ws();
    if (p.pos < s.size() && s.compare(p.pos, 1, "0") == 0 && p.pos + 1 == s.size()) return acc;
    int sign = 1;
    if (p.eat('-')) sign = -1;
    p.term(acc, sign);
    while (true) {
        p.skip_ws();
        if (p.pos >= s.size()) break;
        if (p.eat('+'))
            p.term(acc, 1);
        else if (p.eat('-'))
            p.term(acc, -1);
        else
            throw std::invalid_argument("poly parse: trailing input in '" + s + "'");
    }
    return acc;
}

} // namespace arrkit
