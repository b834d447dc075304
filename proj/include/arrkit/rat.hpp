#ifndef ARRKIT_RAT_HPP
#define ARRKIT_RAT_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace arrkit {

// Exact rational scalar. mpq_class keeps values canonical (reduced,
// positive denominator), which is exactly the invariant we need.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }
inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Serializes as "p/q", with "/q" omitted for integers.
inline std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Parses "p" or "p/q". Throws on malformed input or q = 0.
inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Rat q{Int(s)};
            return q;
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        Rat q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("rat_from_string: malformed rational '" + s + "'");
    }
}

inline long rat_to_long(const Rat& q) {
    if (q.get_den() != 1 || !q.get_num().fits_slong_p())
        throw std::domain_error("rat_to_long: not a small integer: " + rat_to_string(q));
    return q.get_num().get_si();
}

} // namespace arrkit

#endif
