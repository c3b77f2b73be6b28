#ifndef CONGPART_EXACT_HPP
#define CONGPART_EXACT_HPP

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace congpart {

/* All arithmetic in this library is exact: arbitrary-precision integers and
 * reduced fractions, no floating point anywhere. mpq_class keeps the canonical
 * form (lowest terms, positive denominator) we rely on for value equality. */
using Int = mpz_class;
using Rat = mpq_class;

/* Invalid input (bad part sequence, negative target where a listing was
 * requested, out-of-window evaluation, ...). */
struct domain_error : std::invalid_argument {
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/* A divisibility assertion failed inside a closed form. Must never fire; if it
 * does, a formula was transcribed wrong. */
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline Int factorial(unsigned n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline Int lcm_of(const std::vector<Int>& values) {
    if (values.empty())
        throw domain_error("lcm_of: empty list");
    Int l = 1;
    for (const Int& v : values)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_mpz_t());
    return l;
}

inline Rat make_rat(Int num, Int den) {
    if (den == 0)
        throw domain_error("make_rat: zero denominator");
    Rat q(std::move(num), std::move(den));
    q.canonicalize();
    return q;
}

/* Exact division with the library-wide consistency check. */
inline Int exact_div(const Int& num, const Int& den, const char* where) {
    if (den == 0 || !mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        throw internal_error(std::string(where) + ": inexact division " + num.get_str() + "/" +
                             den.get_str());
    return num / den;
}

/* Nonnegative residue of n mod m (m > 0), independent of the sign of n. */
inline Int pos_mod(const Int& n, const Int& m) {
    Int r = n % m;
    if (r < 0)
        r += m;
    return r;
}

/* Bounded conversion for values used as container sizes. */
inline std::size_t to_index(const Int& n, std::size_t cap, const char* where) {
    if (n < 0 || n > static_cast<unsigned long>(cap))
        throw domain_error(std::string(where) + ": " + n.get_str() + " outside [0, " +
                           std::to_string(cap) + "]");
    return static_cast<std::size_t>(n.get_ui());
}

inline std::string rat_str(const Rat& q) {
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace congpart

#endif
