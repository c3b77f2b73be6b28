#ifndef CONGPART_ORACLE_HPP
#define CONGPART_ORACLE_HPP

#include <cstddef>
#include <map>
#include <vector>

#include "congpart/exact.hpp"
#include "congpart/part_seq.hpp"

/* Ground-truth enumerative and series-coefficient computations. Everything in
 * here works from the defining equations (dynamic programming over admissible
 * multiplicities, or direct enumeration); the closed forms elsewhere are
 * verified against this module and are never called from it. */
namespace congpart::oracle {

/* A solution (x_1,...,x_r) of sum a_i x_i = n, one entry per part. */
using SolutionVec = std::vector<Int>;

/* Coefficients of a generating-function prefix; index m = coefficient of z^m. */
using SeriesPrefix = std::vector<Int>;

namespace detail {

/* 1-D DPs are linear in n; the weighted table is quadratic. Both caps keep the
 * oracle at desk scale, where it is meant to live. */
constexpr std::size_t max_prefix = 2'000'000;
constexpr std::size_t max_weighted = 2'000;

inline unsigned long small_part(const Int& a, const char* where) {
    if (!a.fits_ulong_p())
        throw domain_error(std::string(where) + ": part " + a.get_str() + " too large for the oracle");
    return a.get_ui();
}

}  // namespace detail

/* Coefficients of 1 / prod(1 - z^{a_i}) up to z^N: denumerant values p_a(0..N). */
inline SeriesPrefix denumerant_prefix(const PartSeq& a, std::size_t N) {
    SeriesPrefix c(N + 1, Int(0));
    c[0] = 1;
    for (const Int& part : a.parts()) {
        const unsigned long p = detail::small_part(part, "denumerant_prefix");
        for (std::size_t m = p; m <= N; ++m)
            c[m] += c[m - p];
    }
    return c;
}

/* Exact count of nonnegative solutions of sum a_i x_i = n; 0 for n < 0. */
inline Int denumerant(const PartSeq& a, const Int& n) {
    if (n < 0)
        return 0;
    const std::size_t N = to_index(n, detail::max_prefix, "oracle::denumerant");
    return denumerant_prefix(a, N)[N];
}

/* Counts with every multiplicity restricted to x ≡ 0,1 (mod d). The DP follows
 * the decomposition of the admissible set M = {0,1} ∪ (d + M): each part
 * contributes old[m] (x=0), old[m-a] (x=1) and new[m-da] (x >= d). */
inline SeriesPrefix congruent_prefix(const PartSeq& a, const Modulus& d, std::size_t N) {
    const unsigned long dv = detail::small_part(d.value(), "congruent_prefix");
    SeriesPrefix cur(N + 1, Int(0));
    cur[0] = 1;
    for (const Int& part : a.parts()) {
        const unsigned long p = detail::small_part(part, "congruent_prefix");
        SeriesPrefix next(N + 1, Int(0));
        for (std::size_t m = 0; m <= N; ++m) {
            next[m] = cur[m];
            if (m >= p)
                next[m] += cur[m - p];
            if (dv <= N / p && m >= dv * p)
                next[m] += next[m - dv * p];
        }
        cur.swap(next);
    }
    return cur;
}

/* p_{a,d}(n); 0 for n < 0. */
inline Int congruent_count(const PartSeq& a, const Modulus& d, const Int& n) {
    if (n < 0)
        return 0;
    const std::size_t N = to_index(n, detail::max_prefix, "oracle::congruent_count");
    return congruent_prefix(a, d, N)[N];
}

/* Per-target weighted profiles: entry [m] maps j to the number of solutions of
 * sum a_i x_i = m with weight sum (x_i - (d-2)*floor(x_i/d)) = j. Writing
 * x = dq + e with e in {0,1}, the weight of a coordinate is 2q + e, so the
 * shift x -> x + d adds exactly 2 to the weight. */
inline std::vector<std::map<Int, Int>> weighted_profiles_upto(const PartSeq& a, const Modulus& d,
                                                              std::size_t N) {
    if (N > detail::max_weighted)
        throw domain_error("weighted_profiles_upto: target beyond the quadratic-DP cap");
    const unsigned long dv = detail::small_part(d.value(), "weighted_profiles_upto");
    // triangular table: weight never exceeds the target (w(x) <= x <= a x).
    std::vector<std::vector<Int>> cur(N + 1);
    for (std::size_t m = 0; m <= N; ++m)
        cur[m].assign(m + 1, Int(0));
    cur[0][0] = 1;
    for (const Int& part : a.parts()) {
        const unsigned long p = detail::small_part(part, "weighted_profiles_upto");
        auto next = cur;
        for (std::size_t m = 0; m <= N; ++m)
            for (std::size_t w = 0; w <= m; ++w) {
                if (m >= p && w >= 1 && w - 1 <= m - p)
                    next[m][w] += cur[m - p][w - 1];
                if (dv <= N / p && m >= dv * p && w >= 2 && w - 2 <= m - dv * p)
                    next[m][w] += next[m - dv * p][w - 2];
            }
        cur.swap(next);
    }
    std::vector<std::map<Int, Int>> out(N + 1);
    for (std::size_t m = 0; m <= N; ++m)
        for (std::size_t w = 0; w <= m; ++w)
            if (cur[m][w] != 0)
                out[m][Int(static_cast<unsigned long>(w))] = cur[m][w];
    return out;
}

/* p_{a,d}(n; j) for every achievable j; absent keys mean 0. {0:1} at n = 0. */
inline std::map<Int, Int> weighted_profile(const PartSeq& a, const Modulus& d, const Int& n) {
    if (n < 0)
        return {};
    const std::size_t N = to_index(n, detail::max_weighted, "oracle::weighted_profile");
    return weighted_profiles_upto(a, d, N)[N];
}

/* Complete solution list in lexicographic order of x. Negative targets are a
 * caller error: the set is empty, but asking for a listing of one signals a bug. */
inline std::vector<SolutionVec> enumerate_solutions(const PartSeq& a, const Modulus& d,
                                                    const Int& n) {
    if (n < 0)
        throw domain_error("enumerate_solutions: negative target " + n.get_str());
    const std::size_t r = a.size();
    std::vector<SolutionVec> out;
    SolutionVec x(r, Int(0));
    // advance an admissible multiplicity: 0 -> 1 -> d -> d+1 -> 2d -> ...
    auto bump = [&](Int& v) {
        if (v == 0)
            v = 1;
        else if (v == 1)
            v = d.value();
        else if (v % d.value() == 0)
            v += 1;
        else
            v += d.value() - 1;
    };
    auto rec = [&](auto&& self, std::size_t i, const Int& rem) -> void {
        if (i + 1 == r) {
            if (rem % a[i] == 0) {
                Int q = rem / a[i];
                Int res = q % d.value();
                if (res == 0 || res == 1) {
                    x[i] = q;
                    out.push_back(x);
                    x[i] = 0;
                }
            }
            return;
        }
        for (Int v = 0; v * a[i] <= rem; bump(v)) {
            x[i] = v;
            self(self, i + 1, rem - v * a[i]);
        }
        x[i] = 0;
    };
    rec(rec, 0, n);
    return out;
}

/* Prop-2.1 route: coefficients of prod(1+z^{a_i}) / prod(1-z^{d a_i}) up to
 * z^N, by polynomial multiplication then repeated geometric-series
 * convolution. Equality with congruent_prefix (a different DP) is exactly the
 * content of the proposition and is what the verifier checks. */
inline SeriesPrefix series_coeffs(const PartSeq& a, const Modulus& d, const Int& N_in) {
    if (N_in < 0)
        throw domain_error("series_coeffs: N must be >= 0");
    const std::size_t N = to_index(N_in, detail::max_prefix, "oracle::series_coeffs");
    const unsigned long dv = detail::small_part(d.value(), "series_coeffs");
    SeriesPrefix c(N + 1, Int(0));
    c[0] = 1;
    for (const Int& part : a.parts()) {  // numerator: * (1 + z^{a_i})
        const unsigned long p = detail::small_part(part, "series_coeffs");
        for (std::size_t m = N; m >= p; --m) {
            c[m] += c[m - p];
            if (m == p)
                break;
        }
    }
    for (const Int& part : a.parts()) {  // denominator: / (1 - z^{d a_i})
        const unsigned long p = detail::small_part(part, "series_coeffs");
        if (dv > N / p)
            continue;
        for (std::size_t m = dv * p; m <= N; ++m)
            c[m] += c[m - dv * p];
    }
    return c;
}

}  // namespace congpart::oracle

#endif
