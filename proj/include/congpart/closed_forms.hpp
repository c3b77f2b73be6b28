#ifndef CONGPART_CLOSED_FORMS_HPP
#define CONGPART_CLOSED_FORMS_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "congpart/box_sum.hpp"
#include "congpart/exact.hpp"
#include "congpart/part_seq.hpp"

/* Exact evaluation of the displayed closed formulas. Paths that provably equal
 * the count they claim are plain functions returning Int/Rat; the weighted
 * (n;j) family is implemented exactly as printed - dropped constraints and all -
 * and returns a FormulaResult carrying the paper-faithful flag. The enumerative
 * oracle is never called from this header. */
namespace congpart::closed_forms {

enum class Exactness { count_certified, paper_faithful };

/* A formula value together with how far it can be trusted. Count-certified
 * values are nonnegative integers equal to the count the formula claims;
 * paper-faithful values may exceed the true count (note says how). */
struct FormulaResult {
    Rat value;
    Exactness exactness;
    std::string note;  // empty when count-certified
};

inline constexpr const char* counted_closed_note =
    "omits the constraint x_2+...+x_r <= j; may exceed the true count p_a(n;j)";
inline constexpr const char* counted_congruent_note =
    "omits q_1 >= 0 (equivalently sum_{i>=2} q_i <= (j-|eps|)/2) and admits |eps| > j terms";

/* lcm family of a part sequence: D = lcm(a_i), D(d) = lcm(d a_i), and for
 * strictly increasing parts D'(d) = lcm(d(a_2-a_1),...,d(a_r-a_1)). */
class LcmCache {
  public:
    LcmCache(PartSeq a, Modulus d) : a_(std::move(a)), d_(std::move(d)) {}

    Int D() const { return a_.lcm(); }
    Int D_of_d() const { return a_.scaled(d_.value()).lcm(); }
    Int D_prime_of_d() const { return a_.differences(d_.value()).lcm(); }

  private:
    PartSeq a_;
    Modulus d_;
};

namespace detail {

inline void require_r2(const PartSeq& a, const char* op) {
    if (a.size() < 2)
        throw domain_error(std::string(op) + ": needs at least two parts");
}

inline void require_nonneg(const Int& v, const char* op, const char* what) {
    if (v < 0)
        throw domain_error(std::string(op) + ": " + what + " must be >= 0, got " + v.get_str());
}

/* Sum over eps in {0,1}^r with |eps| ≡ j (mod 2) of the inner denumerant of
 * (d(a_2-a_1),...,d(a_r-a_1)) at n - a_1 d (j-|eps|)/2 - sum a_i eps_i, each
 * inner value zero-clamped for a negative argument and otherwise evaluated by
 * the denumerant box formula. eps is enumerated as binary integers with the
 * low bit = eps_1. */
inline Int counted_congruent_sum(const PartSeq& a, const Modulus& d, const Int& n, const Int& j,
                                 const BoxSum& inner) {
    const std::size_t r = a.size();
    Int total = 0;
    for (std::size_t mask = 0; mask < (std::size_t(1) << r); ++mask) {
        Int eps_weight = 0, eps_sum = 0;
        for (std::size_t i = 0; i < r; ++i)
            if (mask >> i & 1) {
                eps_weight += 1;
                eps_sum += a[i];
            }
        if (pos_mod(j - eps_weight, 2) != 0)
            continue;
        Int m = n - a[0] * d.value() * ((j - eps_weight) / 2) - eps_sum;
        if (m >= 0)
            total += inner.count_at(m);
    }
    return total;
}

}  // namespace detail

/* The congruence-filtered box formula for the plain denumerant p_a(n). Valid
 * for n >= -(r-1)*D; below the window the vanishing-product argument fails and
 * the evaluation is refused (callers clamp negative targets to 0 instead). */
inline Int popoviciu_general(const PartSeq& a, const Int& n) {
    detail::require_r2(a, "popoviciu_general");
    BoxSum box = BoxSum::denumerant_box(a);
    if (n < -Int(static_cast<unsigned long>(a.size() - 1)) * box.modulus())
        throw domain_error("popoviciu_general: " + n.get_str() + " below the validity window");
    return box.count_at(n);
}

/* Polynomial part P_a(n): the same box summed without the congruence filter. */
inline Rat polynomial_part(const PartSeq& a, const Int& n) {
    detail::require_r2(a, "polynomial_part");
    return BoxSum::denumerant_box(a).polynomial_part_at(n);
}

inline std::pair<Int, Int> polynomial_part_unreduced(const PartSeq& a, const Int& n) {
    detail::require_r2(a, "polynomial_part");
    return BoxSum::denumerant_box(a).polynomial_part_raw(n);
}

/* p_{a,d}(n) via the eps-expanded box with modulus D(d); count-certified. */
inline Int congruent_closed(const PartSeq& a, const Modulus& d, const Int& n) {
    detail::require_r2(a, "congruent_closed");
    detail::require_nonneg(n, "congruent_closed", "n");
    return BoxSum::congruent_box(a, d).count_at(n);
}

/* p_{a,d}(n) via the subset decomposition sum_J p_{da}(n - a_J), negative
 * arguments contributing 0; the independent second route to the same count. */
inline Int congruent_by_decomposition(const PartSeq& a, const Modulus& d, const Int& n) {
    detail::require_nonneg(n, "congruent_by_decomposition", "n");
    BoxSum inner = BoxSum::denumerant_box(a.scaled(d.value()));
    const std::size_t r = a.size();
    Int total = 0;
    for (std::size_t mask = 0; mask < (std::size_t(1) << r); ++mask) {
        Int aJ = 0;
        for (std::size_t i = 0; i < r; ++i)
            if (mask >> i & 1)
                aJ += a[i];
        if (n >= aJ)
            total += inner.count_at(n - aJ);
    }
    return total;
}

/* Polynomial part P_{a,d}(n); defined for every n (it is a polynomial). */
inline Rat congruent_poly_part(const PartSeq& a, const Modulus& d, const Int& n) {
    detail::require_r2(a, "congruent_poly_part");
    return BoxSum::congruent_box(a, d).polynomial_part_at(n);
}

inline std::pair<Int, Int> congruent_poly_part_unreduced(const PartSeq& a, const Modulus& d,
                                                         const Int& n) {
    detail::require_r2(a, "congruent_poly_part");
    return BoxSum::congruent_box(a, d).polynomial_part_raw(n);
}

/* One constituent of the quasi-polynomial p_{a,d}: the inner sum of the
 * congruence formula taken over the residue class c, evaluated at n. The
 * average of all D(d) constituents is the polynomial part. */
inline Rat congruent_constituent(const PartSeq& a, const Modulus& d, const Int& n, const Int& c) {
    detail::require_r2(a, "congruent_constituent");
    return BoxSum::congruent_box(a, d).constituent_at(n, c);
}

/* d-ary specializations for a = (1, d, ..., d^k), modulus d^{k+1} throughout.
 * k = 0 degenerates to a single part and is served by the oracle only. */
inline Int dary_closed(const Modulus& d, long k, const Int& n) {
    if (k < 1)
        throw domain_error("dary_closed: k must be >= 1");
    detail::require_nonneg(n, "dary_closed", "n");
    return BoxSum::dary_box(d, static_cast<unsigned>(k)).count_at(n);
}

inline Rat dary_poly_part(const Modulus& d, long k, const Int& n) {
    if (k < 1)
        throw domain_error("dary_poly_part: k must be >= 1");
    return BoxSum::dary_box(d, static_cast<unsigned>(k)).polynomial_part_at(n);
}

/* Weighted count p_a(n;j) = p_{(a_2-a_1,...,a_r-a_1)}(n - a_1 j) as printed,
 * zero-clamped for a negative argument. Paper-faithful: the reduction drops
 * x_1 >= 0, so the value can exceed the true count. */
inline FormulaResult counted_closed(const PartSeq& a, const Int& n, const Int& j) {
    detail::require_r2(a, "counted_closed");
    detail::require_nonneg(j, "counted_closed", "j");
    PartSeq diffs = a.differences();  // rejects non-strictly-increasing parts
    Int m = n - a[0] * j;
    Int value = m < 0 ? Int(0) : BoxSum::denumerant_box(diffs).count_at(m);
    return {Rat(value), Exactness::paper_faithful, counted_closed_note};
}

/* Weighted congruence-restricted count p_{a,d}(n;j) as printed. */
inline FormulaResult counted_congruent_closed(const PartSeq& a, const Modulus& d, const Int& n,
                                              const Int& j) {
    detail::require_r2(a, "counted_congruent_closed");
    detail::require_nonneg(j, "counted_congruent_closed", "j");
    BoxSum inner = BoxSum::denumerant_box(a.differences(d.value()));
    Int value = detail::counted_congruent_sum(a, d, n, j, inner);
    return {Rat(value), Exactness::paper_faithful, counted_congruent_note};
}

/* d-ary weighted count for a = (1, d, ..., d^k): the corollary display is the
 * general formula at exactly these parts (same box, same modulus dD'), so the
 * evaluation delegates. k = 1 is the r = 2 instance. */
inline FormulaResult dary_counted_closed(const Modulus& d, long k, const Int& n, const Int& j) {
    if (k < 1)
        throw domain_error("dary_counted_closed: k must be >= 1");
    return counted_congruent_closed(dary_parts(d, static_cast<unsigned>(k)), d, n, j);
}

}  // namespace congpart::closed_forms

#endif
