#ifndef CONGPART_BOX_SUM_HPP
#define CONGPART_BOX_SUM_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "congpart/exact.hpp"
#include "congpart/part_seq.hpp"

namespace congpart::closed_forms {

/* The common shape of every displayed formula in scope: a finite box of offsets
 * S and sums of products prod_{l=1}^{deg} ((n - S)/D + l), either restricted to
 * the congruence class S ≡ n (mod D) (counting formulas, where (n-S)/D is an
 * exact integer) or over the whole box (polynomial parts, where the division is
 * deferred to a single final denominator D^deg * D * deg!).
 *
 * The box is never materialized point by point: offsets are bounded by r*D
 * while the box can hold prod(D/a_i) points, so the constructor convolves the
 * per-index ranges into a multiplicity histogram h[S] and groups the support
 * by residue. Evaluating at n then costs one bucket scan (at most r terms per
 * residue class), independent of the box cardinality. */
class BoxSum {
  public:
    /* One box index: step * j for j in [0, count). */
    struct Dim {
        Int step;
        Int count;
    };

    /* Theorem-1.1 box of a denumerant: S = sum a_i j_i, 0 <= j_i < D/a_i. */
    static BoxSum denumerant_box(const PartSeq& a) {
        const Int D = lcm_of(a.parts());
        std::vector<Dim> dims;
        dims.reserve(a.size());
        for (const Int& ai : a.parts())
            dims.push_back({ai, D / ai});
        return BoxSum(D, static_cast<unsigned>(a.size()) - 1, dims);
    }

    /* Congruence-restricted box: S = sum a_i (d j_i + e_i) over e in {0,1}^r
     * and 0 <= j_i < D(d)/(d a_i), with D(d) = lcm(d a_1,...,d a_r). */
    static BoxSum congruent_box(const PartSeq& a, const Modulus& d) {
        std::vector<Int> scaled;
        scaled.reserve(a.size());
        for (const Int& ai : a.parts())
            scaled.push_back(d.value() * ai);
        const Int D = lcm_of(scaled);
        std::vector<Dim> dims;
        dims.reserve(2 * a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            dims.push_back({scaled[i], D / scaled[i]});
            dims.push_back({a[i], Int(2)});  // the epsilon bit
        }
        return BoxSum(D, static_cast<unsigned>(a.size()) - 1, dims);
    }

    /* d-ary box as displayed for a = (1, d, ..., d^k): modulus d^{k+1},
     * S = sum_{i<k} d^{i+1} j_i + sum_{i<=k} d^i e_i with 0 <= j_i < d^{k-i}. */
    static BoxSum dary_box(const Modulus& d, unsigned k) {
        Int D = 1;
        for (unsigned i = 0; i <= k; ++i)
            D *= d.value();
        std::vector<Dim> dims;
        Int step = d.value();
        Int count = D / d.value();
        for (unsigned i = 0; i < k; ++i) {
            dims.push_back({step, count});
            step *= d.value();
            count /= d.value();
        }
        Int pw = 1;
        for (unsigned i = 0; i <= k; ++i) {
            dims.push_back({pw, Int(2)});
            pw *= d.value();
        }
        return BoxSum(D, k, dims);
    }

    const Int& modulus() const { return modulus_; }
    unsigned degree() const { return degree_; }
    /* Number of box points (sum of multiplicities), which can be astronomical
     * even though the offset support is small. */
    const Int& box_size() const { return box_size_; }

    /* Congruence-filtered sum divided by deg!; exact for any n in the window
     * n >= -deg*D (below it the vanishing-product argument no longer holds). */
    Int count_at(const Int& n) const {
        const Int residue = pos_mod(n, modulus_);
        Int total = 0;
        auto it = by_residue_.find(residue);
        if (it != by_residue_.end()) {
            for (const auto& [S, mult] : it->second) {
                Int q = (n - S) / modulus_;
                Int term = mult;
                for (unsigned l = 1; l <= degree_; ++l)
                    term *= q + l;
                total += term;
            }
        }
        return exact_div(total, deg_factorial_, "BoxSum::count_at");
    }

    /* Full-box sum as an unreduced fraction: numerator sum of
     * prod (n - S + l*D), denominator D^deg * D * deg!. This is the display
     * convention before reduction (e.g. 168/81 for the value 56/27). */
    std::pair<Int, Int> polynomial_part_raw(const Int& n) const {
        Int num = 0;
        for (std::size_t s = 0; s < histogram_.size(); ++s) {
            if (histogram_[s] == 0)
                continue;
            Int term = histogram_[s];
            for (unsigned l = 1; l <= degree_; ++l)
                term *= n - Int(static_cast<unsigned long>(s)) + Int(l) * modulus_;
            num += term;
        }
        Int den = deg_factorial_ * modulus_;
        for (unsigned l = 0; l < degree_; ++l)
            den *= modulus_;
        return {num, den};
    }

    Rat polynomial_part_at(const Int& n) const {
        auto [num, den] = polynomial_part_raw(n);
        return make_rat(num, den);
    }

    /* One constituent of the quasi-polynomial: the residue-c bucket evaluated
     * at n (rational for n not in class c), with the 1/deg! normalization but
     * without the polynomial part's extra 1/D. */
    Rat constituent_at(const Int& n, const Int& c) const {
        auto it = by_residue_.find(pos_mod(c, modulus_));
        if (it == by_residue_.end())
            return Rat(0);
        Int num = 0;
        for (const auto& [S, mult] : it->second) {
            Int term = mult;
            for (unsigned l = 1; l <= degree_; ++l)
                term *= n - S + Int(l) * modulus_;
            num += term;
        }
        Int den = deg_factorial_;
        for (unsigned l = 0; l < degree_; ++l)
            den *= modulus_;
        return make_rat(num, den);
    }

  private:
    static constexpr unsigned long max_support = 8'000'000;

    BoxSum(Int modulus, unsigned degree, const std::vector<Dim>& dims)
        : modulus_(std::move(modulus)), degree_(degree), deg_factorial_(factorial(degree)),
          box_size_(1) {
        Int max_offset = 0;
        for (const Dim& dim : dims) {
            max_offset += dim.step * (dim.count - 1);
            box_size_ *= dim.count;
        }
        if (max_offset >= Int(max_support))
            throw domain_error("BoxSum: offset support " + max_offset.get_str() + " exceeds " +
                               std::to_string(max_support) +
                               "; parts too large for closed-form evaluation");
        histogram_.assign(static_cast<std::size_t>(max_offset.get_ui()) + 1, Int(0));
        histogram_[0] = 1;
        std::size_t used = 1;  // 1 + current maximal offset
        for (const Dim& dim : dims) {
            const std::size_t step = static_cast<std::size_t>(dim.step.get_ui());
            const std::size_t count = static_cast<std::size_t>(dim.count.get_ui());
            const std::size_t grown = used + step * (count - 1);
            // in-place convolution with 1 + z^step + ... + z^{(count-1) step},
            // walking downward so each source cell is read before it is grown
            for (std::size_t s = grown; s-- > 0;) {
                if (s >= used || histogram_[s] == 0)
                    continue;
                for (std::size_t j = 1; j < count; ++j)
                    histogram_[s + j * step] += histogram_[s];
            }
            used = grown;
        }
        for (std::size_t s = 0; s < histogram_.size(); ++s)
            if (histogram_[s] != 0)
                by_residue_[pos_mod(Int(static_cast<unsigned long>(s)), modulus_)].emplace_back(
                    Int(static_cast<unsigned long>(s)), histogram_[s]);
    }

    Int modulus_;
    unsigned degree_;
    Int deg_factorial_;
    Int box_size_;
    std::vector<Int> histogram_;                              // multiplicity of each offset
    std::map<Int, std::vector<std::pair<Int, Int>>> by_residue_;  // residue -> (S, multiplicity)
};

}  // namespace congpart::closed_forms

#endif
