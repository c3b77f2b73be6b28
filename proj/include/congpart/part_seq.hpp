#ifndef CONGPART_PART_SEQ_HPP
#define CONGPART_PART_SEQ_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "congpart/exact.hpp"

namespace congpart {

/* A validated sequence of positive integer parts (a_1, ..., a_r), r >= 1.
 * Order is preserved: the counting functions are symmetric in the parts, but
 * the weighted closed forms privilege a_1 and require a strict increase, so
 * canonicalization is the caller's decision, not ours. */
class PartSeq {
  public:
    explicit PartSeq(std::vector<Int> parts) : parts_(std::move(parts)) {
        if (parts_.empty())
            throw domain_error("PartSeq: needs at least one part");
        for (const Int& a : parts_)
            if (a < 1)
                throw domain_error("PartSeq: parts must be positive, got " + a.get_str());
    }
    PartSeq(std::initializer_list<long> parts) : PartSeq(from_longs(parts)) {}

    std::size_t size() const { return parts_.size(); }
    const Int& operator[](std::size_t i) const { return parts_[i]; }
    const std::vector<Int>& parts() const { return parts_; }

    Int lcm() const { return lcm_of(parts_); }

    bool strictly_increasing() const {
        for (std::size_t i = 1; i < parts_.size(); ++i)
            if (parts_[i] <= parts_[i - 1])
                return false;
        return true;
    }

    PartSeq sorted() const {
        std::vector<Int> p = parts_;
        std::sort(p.begin(), p.end());
        return PartSeq(std::move(p));
    }

    /* Differences (a_2 - a_1, ..., a_r - a_1), optionally scaled; the inner
     * part sequence of the weighted closed forms. */
    PartSeq differences(const Int& scale = 1) const {
        if (parts_.size() < 2)
            throw domain_error("PartSeq::differences: needs r >= 2");
        if (!strictly_increasing())
            throw domain_error("PartSeq::differences: parts must strictly increase");
        std::vector<Int> d;
        d.reserve(parts_.size() - 1);
        for (std::size_t i = 1; i < parts_.size(); ++i)
            d.push_back(scale * (parts_[i] - parts_[0]));
        return PartSeq(std::move(d));
    }

    PartSeq scaled(const Int& scale) const {
        std::vector<Int> p;
        p.reserve(parts_.size());
        for (const Int& a : parts_)
            p.push_back(scale * a);
        return PartSeq(std::move(p));
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i)
                s += ",";
            s += parts_[i].get_str();
        }
        return s + ")";
    }

    friend bool operator==(const PartSeq& x, const PartSeq& y) { return x.parts_ == y.parts_; }
    friend bool operator<(const PartSeq& x, const PartSeq& y) { return x.parts_ < y.parts_; }

  private:
    static std::vector<Int> from_longs(std::initializer_list<long> ls) {
        std::vector<Int> v;
        v.reserve(ls.size());
        for (long x : ls)
            v.emplace_back(x);
        return v;
    }

    std::vector<Int> parts_;
};

/* The congruence modulus d >= 2 of the restriction x_i ≡ 0,1 (mod d). */
class Modulus {
  public:
    explicit Modulus(Int d) : d_(std::move(d)) {
        if (d_ < 2)
            throw domain_error("Modulus: d must be >= 2, got " + d_.get_str());
    }
    Modulus(long d) : Modulus(Int(d)) {}

    const Int& value() const { return d_; }

    friend bool operator==(const Modulus& x, const Modulus& y) { return x.d_ == y.d_; }

  private:
    Int d_;
};

/* The part sequence (1, d, d^2, ..., d^k). */
inline PartSeq dary_parts(const Modulus& d, unsigned k) {
    std::vector<Int> p;
    p.reserve(k + 1);
    Int pw = 1;
    for (unsigned i = 0; i <= k; ++i) {
        p.push_back(pw);
        pw *= d.value();
    }
    return PartSeq(std::move(p));
}

}  // namespace congpart

#endif
