#ifndef MAHLER_RATIONAL_SET_HPP
#define MAHLER_RATIONAL_SET_HPP

#include <algorithm>
#include <initializer_list>
#include <utility>
#include <vector>

#include "mahler/rational.hpp"

namespace mahler {

// A finite set of rationals kept as a strictly increasing vector. All the
// index sets of the pipeline (slope sets, receptacle levels, exponent sets)
// are values of this type.
class SortedRationalSet {
public:
    SortedRationalSet() = default;
    SortedRationalSet(std::initializer_list<Rational> values)
        : SortedRationalSet(std::vector<Rational>(values)) {}
    explicit SortedRationalSet(std::vector<Rational> values) : elems_(std::move(values)) {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }

    static SortedRationalSet from_sorted(std::vector<Rational> values) {
        SortedRationalSet s;
        s.elems_ = std::move(values);
        return s;
    }

    const std::vector<Rational>& values() const { return elems_; }
    bool empty() const { return elems_.empty(); }
    std::size_t size() const { return elems_.size(); }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }
    const Rational& operator[](std::size_t i) const { return elems_[i]; }

    const Rational& min() const { return elems_.front(); }
    const Rational& max() const { return elems_.back(); }

    bool contains(const Rational& v) const {
        return std::binary_search(elems_.begin(), elems_.end(), v);
    }

    void insert(const Rational& v) {
        auto it = std::lower_bound(elems_.begin(), elems_.end(), v);
        if (it == elems_.end() || *it != v) elems_.insert(it, v);
    }

    SortedRationalSet set_union(const SortedRationalSet& other) const {
        std::vector<Rational> out;
        out.reserve(size() + other.size());
        std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
        return from_sorted(std::move(out));
    }

    SortedRationalSet set_intersection(const SortedRationalSet& other) const {
        std::vector<Rational> out;
        std::set_intersection(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
        return from_sorted(std::move(out));
    }

    SortedRationalSet set_difference(const SortedRationalSet& other) const {
        std::vector<Rational> out;
        std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
        return from_sorted(std::move(out));
    }

    bool subset_of(const SortedRationalSet& other) const {
        return std::includes(other.begin(), other.end(), begin(), end());
    }

    SortedRationalSet shifted(const Rational& delta) const {
        std::vector<Rational> out;
        out.reserve(size());
        for (const auto& v : elems_) out.push_back(v + delta);
        return from_sorted(std::move(out));
    }

    // Positive factors keep the order; negative ones reverse it.
    SortedRationalSet scaled(const Rational& factor) const {
        std::vector<Rational> out;
        out.reserve(size());
        for (const auto& v : elems_) out.push_back(v * factor);
        if (factor < 0) std::reverse(out.begin(), out.end());
        if (factor == 0 && !out.empty()) out.resize(1);
        return from_sorted(std::move(out));
    }

    SortedRationalSet filter_leq(const Rational& bound) const {
        auto it = std::upper_bound(elems_.begin(), elems_.end(), bound);
        return from_sorted(std::vector<Rational>(elems_.begin(), it));
    }

    friend bool operator==(const SortedRationalSet& a, const SortedRationalSet& b) {
        return a.elems_ == b.elems_;
    }
    friend bool operator!=(const SortedRationalSet& a, const SortedRationalSet& b) {
        return !(a == b);
    }

private:
    std::vector<Rational> elems_;
};

}  // namespace mahler

#endif
