#ifndef MAHLER_LATTICE_HPP
#define MAHLER_LATTICE_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "mahler/rational.hpp"
#include "mahler/rational_set.hpp"

namespace mahler {

// The exponent lattice union over i >= 0 of (1/(d*ell^i)) * Z, and the depth
// of a rational inside it. Every receptacle element lives here.

// v is in the lattice iff its denominator divides d*ell^i for some i. Decided
// by stripping from the denominator one gcd factor with d, then gcd factors
// with ell until none remain.
inline bool in_lattice(const Rational& v, const Int& d, const Int& ell) {
    if (d < 1 || ell < 2) throw std::invalid_argument("in_lattice: need d >= 1, ell >= 2");
    Int b = denominator(v);
    b /= boost::multiprecision::gcd(b, d);
    for (;;) {
        Int g = boost::multiprecision::gcd(b, ell);
        if (g == 1) break;
        b /= g;
    }
    return b == 1;
}

// Least i >= 0 with d*ell^i*v integral. Iterates on i; the precondition
// bounds the loop by the bit length of the denominator.
inline long long lattice_height(const Rational& v, const Int& d, const Int& ell) {
    if (!in_lattice(v, d, ell)) throw std::invalid_argument("lattice_height: v outside the lattice");
    const Int& b = denominator(v);
    Int scale = d;
    long long i = 0;
    while (scale % b != 0) {
        scale *= ell;
        ++i;
    }
    return i;
}

// All reduced fractions a/b with max(|a|, b) <= N, strictly increasing.
inline SortedRationalSet naive_height_set(long long n_max) {
    if (n_max < 1) throw std::invalid_argument("naive_height_set: N >= 1 required");
    std::vector<Rational> out;
    for (long long b = 1; b <= n_max; ++b)
        for (long long a = -n_max; a <= n_max; ++a)
            if (boost::multiprecision::gcd(Int(a < 0 ? -a : a), Int(b)) == 1)
                out.emplace_back(Int(a), Int(b));
    std::sort(out.begin(), out.end());
    return SortedRationalSet::from_sorted(std::move(out));
}

}  // namespace mahler

#endif
