#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace qsheaf {

using Integer = mpz_class;
using Rational = mpq_class;

/// Small integer vectors: ray generators, characters, intersection numbers.
using IntVec = std::vector<std::int64_t>;
using RatVec = std::vector<Rational>;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    Rational q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
}

/// Throws on non-integral input.
std::int64_t to_int64(const Rational& q);

inline std::int64_t dot(const IntVec& a, const IntVec& b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::string to_string(const IntVec& v);

}  // namespace qsheaf
