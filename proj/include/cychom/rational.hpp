#pragma once

#include <gmpxx.h>
#include <string>

namespace cychom {

/* Exact rational scalar. mpq_class keeps lowest terms with positive
 * denominator as long as values are built through canonical channels,
 * which the helpers below guarantee. */
using Rational = mpq_class;

inline Rational ratio(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rat(long num) { return Rational(num); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/* Canonical serialization "p" or "p/q", exact round-trip. */
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational rational_from_string(const std::string& s) {
    Rational q(s);
    q.canonicalize();
    return q;
}

} // namespace cychom
