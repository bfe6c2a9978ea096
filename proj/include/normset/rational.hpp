#ifndef NORMSET_RATIONAL_HPP
#define NORMSET_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace normset {

using Rational = mpq_class;
using Integer = mpz_class;

// Canonical "p/q" (or "p" when q == 1). GMP keeps rationals reduced with the
// sign on the numerator, so the output is unique per value.
inline std::string rational_to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::optional<Rational> try_parse_rational(const std::string& s) {
    if (s.empty()) return std::nullopt;
    Rational r;
    if (r.set_str(s, 10) != 0) return std::nullopt;
    if (r.get_den() == 0) return std::nullopt;
    r.canonicalize();
    return r;
}

inline Rational parse_rational(const std::string& s) {
    auto r = try_parse_rational(s);
    if (!r) throw std::invalid_argument("not a rational: '" + s + "'");
    return *r;
}

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

} // namespace normset

#endif
