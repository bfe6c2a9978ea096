#ifndef NORMSET_VECTOR_HPP
#define NORMSET_VECTOR_HPP

#include <optional>
#include <utility>
#include <vector>

#include "normset/rational.hpp"

namespace normset {

// Closed interval of naturals; empty() when hi < lo.
struct Interval {
    long lo = 1;
    long hi = 0;

    static Interval empty() { return {1, 0}; }
    static Interval of(long lo, long hi) { return {lo, hi}; }
    bool is_empty() const { return hi < lo; }
    bool contains(long n) const { return lo <= n && n <= hi; }
    bool intersects(const Interval& o) const {
        return !is_empty() && !o.is_empty() && lo <= o.hi && o.lo <= hi;
    }
    Interval meet(const Interval& o) const {
        if (!intersects(o)) return empty();
        return {std::max(lo, o.lo), std::min(hi, o.hi)};
    }
    Interval join(const Interval& o) const {  // interval hull
        if (is_empty()) return o;
        if (o.is_empty()) return *this;
        return {std::min(lo, o.lo), std::max(hi, o.hi)};
    }
    bool operator==(const Interval& o) const = default;
};

// Finitely supported rational sequence on N = {1, 2, ...}. Entries are kept
// sorted by position with no stored zeros; immutable value type.
class Vector {
  public:
    using Entry = std::pair<long, Rational>;

    Vector() = default;
    // merges duplicates, drops zeros, sorts
    static Vector from_entries(std::vector<Entry> entries);
    static Vector basis(long n, Rational coeff = Rational(1));

    const std::vector<Entry>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }
    size_t support_size() const { return entries_.size(); }
    Interval range() const;
    Rational at(long n) const;

    Rational l1() const;
    Rational linf() const;

    Vector restrict_interval(const Interval& E) const;
    // arbitrary finite set restriction
    Vector restrict_set(const std::vector<long>& s) const;
    Vector scaled(const Rational& a) const;
    Vector plus(const Vector& o) const;

    bool operator==(const Vector& o) const { return entries_ == o.entries_; }

  private:
    std::vector<Entry> entries_;
};

} // namespace normset

#endif
