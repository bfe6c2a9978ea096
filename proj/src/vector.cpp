#include "normset/vector.hpp"

#include <algorithm>
#include <stdexcept>

namespace normset {

Vector Vector::from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    Vector v;
    for (auto& [n, c] : entries) {
        if (n < 1) throw std::invalid_argument("positions start at 1");
        if (c == 0) continue;
        if (!v.entries_.empty() && v.entries_.back().first == n)
            v.entries_.back().second += c;
        else
            v.entries_.emplace_back(n, c);
    }
    std::erase_if(v.entries_, [](const Entry& e) { return e.second == 0; });
    return v;
}

Vector Vector::basis(long n, Rational coeff) {
    return from_entries({{n, std::move(coeff)}});
}

Interval Vector::range() const {
    if (entries_.empty()) return Interval::empty();
    return {entries_.front().first, entries_.back().first};
}

Rational Vector::at(long n) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                               [](const Entry& e, long k) { return e.first < k; });
    if (it != entries_.end() && it->first == n) return it->second;
    return Rational(0);
}

Rational Vector::l1() const {
    Rational s(0);
    for (const auto& [n, c] : entries_) s += rat_abs(c);
    return s;
}

Rational Vector::linf() const {
    Rational s(0);
    for (const auto& [n, c] : entries_) {
        Rational a = rat_abs(c);
        if (a > s) s = a;
    }
    return s;
}

Vector Vector::restrict_interval(const Interval& E) const {
    Vector v;
    for (const auto& e : entries_)
        if (E.contains(e.first)) v.entries_.push_back(e);
    return v;
}

Vector Vector::restrict_set(const std::vector<long>& s) const {
    Vector v;
    for (const auto& e : entries_)
        if (std::find(s.begin(), s.end(), e.first) != s.end()) v.entries_.push_back(e);
    return v;
}

Vector Vector::scaled(const Rational& a) const {
    if (a == 0) return Vector();
    Vector v;
    v.entries_ = entries_;
    for (auto& [n, c] : v.entries_) c *= a;
    return v;
}

Vector Vector::plus(const Vector& o) const {
    std::vector<Entry> all = entries_;
    all.insert(all.end(), o.entries_.begin(), o.entries_.end());
    return from_entries(std::move(all));
}

} // namespace normset
