#ifndef NORMSET_GENERATORS_HPP
#define NORMSET_GENERATORS_HPP

#include <algorithm>
#include <vector>

#include "normset/coding.hpp"
#include "normset/functional.hpp"
#include "normset/params.hpp"
#include "normset/rng.hpp"
#include "normset/vector.hpp"

namespace normset {

// Seeded generators used by the property suites. Every generated tree is
// valid for the family it claims; generation failures fall back to smaller
// shapes rather than emitting invalid structures.

inline Vector random_vector(Rng& rng, long max_support = 6, long pos_range = 40, long pmax = 8,
                            long qmax = 8) {
    long size = rng.range(1, max_support);
    std::vector<Vector::Entry> entries;
    std::vector<long> used;
    for (long i = 0; i < size; ++i) {
        long pos;
        do {
            pos = rng.range(1, pos_range);
        } while (std::find(used.begin(), used.end(), pos) != used.end());
        used.push_back(pos);
        entries.emplace_back(pos, rng.rational(pmax, qmax));
    }
    return Vector::from_entries(std::move(entries));
}

// sum k_i^2 <= s^2 with s = ceil(sqrt(sum k_i^2)); exact
inline std::vector<Rational> unit_ball_coeffs(Rng& rng, size_t count) {
    std::vector<long> ks(count);
    Integer q(0);
    for (auto& k : ks) {
        k = rng.range(-8, 8);
        if (k == 0) k = 1;
        q += Integer(k) * Integer(k);
    }
    Integer s;
    mpz_sqrt(s.get_mpz_t(), q.get_mpz_t());
    if (s * s < q) s += 1;
    std::vector<Rational> out;
    for (long k : ks) {
        Rational a = Rational(Integer(k)) / Rational(s);
        a.canonicalize();
        out.push_back(a);
    }
    return out;
}

inline FPtr random_g0_tree(Rng& rng, const ParameterSystem& p, int depth, long lo, long hi);

inline FPtr random_weighted_tree(Rng& rng, const ParameterSystem& p, int depth, long lo, long hi,
                                 long weight_index, bool aux_arity = false) {
    long span = hi - lo + 1;
    Integer cap = p.n(weight_index);
    if (aux_arity) cap *= 2;
    long max_d = cap > 4 ? 4 : static_cast<long>(cap.get_si());
    if (max_d > span) max_d = span;
    if (max_d < 1) max_d = 1;
    long d = rng.range(1, max_d);
    std::vector<FPtr> children;
    long chunk = span / d;
    for (long i = 0; i < d; ++i) {
        long clo = lo + i * chunk;
        long chi = i + 1 == d ? hi : clo + chunk - 1;
        FPtr ch = depth <= 0 ? mk_leaf(rng.coin() ? 1 : -1, rng.range(clo, chi))
                             : random_g0_tree(rng, p, depth - 1, clo, chi);
        if (ch->kind == NodeKind::zero) ch = mk_leaf(1, clo);
        children.push_back(ch);
    }
    return mk_weighted(weight_index, std::move(children));
}

inline FPtr random_g0_tree(Rng& rng, const ParameterSystem& p, int depth, long lo, long hi) {
    if (hi < lo) return mk_leaf(1, lo);
    long kind = depth <= 0 ? 0 : rng.range(0, 9);
    if (kind <= 3) {  // leaf
        return mk_leaf(rng.coin() ? 1 : -1, rng.range(lo, hi));
    }
    if (kind <= 7) {  // weighted
        long j = rng.range(1, 4);
        return random_weighted_tree(rng, p, depth - 1, lo, hi, 2 * j);
    }
    // elltwo over weighted children with distinct weights
    long k = rng.range(1, 3);
    std::vector<long> js;
    for (long j = 1; js.size() < static_cast<size_t>(k) && j <= 6; ++j)
        if (rng.coin() || 6 - j <= k - static_cast<long>(js.size())) js.push_back(j);
    auto coeffs = unit_ball_coeffs(rng, js.size());
    std::vector<ETerm> terms;
    for (size_t i = 0; i < js.size(); ++i) {
        FPtr child = random_weighted_tree(rng, p, depth - 1, lo, hi, 2 * js[i]);
        terms.push_back({coeffs[i], child});
    }
    return mk_elltwo(std::move(terms));
}

// W0 member: a G0 tree, or a restricted signed special from the registry
inline FPtr random_w0_tree(Rng& rng, const ParameterSystem& p, const SigmaRegistry& reg, int depth,
                           long lo, long hi) {
    auto ids = reg.sequence_ids();
    if (!ids.empty() && rng.range(0, 3) == 0) {
        const std::string& id = ids[static_cast<size_t>(rng.below(ids.size()))];
        const SpecialSequence* seq = reg.find_sequence(id);
        Interval full = Interval::empty();
        for (const auto& c : seq->components) full = full.join(range_of(c, p, &reg));
        long a = rng.range(full.lo, full.hi);
        long b = rng.range(a, full.hi);
        return mk_special(id, seq->j, rng.coin() ? 1 : -1, Interval{a, b});
    }
    return random_g0_tree(rng, p, depth, lo, hi);
}

// F_{j0} member (aux grammar); set prime for F'_{j0} odd tops
inline FPtr random_aux_tree(Rng& rng, const ParameterSystem& p, long j0, bool prime, int depth,
                            long lo, long hi) {
    if (prime && rng.range(0, 3) == 0) {
        // odd-weight top over successive F_{j0} children
        long j = rng.range(1, 3);
        long d = rng.range(1, 3);
        long span = hi - lo + 1;
        if (d > span) d = span;
        std::vector<FPtr> children;
        long chunk = span / d;
        for (long i = 0; i < d; ++i) {
            long clo = lo + i * chunk;
            long chi = i + 1 == d ? hi : clo + chunk - 1;
            children.push_back(random_aux_tree(rng, p, j0, false, depth - 1, clo, chi));
        }
        return mk_weighted(2 * j + 1, std::move(children));
    }
    long kind = depth <= 0 ? 0 : rng.range(0, 9);
    if (kind <= 3) {  // cset leaf
        Integer cap = p.n(j0 - 1);
        long maxf = cap > 3 ? 3 : static_cast<long>(cap.get_si());
        long span = hi - lo + 1;
        if (maxf > span) maxf = span;
        long f = rng.range(1, std::max(1L, maxf));
        std::vector<CTerm> terms;
        std::vector<long> used;
        for (long i = 0; i < f; ++i) {
            long pos;
            do {
                pos = rng.range(lo, hi);
            } while (std::find(used.begin(), used.end(), pos) != used.end());
            used.push_back(pos);
            terms.push_back({rng.coin() ? 1 : -1, pos});
        }
        return mk_cset(std::move(terms));
    }
    if (kind <= 7) {  // weighted with doubled arity cap
        long j = rng.range(1, 4);
        long span = hi - lo + 1;
        long d = rng.range(1, std::min(span, 4L));
        std::vector<FPtr> children;
        long chunk = span / d;
        for (long i = 0; i < d; ++i) {
            long clo = lo + i * chunk;
            long chi = i + 1 == d ? hi : clo + chunk - 1;
            children.push_back(random_aux_tree(rng, p, j0, false, depth - 1, clo, chi));
        }
        return mk_weighted(2 * j, std::move(children));
    }
    // mixed combination: weighted children on the left half, basis terms on
    // fresh indices in the right half (disjoint from every weighted support)
    long kw = rng.range(1, 2);
    long mid = lo + (hi - lo) / 2;
    long kb = std::min(rng.range(1, 2), hi - mid);
    if (kb < 0) kb = 0;
    auto coeffs = unit_ball_coeffs(rng, static_cast<size_t>(kw + kb));
    std::vector<ETerm> terms;
    std::vector<long> jsv;
    for (long i = 0; i < kw; ++i) {
        long j;
        do {
            j = rng.range(1, 4);
        } while (std::find(jsv.begin(), jsv.end(), j) != jsv.end());
        jsv.push_back(j);
        terms.push_back({coeffs[static_cast<size_t>(i)],
                         random_weighted_tree(rng, p, depth - 1, lo, mid, 2 * j, true)});
    }
    for (long i = 0; i < kb; ++i)
        terms.push_back({coeffs[static_cast<size_t>(kw + i)], mk_leaf(1, mid + 1 + i)});
    return mk_elltwo(std::move(terms));
}

} // namespace normset

#endif
