#include "normset/norm.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace normset {

namespace {

// Bottom-up interval DP over support-index intervals. For an interval E the
// norm satisfies
//   v(E) = max( linf(E), (sum_j b_j(E)^2)^(1/2) ),
//   b_j(E) = (1/m_{2j}) * max over partitions of E into <= n_{2j}
//            successive parts of sum v(part),
// where covering partitions suffice (1-unconditionality) and, for |E| >= 2,
// the one-part family is dominated by any two-part split (v is subadditive),
// so every cell only needs strictly smaller cells: one pass, no fixed-point
// iteration.
class NormEngine {
  public:
    NormEngine(const Vector& x, const ParameterSystem& p, Rational tol)
        : x_(x), p_(p), tol_(std::move(tol)) {
        if (p_.mode() == ParamMode::paper)
            throw std::domain_error("norm computation requires surrogate parameters");
        const auto& es = x_.entries();
        s_ = static_cast<long>(es.size());
        pos_.reserve(es.size());
        absval_.reserve(es.size());
        for (const auto& [n, c] : es) {
            pos_.push_back(n);
            absval_.push_back(rat_abs(c));
        }
        pick_weight_window();
    }

    void run() {
        if (s_ == 0) return;
        lo_.assign(static_cast<size_t>(s_ * s_), Dyadic());
        hi_.assign(static_cast<size_t>(s_ * s_), Dyadic());
        for (long len = 1; len <= s_; ++len) {
            for (long a = 0; a + len <= s_; ++a) {
                long b = a + len - 1;
                compute_cell(a, b);
                ++cells_;
            }
        }
    }

    NormCertificate certificate() {
        NormCertificate cert;
        cert.weight_window = jmax_;
        cert.intervals = cells_;
        if (s_ == 0) {
            cert.witness = mk_zero();
            return cert;
        }
        cert.tail_bound = p_.weight_tail_bound(l1(0, s_ - 1), jmax_);
        auto [w, v] = witness(0, s_ - 1);
        cert.witness = w;
        cert.lo = v;
        Rational hi_rat = hi_at(0, s_ - 1).to_rational();
        Rational l1_full = l1(0, s_ - 1);
        cert.hi = hi_rat < l1_full ? hi_rat : l1_full;
        if (cert.hi < cert.lo) cert.hi = cert.lo;  // rounding slack, keep valid
        if (cert.hi - cert.lo > tol_)
            throw std::runtime_error("norm enclosure width " +
                                     rational_to_string(cert.hi - cert.lo) +
                                     " exceeds the requested tolerance");
        return cert;
    }

    WeightedBest weighted_best(long j) {
        WeightedBest out;
        if (s_ == 0) {
            out.witness = mk_zero();
            return out;
        }
        long a = 0, b = s_ - 1;
        if (s_ == 1) {
            // only the one-child family exists
            auto [w, v] = witness(a, b);
            out.witness = mk_weighted(2 * j, {w});
            out.lo = v / Rational(p_.m(2 * j));
            out.hi = hi_at(a, b).div_q(Rational(p_.m(2 * j)), MPFR_RNDU).to_rational();
            if (out.hi < out.lo) out.hi = out.lo;
            return out;
        }
        ensure_partition_dp(a, b);
        long cap = cap_for(2 * j, b - a + 1);
        auto parts = best_partition(a, b, cap);
        std::vector<FPtr> children;
        Rational sum(0);
        for (const auto& [pa, pb] : parts) {
            auto [w, v] = witness(pa, pb);
            children.push_back(w);
            sum += v;
        }
        Rational m(p_.m(2 * j));
        // one-child family on the full interval competes with the partition
        auto [wfull, vfull] = witness(a, b);
        if (vfull > sum) {
            out.witness = mk_weighted(2 * j, {wfull});
            out.lo = vfull / m;
        } else {
            out.witness = mk_weighted(2 * j, std::move(children));
            out.lo = sum / m;
        }
        Dyadic qhi = partition_best_hi(a, b, cap);
        const Dyadic& uhi = hi_at(a, b);
        if (qhi.cmp(uhi) < 0) qhi = uhi;
        out.hi = div_up(qhi, m).to_rational();
        if (out.hi < out.lo) out.hi = out.lo;
        return out;
    }

    const Rational& tol() const { return tol_; }
    long weight_window() const { return jmax_; }
    long cells() const { return cells_; }

    Rational l1(long a, long b) const {
        Rational s(0);
        for (long i = a; i <= b; ++i) s += absval_[static_cast<size_t>(i)];
        return s;
    }

  private:
    static Dyadic div_up(const Dyadic& d, const Rational& q) { return d.div_q(q, MPFR_RNDU); }

    Dyadic& lo_at(long a, long b) { return lo_[static_cast<size_t>(a * s_ + b)]; }
    Dyadic& hi_at(long a, long b) { return hi_[static_cast<size_t>(a * s_ + b)]; }

    Rational linf(long a, long b) const {
        Rational s(0);
        for (long i = a; i <= b; ++i)
            if (absval_[static_cast<size_t>(i)] > s) s = absval_[static_cast<size_t>(i)];
        return s;
    }

    void pick_weight_window() {
        // tail below tol/4; a finite stored range caps the window exactly
        long stored = p_.stored_limit();
        Rational budget = tol_ / 4;
        Rational l1v = x_.l1();
        long J = 1;
        for (;; ++J) {
            if (stored > 0 && 2 * J >= stored) {
                J = stored / 2;
                break;
            }
            if (p_.weight_tail_bound(l1v, J) < budget) break;
            if (J > 100'000) throw std::runtime_error("weight window not reachable for tolerance");
        }
        jmax_ = std::max(J, 1L);
    }

    long cap_for(long weight_index, long len) const {
        Integer cap = p_.n(weight_index);
        if (cap > len) return len;
        return static_cast<long>(cap.get_si());
    }

    void compute_cell(long a, long b) {
        long len = b - a + 1;
        Rational A = linf(a, b);
        if (len == 1) {
            lo_at(a, b) = Dyadic(A, MPFR_RNDD);
            hi_at(a, b) = Dyadic(A, MPFR_RNDU);
            return;
        }
        // per-part-count partition bests over proper subintervals
        auto [best_lo, best_hi] = partition_tables(a, b);
        Dyadic Slo = Dyadic::zero(), Shi = Dyadic::zero();
        for (long j = 1; j <= jmax_; ++j) {
            long cap = cap_for(2 * j, len);
            Rational m(p_.m(2 * j));
            Dyadic qlo = prefix_best(best_lo, cap);
            Dyadic qhi = prefix_best(best_hi, cap);
            if (qlo.sgn() > 0) {
                Dyadic bl = qlo.div_q(m, MPFR_RNDD);
                Slo = Slo.add(bl.sqr(MPFR_RNDD), MPFR_RNDD);
            }
            Dyadic bh = qhi.div_q(m, MPFR_RNDU);
            Shi = Shi.add(bh.sqr(MPFR_RNDU), MPFR_RNDU);
        }
        Rational tail_sq = l1(a, b) * l1(a, b) * p_.tail_sum_sq(jmax_);
        Shi = Shi.add(Dyadic(tail_sq, MPFR_RNDU), MPFR_RNDU);
        Dyadic ell2_lo = Slo.sqrt(MPFR_RNDD);
        Dyadic ell2_hi = Shi.sqrt(MPFR_RNDU);
        Dyadic alo(A, MPFR_RNDD), ahi(A, MPFR_RNDU);
        lo_at(a, b) = ell2_lo.cmp(alo) > 0 ? ell2_lo : alo;
        Dyadic h = ell2_hi.cmp(ahi) > 0 ? ell2_hi : ahi;
        Dyadic l1d(l1(a, b), MPFR_RNDU);
        hi_at(a, b) = h.cmp(l1d) > 0 ? l1d : h;
    }

    // dp[k-2] = best sum over exactly k >= 2 proper parts covering [a,b]
    std::pair<std::vector<Dyadic>, std::vector<Dyadic>> partition_tables(long a, long b) {
        long len = b - a + 1;
        auto run = [&](bool upper) {
            // t[i][k]: best over [a .. a+i] with exactly k parts
            const Dyadic none;  // sentinel via flag array
            std::vector<std::vector<Dyadic>> t(static_cast<size_t>(len));
            std::vector<std::vector<bool>> ok(static_cast<size_t>(len));
            for (long i = 0; i < len; ++i) {
                t[static_cast<size_t>(i)].assign(static_cast<size_t>(len + 1), none);
                ok[static_cast<size_t>(i)].assign(static_cast<size_t>(len + 1), false);
            }
            mpfr_rnd_t rnd = upper ? MPFR_RNDU : MPFR_RNDD;
            for (long i = 0; i < len; ++i) {
                for (long k = 1; k <= i + 1; ++k) {
                    for (long t0 = k - 1; t0 <= i; ++t0) {
                        if (t0 == 0 && i == len - 1) continue;  // full interval is not a part
                        const Dyadic& pv = upper ? hi_at(a + t0, a + i) : lo_at(a + t0, a + i);
                        if (k == 1) {
                            if (t0 != 0) continue;
                            if (!ok[static_cast<size_t>(i)][1] ||
                                t[static_cast<size_t>(i)][1].cmp(pv) < 0) {
                                t[static_cast<size_t>(i)][1] = pv;
                                ok[static_cast<size_t>(i)][1] = true;
                            }
                        } else {
                            if (t0 == 0 || !ok[static_cast<size_t>(t0 - 1)][static_cast<size_t>(k - 1)])
                                continue;
                            Dyadic cand =
                                t[static_cast<size_t>(t0 - 1)][static_cast<size_t>(k - 1)].add(pv, rnd);
                            if (!ok[static_cast<size_t>(i)][static_cast<size_t>(k)] ||
                                t[static_cast<size_t>(i)][static_cast<size_t>(k)].cmp(cand) < 0) {
                                t[static_cast<size_t>(i)][static_cast<size_t>(k)] = cand;
                                ok[static_cast<size_t>(i)][static_cast<size_t>(k)] = true;
                            }
                        }
                    }
                }
            }
            std::vector<Dyadic> best;
            for (long k = 2; k <= len; ++k) {
                if (ok[static_cast<size_t>(len - 1)][static_cast<size_t>(k)])
                    best.push_back(t[static_cast<size_t>(len - 1)][static_cast<size_t>(k)]);
                else
                    best.push_back(Dyadic());  // unreachable counts as 0
            }
            return best;
        };
        return {run(false), run(true)};
    }

    static Dyadic prefix_best(const std::vector<Dyadic>& best_by_parts, long cap) {
        Dyadic out;  // zero
        long count = std::min<long>(static_cast<long>(best_by_parts.size()), cap - 1);
        for (long i = 0; i < count; ++i)
            if (out.cmp(best_by_parts[static_cast<size_t>(i)]) < 0)
                out = best_by_parts[static_cast<size_t>(i)];
        return out;
    }

    Dyadic partition_best_hi(long a, long b, long cap) {
        auto [lo, hi] = partition_tables(a, b);
        (void)lo;
        return prefix_best(hi, cap);
    }

    // --- witness construction (lower bounds) ---

    struct PartitionDP {
        // parent[i][k]: start of the last part for the best k-split of [a..a+i]
        std::vector<std::vector<long>> parent;
        std::vector<std::vector<Dyadic>> val;
        std::vector<std::vector<bool>> ok;
    };

    void ensure_partition_dp(long a, long b) {
        auto key = std::make_pair(a, b);
        if (pdp_.count(key)) return;
        long len = b - a + 1;
        PartitionDP d;
        d.parent.assign(static_cast<size_t>(len), std::vector<long>(static_cast<size_t>(len + 1), -1));
        d.val.assign(static_cast<size_t>(len), std::vector<Dyadic>(static_cast<size_t>(len + 1)));
        d.ok.assign(static_cast<size_t>(len), std::vector<bool>(static_cast<size_t>(len + 1), false));
        for (long i = 0; i < len; ++i) {
            for (long k = 1; k <= i + 1; ++k) {
                for (long t0 = k - 1; t0 <= i; ++t0) {
                    if (t0 == 0 && i == len - 1) continue;
                    if (k == 1 && t0 != 0) continue;
                    if (k > 1 && (t0 == 0 || !d.ok[static_cast<size_t>(t0 - 1)][static_cast<size_t>(k - 1)]))
                        continue;
                    const Dyadic& pv = lo_at(a + t0, a + i);
                    Dyadic cand = k == 1 ? pv
                                         : d.val[static_cast<size_t>(t0 - 1)][static_cast<size_t>(k - 1)]
                                               .add(pv, MPFR_RNDD);
                    if (!d.ok[static_cast<size_t>(i)][static_cast<size_t>(k)] ||
                        d.val[static_cast<size_t>(i)][static_cast<size_t>(k)].cmp(cand) < 0) {
                        d.val[static_cast<size_t>(i)][static_cast<size_t>(k)] = cand;
                        d.ok[static_cast<size_t>(i)][static_cast<size_t>(k)] = true;
                        d.parent[static_cast<size_t>(i)][static_cast<size_t>(k)] = t0;
                    }
                }
            }
        }
        pdp_.emplace(key, std::move(d));
    }

    // parts of the best multi-partition of [a,b] with <= cap parts
    std::vector<std::pair<long, long>> best_partition(long a, long b, long cap) {
        ensure_partition_dp(a, b);
        const PartitionDP& d = pdp_.at(std::make_pair(a, b));
        long len = b - a + 1;
        long bestk = -1;
        for (long k = 2; k <= std::min(cap, len); ++k) {
            if (!d.ok[static_cast<size_t>(len - 1)][static_cast<size_t>(k)]) continue;
            if (bestk < 0 || d.val[static_cast<size_t>(len - 1)][static_cast<size_t>(bestk)].cmp(
                                 d.val[static_cast<size_t>(len - 1)][static_cast<size_t>(k)]) < 0)
                bestk = k;
        }
        std::vector<std::pair<long, long>> parts;
        if (bestk < 0) return parts;
        long i = len - 1, k = bestk;
        while (k >= 1) {
            long t0 = d.parent[static_cast<size_t>(i)][static_cast<size_t>(k)];
            parts.emplace_back(a + t0, a + i);
            i = t0 - 1;
            --k;
        }
        std::reverse(parts.begin(), parts.end());
        return parts;
    }

    // witness tree and its exact value on the interval
    std::pair<FPtr, Rational> witness(long a, long b) {
        auto key = std::make_pair(a, b);
        if (auto it = wit_.find(key); it != wit_.end()) return it->second;
        long len = b - a + 1;
        // leaf option
        long argmax = a;
        for (long i = a; i <= b; ++i)
            if (absval_[static_cast<size_t>(i)] > absval_[static_cast<size_t>(argmax)]) argmax = i;
        const Rational& coord = x_.entries()[static_cast<size_t>(argmax)].second;
        FPtr best_tree = mk_leaf(coord >= 0 ? 1 : -1, pos_[static_cast<size_t>(argmax)]);
        Rational best_val = rat_abs(coord);
        if (len >= 2) {
            // weighted witnesses per weight, combined through an l2 node
            std::vector<ETerm> terms;
            std::vector<Rational> vals;
            Rational T(0);
            for (long j = 1; j <= jmax_; ++j) {
                long cap = cap_for(2 * j, len);
                auto parts = best_partition(a, b, cap);
                if (parts.empty()) continue;
                std::vector<FPtr> children;
                Rational sum(0);
                for (const auto& [pa, pb] : parts) {
                    auto [w, v] = witness(pa, pb);
                    children.push_back(w);
                    sum += v;
                }
                if (sum <= 0) continue;
                Rational val = sum / Rational(p_.m(2 * j));
                terms.push_back({Rational(0), mk_weighted(2 * j, std::move(children))});
                vals.push_back(val);
                T += val * val;
                if (val > best_val) {  // a single weighted tree may already win
                    best_tree = terms.back().child;
                    best_val = val;
                }
            }
            if (T > 0) {
                // coefficients proportional to the attained values
                Dyadic Tup(T, MPFR_RNDU);
                Dyadic r = Dyadic(Rational(1), MPFR_RNDD).div(Tup.sqrt(MPFR_RNDU), MPFR_RNDD);
                Rational rr = r.to_rational();
                while (rr * rr * T > 1) rr *= Rational(4'294'967'295L, 4'294'967'296L);
                Rational ell2_val = rr * T;
                if (ell2_val > best_val) {
                    for (size_t i = 0; i < terms.size(); ++i) terms[i].a = rr * vals[i];
                    std::erase_if(terms, [](const ETerm& t) { return t.a == 0; });
                    best_tree = mk_elltwo(std::move(terms));
                    best_val = ell2_val;
                }
            }
        }
        auto out = std::make_pair(best_tree, best_val);
        wit_[key] = out;
        return out;
    }

    const Vector& x_;
    const ParameterSystem& p_;
    Rational tol_;
    long s_ = 0;
    long jmax_ = 1;
    long cells_ = 0;
    std::vector<long> pos_;
    std::vector<Rational> absval_;
    std::vector<Dyadic> lo_, hi_;
    std::map<std::pair<long, long>, PartitionDP> pdp_;
    std::map<std::pair<long, long>, std::pair<FPtr, Rational>> wit_;
};

} // namespace

std::pair<Rational, Rational> trivial_bounds(const Vector& x) { return {x.linf(), x.l1()}; }

NormCertificate norm_G0(const Vector& x, const ParameterSystem& p, const Rational& tol) {
    NormEngine e(x, p, tol);
    e.run();
    return e.certificate();
}

WeightedBest best_weighted_value(const Vector& x, long j, const ParameterSystem& p,
                                 const Rational& tol) {
    if (j < 1) throw std::domain_error("weight block index must be >= 1");
    NormEngine e(x, p, tol);
    e.run();
    return e.weighted_best(j);
}

SpecialSweep sweep_specials(const Vector& x, const ParameterSystem& p, const SigmaRegistry& reg) {
    SpecialSweep out;
    if (x.is_zero()) return out;
    const auto& entries = x.entries();
    long s = static_cast<long>(entries.size());
    for (const auto& id : reg.sequence_ids()) {
        const SpecialSequence* seq = reg.find_sequence(id);
        Rational m(p.m(2 * seq->j + 1));
        for (long a = 0; a < s; ++a) {
            for (long b = a; b < s; ++b) {
                Interval E{entries[static_cast<size_t>(a)].first,
                           entries[static_cast<size_t>(b)].first};
                Vector xr = x.restrict_interval(E);
                Rational sum(0);
                for (const auto& comp : seq->components) sum += evaluate(comp, xr, p, &reg);
                Rational v = rat_abs(sum) / m;
                if (v > out.best) {
                    out.best = v;
                    out.seq_id = id;
                    out.window = E;
                    out.sign = sum >= 0 ? 1 : -1;
                }
            }
        }
    }
    return out;
}

NormCertificate norm_W0(const Vector& x, const ParameterSystem& p, const SigmaRegistry& reg,
                        const Rational& tol) {
    NormCertificate cert = norm_G0(x, p, tol);
    cert.registry_relative = true;
    SpecialSweep sw = sweep_specials(x, p, reg);
    if (sw.best > cert.lo) {
        cert.lo = sw.best;
        cert.witness = mk_special(sw.seq_id, reg.find_sequence(sw.seq_id)->j, sw.sign, sw.window);
        cert.attaining_special = sw.seq_id;
        if (cert.hi < cert.lo) cert.hi = cert.lo;  // special exceeded the G0 upper bound
    }
    return cert;
}

Rational norm_W0_upper(const Vector& x, const ParameterSystem& p, const NormCertificate& g0_cert) {
    Rational upper = g0_cert.hi;
    if (p.has_index(3)) {
        Rational sp = x.l1() / Rational(p.m(3));
        if (sp > upper) upper = sp;
    }
    return upper;
}

} // namespace normset
