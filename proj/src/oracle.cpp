#include "normset/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace normset {

namespace {

struct Best {
    Rational value = Rational(0);
    FPtr tree;
};

class Oracle {
  public:
    Oracle(const Vector& x, const ParameterSystem& p, const OracleOptions& opt)
        : x_(x), p_(p), opt_(opt) {
        if (p_.mode() == ParamMode::paper)
            throw std::domain_error("oracle requires surrogate parameters");
        for (const auto& [n, c] : x_.entries()) {
            pos_.push_back(n);
            coord_.push_back(c);
        }
        s_ = static_cast<long>(pos_.size());
        grid_ = 1L << opt_.grid_bits;
        long limit = p_.stored_limit();
        jwin_ = opt_.weight_window;
        if (limit > 0 && 2 * jwin_ > limit) jwin_ = limit / 2;
    }

    OracleResult run() {
        OracleResult out;
        if (s_ == 0) {
            out.witness = mk_zero();
            return out;
        }
        Best b = best_any(0, s_ - 1, opt_.depth);
        out.value = b.value;
        out.witness = b.tree;
        out.budget_exhausted = exhausted_;
        out.nodes = nodes_;
        return out;
    }

  private:
    bool tick() {
        if (++nodes_ > opt_.node_budget) exhausted_ = true;
        return !exhausted_;
    }

    Best leaf_best(long a, long b) {
        long arg = a;
        for (long i = a; i <= b; ++i)
            if (rat_abs(coord_[static_cast<size_t>(i)]) > rat_abs(coord_[static_cast<size_t>(arg)]))
                arg = i;
        Best out;
        out.value = rat_abs(coord_[static_cast<size_t>(arg)]);
        out.tree = mk_leaf(coord_[static_cast<size_t>(arg)] >= 0 ? 1 : -1,
                           pos_[static_cast<size_t>(arg)]);
        return out;
    }

    Best best_any(long a, long b, int depth) {
        auto key = std::make_tuple(a, b, depth);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Best out = leaf_best(a, b);
        if (depth >= 1 && tick()) {
            for (long j = 1; j <= jwin_; ++j) {
                Best w = best_weighted(a, b, depth, j);
                if (w.value > out.value) out = w;
            }
            Best e = best_elltwo(a, b, depth);
            if (e.value > out.value) out = e;
        }
        memo_[key] = out;
        return out;
    }

    // gapped successive families of <= n_{2j} parts inside [a,b]
    Best best_weighted(long a, long b, int depth, long j) {
        auto key = std::make_tuple(a, b, depth, j);
        if (auto it = wmemo_.find(key); it != wmemo_.end()) return it->second;
        long len = b - a + 1;
        long cap = len;
        {
            Integer c = p_.n(2 * j);
            if (c < len) cap = static_cast<long>(c.get_si());
        }
        // dp over support positions: f[i][k] = best sum of k parts inside [a, a+i-1]
        long L = len + 1;
        std::vector<std::vector<Rational>> f(static_cast<size_t>(L),
                                             std::vector<Rational>(static_cast<size_t>(cap + 1),
                                                                   Rational(0)));
        std::vector<std::vector<std::pair<long, long>>> choice(
            static_cast<size_t>(L),
            std::vector<std::pair<long, long>>(static_cast<size_t>(cap + 1), {-1, -1}));
        for (long i = 1; i <= len; ++i) {
            for (long k = 0; k <= cap; ++k) {
                f[static_cast<size_t>(i)][static_cast<size_t>(k)] =
                    f[static_cast<size_t>(i - 1)][static_cast<size_t>(k)];
                choice[static_cast<size_t>(i)][static_cast<size_t>(k)] = {-2, -2};  // skip marker
                if (k == 0) continue;
                for (long t = 0; t < i; ++t) {
                    if (!tick()) break;
                    Best part = best_any(a + t, a + i - 1, depth - 1);
                    Rational cand = f[static_cast<size_t>(t)][static_cast<size_t>(k - 1)] + part.value;
                    if (cand > f[static_cast<size_t>(i)][static_cast<size_t>(k)]) {
                        f[static_cast<size_t>(i)][static_cast<size_t>(k)] = cand;
                        choice[static_cast<size_t>(i)][static_cast<size_t>(k)] = {t, i - 1};
                    }
                }
            }
        }
        long bestk = 1;
        for (long k = 1; k <= cap; ++k)
            if (f[static_cast<size_t>(len)][static_cast<size_t>(k)] >
                f[static_cast<size_t>(len)][static_cast<size_t>(bestk)])
                bestk = k;
        Best out;
        Rational total = f[static_cast<size_t>(len)][static_cast<size_t>(bestk)];
        if (total <= 0) {
            wmemo_[key] = out;  // zero; no useful weighted tree here
            return out;
        }
        // reconstruct parts
        std::vector<std::pair<long, long>> parts;
        long i = len, k = bestk;
        while (i > 0 && k > 0) {
            auto [t, e] = choice[static_cast<size_t>(i)][static_cast<size_t>(k)];
            if (t == -2) {
                --i;
                continue;
            }
            parts.emplace_back(a + t, a + e);
            i = t;
            --k;
        }
        std::reverse(parts.begin(), parts.end());
        std::vector<FPtr> children;
        for (auto [pa, pb] : parts) children.push_back(best_any(pa, pb, depth - 1).tree);
        out.value = total / Rational(p_.m(2 * j));
        out.tree = mk_weighted(2 * j, std::move(children));
        wmemo_[key] = out;
        return out;
    }

    // exact branch-and-bound over the coefficient grid
    Best best_elltwo(long a, long b, int depth) {
        std::vector<Best> w;
        std::vector<long> js;
        for (long j = 1; j <= jwin_; ++j) {
            Best bw = best_weighted(a, b, depth - 1, j);
            if (bw.value > 0 && bw.tree) {
                w.push_back(bw);
                js.push_back(j);
            }
        }
        if (w.empty()) return {};
        // sort by value descending for pruning power
        std::vector<size_t> order(w.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t l, size_t r) { return w[l].value > w[r].value; });
        std::vector<Rational> vals, suffix_sq;
        for (size_t i : order) vals.push_back(w[i].value);
        suffix_sq.assign(vals.size() + 1, Rational(0));
        for (size_t i = vals.size(); i-- > 0;)
            suffix_sq[i] = suffix_sq[i + 1] + vals[i] * vals[i];

        const long B0 = grid_ * grid_;
        std::vector<long> pick(vals.size(), 0), best_pick(vals.size(), 0);
        Rational best(0);
        // depth-first with Cauchy-Schwarz bound:
        // value + sqrt(B * suffix_sq)/grid <= best  =>  prune
        auto bound_ok = [&](const Rational& acc, long B, size_t idx) {
            if (B <= 0 || idx >= vals.size()) return false;  // nothing to add
            Rational gap = best - acc;
            if (gap < 0) return true;
            return gap * gap * Rational(grid_) * Rational(grid_) < Rational(B) * suffix_sq[idx];
        };
        std::function<void(size_t, long, Rational)> go = [&](size_t idx, long B, Rational acc) {
            if (!tick()) return;
            if (acc > best) {
                best = acc;
                best_pick = pick;
            }
            if (idx >= vals.size() || B <= 0) return;
            if (!bound_ok(acc, B, idx)) return;
            long kmax = grid_;
            while (kmax * kmax > B) --kmax;
            for (long k = kmax; k >= 0; --k) {
                pick[idx] = k;
                go(idx + 1, B - k * k, acc + Rational(k, grid_) * vals[idx]);
            }
            pick[idx] = 0;
        };
        go(0, B0, Rational(0));
        Best out;
        out.value = best;
        if (best > 0) {
            std::vector<ETerm> terms;
            for (size_t i = 0; i < vals.size(); ++i) {
                if (best_pick[i] == 0) continue;
                Rational coeff(best_pick[i], grid_);
                coeff.canonicalize();
                terms.push_back({coeff, w[order[i]].tree});
            }
            out.tree = mk_elltwo(std::move(terms));
        }
        return out;
    }

    const Vector& x_;
    const ParameterSystem& p_;
    OracleOptions opt_;
    long s_ = 0;
    long grid_ = 64;
    long jwin_ = 8;
    long nodes_ = 0;
    bool exhausted_ = false;
    std::vector<long> pos_;
    std::vector<Rational> coord_;
    std::map<std::tuple<long, long, int>, Best> memo_;
    std::map<std::tuple<long, long, int, long>, Best> wmemo_;
};

} // namespace

OracleResult norm_G0_oracle(const Vector& x, const ParameterSystem& p, const OracleOptions& opt) {
    Oracle o(x, p, opt);
    return o.run();
}

} // namespace normset
