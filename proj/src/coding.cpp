#include "normset/coding.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

#include "normset/json_io.hpp"

namespace normset {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* d = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<size_t>(i)] = d[v & 0xf];
        v >>= 4;
    }
    return s;
}

} // namespace

SigmaRegistry::SigmaRegistry(ParameterSystem p) : params_(std::move(p)) {}

std::string SigmaRegistry::prefix_key(const std::vector<FPtr>& prefix) {
    std::ostringstream os;
    for (const auto& f : prefix) os << canonical_encoding(f) << ";";
    return os.str();
}

ValidationResult SigmaRegistry::check_prefix(const std::vector<FPtr>& prefix) const {
    if (prefix.empty()) return ValidationResult::fail("empty prefix");
    long prev_hi = 0;
    for (size_t i = 0; i < prefix.size(); ++i) {
        if (auto r = validate(prefix[i], FamilyTag::g0(), params_, this); !r.ok)
            return ValidationResult::fail("component " + std::to_string(i + 1) + ": " + r.reason);
        Interval rg = range_of(prefix[i], params_, this);
        if (rg.is_empty())
            return ValidationResult::fail("component " + std::to_string(i + 1) + " is zero");
        if (i > 0 && rg.lo <= prev_hi)
            return ValidationResult::fail("components not successive at position " +
                                          std::to_string(i + 1));
        prev_hi = rg.hi;
    }
    return ValidationResult::pass();
}

Rational SigmaRegistry::growth_bound(const std::vector<FPtr>& prefix) const {
    Rational max_inv(0);
    long maxsupp_last = 0;
    for (const auto& f : prefix) {
        auto supp = support_of(f, params_, this);
        for (long pos : supp) {
            Rational c = rat_abs(evaluate(f, Vector::basis(pos), params_, this));
            Rational inv = Rational(1) / c;
            if (inv > max_inv) max_inv = inv;
        }
        if (!supp.empty()) maxsupp_last = supp.back();
    }
    return max_inv * Rational(maxsupp_last);
}

long SigmaRegistry::assign_locked(const std::vector<FPtr>& prefix, const std::string& key) {
    Rational bound = growth_bound(prefix);
    long limit = params_.stored_limit();
    for (long k = 1;; ++k) {
        long j = params_.omega2().at(k);
        long value = 2 * j;
        if (limit > 0 && value > limit)
            throw std::invalid_argument("no admissible unused weight within the stored range");
        if (used_values_.count(value)) continue;
        if (Rational(params_.m(value)) > bound) {
            assignments_.push_back({prefix, key, value});
            by_key_[key] = assignments_.size() - 1;
            used_values_[value] = key;
            return value;
        }
        if (k > 1'000'000) throw std::runtime_error("sigma search exhausted");
    }
}

long SigmaRegistry::sigma_assign(const std::vector<FPtr>& prefix) {
    if (auto r = check_prefix(prefix); !r.ok)
        throw std::invalid_argument("prefix not in Q_s: " + r.reason);
    std::string key = prefix_key(prefix);
    std::unique_lock lock(*mu_);
    if (auto it = by_key_.find(key); it != by_key_.end()) return assignments_[it->second].value;
    return assign_locked(prefix, key);
}

std::optional<long> SigmaRegistry::sigma_lookup(const std::vector<FPtr>& prefix) const {
    std::shared_lock lock(*mu_);
    auto it = by_key_.find(prefix_key(prefix));
    if (it == by_key_.end()) return std::nullopt;
    return assignments_[it->second].value;
}

std::string SigmaRegistry::register_sequence(std::vector<FPtr> components, long j) {
    std::unique_lock lock(*mu_);
    std::string id = "seq-" + std::to_string(next_seq_++);
    auto seq = std::make_unique<SpecialSequence>();
    seq->id = id;
    seq->j = j;
    seq->components = std::move(components);
    sequences_[id] = std::move(seq);
    sequence_order_.push_back(id);
    return id;
}

const SpecialSequence* SigmaRegistry::find_sequence(const std::string& id) const {
    std::shared_lock lock(*mu_);
    auto it = sequences_.find(id);
    return it == sequences_.end() ? nullptr : it->second.get();
}

std::vector<std::string> SigmaRegistry::sequence_ids() const {
    std::shared_lock lock(*mu_);
    return sequence_order_;
}

size_t SigmaRegistry::assignment_count() const {
    std::shared_lock lock(*mu_);
    return assignments_.size();
}

size_t SigmaRegistry::journal_position() const {
    std::shared_lock lock(*mu_);
    return assignments_.size() + sequence_order_.size();
}

ValidationResult SigmaRegistry::audit() const {
    std::shared_lock lock(*mu_);
    std::map<long, const std::string*> seen;
    for (const auto& a : assignments_) {
        auto [it, fresh] = seen.emplace(a.value, &a.key);
        if (!fresh && *it->second != a.key)
            return ValidationResult::fail("injectivity violated at value " + std::to_string(a.value));
        if (!params_.omega2().contains(a.value / 2) || a.value % 2 != 0)
            return ValidationResult::fail("value " + std::to_string(a.value) +
                                          " outside {2j : j in Omega2}");
        Rational bound = growth_bound(a.prefix);
        if (!(Rational(params_.m(a.value)) > bound))
            return ValidationResult::fail("growth inequality fails for value " +
                                          std::to_string(a.value));
    }
    return ValidationResult::pass();
}

std::string SigmaRegistry::journal_jsonl() const {
    std::shared_lock lock(*mu_);
    std::ostringstream os;
    // interleave records in write order: assignments then sequences would
    // lose ordering, so tag each record with its global position
    struct Rec {
        size_t pos;
        Json j;
    };
    std::vector<Rec> recs;
    for (size_t i = 0; i < assignments_.size(); ++i) {
        const auto& a = assignments_[i];
        Json pj = Json::array();
        for (const auto& f : a.prefix) pj.push_back(tree_to_json(f));
        recs.push_back({i, Json{{"type", "assign"},
                                {"prefix", pj},
                                {"prefix_hash", hex64(fnv1a(a.key))},
                                {"value", a.value}}});
    }
    for (const auto& id : sequence_order_) {
        const auto& s = *sequences_.at(id);
        Json cj = Json::array();
        for (const auto& f : s.components) cj.push_back(tree_to_json(f));
        recs.push_back({assignments_.size() + recs.size(), Json{{"type", "sequence"},
                                                                {"seq_id", s.id},
                                                                {"j", s.j},
                                                                {"components", cj}}});
    }
    for (const auto& r : recs) os << r.j.dump() << "\n";
    return os.str();
}

SigmaRegistry SigmaRegistry::replay(const std::string& jsonl, ParameterSystem p) {
    SigmaRegistry reg(std::move(p));
    std::istringstream is(jsonl);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        Json j = Json::parse(line);
        std::string type = j.at("type").get<std::string>();
        if (type == "assign") {
            std::vector<FPtr> prefix;
            for (const auto& t : j.at("prefix")) prefix.push_back(tree_from_json(t));
            std::string key = prefix_key(prefix);
            long value = j.at("value").get<long>();
            std::unique_lock lock(*reg.mu_);
            reg.assignments_.push_back({std::move(prefix), key, value});
            reg.by_key_[key] = reg.assignments_.size() - 1;
            reg.used_values_[value] = key;
        } else if (type == "sequence") {
            auto seq = std::make_unique<SpecialSequence>();
            seq->id = j.at("seq_id").get<std::string>();
            seq->j = j.at("j").get<long>();
            for (const auto& t : j.at("components")) seq->components.push_back(tree_from_json(t));
            std::unique_lock lock(*reg.mu_);
            std::string id = seq->id;
            reg.sequence_order_.push_back(id);
            reg.sequences_[id] = std::move(seq);
            // keep next_seq_ ahead of any replayed id
            if (id.rfind("seq-", 0) == 0) {
                long k = std::stol(id.substr(4));
                if (static_cast<size_t>(k) >= reg.next_seq_) reg.next_seq_ = static_cast<size_t>(k) + 1;
            }
        } else {
            throw std::invalid_argument("unknown journal record type '" + type + "'");
        }
    }
    return reg;
}

SpecialSequenceBuildResult build_special_sequence(long j, ComponentFactory& factory,
                                                  SigmaRegistry& reg, long length_budget,
                                                  long start_pos) {
    const ParameterSystem& p = reg.params();
    if (j < 1) throw std::invalid_argument("special sequences need j >= 1");
    Integer len = p.n(2 * j + 1);
    if (len > length_budget)
        throw std::invalid_argument("sequence length n_" + std::to_string(2 * j + 1) + "=" +
                                    len.get_str() + " exceeds the build budget");
    long n = static_cast<long>(len.get_si());

    // first weight: smallest 2j_1 with j_1 in Omega1 and n_{2j+1}^2 < m_{2j_1}
    Integer n_sq = len * len;
    long j1 = 0;
    for (long k = 1;; ++k) {
        long cand = p.omega1().at(k);
        long limit = p.stored_limit();
        if (limit > 0 && 2 * cand > limit)
            throw std::invalid_argument("no first weight with m_{2j_1} > n^2 in stored range");
        if (p.m(2 * cand) > n_sq) {
            j1 = cand;
            break;
        }
    }

    SpecialSequenceBuildResult out;
    out.j = j;
    long pos = start_pos;
    long w = 2 * j1;
    for (long i = 0; i < n; ++i) {
        FPtr f = factory.make(w, pos);
        if (!f || f->kind == NodeKind::zero)
            throw std::runtime_error("factory returned no functional for weight index " +
                                     std::to_string(w));
        auto widx = weight_index_of(f);
        if (!widx || *widx != w)
            throw std::runtime_error("factory returned weight index " +
                                     std::to_string(widx.value_or(0)) + ", wanted " +
                                     std::to_string(w));
        Interval rg = range_of(f, p, &reg);
        if (rg.is_empty() || rg.lo < pos)
            throw std::runtime_error("factory range starts before the required bound");
        out.components.push_back(f);
        out.weight_indices.push_back(w);
        pos = rg.hi + 1;
        if (i + 1 < n) w = reg.sigma_assign(out.components);
    }
    out.id = reg.register_sequence(out.components, j);
    return out;
}

ValidationResult validate_special_sequence(const std::vector<FPtr>& seq, long j,
                                           SigmaRegistry& reg) {
    const ParameterSystem& p = reg.params();
    if (j < 1) return ValidationResult::fail("j must be >= 1");
    Integer want_len = p.n(2 * j + 1);
    if (Integer(static_cast<long>(seq.size())) != want_len)
        return ValidationResult::fail("length " + std::to_string(seq.size()) + " != n_" +
                                      std::to_string(2 * j + 1) + " = " + want_len.get_str());
    if (auto r = reg.check_prefix(seq); !r.ok) return r;
    for (size_t i = 0; i < seq.size(); ++i)
        if (seq[i]->kind != NodeKind::weighted)
            return ValidationResult::fail("component " + std::to_string(i + 1) +
                                          " is not a functional with weight");
    // condition (2): w(f_1) = m_{2j_1}, j_1 in Omega1, n_{2j+1}^2 < m_{2j_1}
    long w1 = seq[0]->weight_index;
    if (w1 % 2 != 0 || !p.omega1().contains(w1 / 2))
        return ValidationResult::fail("condition 2: first weight index " + std::to_string(w1) +
                                      " has j_1 outside Omega1");
    if (!(p.m(w1) > want_len * want_len))
        return ValidationResult::fail("condition 2: n^2 < m_{2j_1} fails");
    // condition (3): sigma-dictated weights
    std::vector<FPtr> prefix;
    for (size_t i = 0; i + 1 < seq.size(); ++i) {
        prefix.push_back(seq[i]);
        long dictated = reg.sigma_assign(prefix);
        if (seq[i + 1]->weight_index != dictated)
            return ValidationResult::fail("condition 3: component " + std::to_string(i + 2) +
                                          " has weight index " +
                                          std::to_string(seq[i + 1]->weight_index) +
                                          ", sigma dictates " + std::to_string(dictated));
    }
    return ValidationResult::pass();
}

} // namespace normset
