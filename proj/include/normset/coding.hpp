#ifndef NORMSET_CODING_HPP
#define NORMSET_CODING_HPP

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "normset/functional.hpp"
#include "normset/params.hpp"

namespace normset {

// Produces weighted functionals of a prescribed weight index, with range to
// the right of a bound. Arity-1 chains make this possible for any weight.
class ComponentFactory {
  public:
    virtual ~ComponentFactory() = default;
    virtual FPtr make(long weight_index, long min_pos) = 0;
};

// (1/m_i) e_t^*, the minimal weighted functional of weight m_i.
class LeafChainFactory : public ComponentFactory {
  public:
    FPtr make(long weight_index, long min_pos) override {
        return mk_weighted(weight_index, {mk_leaf(1, min_pos)});
    }
};

// Persistent injective assignment sigma: prefixes -> even weight indices
// 2j with j in Omega2, plus the store of completed special sequences.
// Append-only; writes are serialized, reads are lock-free snapshots under a
// shared mutex.
class SigmaRegistry : public SpecialSource {
  public:
    explicit SigmaRegistry(ParameterSystem p);

    const ParameterSystem& params() const { return params_; }

    // smallest admissible unused value for the prefix; persists the choice.
    // Throws std::invalid_argument when the prefix is not in Q_s.
    long sigma_assign(const std::vector<FPtr>& prefix);
    std::optional<long> sigma_lookup(const std::vector<FPtr>& prefix) const;

    // stores a completed sequence; returns its id ("seq-<k>")
    std::string register_sequence(std::vector<FPtr> components, long j);
    const SpecialSequence* find_sequence(const std::string& id) const override;
    std::vector<std::string> sequence_ids() const;

    size_t assignment_count() const;
    size_t journal_position() const;  // total records written

    // re-verifies injectivity and the growth inequality over all history
    ValidationResult audit() const;

    // JSONL journal; replay reconstructs the registry bit-exactly
    std::string journal_jsonl() const;
    static SigmaRegistry replay(const std::string& jsonl, ParameterSystem p);

    // the growth bound max{1/|f_i(e_l)|} * maxsupp(f_d) for a valid prefix
    Rational growth_bound(const std::vector<FPtr>& prefix) const;

    // prefix membership in Q_s: successive, nonzero, valid G0 trees
    ValidationResult check_prefix(const std::vector<FPtr>& prefix) const;

  private:
    struct Assignment {
        std::vector<FPtr> prefix;
        std::string key;
        long value;
    };

    long assign_locked(const std::vector<FPtr>& prefix, const std::string& key);
    static std::string prefix_key(const std::vector<FPtr>& prefix);

    ParameterSystem params_;
    mutable std::unique_ptr<std::shared_mutex> mu_ = std::make_unique<std::shared_mutex>();
    std::vector<Assignment> assignments_;          // journal order
    std::map<std::string, size_t> by_key_;         // key -> index
    std::map<long, std::string> used_values_;      // value -> key
    std::map<std::string, std::unique_ptr<SpecialSequence>> sequences_;
    std::vector<std::string> sequence_order_;
    size_t next_seq_ = 1;
};

struct SpecialSequenceBuildResult {
    std::string id;
    long j = 0;
    std::vector<FPtr> components;
    std::vector<long> weight_indices;
};

// Builds a fully valid sigma-n_{2j+1} special sequence with the factory and
// registers it. Throws when n_{2j+1} exceeds `length_budget` or the factory
// cannot realize a dictated weight.
SpecialSequenceBuildResult build_special_sequence(long j, ComponentFactory& factory,
                                                  SigmaRegistry& reg, long length_budget = 4096,
                                                  long start_pos = 1);

// Checks length, successiveness, weightedness, the first-weight condition and
// the sigma-dictated weights (assigning unseen prefixes as needed).
ValidationResult validate_special_sequence(const std::vector<FPtr>& seq, long j,
                                           SigmaRegistry& reg);

} // namespace normset

#endif
