#ifndef NORMSET_FUNCTIONAL_HPP
#define NORMSET_FUNCTIONAL_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "normset/params.hpp"
#include "normset/rational.hpp"
#include "normset/vector.hpp"

namespace normset {

struct FNode;
using FPtr = std::shared_ptr<const FNode>;

enum class NodeKind { zero, leaf, cset, weighted, elltwo, special };

struct ETerm {
    Rational a;
    FPtr child;
};

struct CTerm {
    int sign = 1;  // +1 / -1
    long index = 1;
};

// One tree node. Which fields are meaningful depends on kind:
//   leaf     : sign, index                       (+-e_n^*)
//   cset     : cterms                            (sum of +-e_n^*, aux families)
//   weighted : weight_index i, children          ((1/m_i) * sum children)
//   elltwo   : eterms                            (sum a_i * child_i, sum a^2 <= 1)
//   special  : seq_id, special_j, sign, restriction
struct FNode {
    NodeKind kind = NodeKind::zero;

    int sign = 1;
    long index = 1;

    std::vector<CTerm> cterms;

    long weight_index = 0;  // raw index i into (m_i)
    std::vector<FPtr> children;

    std::vector<ETerm> eterms;

    std::string seq_id;
    long special_j = 0;  // weight m_{2j+1}
    std::optional<Interval> restriction;  // specials only; absent = unrestricted
};

FPtr mk_zero();
FPtr mk_leaf(int sign, long n);
FPtr mk_cset(std::vector<CTerm> terms);
FPtr mk_weighted(long weight_index, std::vector<FPtr> children);
FPtr mk_elltwo(std::vector<ETerm> terms);
FPtr mk_special(std::string seq_id, long j, int sign,
                std::optional<Interval> restriction = std::nullopt);

// A completed sigma special sequence as stored in the registry.
struct SpecialSequence {
    std::string id;
    long j = 0;  // functional weight is m_{2j+1}
    std::vector<FPtr> components;
};

// Read access to registered sequences, implemented by the sigma registry.
class SpecialSource {
  public:
    virtual ~SpecialSource() = default;
    virtual const SpecialSequence* find_sequence(const std::string& id) const = 0;
};

struct FamilyTag {
    enum class Kind { G0, W0, Fj0, Fj0Prime };
    Kind kind = Kind::G0;
    long j0 = 0;  // Fj0 tags only

    static FamilyTag g0() { return {Kind::G0, 0}; }
    static FamilyTag w0() { return {Kind::W0, 0}; }
    static FamilyTag fj0(long j0) { return {Kind::Fj0, j0}; }
    static FamilyTag fj0_prime(long j0) { return {Kind::Fj0Prime, j0}; }
    std::string name() const;
};

struct ValidationResult {
    bool ok = true;
    std::string reason;

    static ValidationResult pass() { return {true, {}}; }
    static ValidationResult fail(std::string r) { return {false, std::move(r)}; }
};

// Exact evaluation f(x). Trees containing special nodes need `src`.
Rational evaluate(const FPtr& f, const Vector& x, const ParameterSystem& p,
                  const SpecialSource* src = nullptr);

// m-value of weighted/special nodes, absent otherwise.
std::optional<Integer> weight_of(const FPtr& f, const ParameterSystem& p);
// weight index (i for weighted meaning m_i, 2j+1 for special), absent otherwise
std::optional<long> weight_index_of(const FPtr& f);

// effective support (restrictions applied, cancellations removed), sorted
std::vector<long> support_of(const FPtr& f, const ParameterSystem& p,
                             const SpecialSource* src = nullptr);
// minimal interval containing the effective support; empty for zero
Interval range_of(const FPtr& f, const ParameterSystem& p, const SpecialSource* src = nullptr);

// pushes the restriction to the leaves; returns the zero functional when it
// annihilates f. E as interval (W0-compatible) or arbitrary finite set (G0).
FPtr restrict_to(const FPtr& f, const Interval& E);
FPtr restrict_to_set(const FPtr& f, const std::vector<long>& s);

FPtr negate(const FPtr& f);

// structural validity for the claimed family
ValidationResult validate(const FPtr& f, const FamilyTag& tag, const ParameterSystem& p,
                          const SpecialSource* src = nullptr);

// stable canonical encoding; structural identity (elltwo terms ordered by
// child weight index)
std::string canonical_encoding(const FPtr& f);

bool structurally_equal(const FPtr& a, const FPtr& b);

} // namespace normset

#endif
