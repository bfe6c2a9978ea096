#ifndef NORMSET_PARAMS_HPP
#define NORMSET_PARAMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "normset/rational.hpp"

namespace normset {

enum class ParamMode { paper, surrogate };

// Infinite index sets as residue classes over the naturals >= 1.
struct ResidueClass {
    long residue = 0;
    long modulus = 2;

    bool contains(long j) const {
        return j >= 1 && ((j % modulus) + modulus) % modulus == residue % modulus;
    }
    // k-th element, k >= 1
    long at(long k) const;
    bool disjoint_from(const ResidueClass& o) const;
};

// Exponent triple for paper mode: m_j = 2^m_exp, n_j = 2^n_exp, s_j exponent
// step (s defined for j >= 2).
struct PaperExponents {
    Integer m_exp;
    Integer n_exp;
    std::optional<Integer> s;
};

// The sequences (m_j), (n_j) and the index conventions. Paper mode stores
// base-2 exponents only; surrogate mode stores explicit prefixes, optionally
// extended geometrically (m_j = 2^{am*j}, n_j = 2^{an*j}) so that weight
// indices are not capped. Immutable after construction.
class ParameterSystem {
  public:
    enum class Extension { none, pow2 };

    static ParameterSystem paper();
    // TINY: m_j = n_j = 2^j, omega1 = odds, omega2 = evens.
    static ParameterSystem tiny();
    // geometric surrogate m_j = 2^{am*j}, n_j = 2^{an*j}
    static ParameterSystem pow2(long am, long an);
    // explicit finite surrogate; throws std::invalid_argument naming the
    // violated invariant
    static ParameterSystem make_surrogate(std::vector<Integer> m_list,
                                          std::vector<Integer> n_list,
                                          ResidueClass omega1 = {1, 2},
                                          ResidueClass omega2 = {0, 2},
                                          long weight_tail_cutoff = 24);

    ParamMode mode() const { return mode_; }
    Extension extension() const { return ext_; }
    long pow2_m_step() const { return am_; }
    long pow2_n_step() const { return an_; }

    // true when index j carries a defined weight in this system
    bool has_index(long j) const;
    // largest usable index for `none` extension; 0 means unbounded
    long stored_limit() const;

    Integer m(long j) const;
    Integer n(long j) const;
    const std::vector<Integer>& m_list() const { return m_list_; }
    const std::vector<Integer>& n_list() const { return n_list_; }

    PaperExponents paper_parameters(long j) const;

    const ResidueClass& omega1() const { return omega1_; }
    const ResidueClass& omega2() const { return omega2_; }
    long weight_tail_cutoff() const { return tail_cutoff_; }

    // exact upper bound of sum_{j > J} 1/m_{2j}^2
    Rational tail_sum_sq(long J) const;
    // exact upper bound of sum_{j >= 1} 1/m_{2j}^2 (the contraction factor
    // squared; < 1 for every validated system)
    Rational gamma_sq() const;
    // outward-rounded upper bound of (sum_{j>J} (x_l1/m_{2j})^2)^(1/2)
    Rational weight_tail_bound(const Rational& x_l1, long J) const;

    std::string digest() const;

  private:
    ParameterSystem() = default;
    void validate_or_throw() const;

    ParamMode mode_ = ParamMode::surrogate;
    Extension ext_ = Extension::none;
    long am_ = 1, an_ = 1;
    std::vector<Integer> m_list_, n_list_;
    ResidueClass omega1_{1, 2}, omega2_{0, 2};
    long tail_cutoff_ = 24;
};

} // namespace normset

#endif
