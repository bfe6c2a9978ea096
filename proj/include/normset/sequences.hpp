#ifndef NORMSET_SEQUENCES_HPP
#define NORMSET_SEQUENCES_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "normset/coding.hpp"
#include "normset/norm.hpp"
#include "normset/rng.hpp"

namespace normset {

// Deterministic replayable stream of successive blocks with
// eps < ||. ||_{G0} <= ||. ||_{W0} <= 1.
class BlockSource {
  public:
    virtual ~BlockSource() = default;
    virtual Vector next(long min_pos) = 0;
};

// basis vectors e_t
class BasisSource : public BlockSource {
  public:
    Vector next(long min_pos) override { return Vector::basis(min_pos); }
};

// two-point blocks e_t + e_{t+1} (norm exactly 1 at TINY-like parameters)
class PairSource : public BlockSource {
  public:
    Vector next(long min_pos) override {
        return Vector::basis(min_pos).plus(Vector::basis(min_pos + 1));
    }
};

// seeded mix of unit-ball shapes: e_t, e_t + e_{t+1}, (1/2)(e_t+...+e_{t+3})
class SeededMixSource : public BlockSource {
  public:
    explicit SeededMixSource(std::uint64_t seed) : rng_(seed) {}
    Vector next(long min_pos) override;

  private:
    Rng rng_;
};

// ---------------------------------------------------------------- averages

struct L1AverageResult {
    bool ok = false;
    Vector y;
    std::vector<Vector> parts;  // y = (1/k) sum parts, ||part||_{W0} <= 1
    long k = 0;
    long levels_used = 0;
    NormCertificate g0, w0;
    std::string note;  // failure/budget report
};

// Repeated-averaging search for a 1-l^1_k average with matching G0/W0 norms
// above 1/2. Fails with the best candidate when the level budget runs out.
L1AverageResult build_l1_average(BlockSource& blocks, long k, const ParameterSystem& p,
                                 const SigmaRegistry& reg, long level_budget = 8,
                                 long start_pos = 1);

struct L1AverageCheck {
    bool ok = false;
    std::string reason;
};
// Def-level check: y = (1/k) sum of k successive parts of W0-norm <= M and
// the registry-relative W0 norm agrees with the G0 norm above 1/2.
L1AverageCheck is_l1_average(const Vector& y, const std::vector<Vector>& parts, const Rational& M,
                             long k, const ParameterSystem& p, const SigmaRegistry& reg);

// ---------------------------------------------------------------- RIS

struct ConditionVerdict {
    bool pass = true;
    std::string detail;
};

struct RISCertificate {
    Rational C;
    Rational eps;
    std::vector<long> js;  // js.size() == xs.size() + 1
    ConditionVerdict norm_bound;     // ||x_n|| <= C
    ConditionVerdict support_ratio;  // |supp x_n| / m_{j_{n+1}} < eps
    ConditionVerdict weight_decay;   // |f(x_n)| <= C/m_i for w(f)=m_i < m_{j_n}
    bool g0_only = false;
    bool pass() const { return norm_bound.pass && support_ratio.pass && weight_decay.pass; }
};

// Verifies the rapid-increase conditions; even weights by certified b-value
// sweeps, odd weights against the registered specials (registry-relative).
RISCertificate check_RIS(const std::vector<Vector>& xs, const Rational& C, const Rational& eps,
                         const std::vector<long>& js, const ParameterSystem& p,
                         const SigmaRegistry& reg, bool g0_only = false);

// ---------------------------------------------------------------- exact pairs

struct ExactPair {
    Vector x;
    FPtr f;
    long weight_index = 0;  // even: w(f) = m_{weight_index}
    Rational theta;         // f(x), exact
    Rational C;             // recorded constant
    std::vector<Rational> component_thetas;
    bool theta_in_band = true;
    std::string note;
};

// Paper-shaped pair: x = (m_{2j}/n_{2j}) sum y_i over n_{2j} source blocks,
// f = (1/m_{2j}) sum f_i with f_i(y_i) in [1/2, 1/2+delta]. Throws when
// n_{2j} exceeds block_budget or no component functional reaches 1/2.
ExactPair build_exact_pair(BlockSource& blocks, long j, const ParameterSystem& p,
                           const SigmaRegistry& reg, const Rational& delta_theta = Rational(1, 16),
                           long block_budget = 256, long start_pos = 1);

struct PairCheck {
    bool ok = false;
    std::string reason;
    NormCertificate g0, w0;
};
// Def-level check of an exact pair at its recorded C: norm window, weight,
// theta, and the weight sweep over a finite window (settled beyond it by the
// l1/m_i bound).
PairCheck validate_exact_pair(const ExactPair& pair, const ParameterSystem& p,
                              const SigmaRegistry& reg);

// ---------------------------------------------------------------- dependent

enum class ThetaMode { half, zero };

struct DependentSequence {
    long j0 = 0;
    Rational C;
    Rational theta;  // target (1/2-band value in half mode, 0 in zero mode)
    std::string seq_id;
    std::vector<ExactPair> pairs;
    std::vector<char> source_tags;  // 'A'/'B' alternation record
};

// Threads exact pairs of sigma-dictated weights along a special sequence.
// Pairs are concentrated multiples of source blocks (f_i flat on the block
// support), which keeps every dictated weight realizable; C records the
// achieved constant. theta_strict lands thetas strictly above 1/2.
DependentSequence build_dependent_sequence(BlockSource& sourceA, BlockSource* sourceB, long j0,
                                           ThetaMode mode, const ParameterSystem& p,
                                           SigmaRegistry& reg, bool theta_strict = false,
                                           long start_pos = 1);

struct DependentCheck {
    bool ok = false;
    std::string reason;
};
DependentCheck validate_dependent_sequence(const DependentSequence& ds, const ParameterSystem& p,
                                           SigmaRegistry& reg);

// exact value of (1/m_{2j0+1}) sum f_i on (1/n_{2j0+1}) sum x_i
Rational dependent_average_value(const DependentSequence& ds, const ParameterSystem& p,
                                 const SigmaRegistry& reg);

struct AlternatingReport {
    NormCertificate norm;     // registry-relative W0 norm of the signed average
    Rational paper_bound;     // 8C/m_{2j0+1}^2, reported, never asserted
};
AlternatingReport alternating_average_report(const DependentSequence& ds,
                                             const ParameterSystem& p, const SigmaRegistry& reg);

// ---------------------------------------------------------------- gap witness

struct GapWitness {
    DependentSequence ds;
    Vector w;                    // (m_{2j+1}/n_{2j+1}) sum x_i
    FPtr f;                      // the registered special functional
    Rational f_of_w;             // exact, > 1/2
    NormCertificate g0;          // certified G0 enclosure of w
    NormCertificate w0;          // registry-relative
    Rational paper_bound;        // 45/m_{2j+1}, report-only
};
GapWitness build_gap_witness(BlockSource& blocks, long j, const ParameterSystem& p,
                             SigmaRegistry& reg, long start_pos = 1);

// ---------------------------------------------------------------- c0 witness

struct C0Witness {
    bool complete = false;
    long blocking_index = 0;  // first index that could not be extended
    std::string note;
    std::vector<Vector> zs;
    std::vector<long> jks;        // chosen even indices
    std::vector<Rational> eps_ks; // schedule used
};

// Greedy subsequence selection per the three decay conditions; at desk scale
// the G0 decay is generally unreachable and the blocking index reports it.
C0Witness extract_c0_witness(const std::vector<Vector>& xs, const Rational& eps,
                             const ParameterSystem& p, const SigmaRegistry& reg);

// verifies conditions (i)-(iii) exactly for a given family and schedule
ValidationResult check_c0_family(const std::vector<Vector>& zs, const std::vector<long>& jks,
                                 const std::vector<Rational>& eps_ks, const Rational& eps,
                                 const ParameterSystem& p, const SigmaRegistry& reg);

struct C0Equivalence {
    bool ok = false;
    Rational min_ratio_lo, max_ratio_hi;
    long trials = 0;
    std::string note;
};
// ratios ||sum a_i z_i||_{W0} / max|a_i| over seeded trials with max|a_i|=1
C0Equivalence check_c0_equivalence(const std::vector<Vector>& zs, const Rational& eps, long trials,
                                   const ParameterSystem& p, const SigmaRegistry& reg,
                                   std::uint64_t seed);

// ---------------------------------------------------------------- prop bounds

enum class PropBoundKind { avg_w0, signed_avg_g0 };

struct PropBoundReport {
    bool hypotheses_ok = false;
    std::string hypothesis_note;
    NormCertificate measured;
    Rational bound;       // 3C/m_{j0} or 3C/m_{2j0+1}^2
    bool satisfied = false;  // measured.hi <= bound
    bool asserted = false;   // always false at surrogate scale; reported only
};
PropBoundReport check_prop_bounds(const std::vector<Vector>& xs, const RISCertificate& ris,
                                  long j0, PropBoundKind kind, const ParameterSystem& p,
                                  const SigmaRegistry& reg);

} // namespace normset

#endif
