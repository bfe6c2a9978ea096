#ifndef NORMSET_NORM_HPP
#define NORMSET_NORM_HPP

#include <optional>
#include <string>

#include "normset/coding.hpp"
#include "normset/dyadic.hpp"
#include "normset/functional.hpp"
#include "normset/params.hpp"
#include "normset/vector.hpp"

namespace normset {

// Certified enclosure of a norm. lo is attained exactly by `witness`
// (evaluate(witness, x) == lo); hi is an outward-rounded upper bound, clamped
// at the exact l1 norm. Both endpoints are exact rationals.
struct NormCertificate {
    Rational lo = Rational(0);
    Rational hi = Rational(0);
    FPtr witness;
    Rational tail_bound = Rational(0);  // l2 tail beyond the weight window
    long weight_window = 0;             // J_max actually used
    long intervals = 0;                 // DP cells processed
    bool registry_relative = false;     // set by the W0 norm
    std::string attaining_special;      // sequence id when a special attains lo

    Rational width() const { return hi - lo; }
};

struct WeightedBest {
    Rational lo = Rational(0);
    Rational hi = Rational(0);
    FPtr witness;
};

// ||x||_{G0} with width <= tol. Requires surrogate parameters.
NormCertificate norm_G0(const Vector& x, const ParameterSystem& p,
                        const Rational& tol = Rational(1, 1'000'000'000));

// b_j(ran x): the best value over weight-m_{2j} functionals.
WeightedBest best_weighted_value(const Vector& x, long j, const ParameterSystem& p,
                                 const Rational& tol = Rational(1, 1'000'000'000));

// Registry-relative ||x||_{W0}: max of the G0 certificate and the exact
// values of every registered special functional (all signs, all interval
// restrictions). A certified lower bound of the true W0 norm; exact over the
// instantiated special set.
NormCertificate norm_W0(const Vector& x, const ParameterSystem& p, const SigmaRegistry& reg,
                        const Rational& tol = Rational(1, 1'000'000'000));

// True upper bound of ||x||_{W0}: specials have sup-norm at most 1/m_3, so
// max(hi_G0, l1(x)/m_3) dominates every W0 element.
Rational norm_W0_upper(const Vector& x, const ParameterSystem& p, const NormCertificate& g0_cert);

// Largest value of any single registered special functional on x (over signs
// and interval restrictions), with the attaining id; zero when none.
struct SpecialSweep {
    Rational best = Rational(0);
    std::string seq_id;
    Interval window = Interval::empty();
    int sign = 1;
};
SpecialSweep sweep_specials(const Vector& x, const ParameterSystem& p, const SigmaRegistry& reg);

// Trivial sandwich [linf, l1]; the only bound reported at paper scale.
std::pair<Rational, Rational> trivial_bounds(const Vector& x);

} // namespace normset

#endif
