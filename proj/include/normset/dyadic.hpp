#ifndef NORMSET_DYADIC_HPP
#define NORMSET_DYADIC_HPP

#include <mpfr.h>

#include <string>
#include <utility>

#include "normset/rational.hpp"

namespace normset {

// Binary float with directed rounding, the working scalar of the norm
// engine. Every operation takes an explicit rounding direction so enclosures
// stay outward.  Default working precision is 96 bits.
class Dyadic {
  public:
    static constexpr mpfr_prec_t kPrec = 96;

    Dyadic() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
    explicit Dyadic(long x) { mpfr_init2(v_, kPrec); mpfr_set_si(v_, x, MPFR_RNDN); }
    Dyadic(const Rational& q, mpfr_rnd_t rnd) {
        mpfr_init2(v_, kPrec);
        mpfr_set_q(v_, q.get_mpq_t(), rnd);
    }
    Dyadic(const Dyadic& o) { mpfr_init2(v_, kPrec); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Dyadic(Dyadic&& o) noexcept { mpfr_init2(v_, kPrec); mpfr_swap(v_, o.v_); }
    Dyadic& operator=(const Dyadic& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Dyadic& operator=(Dyadic&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Dyadic() { mpfr_clear(v_); }

    static Dyadic zero() { return Dyadic(); }

    Dyadic add(const Dyadic& o, mpfr_rnd_t rnd) const {
        Dyadic r;
        mpfr_add(r.v_, v_, o.v_, rnd);
        return r;
    }
    Dyadic sub(const Dyadic& o, mpfr_rnd_t rnd) const {
        Dyadic r;
        mpfr_sub(r.v_, v_, o.v_, rnd);
        return r;
    }
    Dyadic mul(const Dyadic& o, mpfr_rnd_t rnd) const {
        Dyadic r;
        mpfr_mul(r.v_, v_, o.v_, rnd);
        return r;
    }
    Dyadic div(const Dyadic& o, mpfr_rnd_t rnd) const {
        Dyadic r;
        mpfr_div(r.v_, v_, o.v_, rnd);
        return r;
    }
    Dyadic div_q(const Rational& q, mpfr_rnd_t rnd) const {
        // rounds q opposite to rnd so the quotient rounds outward
        Dyadic d(q, rnd == MPFR_RNDU ? MPFR_RNDD : MPFR_RNDU);
        return div(d, rnd);
    }
    Dyadic sqr(mpfr_rnd_t rnd) const {
        Dyadic r;
        mpfr_sqr(r.v_, v_, rnd);
        return r;
    }
    Dyadic sqrt(mpfr_rnd_t rnd) const {
        Dyadic r;
        mpfr_sqrt(r.v_, v_, rnd);
        return r;
    }

    int cmp(const Dyadic& o) const { return mpfr_cmp(v_, o.v_); }
    int cmp(const Rational& q) const { return mpfr_cmp_q(v_, q.get_mpq_t()); }
    bool operator<(const Dyadic& o) const { return cmp(o) < 0; }
    bool operator<=(const Dyadic& o) const { return cmp(o) <= 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }

    // exact: every finite mpfr value is dyadic rational
    Rational to_rational() const {
        if (mpfr_zero_p(v_)) return Rational(0);
        mpz_class mant;
        mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v_);
        Rational r(mant);
        if (e >= 0) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
            r *= Rational(p);
        } else {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
            r /= Rational(p);
        }
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  private:
    mutable mpfr_t v_;
};

// Closed interval [lo, hi]; all arithmetic rounds lo down and hi up.
struct Enclosure {
    Dyadic lo;
    Dyadic hi;

    Enclosure() = default;
    explicit Enclosure(const Rational& q) : lo(q, MPFR_RNDD), hi(q, MPFR_RNDU) {}
    Enclosure(Dyadic l, Dyadic h) : lo(std::move(l)), hi(std::move(h)) {}

    static Enclosure zero() { return Enclosure(Rational(0)); }
    static Enclosure hull(const Rational& a, const Rational& b) {
        return Enclosure{Dyadic(a, MPFR_RNDD), Dyadic(b, MPFR_RNDU)};
    }

    bool valid() const { return lo <= hi; }

    Enclosure add(const Enclosure& o) const {
        return {lo.add(o.lo, MPFR_RNDD), hi.add(o.hi, MPFR_RNDU)};
    }
    // squares of a nonnegative quantity; lo clamped at 0
    Enclosure sqr_nonneg() const {
        Dyadic l = lo.sgn() > 0 ? lo.sqr(MPFR_RNDD) : Dyadic::zero();
        return {std::move(l), hi.sqr(MPFR_RNDU)};
    }
    Enclosure sqrt_nonneg() const {
        Dyadic l = lo.sgn() > 0 ? lo.sqrt(MPFR_RNDD) : Dyadic::zero();
        return {std::move(l), hi.sqrt(MPFR_RNDU)};
    }
    Enclosure div_q(const Rational& q) const {
        return {lo.div_q(q, MPFR_RNDD), hi.div_q(q, MPFR_RNDU)};
    }
    Enclosure scale_q(const Rational& q) const {  // q > 0
        Dyadic qd_d(q, MPFR_RNDD), qd_u(q, MPFR_RNDU);
        return {lo.mul(qd_d, MPFR_RNDD), hi.mul(qd_u, MPFR_RNDU)};
    }
    static Enclosure max(const Enclosure& a, const Enclosure& b) {
        return {a.lo < b.lo ? b.lo : a.lo, a.hi < b.hi ? b.hi : a.hi};
    }

    Dyadic width() const { return hi.sub(lo, MPFR_RNDU); }
};

} // namespace normset

#endif
