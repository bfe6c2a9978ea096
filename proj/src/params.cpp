#include "normset/params.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "normset/dyadic.hpp"

namespace normset {

namespace {

Integer pow2z(const Integer& e) {
    if (e < 0 || !e.fits_ulong_p()) throw std::domain_error("exponent out of range");
    if (e.get_ui() > 20'000'000) throw std::domain_error("refusing to materialize 2^" + e.get_str());
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e.get_ui());
    return r;
}

Integer pow5(long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 5, static_cast<unsigned long>(e));
    return r;
}

} // namespace

long ResidueClass::at(long k) const {
    long first = residue % modulus;
    if (first <= 0) first += modulus;
    return first + (k - 1) * modulus;
}

bool ResidueClass::disjoint_from(const ResidueClass& o) const {
    long g = std::gcd(modulus, o.modulus);
    return ((residue - o.residue) % g + g) % g != 0;
}

ParameterSystem ParameterSystem::paper() {
    ParameterSystem p;
    p.mode_ = ParamMode::paper;
    p.ext_ = Extension::pow2; // placeholder; paper indices are unbounded
    return p;
}

ParameterSystem ParameterSystem::tiny() { return pow2(1, 1); }

ParameterSystem ParameterSystem::pow2(long am, long an) {
    if (am < 1 || an < 1) throw std::invalid_argument("pow2 steps must be >= 1");
    ParameterSystem p;
    p.mode_ = ParamMode::surrogate;
    p.ext_ = Extension::pow2;
    p.am_ = am;
    p.an_ = an;
    p.validate_or_throw();
    return p;
}

ParameterSystem ParameterSystem::make_surrogate(std::vector<Integer> m_list,
                                                std::vector<Integer> n_list,
                                                ResidueClass omega1, ResidueClass omega2,
                                                long weight_tail_cutoff) {
    ParameterSystem p;
    p.mode_ = ParamMode::surrogate;
    p.ext_ = Extension::none;
    p.m_list_ = std::move(m_list);
    p.n_list_ = std::move(n_list);
    p.omega1_ = omega1;
    p.omega2_ = omega2;
    p.tail_cutoff_ = weight_tail_cutoff;
    p.validate_or_throw();
    return p;
}

void ParameterSystem::validate_or_throw() const {
    if (!omega1_.disjoint_from(omega2_))
        throw std::invalid_argument("omega1 and omega2 intersect");
    if (omega1_.modulus < 1 || omega2_.modulus < 1)
        throw std::invalid_argument("omega classes must be infinite (modulus >= 1)");
    if (ext_ == Extension::none) {
        if (m_list_.size() < 2 || n_list_.size() < 2)
            throw std::invalid_argument("surrogate lists need at least two entries");
        if (m_list_[0] < 2) throw std::invalid_argument("m_1 >= 2 fails");
        if (n_list_[0] < 2) throw std::invalid_argument("n_1 >= 2 fails");
        for (size_t i = 1; i < m_list_.size(); ++i)
            if (m_list_[i] <= m_list_[i - 1])
                throw std::invalid_argument("m not strictly increasing at j=" + std::to_string(i + 1));
        for (size_t i = 1; i < n_list_.size(); ++i)
            if (n_list_[i] <= n_list_[i - 1])
                throw std::invalid_argument("n not strictly increasing at j=" + std::to_string(i + 1));
    }
    if (gamma_sq() >= 1)
        throw std::invalid_argument("sum 1/m_{2j}^2 < 1 fails");
}

bool ParameterSystem::has_index(long j) const {
    if (j < 1) return false;
    if (mode_ == ParamMode::paper || ext_ == Extension::pow2) return true;
    return static_cast<size_t>(j) <= m_list_.size() && static_cast<size_t>(j) <= n_list_.size();
}

long ParameterSystem::stored_limit() const {
    if (mode_ == ParamMode::paper || ext_ == Extension::pow2) return 0;
    return static_cast<long>(std::min(m_list_.size(), n_list_.size()));
}

Integer ParameterSystem::m(long j) const {
    if (j < 1) throw std::domain_error("index j must be >= 1");
    if (mode_ == ParamMode::paper) return pow2z(paper_parameters(j).m_exp);
    if (ext_ == Extension::pow2) return pow2z(Integer(am_ * j));
    if (!has_index(j)) throw std::domain_error("m_" + std::to_string(j) + " not stored");
    return m_list_[static_cast<size_t>(j) - 1];
}

Integer ParameterSystem::n(long j) const {
    if (j < 1) throw std::domain_error("index j must be >= 1");
    if (mode_ == ParamMode::paper) return pow2z(paper_parameters(j).n_exp);
    if (ext_ == Extension::pow2) return pow2z(Integer(an_ * j));
    if (!has_index(j)) throw std::domain_error("n_" + std::to_string(j) + " not stored");
    return n_list_[static_cast<size_t>(j) - 1];
}

PaperExponents ParameterSystem::paper_parameters(long j) const {
    if (j < 1) throw std::domain_error("index j must be >= 1");
    // m_j = 2^{8*5^(j-1)}; s_{j+1} = log2(m_{j+1}^4) = 4*e_m(j+1);
    // n_{j+1} = (2 n_j)^{s_{j+1}}  =>  e_n(j+1) = s_{j+1} * (1 + e_n(j)).
    PaperExponents out;
    out.m_exp = Integer(8) * pow5(j - 1);
    Integer en(7);
    std::optional<Integer> s;
    for (long i = 2; i <= j; ++i) {
        Integer si = Integer(4) * (Integer(8) * pow5(i - 1));
        en = si * (en + 1);
        s = si;
    }
    out.n_exp = en;
    out.s = s;
    return out;
}

Rational ParameterSystem::tail_sum_sq(long J) const {
    if (J < 0) J = 0;
    if (mode_ == ParamMode::paper) {
        // terms shrink faster than 1/4 each step; first term + a third covers it
        Integer m0 = m(2 * (J + 1));
        Rational first = Rational(1) / Rational(m0 * m0);
        return first * Rational(4, 3);
    }
    if (ext_ == Extension::pow2) {
        // sum_{j>J} 2^{-4*am*j}, geometric with ratio 2^{-4*am}
        Integer q = pow2z(Integer(4 * am_));
        Rational r = Rational(1) / Rational(q);
        Rational first;
        {
            Integer f = pow2z(Integer(4 * am_ * (J + 1)));
            first = Rational(1) / Rational(f);
        }
        return first / (Rational(1) - r);
    }
    // finite list: weights exist only at stored indices
    Rational s(0);
    long limit = stored_limit();
    for (long j = J + 1; 2 * j <= limit; ++j) {
        Integer mj = m(2 * j);
        s += Rational(1) / Rational(mj * mj);
    }
    return s;
}

Rational ParameterSystem::gamma_sq() const { return tail_sum_sq(0); }

Rational ParameterSystem::weight_tail_bound(const Rational& x_l1, long J) const {
    if (x_l1 == 0) return Rational(0);
    Rational sq = x_l1 * x_l1 * tail_sum_sq(J);
    Dyadic up(sq, MPFR_RNDU);
    return up.sqrt(MPFR_RNDU).to_rational();
}

std::string ParameterSystem::digest() const {
    std::ostringstream os;
    if (mode_ == ParamMode::paper) {
        os << "paper";
    } else if (ext_ == Extension::pow2) {
        os << "pow2(m=2^" << am_ << "j,n=2^" << an_ << "j)";
    } else {
        os << "explicit[m:";
        for (const auto& v : m_list_) os << " " << v.get_str();
        os << "; n:";
        for (const auto& v : n_list_) os << " " << v.get_str();
        os << "]";
    }
    os << " omega1=" << omega1_.residue << "%" << omega1_.modulus
       << " omega2=" << omega2_.residue << "%" << omega2_.modulus
       << " Jcut=" << tail_cutoff_;
    return os.str();
}

} // namespace normset
