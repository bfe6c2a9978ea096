#include "normset/functional.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace normset {

namespace {

FPtr make(FNode n) { return std::make_shared<const FNode>(std::move(n)); }

void collect_candidates(const FPtr& f, const SpecialSource* src, std::vector<long>& out,
                        std::vector<Interval>& cuts) {
    switch (f->kind) {
        case NodeKind::zero:
            return;
        case NodeKind::leaf: {
            for (const auto& c : cuts)
                if (!c.contains(f->index)) return;
            out.push_back(f->index);
            return;
        }
        case NodeKind::cset: {
            for (const auto& t : f->cterms) {
                bool inside = true;
                for (const auto& c : cuts)
                    if (!c.contains(t.index)) { inside = false; break; }
                if (inside) out.push_back(t.index);
            }
            return;
        }
        case NodeKind::weighted:
        case NodeKind::elltwo: {
            if (f->kind == NodeKind::weighted) {
                for (const auto& ch : f->children) collect_candidates(ch, src, out, cuts);
            } else {
                for (const auto& t : f->eterms) collect_candidates(t.child, src, out, cuts);
            }
            return;
        }
        case NodeKind::special: {
            if (!src) throw std::invalid_argument("special node needs a registry to resolve");
            const SpecialSequence* seq = src->find_sequence(f->seq_id);
            if (!seq) throw std::invalid_argument("unknown special sequence " + f->seq_id);
            if (f->restriction) cuts.push_back(*f->restriction);
            for (const auto& comp : seq->components) collect_candidates(comp, src, out, cuts);
            if (f->restriction) cuts.pop_back();
            return;
        }
    }
}

} // namespace

FPtr mk_zero() { return make(FNode{}); }

FPtr mk_leaf(int sign, long n) {
    FNode f;
    f.kind = NodeKind::leaf;
    f.sign = sign >= 0 ? 1 : -1;
    f.index = n;
    return make(std::move(f));
}

FPtr mk_cset(std::vector<CTerm> terms) {
    FNode f;
    f.kind = NodeKind::cset;
    std::sort(terms.begin(), terms.end(),
              [](const CTerm& a, const CTerm& b) { return a.index < b.index; });
    f.cterms = std::move(terms);
    return make(std::move(f));
}

FPtr mk_weighted(long weight_index, std::vector<FPtr> children) {
    FNode f;
    f.kind = NodeKind::weighted;
    f.weight_index = weight_index;
    f.children = std::move(children);
    return make(std::move(f));
}

FPtr mk_elltwo(std::vector<ETerm> terms) {
    FNode f;
    f.kind = NodeKind::elltwo;
    f.eterms = std::move(terms);
    return make(std::move(f));
}

FPtr mk_special(std::string seq_id, long j, int sign, std::optional<Interval> restriction) {
    FNode f;
    f.kind = NodeKind::special;
    f.seq_id = std::move(seq_id);
    f.special_j = j;
    f.sign = sign >= 0 ? 1 : -1;
    f.restriction = restriction;
    return make(std::move(f));
}

std::string FamilyTag::name() const {
    switch (kind) {
        case Kind::G0: return "G0";
        case Kind::W0: return "W0";
        case Kind::Fj0: return "F_" + std::to_string(j0);
        case Kind::Fj0Prime: return "F'_" + std::to_string(j0);
    }
    return "?";
}

Rational evaluate(const FPtr& f, const Vector& x, const ParameterSystem& p,
                  const SpecialSource* src) {
    switch (f->kind) {
        case NodeKind::zero:
            return Rational(0);
        case NodeKind::leaf:
            return Rational(f->sign) * x.at(f->index);
        case NodeKind::cset: {
            Rational s(0);
            for (const auto& t : f->cterms) s += Rational(t.sign) * x.at(t.index);
            return s;
        }
        case NodeKind::weighted: {
            Rational s(0);
            for (const auto& ch : f->children) s += evaluate(ch, x, p, src);
            return s / Rational(p.m(f->weight_index));
        }
        case NodeKind::elltwo: {
            Rational s(0);
            for (const auto& t : f->eterms) s += t.a * evaluate(t.child, x, p, src);
            return s;
        }
        case NodeKind::special: {
            if (!src) throw std::invalid_argument("special node needs a registry to resolve");
            const SpecialSequence* seq = src->find_sequence(f->seq_id);
            if (!seq) throw std::invalid_argument("unknown special sequence " + f->seq_id);
            Vector xr = f->restriction ? x.restrict_interval(*f->restriction) : x;
            Rational s(0);
            for (const auto& comp : seq->components) s += evaluate(comp, xr, p, src);
            return Rational(f->sign) * s / Rational(p.m(2 * f->special_j + 1));
        }
    }
    return Rational(0);
}

std::optional<Integer> weight_of(const FPtr& f, const ParameterSystem& p) {
    auto idx = weight_index_of(f);
    if (!idx) return std::nullopt;
    return p.m(*idx);
}

std::optional<long> weight_index_of(const FPtr& f) {
    if (f->kind == NodeKind::weighted) return f->weight_index;
    if (f->kind == NodeKind::special) return 2 * f->special_j + 1;
    return std::nullopt;
}

std::vector<long> support_of(const FPtr& f, const ParameterSystem& p, const SpecialSource* src) {
    std::vector<long> cand;
    std::vector<Interval> cuts;
    collect_candidates(f, src, cand, cuts);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    // keep only points with a nonzero coordinate (elltwo terms may cancel)
    std::vector<long> out;
    for (long pos : cand)
        if (evaluate(f, Vector::basis(pos), p, src) != 0) out.push_back(pos);
    return out;
}

Interval range_of(const FPtr& f, const ParameterSystem& p, const SpecialSource* src) {
    auto s = support_of(f, p, src);
    if (s.empty()) return Interval::empty();
    return {s.front(), s.back()};
}

FPtr restrict_to(const FPtr& f, const Interval& E) {
    switch (f->kind) {
        case NodeKind::zero:
            return f;
        case NodeKind::leaf:
            return E.contains(f->index) ? f : mk_zero();
        case NodeKind::cset: {
            std::vector<CTerm> kept;
            for (const auto& t : f->cterms)
                if (E.contains(t.index)) kept.push_back(t);
            if (kept.empty()) return mk_zero();
            return mk_cset(std::move(kept));
        }
        case NodeKind::weighted: {
            std::vector<FPtr> kept;
            for (const auto& ch : f->children) {
                FPtr r = restrict_to(ch, E);
                if (r->kind != NodeKind::zero) kept.push_back(std::move(r));
            }
            if (kept.empty()) return mk_zero();
            return mk_weighted(f->weight_index, std::move(kept));
        }
        case NodeKind::elltwo: {
            std::vector<ETerm> kept;
            for (const auto& t : f->eterms) {
                FPtr r = restrict_to(t.child, E);
                if (r->kind != NodeKind::zero) kept.push_back({t.a, std::move(r)});
            }
            if (kept.empty()) return mk_zero();
            return mk_elltwo(std::move(kept));
        }
        case NodeKind::special: {
            Interval e2 = f->restriction ? f->restriction->meet(E) : E;
            if (e2.is_empty()) return mk_zero();
            return mk_special(f->seq_id, f->special_j, f->sign, e2);
        }
    }
    return mk_zero();
}

FPtr restrict_to_set(const FPtr& f, const std::vector<long>& s) {
    switch (f->kind) {
        case NodeKind::zero:
            return f;
        case NodeKind::leaf:
            return std::find(s.begin(), s.end(), f->index) != s.end() ? f : mk_zero();
        case NodeKind::cset: {
            std::vector<CTerm> kept;
            for (const auto& t : f->cterms)
                if (std::find(s.begin(), s.end(), t.index) != s.end()) kept.push_back(t);
            if (kept.empty()) return mk_zero();
            return mk_cset(std::move(kept));
        }
        case NodeKind::weighted: {
            std::vector<FPtr> kept;
            for (const auto& ch : f->children) {
                FPtr r = restrict_to_set(ch, s);
                if (r->kind != NodeKind::zero) kept.push_back(std::move(r));
            }
            if (kept.empty()) return mk_zero();
            return mk_weighted(f->weight_index, std::move(kept));
        }
        case NodeKind::elltwo: {
            std::vector<ETerm> kept;
            for (const auto& t : f->eterms) {
                FPtr r = restrict_to_set(t.child, s);
                if (r->kind != NodeKind::zero) kept.push_back({t.a, std::move(r)});
            }
            if (kept.empty()) return mk_zero();
            return mk_elltwo(std::move(kept));
        }
        case NodeKind::special:
            throw std::invalid_argument("special functionals admit interval restrictions only");
    }
    return mk_zero();
}

FPtr negate(const FPtr& f) {
    switch (f->kind) {
        case NodeKind::zero:
            return f;
        case NodeKind::leaf:
            return mk_leaf(-f->sign, f->index);
        case NodeKind::cset: {
            std::vector<CTerm> t = f->cterms;
            for (auto& c : t) c.sign = -c.sign;
            return mk_cset(std::move(t));
        }
        case NodeKind::weighted: {
            std::vector<FPtr> ch;
            ch.reserve(f->children.size());
            for (const auto& c : f->children) ch.push_back(negate(c));
            return mk_weighted(f->weight_index, std::move(ch));
        }
        case NodeKind::elltwo: {
            std::vector<ETerm> t;
            t.reserve(f->eterms.size());
            for (const auto& e : f->eterms) t.push_back({-e.a, e.child});
            return mk_elltwo(std::move(t));
        }
        case NodeKind::special:
            return mk_special(f->seq_id, f->special_j, -f->sign, f->restriction);
    }
    return mk_zero();
}

namespace {

struct ValidateCtx {
    const FamilyTag* tag;
    const ParameterSystem* p;
    const SpecialSource* src;
};

bool is_aux(const FamilyTag& t) {
    return t.kind == FamilyTag::Kind::Fj0 || t.kind == FamilyTag::Kind::Fj0Prime;
}

ValidationResult check_successive(const std::vector<FPtr>& children, const ValidateCtx& c) {
    long prev_hi = 0;
    for (size_t i = 0; i < children.size(); ++i) {
        Interval r = range_of(children[i], *c.p, c.src);
        if (r.is_empty()) return ValidationResult::fail("child " + std::to_string(i + 1) + " is zero");
        if (i > 0 && r.lo <= prev_hi)
            return ValidationResult::fail("children not successive at position " + std::to_string(i + 1));
        prev_hi = r.hi;
    }
    return ValidationResult::pass();
}

ValidationResult validate_node(const FPtr& f, const ValidateCtx& c, bool at_top);

ValidationResult validate_weighted(const FPtr& f, const ValidateCtx& c, bool at_top) {
    long i = f->weight_index;
    bool aux = is_aux(*c.tag);
    bool odd_top_ok = c.tag->kind == FamilyTag::Kind::Fj0Prime && at_top;
    if (i < 2) return ValidationResult::fail("weight index must be >= 2");
    if (i % 2 != 0 && !(odd_top_ok && i % 2 == 1))
        return ValidationResult::fail("odd weight m_" + std::to_string(i) + " not allowed here");
    if (!c.p->has_index(i))
        return ValidationResult::fail("weight index " + std::to_string(i) + " not stored");
    Integer cap = c.p->n(i);
    if (aux) cap *= 2;
    if (f->children.empty()) return ValidationResult::fail("weighted node has no children");
    if (Integer(static_cast<long>(f->children.size())) > cap)
        return ValidationResult::fail("arity d=" + std::to_string(f->children.size()) +
                                      " exceeds " + std::string(aux ? "2n_" : "n_") +
                                      std::to_string(i) + "=" + cap.get_str());
    if (auto r = check_successive(f->children, c); !r.ok) return r;
    for (const auto& ch : f->children)
        if (auto r = validate_node(ch, c, false); !r.ok) return r;
    return ValidationResult::pass();
}

ValidationResult validate_elltwo(const FPtr& f, const ValidateCtx& c) {
    if (f->eterms.empty()) return ValidationResult::fail("empty combination");
    bool aux = is_aux(*c.tag);
    Rational sq(0);
    std::set<long> weights;
    std::set<long> basis_indices;
    std::vector<long> weighted_support;
    for (const auto& t : f->eterms) {
        if (t.a == 0) return ValidationResult::fail("zero coefficient term");
        sq += t.a * t.a;
        if (t.child->kind == NodeKind::weighted) {
            if (!weights.insert(t.child->weight_index).second)
                return ValidationResult::fail("children weights not pairwise different");
            if (auto r = validate_node(t.child, c, false); !r.ok) return r;
            auto s = support_of(t.child, *c.p, c.src);
            weighted_support.insert(weighted_support.end(), s.begin(), s.end());
        } else if (t.child->kind == NodeKind::leaf && aux) {
            if (!basis_indices.insert(t.child->index).second)
                return ValidationResult::fail("duplicated basis index t_i");
        } else {
            return ValidationResult::fail(aux ? "combination children must be weighted or basis"
                                              : "combination children must be weighted");
        }
    }
    if (sq > 1) return ValidationResult::fail("sum of squared coefficients exceeds 1");
    for (long t : basis_indices)
        if (std::find(weighted_support.begin(), weighted_support.end(), t) != weighted_support.end())
            return ValidationResult::fail("basis index " + std::to_string(t) +
                                          " overlaps a weighted child support");
    return ValidationResult::pass();
}

ValidationResult validate_node(const FPtr& f, const ValidateCtx& c, bool at_top) {
    const FamilyTag& tag = *c.tag;
    switch (f->kind) {
        case NodeKind::zero:
            return ValidationResult::pass();
        case NodeKind::leaf:
            if (f->index < 1) return ValidationResult::fail("basis index must be >= 1");
            if (f->sign != 1 && f->sign != -1) return ValidationResult::fail("leaf sign must be +-1");
            return ValidationResult::pass();
        case NodeKind::cset: {
            if (!is_aux(tag)) return ValidationResult::fail("cset leaves only valid in F_{j0} families");
            if (f->cterms.empty()) return ValidationResult::fail("empty cset");
            Integer cap = c.p->n(tag.j0 - 1);
            if (Integer(static_cast<long>(f->cterms.size())) > cap)
                return ValidationResult::fail("#F=" + std::to_string(f->cterms.size()) +
                                              " exceeds n_" + std::to_string(tag.j0 - 1) + "=" +
                                              cap.get_str());
            long prev = 0;
            for (const auto& t : f->cterms) {
                if (t.index <= prev) return ValidationResult::fail("cset indices must be distinct");
                if (t.sign != 1 && t.sign != -1) return ValidationResult::fail("cset signs must be +-1");
                prev = t.index;
            }
            return ValidationResult::pass();
        }
        case NodeKind::weighted:
            return validate_weighted(f, c, at_top);
        case NodeKind::elltwo:
            return validate_elltwo(f, c);
        case NodeKind::special: {
            if (tag.kind != FamilyTag::Kind::W0)
                return ValidationResult::fail("special nodes only valid in W0");
            if (!at_top) return ValidationResult::fail("special nodes cannot be nested");
            if (f->special_j < 1) return ValidationResult::fail("special j must be >= 1");
            if (!c.src) return ValidationResult::fail("no registry supplied for special validation");
            const SpecialSequence* seq = c.src->find_sequence(f->seq_id);
            if (!seq) return ValidationResult::fail("sequence " + f->seq_id + " not registered");
            if (seq->j != f->special_j)
                return ValidationResult::fail("sequence " + f->seq_id + " has j=" +
                                              std::to_string(seq->j) + ", node claims " +
                                              std::to_string(f->special_j));
            return ValidationResult::pass();
        }
    }
    return ValidationResult::fail("unknown node kind");
}

} // namespace

ValidationResult validate(const FPtr& f, const FamilyTag& tag, const ParameterSystem& p,
                          const SpecialSource* src) {
    if (is_aux(tag) && tag.j0 < 2) return ValidationResult::fail("F_{j0} tags require j0 >= 2");
    ValidateCtx c{&tag, &p, src};
    return validate_node(f, c, true);
}

std::string canonical_encoding(const FPtr& f) {
    std::ostringstream os;
    switch (f->kind) {
        case NodeKind::zero:
            os << "0";
            break;
        case NodeKind::leaf:
            os << "L" << (f->sign > 0 ? "+" : "-") << f->index;
            break;
        case NodeKind::cset: {
            os << "C[";
            for (const auto& t : f->cterms) os << (t.sign > 0 ? "+" : "-") << t.index << ",";
            os << "]";
            break;
        }
        case NodeKind::weighted: {
            os << "W" << f->weight_index << "(";
            for (const auto& ch : f->children) os << canonical_encoding(ch) << ",";
            os << ")";
            break;
        }
        case NodeKind::elltwo: {
            std::vector<std::pair<std::string, std::string>> parts;
            for (const auto& t : f->eterms) {
                std::string key = t.child->kind == NodeKind::weighted
                                      ? "w" + std::to_string(t.child->weight_index)
                                      : "l" + std::to_string(t.child->index);
                parts.emplace_back(key + "|" + canonical_encoding(t.child),
                                   rational_to_string(t.a));
            }
            std::sort(parts.begin(), parts.end());
            os << "Q(";
            for (const auto& [k, a] : parts) os << a << "*" << k << ",";
            os << ")";
            break;
        }
        case NodeKind::special: {
            os << "S" << f->special_j << ":" << f->seq_id << ":" << (f->sign > 0 ? "+" : "-");
            if (f->restriction) os << "[" << f->restriction->lo << "," << f->restriction->hi << "]";
            break;
        }
    }
    return os.str();
}

bool structurally_equal(const FPtr& a, const FPtr& b) {
    return canonical_encoding(a) == canonical_encoding(b);
}

} // namespace normset
