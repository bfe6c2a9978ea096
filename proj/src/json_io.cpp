#include "normset/json_io.hpp"

#include <stdexcept>

namespace normset {

Json rational_to_json(const Rational& r) { return rational_to_string(r); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw std::invalid_argument("rational must be a \"p/q\" string");
    return parse_rational(j.get<std::string>());
}

Json vector_to_json(const Vector& v) {
    Json coords = Json::array();
    for (const auto& [n, c] : v.entries()) coords.push_back(Json::array({n, rational_to_json(c)}));
    return Json{{"coords", coords}};
}

Vector vector_from_json(const Json& j) {
    std::vector<Vector::Entry> entries;
    const Json& coords = j.contains("coords") ? j.at("coords") : j;
    for (const auto& e : coords)
        entries.emplace_back(e.at(0).get<long>(), rational_from_json(e.at(1)));
    return Vector::from_entries(std::move(entries));
}

Json tree_to_json(const FPtr& f) {
    switch (f->kind) {
        case NodeKind::zero:
            return Json("zero");
        case NodeKind::leaf:
            return Json{{"leaf", {{"sign", f->sign}, {"n", f->index}}}};
        case NodeKind::cset: {
            Json terms = Json::array();
            for (const auto& t : f->cterms) terms.push_back(Json::array({t.sign, t.index}));
            return Json{{"cset", {{"terms", terms}}}};
        }
        case NodeKind::weighted: {
            Json children = Json::array();
            for (const auto& ch : f->children) children.push_back(tree_to_json(ch));
            return Json{{"weighted", {{"i", f->weight_index}, {"children", children}}}};
        }
        case NodeKind::elltwo: {
            Json terms = Json::array();
            for (const auto& t : f->eterms)
                terms.push_back(Json{{"a", rational_to_json(t.a)}, {"child", tree_to_json(t.child)}});
            return Json{{"elltwo", {{"terms", terms}}}};
        }
        case NodeKind::special: {
            Json s{{"j", f->special_j}, {"seq_id", f->seq_id}, {"sign", f->sign}};
            if (f->restriction)
                s["E"] = Json::array({f->restriction->lo, f->restriction->hi});
            return Json{{"special", s}};
        }
    }
    throw std::logic_error("unreachable");
}

FPtr tree_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "zero") return mk_zero();
    if (!j.is_object() || j.size() != 1) throw std::invalid_argument("malformed functional node");
    const auto& [key, body] = *j.items().begin();
    if (key == "leaf") {
        return mk_leaf(body.at("sign").get<int>(), body.at("n").get<long>());
    }
    if (key == "cset") {
        std::vector<CTerm> terms;
        for (const auto& t : body.at("terms"))
            terms.push_back({t.at(0).get<int>(), t.at(1).get<long>()});
        return mk_cset(std::move(terms));
    }
    if (key == "weighted") {
        std::vector<FPtr> children;
        for (const auto& c : body.at("children")) children.push_back(tree_from_json(c));
        // accept "j" (even-block index, weight m_{2j}) or raw index "i"
        long idx = body.contains("i") ? body.at("i").get<long>() : 2 * body.at("j").get<long>();
        return mk_weighted(idx, std::move(children));
    }
    if (key == "elltwo") {
        std::vector<ETerm> terms;
        for (const auto& t : body.at("terms"))
            terms.push_back({rational_from_json(t.at("a")), tree_from_json(t.at("child"))});
        return mk_elltwo(std::move(terms));
    }
    if (key == "special") {
        std::optional<Interval> E;
        if (body.contains("E"))
            E = Interval{body.at("E").at(0).get<long>(), body.at("E").at(1).get<long>()};
        return mk_special(body.at("seq_id").get<std::string>(), body.at("j").get<long>(),
                          body.at("sign").get<int>(), E);
    }
    throw std::invalid_argument("unknown functional node kind '" + key + "'");
}

Json params_to_json(const ParameterSystem& p) {
    Json j;
    j["mode"] = p.mode() == ParamMode::paper ? "paper" : "surrogate";
    j["omega1"] = Json::array({p.omega1().residue, p.omega1().modulus});
    j["omega2"] = Json::array({p.omega2().residue, p.omega2().modulus});
    j["weight_tail_cutoff"] = p.weight_tail_cutoff();
    if (p.mode() == ParamMode::paper) {
        // exponents of the first few indices, never the digits
        Json m = Json::array(), n = Json::array();
        for (long i = 1; i <= 4; ++i) {
            auto e = p.paper_parameters(i);
            m.push_back("2^" + e.m_exp.get_str());
            n.push_back("2^" + e.n_exp.get_str());
        }
        j["m"] = m;
        j["n"] = n;
    } else if (p.extension() == ParameterSystem::Extension::pow2) {
        j["rule"] = {{"kind", "pow2"}, {"m_step", p.pow2_m_step()}, {"n_step", p.pow2_n_step()}};
    } else {
        Json m = Json::array(), n = Json::array();
        for (const auto& v : p.m_list()) m.push_back(v.get_str());
        for (const auto& v : p.n_list()) n.push_back(v.get_str());
        j["m"] = m;
        j["n"] = n;
    }
    return j;
}

ParameterSystem params_from_json(const Json& j) {
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "paper") return ParameterSystem::paper();
    ResidueClass o1{1, 2}, o2{0, 2};
    if (j.contains("omega1"))
        o1 = {j.at("omega1").at(0).get<long>(), j.at("omega1").at(1).get<long>()};
    if (j.contains("omega2"))
        o2 = {j.at("omega2").at(0).get<long>(), j.at("omega2").at(1).get<long>()};
    long cutoff = j.value("weight_tail_cutoff", 24L);
    if (j.contains("rule")) {
        const auto& r = j.at("rule");
        if (r.at("kind").get<std::string>() != "pow2")
            throw std::invalid_argument("unknown extension rule");
        auto p = ParameterSystem::pow2(r.at("m_step").get<long>(), r.at("n_step").get<long>());
        if (o1.residue != 1 || o1.modulus != 2 || o2.residue != 0 || o2.modulus != 2)
            throw std::invalid_argument("pow2 systems use the default omega classes");
        return p;
    }
    std::vector<Integer> m, n;
    for (const auto& v : j.at("m")) m.emplace_back(v.get<std::string>());
    for (const auto& v : j.at("n")) n.emplace_back(v.get<std::string>());
    return ParameterSystem::make_surrogate(std::move(m), std::move(n), o1, o2, cutoff);
}

} // namespace normset
