#pragma once

// JSON wire formats for every value that crosses the tool boundary. Exact
// integers only, no floats; cyclotomic coefficients widen to {"num","den"}
// objects exactly when they are not integral. Keys keep insertion order so
// identical inputs serialize to identical bytes.

#include <json.hpp>

#include "finsymp/descent.hpp"
#include "finsymp/intertwine.hpp"

namespace finsymp {

using Json = nlohmann::ordered_json;

inline const Json& json_key(const Json& j, const char* key) {
    if (!j.is_object()) throw InvalidInput(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw InvalidInput(std::string("missing key '") + key + "'");
    return *it;
}

inline long long json_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw InvalidInput(std::string(what) + " must be an integer");
    return j.get<long long>();
}

inline std::vector<long long> json_int_list(const Json& j, const char* what) {
    if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array");
    std::vector<long long> out;
    for (const auto& v : j) out.push_back(json_int(v, what));
    return out;
}

// ---- groups and elements: {"factors":[...]}, {"coords":[...]} ----

inline Json group_to_json(const Group& g) { return Json{{"factors", g.factors}}; }

inline Group group_from_json(const Json& j) {
    return Group(json_int_list(json_key(j, "factors"), "group factor"));
}

inline Json element_to_json(const Element& x) { return Json{{"coords", x.c}}; }

inline Element element_from_json(const Group& g, const Json& j) {
    auto coords = json_int_list(json_key(j, "coords"), "coordinate");
    if (coords.size() != g.rank())
        throw InvalidInput("element has " + std::to_string(coords.size()) +
                           " coordinates in a rank " + std::to_string(g.rank()) + " group");
    return g.reduce(std::move(coords));
}

// ---- rationals mod one: {"num":n,"den":d} ----

inline Json qz_to_json(const QZ& v) { return Json{{"num", v.num}, {"den", v.den}}; }

inline QZ qz_from_json(const Json& j) {
    return QZ(json_int(json_key(j, "num"), "numerator"), json_int(json_key(j, "den"), "denominator"));
}

// ---- forms: gram matrices of rationals ----

inline Json gram_to_json(const Gram& g) {
    Json rows = Json::array();
    for (const auto& r : g) {
        Json row = Json::array();
        for (const auto& v : r) row.push_back(qz_to_json(v));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Gram gram_from_json(const Json& j, size_t rows, size_t cols) {
    if (!j.is_array() || j.size() != rows)
        throw InvalidInput("gram matrix must have " + std::to_string(rows) + " rows");
    Gram out;
    for (const auto& r : j) {
        if (!r.is_array() || r.size() != cols)
            throw InvalidInput("gram row must have " + std::to_string(cols) + " entries");
        std::vector<QZ> row;
        for (const auto& v : r) row.push_back(qz_from_json(v));
        out.push_back(std::move(row));
    }
    return out;
}

/// {"carrier":{"factors":[...]},"gram":[[...]]} with gram the polarization.
inline SymplecticSpace space_from_json(const Json& j) {
    Group k = group_from_json(json_key(j, "carrier"));
    Gram gram = gram_from_json(json_key(j, "gram"), k.rank(), k.rank());
    return symplectic_space(k, BilinearForm(k, k, std::move(gram)));
}

// ---- subgroups: {"generators":[[...],...]} ----

inline Json subgroup_to_json(const Subgroup& s) {
    Json gens = Json::array();
    for (const auto& g : s.generators())
        if (!(g == s.ambient().zero())) gens.push_back(g.c);
    return Json{{"generators", std::move(gens)}};
}

inline Subgroup subgroup_from_json(const Group& g, const Json& j) {
    const Json& gens = json_key(j, "generators");
    if (!gens.is_array()) throw InvalidInput("generators must be an array");
    std::vector<Element> elems;
    for (const auto& v : gens) {
        auto coords = json_int_list(v, "generator coordinate");
        if (coords.size() != g.rank())
            throw InvalidInput("generator has the wrong coordinate count");
        elems.push_back(g.reduce(std::move(coords)));
    }
    return Subgroup(g, elems);
}

// ---- homomorphisms: {"source":…,"target":…,"matrix":[[...]]} ----
// matrix[i][j] = coefficient of target coordinate i in the image of source unit j

inline Json hom_to_json(const Hom& f) {
    return Json{{"source", group_to_json(f.source)},
                {"target", group_to_json(f.target)},
                {"matrix", f.mat}};
}

inline Hom hom_from_json(const Json& j) {
    Group src = group_from_json(json_key(j, "source"));
    Group tgt = group_from_json(json_key(j, "target"));
    const Json& m = json_key(j, "matrix");
    if (!m.is_array() || m.size() != tgt.rank())
        throw InvalidInput("hom matrix must have one row per target coordinate");
    intmat::Mat mat;
    for (const auto& r : m) mat.push_back(json_int_list(r, "matrix entry"));
    return Hom(std::move(src), std::move(tgt), std::move(mat));
}

/// A bare nested array is accepted wherever the groups are implied by context.
inline Hom hom_from_json(const Group& src, const Group& tgt, const Json& j) {
    const Json& m = j.is_object() ? json_key(j, "matrix") : j;
    if (!m.is_array() || m.size() != tgt.rank())
        throw InvalidInput("hom matrix must have one row per target coordinate");
    intmat::Mat mat;
    for (const auto& r : m) mat.push_back(json_int_list(r, "matrix entry"));
    return Hom(src, tgt, std::move(mat));
}

// ---- central extensions: {"base":…,"cocycle":…,"modulus":N} ----

inline Json extension_to_json(const CentralExtension& e) {
    return Json{{"base", group_to_json(e.base)},
                {"cocycle", gram_to_json(e.cocycle.gram)},
                {"modulus", e.modulus}};
}

inline CentralExtension extension_from_json(const Json& j) {
    Group base = group_from_json(json_key(j, "base"));
    Gram gram = gram_from_json(json_key(j, "cocycle"), base.rank(), base.rank());
    CentralExtension out(base, BilinearForm(base, base, std::move(gram)));
    if (j.contains("modulus") && json_int(j["modulus"], "modulus") != out.modulus)
        throw InvalidInput("declared modulus disagrees with the cocycle denominators");
    return out;
}

// ---- cyclotomic matrices: coefficient vectors on the power basis ----

inline Json coeff_to_json(const mpq_class& c) {
    mpq_class r = c;
    r.canonicalize();
    if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
        throw InvalidInput("coefficient overflows the JSON integer range");
    long long num = r.get_num().get_si(), den = r.get_den().get_si();
    if (den == 1) return Json(num);
    return Json{{"num", num}, {"den", den}};
}

inline mpq_class coeff_from_json(const Json& j) {
    if (j.is_number_integer()) return mpq_class(static_cast<long>(j.get<long long>()));
    long long num = json_int(json_key(j, "num"), "numerator");
    long long den = json_int(json_key(j, "den"), "denominator");
    if (den == 0) throw InvalidInput("coefficient with zero denominator");
    mpq_class out(static_cast<long>(num), static_cast<long>(den));
    out.canonicalize();
    return out;
}

inline Json poly_to_json(const CycField::Poly& p) {
    Json out = Json::array();
    for (const auto& c : p) out.push_back(coeff_to_json(c));
    return out;
}

inline CycField::Poly poly_from_json(const CycField& f, const Json& j) {
    if (!j.is_array()) throw InvalidInput("coefficient vector must be an array");
    if (j.size() > f.degree())
        throw InvalidInput("coefficient vector longer than the field degree");
    CycField::Poly out = f.zero();
    for (size_t i = 0; i < j.size(); ++i) out[i] = coeff_from_json(j[i]);
    return out;
}

inline Json cmat_to_json(const CycMat& m) {
    Json rows = Json::array();
    for (const auto& r : m) {
        Json row = Json::array();
        for (const auto& e : r) row.push_back(poly_to_json(e));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline CycMat cmat_from_json(const CycField& f, const Json& j) {
    if (!j.is_array()) throw InvalidInput("matrix must be an array of rows");
    CycMat out;
    for (const auto& r : j) {
        if (!r.is_array()) throw InvalidInput("matrix row must be an array");
        std::vector<CycField::Poly> row;
        for (const auto& e : r) row.push_back(poly_from_json(f, e));
        out.push_back(std::move(row));
    }
    return out;
}

/// {"zeta_order":N,"entries":[[[c0,c1,...],...],...]}
inline Json operator_to_json(const ModelOperator& op) {
    return Json{{"zeta_order", op.zeta_order}, {"entries", cmat_to_json(op.matrix)}};
}

// ---- coverings: {"total":[...],"base":[...],"map":{...}} ----
// point labels are arbitrary distinct integers; the map object keys them as
// decimal strings, and everything is canonicalized to positions on parse

inline Json covering_to_json(const Covering& c) {
    Json total = Json::array(), base = Json::array(), map = Json::object();
    for (long long s = 0; s < c.total_size; ++s) total.push_back(s);
    for (long long b = 0; b < c.base_size; ++b) base.push_back(b);
    for (long long s = 0; s < c.total_size; ++s) map[std::to_string(s)] = c.map[s];
    return Json{{"total", std::move(total)}, {"base", std::move(base)}, {"map", std::move(map)}};
}

inline Covering covering_from_json(const Json& j) {
    auto total = json_int_list(json_key(j, "total"), "total point");
    auto base = json_int_list(json_key(j, "base"), "base point");
    const Json& m = json_key(j, "map");
    if (!m.is_object()) throw InvalidInput("covering map must be an object");
    auto position = [](const std::vector<long long>& labels, long long v, const char* what) {
        for (size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == v) return static_cast<long long>(i);
        throw InvalidInput(std::string(what) + " label " + std::to_string(v) + " is not listed");
    };
    std::vector<long long> map(total.size(), -1);
    for (const auto& [key, val] : m.items()) {
        long long s;
        try {
            s = std::stoll(key);
        } catch (const std::exception&) {
            throw InvalidInput("covering map key '" + key + "' is not an integer label");
        }
        map[position(total, s, "total")] = position(base, json_int(val, "map value"), "base");
    }
    for (long long v : map)
        if (v < 0) throw InvalidInput("covering map misses a total point");
    return Covering(static_cast<long long>(total.size()), static_cast<long long>(base.size()),
                    std::move(map));
}

// ---- descent data: sections per total point, transitions per listed pair ----

inline Json descent_datum_to_json(const DescentDatum& d) {
    Json sections = Json::array();
    for (const auto& s : d.sections) {
        Json vec = Json::array();
        for (const auto& p : s) vec.push_back(poly_to_json(p));
        sections.push_back(std::move(vec));
    }
    Json transitions = Json::array();
    for (const auto& [key, mat] : d.transitions)
        transitions.push_back(Json{{"from", key.first}, {"to", key.second}, {"matrix", cmat_to_json(mat)}});
    return Json{{"zeta_order", d.zeta_order}, {"sections", std::move(sections)},
                {"transitions", std::move(transitions)}};
}

inline DescentDatum descent_datum_from_json(const Json& j) {
    DescentDatum d;
    d.zeta_order = json_int(json_key(j, "zeta_order"), "zeta_order");
    if (d.zeta_order < 1) throw InvalidInput("zeta_order must be positive");
    CycField f(d.zeta_order);
    const Json& sections = json_key(j, "sections");
    if (!sections.is_array()) throw InvalidInput("sections must be an array");
    for (const auto& s : sections) {
        if (!s.is_array()) throw InvalidInput("a section must be an array of coefficient vectors");
        std::vector<CycField::Poly> vec;
        for (const auto& p : s) vec.push_back(poly_from_json(f, p));
        d.sections.push_back(std::move(vec));
    }
    const Json& transitions = json_key(j, "transitions");
    if (!transitions.is_array()) throw InvalidInput("transitions must be an array");
    for (const auto& t : transitions) {
        long long from = json_int(json_key(t, "from"), "transition source");
        long long to = json_int(json_key(t, "to"), "transition target");
        d.transitions[{from, to}] = cmat_from_json(f, json_key(t, "matrix"));
    }
    return d;
}

} // namespace finsymp
