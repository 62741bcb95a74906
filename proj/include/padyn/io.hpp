#pragma once

// JSON descriptors in, JSON / DOT reports out. Key order is fixed so equal
// inputs give byte-identical output.

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "padyn/affine.hpp"

namespace padyn {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::vector<std::int64_t> int_array(const Json& j, const char* what)
{
    if (j.is_number_integer()) return {j.get<std::int64_t>()};
    if (!j.is_array()) fail(errc::invalid_input, std::string(what) + " must be an integer or an integer array");
    std::vector<std::int64_t> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) fail(errc::invalid_input, std::string(what) + " must contain integers");
        out.push_back(v.get<std::int64_t>());
    }
    return out;
}

inline const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) fail(errc::invalid_input, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

} // namespace detail

inline Json valuation_json(int v) { return v == kInfinity ? Json("inf") : Json(v); }

// --- input ---------------------------------------------------------------

/// {"p","f","unram_poly","e","eis_poly","precision"}; precision_override > 0 replaces the file's value.
inline RingPtr parse_ring(const Json& j, int precision_override = 0)
{
    const auto p = detail::field(j, "p").get<std::int64_t>();
    const int f = j.value("f", 1);
    const int e = j.value("e", 1);
    std::vector<std::int64_t> unram = j.contains("unram_poly") ? detail::int_array(j.at("unram_poly"), "unram_poly")
                                                               : std::vector<std::int64_t>{0, 1};
    std::vector<std::vector<std::int64_t>> eis;
    if (j.contains("eis_poly")) {
        const auto& ej = j.at("eis_poly");
        if (!ej.is_array()) fail(errc::invalid_input, "eis_poly must be an array");
        for (const auto& c : ej) eis.push_back(detail::int_array(c, "eis_poly coefficient"));
    } else {
        eis.assign(static_cast<std::size_t>(e) + 1, {0});
        eis[0] = {-p};
        eis[e] = {1};
    }
    int precision = precision_override > 0 ? precision_override : j.value("precision", 0);
    if (precision == 0) fail(errc::invalid_input, "missing field \"precision\"");
    return RingSpec::create(p, f, std::move(unram), e, std::move(eis), precision);
}

/// An integer, or an array of pi-coefficients each given as an integer or a
/// y-polynomial coefficient array.
inline Literal parse_literal(const Json& j)
{
    if (j.is_number_integer()) return literal_from_int(j.get<std::int64_t>());
    if (!j.is_array()) fail(errc::invalid_input, "element literal must be an integer or an array");
    Literal out;
    for (const auto& c : j) out.push_back(detail::int_array(c, "element literal coefficient"));
    if (out.empty()) out.push_back({0});
    return out;
}

inline Literal parse_literal(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& ex) {
        fail(errc::invalid_input, "cannot parse element literal \"" + text + "\": " + ex.what());
    }
    return parse_literal(j);
}

/// {"type":"polynomial"|"series","coeffs":[literal...],"tail_val":t}
inline ConvergentSeries parse_map(const Json& j, const RingPtr& r)
{
    const std::string type = j.value("type", "polynomial");
    const auto& cj = detail::field(j, "coeffs");
    if (!cj.is_array() || cj.empty()) fail(errc::invalid_input, "coeffs must be a non-empty array");
    std::vector<Element> coeffs;
    for (const auto& c : cj) coeffs.push_back(Element::from_literal(r, parse_literal(c)));
    if (type == "polynomial") return ConvergentSeries::polynomial(r, std::move(coeffs));
    if (type != "series") fail(errc::invalid_input, "map type must be \"polynomial\" or \"series\"");
    const int tail = detail::field(j, "tail_val").get<int>();
    return ConvergentSeries::make(r, std::move(coeffs), tail);
}

// --- output --------------------------------------------------------------

inline Json to_json(const RingSpec& r)
{
    Json j;
    j["p"] = r.p();
    j["f"] = r.f();
    j["unram_poly"] = r.unram_poly();
    j["e"] = r.e();
    j["eis_poly"] = r.eis_poly();
    j["precision"] = r.precision();
    j["degree"] = r.degree();
    j["residue_size"] = r.residue_size();
    return j;
}

inline std::string digit_string(const Element& x) { return x.ring().format_digits(x.digits()); }

/// Inverse of parse_literal: an integer when possible, else pi-coefficients.
inline Json literal_json(const Literal& lit, int f)
{
    auto w_json = [&](const std::vector<std::int64_t>& w) {
        std::size_t n = w.size();
        while (n > 1 && w[n - 1] == 0) --n;
        return n == 1 ? Json(w[0]) : Json(std::vector<std::int64_t>(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n)));
    };
    if (lit.size() == 1 && (f == 1 || w_json(lit[0]).is_number_integer())) return w_json(lit[0]);
    Json j = Json::array();
    for (const auto& w : lit) j.push_back(w_json(w));
    return j;
}

inline Json to_json(const ConvergentSeries& s)
{
    Json j;
    j["type"] = s.is_polynomial() ? "polynomial" : "series";
    Json c = Json::array();
    for (const auto& x : s.coeffs) c.push_back(literal_json(to_literal(x), s.ring->f()));
    j["coeffs"] = c;
    if (!s.is_polynomial()) j["tail_val"] = s.tail_val;
    return j;
}

inline Json cycle_json(const RingSpec& r, const Cycle& c, const std::optional<Classification>& cls,
                       const std::optional<CycleInvariants>& inv)
{
    Json j;
    j["level"] = c.level;
    j["length"] = c.length();
    Json reps = Json::array();
    for (auto x : c.reps) reps.push_back(r.format_residue({c.level, x}));
    j["reps"] = reps;
    if (cls) {
        j["class"] = to_string(cls->kind);
        if (cls->kind == CycleClass::partially_splits) {
            j["ell"] = cls->ell;
            j["fixed_digit"] = r.format_digits(std::vector<int>{static_cast<int>(cls->fixed_digit)});
        }
    }
    if (inv) {
        j["A_hat"] = inv->A_hat;
        j["B"] = valuation_json(inv->B);
    }
    return j;
}

inline Json to_json(const EVector& v)
{
    Json j;
    j["prefix"] = v.prefix;
    j["eventual"] = v.eventual;
    j["stabilization_index"] = v.stabilization_index();
    return j;
}

inline Json to_json(const MinimalTypeDescriptor& t)
{
    Json j;
    j["k"] = t.k;
    j["level"] = t.level;
    j["E"] = to_json(t.E);
    j["odometer"] = t.odometer(10);
    return j;
}

inline Json to_json(const Verdict& v)
{
    Json j;
    j["kind"] = to_string(v.kind);
    switch (v.kind) {
    case VerdictKind::attracting_periodic: j["period"] = v.period; break;
    case VerdictKind::indifferent_periodic:
        j["period"] = v.period;
        j["certified_to"] = v.certified_to;
        break;
    case VerdictKind::minimal_type: j["type"] = to_json(*v.type); break;
    case VerdictKind::basin: j["target"] = v.target; break;
    case VerdictKind::unresolved: j["level_reached"] = v.level_reached; break;
    }
    return j;
}

/// Maximal subtrees whose type can be read off the tree.
inline std::vector<std::pair<std::size_t, MinimalTypeDescriptor>> typed_components(const DecompositionTree& t)
{
    std::vector<std::pair<std::size_t, MinimalTypeDescriptor>> out;
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
        const std::size_t id = stack.back();
        stack.pop_back();
        if (auto ty = infer_type(t, id)) {
            out.emplace_back(id, *ty);
            continue;
        }
        const auto& ch = t.nodes[id].children;
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return out;
}

inline Json to_json(const DecompositionTree& t)
{
    const RingSpec& r = *t.ring;
    Json j;
    j["ring"] = to_json(r);
    j["map"] = to_json(t.phi);
    j["max_level"] = t.max_level;
    j["trust_predictions"] = t.trust_predictions;
    j["hypothesis"] = t.hypothesis;

    Json nodes = Json::array();
    for (const auto& n : t.nodes) {
        Json x;
        x["id"] = n.id;
        x["parent"] = n.parent ? Json(*n.parent) : Json(nullptr);
        x["level"] = n.level;
        x["length"] = n.length();
        Json reps = Json::array();
        for (auto rep : n.reps) reps.push_back(r.format_residue({n.level, rep}));
        x["reps"] = reps;
        x["role"] = n.id == 0 ? "root" : (n.basin ? "tail" : "cycle");
        if (n.cls) {
            x["class"] = to_string(n.cls->kind);
            if (n.cls->kind == CycleClass::partially_splits) x["ell"] = n.cls->ell;
            x["A"] = valuation_json(n.A);
            x["A_hat"] = n.A_hat;
            x["B"] = valuation_json(n.B);
        }
        x["plan"] = n.plan;
        x["children"] = n.children;
        x["verdict"] = n.verdict ? to_json(*n.verdict) : Json(nullptr);
        nodes.push_back(std::move(x));
    }
    j["nodes"] = std::move(nodes);

    Json comps = Json::array();
    for (const auto& [id, ty] : typed_components(t)) {
        Json c;
        c["node"] = id;
        c["type"] = to_json(ty);
        comps.push_back(std::move(c));
    }
    j["components"] = std::move(comps);

    Json s;
    for (auto k : {VerdictKind::attracting_periodic, VerdictKind::indifferent_periodic, VerdictKind::minimal_type,
                   VerdictKind::basin, VerdictKind::unresolved})
        s[std::string(to_string(k))] = t.count(k);
    j["summary"] = s;
    const auto part = check_partition(t);
    Json pj;
    pj["ok"] = part.ok;
    if (!part.ok) pj["message"] = part.message;
    j["partition"] = pj;
    return j;
}

inline std::string to_dot(const DecompositionTree& t)
{
    const RingSpec& r = *t.ring;
    std::ostringstream os;
    os << "digraph decomposition {\n  node [shape=box, style=filled, fillcolor=white];\n";
    for (const auto& n : t.nodes) {
        std::string label;
        if (n.id == 0)
            label = "O_K";
        else if (n.basin)
            label = std::to_string(n.length()) + " tail balls@" + std::to_string(n.level);
        else
            label = std::to_string(n.length()) + "@" + std::to_string(n.level) + ":" + std::string(to_string(n.cls->kind));
        std::string color = "white";
        if (n.verdict) {
            switch (n.verdict->kind) {
            case VerdictKind::attracting_periodic: color = "tomato"; break;
            case VerdictKind::indifferent_periodic: color = "orange"; break;
            case VerdictKind::minimal_type: color = "palegreen"; break;
            case VerdictKind::basin: color = "lightgray"; break;
            case VerdictKind::unresolved: color = "yellow"; break;
            }
        }
        os << "  n" << n.id << " [label=\"" << label << "\", fillcolor=" << color;
        if (!n.basin && n.id != 0) os << ", tooltip=\"" << r.format_residue({n.level, n.reps.front()}) << "\"";
        os << "];\n";
    }
    for (const auto& n : t.nodes)
        for (auto c : n.children) os << "  n" << n.id << " -> n" << c << ";\n";
    for (const auto& n : t.nodes)
        if (n.verdict && n.verdict->kind == VerdictKind::basin)
            os << "  n" << n.id << " -> n" << n.verdict->target << " [style=dashed];\n";
    os << "}\n";
    return os.str();
}

inline Json to_json(const AffineReport& a, int depth = 4)
{
    Json j;
    j["case"] = to_string(a.kind);
    if (a.fixed_point) {
        Json fp;
        if (a.fixed_point->valuation == kInfinity) {
            fp["valuation"] = "inf";
        } else {
            fp["valuation"] = a.fixed_point->valuation;
            fp["unit"] = digit_string(*a.fixed_point->unit);
        }
        j["fixed_point"] = fp;
    }
    switch (a.kind) {
    case AffineCase::translation:
        j["invariant_balls"] = "every ball of radius 1";
        j["type"] = to_json(*a.type);
        j["E_head"] = a.type->E.head(static_cast<std::size_t>(depth));
        break;
    case AffineCase::attracting: j["attractor"] = "fixed point, whole field in its basin"; break;
    case AffineCase::periodic:
        j["root_of_unity"] = to_string(a.root_of_unity);
        j["ell"] = a.ell;
        break;
    case AffineCase::minimal:
        j["root_of_unity"] = to_string(a.root_of_unity);
        j["ell"] = a.ell;
        j["v_star"] = a.v_star;
        j["component_count"] = a.component_count;
        j["type"] = to_json(*a.type);
        j["E_head"] = a.type->E.head(static_cast<std::size_t>(depth));
        break;
    }
    return j;
}

} // namespace padyn
