#include "kha/io.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include "kha/error.hpp"

namespace kha::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw SchemaError(path.empty() ? "/" : path, what);
}

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t k) { return path + "/" + std::to_string(k); }

void expect_object(const json& j, const std::string& path, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const char* key : required)
        if (!j.contains(key)) fail(at(path, key), "missing required key");
    for (const auto& [key, _] : j.items()) {
        bool known = std::any_of(required.begin(), required.end(), [&](const char* k) { return key == k; }) ||
                     std::any_of(optional.begin(), optional.end(), [&](const char* k) { return key == k; });
        if (!known) fail(at(path, key), "unknown key");
    }
}

const json& expect_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

long long get_integer(const json& j, const std::string& path, long long lo = INT_MIN, long long hi = INT_MAX) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    long long v = j.is_number_unsigned() && j.get<unsigned long long>() > static_cast<unsigned long long>(LLONG_MAX)
                      ? hi + 1
                      : j.get<long long>();
    if (v < lo || v > hi) fail(path, "integer out of range");
    return v;
}

int get_int(const json& j, const std::string& path, long long lo = INT_MIN) {
    return static_cast<int>(get_integer(j, path, lo, INT_MAX));
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

bool is_decimal(const std::string& s) {
    std::size_t k = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (k == s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(k), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Integer get_decimal(const json& j, const std::string& path) {
    std::string s = get_string(j, path);
    if (!is_decimal(s)) fail(path, "expected a decimal integer string");
    return Integer(s, 10);
}

std::vector<std::string> get_string_list(const json& j, const std::string& path) {
    std::vector<std::string> out;
    std::size_t k = 0;
    for (const auto& x : expect_array(j, path)) out.push_back(get_string(x, at(path, k++)));
    return out;
}

// Runs f, turning domain errors into schema errors at `path`.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

} // namespace

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail("/", std::string("invalid JSON: ") + e.what());
    }
}

std::string dump(const json& j) { return j.dump() + "\n"; }

std::string rational_to_string(const Rational& x) { return x.get_str(10); }

// ---------------------------------------------------------------------------
// Quiver data

json to_json(const DimVector& d) { return json(d.entries()); }

DimVector dim_from_json(const json& j, const std::string& path) {
    std::vector<int> v;
    std::size_t k = 0;
    for (const auto& x : expect_array(j, path)) v.push_back(get_int(x, at(path, k++), 0));
    return DimVector(std::move(v));
}

json to_json(const StabilityCondition& theta) {
    json out = json::array();
    for (const auto& x : theta.entries()) out.push_back(rational_to_string(x));
    return out;
}

StabilityCondition theta_from_json(const json& j, const std::string& path) {
    std::vector<Rational> v;
    std::size_t k = 0;
    for (const auto& x : expect_array(j, path)) {
        std::string p = at(path, k++);
        if (x.is_number_integer()) {
            v.emplace_back(get_int(x, p));
            continue;
        }
        std::string s = get_string(x, p);
        auto slash = s.find('/');
        std::string num = s.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        if (!is_decimal(num) || !is_decimal(den) || den[0] == '-') fail(p, "expected a rational such as \"3/2\"");
        Rational r(Integer(num, 10), Integer(den, 10));
        if (r.get_den() == 0) fail(p, "zero denominator");
        r.canonicalize();
        v.push_back(r);
    }
    return StabilityCondition(std::move(v));
}

json to_json(const Quiver& q) {
    json edges = json::array();
    for (const auto& e : q.edges()) edges.push_back({{"id", e.id}, {"src", e.src}, {"tgt", e.tgt}});
    return {{"vertices", q.vertices()}, {"edges", edges}};
}

Quiver quiver_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    if (!j.contains("vertices")) fail(at(path, "vertices"), "missing required key");
    if (!j.contains("edges")) fail(at(path, "edges"), "missing required key");
    auto vertices = get_string_list(j["vertices"], at(path, "vertices"));
    std::vector<Edge> edges;
    const std::string ep = at(path, "edges");
    std::size_t k = 0;
    for (const auto& e : expect_array(j["edges"], ep)) {
        std::string p = at(ep, k++);
        expect_object(e, p, {"id", "src", "tgt"});
        edges.push_back({get_string(e["id"], at(p, "id")), get_string(e["src"], at(p, "src")),
                         get_string(e["tgt"], at(p, "tgt"))});
    }
    return at_path(path, [&] { return Quiver(std::move(vertices), std::move(edges)); });
}

json to_json(const Potential& w) {
    json out = json::array();
    for (const auto& t : w.terms()) out.push_back({{"coeff", t.coeff}, {"cycle", t.cycle}});
    return out;
}

Potential potential_from_json(const Quiver& q, const json& j, const std::string& path) {
    std::vector<PotentialTerm> terms;
    std::size_t k = 0;
    for (const auto& t : expect_array(j, path)) {
        std::string p = at(path, k++);
        expect_object(t, p, {"coeff", "cycle"});
        terms.push_back({get_integer(t["coeff"], at(p, "coeff"), LLONG_MIN, LLONG_MAX),
                         get_string_list(t["cycle"], at(p, "cycle"))});
    }
    return at_path(path, [&] { return Potential(q, std::move(terms)); });
}

json to_json(const TorusWeighting& t) {
    json weights = json::object();
    for (const auto& [edge, w] : t.weights()) weights[edge] = w;
    return {{"rank", t.rank()}, {"weights", weights}};
}

TorusWeighting torus_from_json(const Quiver& q, const json& j, const std::string& path) {
    expect_object(j, path, {"rank", "weights"});
    int rank = get_int(j["rank"], at(path, "rank"), 0);
    const std::string wp = at(path, "weights");
    if (!j["weights"].is_object()) fail(wp, "expected an object");
    std::map<std::string, std::vector<int>> weights;
    for (const auto& [edge, w] : j["weights"].items()) {
        std::string p = at(wp, edge);
        if (!q.edge_index(edge)) fail(p, "unknown edge id '" + edge + "'");
        std::vector<int> v;
        std::size_t k = 0;
        for (const auto& x : expect_array(w, p)) v.push_back(get_int(x, at(p, k++)));
        if (v.size() != static_cast<std::size_t>(rank)) fail(p, "weight length differs from the torus rank");
        weights.emplace(edge, std::move(v));
    }
    return at_path(path, [&] { return TorusWeighting(q, rank, std::move(weights)); });
}

// ---------------------------------------------------------------------------
// Workspace

TorusWeighting Workspace::torus_or_trivial() const { return torus ? *torus : TorusWeighting(quiver, 0, {}); }

ShuffleAlgebra Workspace::algebra() const { return ShuffleAlgebra(quiver, torus_or_trivial()); }

json to_json(const Workspace& ws) {
    json out = to_json(ws.quiver);
    if (ws.potential) out["potential"] = to_json(*ws.potential);
    if (ws.torus) out["torus"] = to_json(*ws.torus);
    if (!ws.elements.empty()) {
        json el = json::object();
        for (const auto& [name, p] : ws.elements) el[name] = to_json(p);
        out["elements"] = el;
    }
    return out;
}

Workspace workspace_from_json(const json& j) {
    expect_object(j, "", {"vertices", "edges"}, {"potential", "torus", "elements"});
    Workspace ws;
    ws.quiver = quiver_from_json(j);
    if (j.contains("potential")) ws.potential = potential_from_json(ws.quiver, j["potential"], "/potential");
    if (j.contains("torus")) ws.torus = torus_from_json(ws.quiver, j["torus"], "/torus");
    if (j.contains("elements")) {
        if (!j["elements"].is_object()) fail("/elements", "expected an object");
        ShuffleAlgebra algebra = ws.algebra();
        for (const auto& [name, e] : j["elements"].items()) {
            std::string p = "/elements/" + name;
            LaurentPoly poly = laurent_from_json(e, p, &ws.quiver.vertices());
            at_path(p, [&] { return algebra.element(poly); });
            ws.elements.emplace(name, std::move(poly));
        }
    }
    return ws;
}

// ---------------------------------------------------------------------------
// Laurent polynomials

json to_json(const LaurentPoly& p) {
    const VarSpace& s = p.space();
    json zvars = json::object();
    for (std::size_t i = 0; i < s.num_vertices(); ++i) zvars[s.vertex(i)] = s.count(i);
    json terms = json::array();
    const auto r = static_cast<std::size_t>(s.rank());
    for (const auto& t : p.terms()) {
        json z = json::object();
        for (std::size_t i = 0; i < s.num_vertices(); ++i) {
            std::size_t off = s.z_offset(i);
            z[s.vertex(i)] = std::vector<int>(t.exps.begin() + static_cast<long>(off),
                                              t.exps.begin() + static_cast<long>(off) + s.count(i));
        }
        terms.push_back({{"coeff", t.coeff.get_str(10)},
                         {"q", std::vector<int>(t.exps.begin(), t.exps.begin() + static_cast<long>(r))},
                         {"z", z}});
    }
    return {{"vars", {{"q", s.rank()}, {"z", zvars}}}, {"terms", terms}};
}

LaurentPoly laurent_from_json(const json& j, const std::string& path, const std::vector<std::string>* vertex_order) {
    expect_object(j, path, {"vars", "terms"});
    const std::string vp = at(path, "vars");
    expect_object(j["vars"], vp, {"q", "z"});
    int rank = get_int(j["vars"]["q"], at(vp, "q"), 0);
    const std::string zp = at(vp, "z");
    if (!j["vars"]["z"].is_object()) fail(zp, "expected an object");
    std::map<std::string, int> given;
    for (const auto& [v, c] : j["vars"]["z"].items()) given[v] = get_int(c, at(zp, v), 0);

    std::vector<std::pair<std::string, int>> counts;
    if (vertex_order) {
        for (const auto& [v, _] : given)
            if (std::find(vertex_order->begin(), vertex_order->end(), v) == vertex_order->end())
                fail(at(zp, v), "unknown vertex '" + v + "'");
        for (const auto& v : *vertex_order) {
            auto it = given.find(v);
            counts.emplace_back(v, it == given.end() ? 0 : it->second);
        }
    } else {
        counts.assign(given.begin(), given.end());
    }
    VarSpace space = at_path(vp, [&] { return VarSpace(rank, counts); });

    std::vector<Term> terms;
    const std::string tp = at(path, "terms");
    std::size_t k = 0;
    for (const auto& t : expect_array(j["terms"], tp)) {
        std::string p = at(tp, k++);
        expect_object(t, p, {"coeff", "q", "z"});
        Term term{Exponents(space.size(), 0), get_decimal(t["coeff"], at(p, "coeff"))};
        const json& qs = expect_array(t["q"], at(p, "q"));
        if (qs.size() != static_cast<std::size_t>(rank)) fail(at(p, "q"), "length differs from the q count");
        for (std::size_t x = 0; x < qs.size(); ++x) term.exps[x] = get_int(qs[x], at(at(p, "q"), x));
        const std::string tzp = at(p, "z");
        if (!t["z"].is_object()) fail(tzp, "expected an object");
        for (const auto& [v, e] : t["z"].items()) {
            auto vi = space.vertex_index(v);
            if (!vi || !given.count(v)) fail(at(tzp, v), "vertex not declared in vars");
            const json& arr = expect_array(e, at(tzp, v));
            if (arr.size() != static_cast<std::size_t>(space.count(*vi)))
                fail(at(tzp, v), "length differs from the declared count");
            for (std::size_t c = 0; c < arr.size(); ++c)
                term.exps[space.z_index(*vi, c)] = get_int(arr[c], at(at(tzp, v), c));
        }
        for (const auto& [v, c] : given)
            if (c > 0 && !t["z"].contains(v)) fail(at(tzp, v), "missing exponents");
        terms.push_back(std::move(term));
    }
    return LaurentPoly::from_terms(space, std::move(terms));
}

json to_json(const FramedModuleElement& m) {
    return {{"framing", to_json(m.framing())}, {"payload", to_json(m.payload())}};
}

FramedModuleElement framed_from_json(const ShuffleAlgebra& algebra, const json& j, const std::string& path) {
    expect_object(j, path, {"framing", "payload"});
    DimVector framing = dim_from_json(j["framing"], at(path, "framing"));
    std::vector<std::string> order{std::string(kFramingVertex)};
    const auto& vs = algebra.quiver().vertices();
    order.insert(order.end(), vs.begin(), vs.end());
    LaurentPoly payload = laurent_from_json(j["payload"], at(path, "payload"), &order);
    return at_path(path, [&] { return algebra.framed_element(framing, payload); });
}

json to_json(const RationalFunction& f) {
    json den = json::array();
    for (const auto& d : f.denominator_factors()) den.push_back(to_json(d));
    return {{"numerator", to_json(f.numerator())}, {"denominator", den}};
}

RationalFunction rational_from_json(const json& j, const std::string& path) {
    expect_object(j, path, {"numerator", "denominator"});
    LaurentPoly num = laurent_from_json(j["numerator"], at(path, "numerator"));
    LaurentPoly den = LaurentPoly::constant(num.space(), 1);
    const std::string dp = at(path, "denominator");
    std::size_t k = 0;
    for (const auto& d : expect_array(j["denominator"], dp)) {
        std::string p = at(dp, k++);
        LaurentPoly f = laurent_from_json(d, p);
        if (!(f.space() == num.space())) fail(p, "factor lives in a different space");
        den *= f;
    }
    return at_path(path, [&] { return RationalFunction(num, den); });
}

json to_json(const NoncommPathPoly& p) {
    json terms = json::array();
    for (const auto& t : p.terms()) terms.push_back({{"coeff", t.coeff}, {"path", t.path}});
    return {{"source", p.source()}, {"target", p.target()}, {"terms", terms}};
}

NoncommPathPoly path_poly_from_json(const Quiver& q, const json& j, const std::string& path) {
    expect_object(j, path, {"source", "target", "terms"});
    std::vector<PathTerm> terms;
    const std::string tp = at(path, "terms");
    std::size_t k = 0;
    for (const auto& t : expect_array(j["terms"], tp)) {
        std::string p = at(tp, k++);
        expect_object(t, p, {"coeff", "path"});
        terms.push_back({get_integer(t["coeff"], at(p, "coeff"), LLONG_MIN, LLONG_MAX),
                         get_string_list(t["path"], at(p, "path"))});
    }
    return at_path(path, [&] {
        return NoncommPathPoly(q, get_string(j["source"], at(path, "source")),
                               get_string(j["target"], at(path, "target")), std::move(terms));
    });
}

// ---------------------------------------------------------------------------
// Weights

json to_json(const WeightList& s) {
    json zvars = json::object();
    for (std::size_t i = 0; i < s.space.num_vertices(); ++i) zvars[s.space.vertex(i)] = s.space.count(i);
    json ws = json::array();
    for (const auto& w : s.weights) ws.push_back(std::vector<int>(w.begin(), w.end()));
    return {{"vars", {{"q", s.space.rank()}, {"z", zvars}}}, {"weights", ws}};
}

WeightList weights_from_json(const json& j, const std::string& path) {
    expect_object(j, path, {"vars", "weights"});
    const std::string vp = at(path, "vars");
    expect_object(j["vars"], vp, {"q"}, {"z"});
    int rank = get_int(j["vars"]["q"], at(vp, "q"), 0);
    std::vector<std::pair<std::string, int>> counts;
    if (j["vars"].contains("z")) {
        if (!j["vars"]["z"].is_object()) fail(at(vp, "z"), "expected an object");
        for (const auto& [v, c] : j["vars"]["z"].items()) counts.emplace_back(v, get_int(c, at(at(vp, "z"), v), 0));
    }
    WeightList s{at_path(vp, [&] { return VarSpace(rank, counts); }), {}};
    const std::string wp = at(path, "weights");
    std::size_t k = 0;
    for (const auto& w : expect_array(j["weights"], wp)) {
        std::string p = at(wp, k++);
        const json& arr = expect_array(w, p);
        if (arr.size() != s.space.size()) fail(p, "weight length differs from the variable count");
        Exponents e;
        for (std::size_t x = 0; x < arr.size(); ++x) e.push_back(get_int(arr[x], at(p, x)));
        s.weights.push_back(std::move(e));
    }
    return s;
}

json to_json(const LowestWeight& w) { return {{"v", w.v}, {"sign", w.sign}}; }

// ---------------------------------------------------------------------------
// Wall-crossing reports

json to_json(const HNStrata& s) {
    json strata = json::array();
    for (const auto& st : s.strata) {
        json parts = json::array();
        for (const auto& p : st.parts()) parts.push_back(to_json(p));
        json slopes = json::array();
        for (const auto& mu : st.slopes()) slopes.push_back(rational_to_string(mu));
        strata.push_back({{"parts", parts}, {"slopes", slopes}});
    }
    json order = json::array();
    for (const auto& [a, b] : s.order) order.push_back({a, b});
    return {{"d", to_json(s.d)}, {"strata", strata}, {"order", order}};
}

HNStrata strata_from_json(const StabilityCondition& theta, const json& j, const std::string& path) {
    expect_object(j, path, {"d", "strata", "order"});
    HNStrata s;
    s.d = dim_from_json(j["d"], at(path, "d"));
    const std::string sp = at(path, "strata");
    std::size_t k = 0;
    for (const auto& st : expect_array(j["strata"], sp)) {
        std::string p = at(sp, k++);
        expect_object(st, p, {"parts", "slopes"});
        std::vector<DimVector> parts;
        std::size_t m = 0;
        for (const auto& x : expect_array(st["parts"], at(p, "parts"))) parts.push_back(dim_from_json(x, at(at(p, "parts"), m++)));
        HNStratum stratum = at_path(p, [&] { return HNStratum(theta, s.d, std::move(parts)); });
        if (to_json(StabilityCondition(stratum.slopes())) != st["slopes"]) fail(at(p, "slopes"), "slopes disagree with the stability");
        s.strata.push_back(std::move(stratum));
    }
    const std::string op = at(path, "order");
    k = 0;
    for (const auto& pr : expect_array(j["order"], op)) {
        std::string p = at(op, k++);
        if (!pr.is_array() || pr.size() != 2) fail(p, "expected a pair of indices");
        auto hi = static_cast<long long>(s.strata.size()) - 1;
        s.order.emplace_back(static_cast<std::size_t>(get_integer(pr[0], at(p, 0), 0, hi)),
                             static_cast<std::size_t>(get_integer(pr[1], at(p, 1), 0, hi)));
    }
    return s;
}

json to_json(const GenerationReport& r) {
    json missing = json::array();
    for (const auto& m : r.missing) missing.push_back(to_json(m));
    return {{"d", to_json(r.d)},
            {"window", {r.window.lo, r.window.hi}},
            {"gen_degree", r.gen_degree},
            {"achieved_rank", r.achieved_rank},
            {"target_rank", r.target_rank},
            {"products", r.products},
            {"missing", missing}};
}

GenerationReport report_from_json(const json& j, const std::string& path) {
    expect_object(j, path, {"d", "window", "gen_degree", "achieved_rank", "target_rank", "products", "missing"});
    GenerationReport r;
    r.d = dim_from_json(j["d"], at(path, "d"));
    const std::string wp = at(path, "window");
    if (!j["window"].is_array() || j["window"].size() != 2) fail(wp, "expected [lo, hi]");
    r.window = {get_int(j["window"][0], at(wp, 0)), get_int(j["window"][1], at(wp, 1))};
    r.gen_degree = get_int(j["gen_degree"], at(path, "gen_degree"), 0);
    r.achieved_rank = static_cast<std::size_t>(get_integer(j["achieved_rank"], at(path, "achieved_rank"), 0, LLONG_MAX));
    r.target_rank = static_cast<std::size_t>(get_integer(j["target_rank"], at(path, "target_rank"), 0, LLONG_MAX));
    r.products = static_cast<std::size_t>(get_integer(j["products"], at(path, "products"), 0, LLONG_MAX));
    if (r.achieved_rank > r.target_rank) fail(at(path, "achieved_rank"), "exceeds the target rank");
    const std::string mp = at(path, "missing");
    std::size_t k = 0;
    for (const auto& m : expect_array(j["missing"], mp)) r.missing.push_back(laurent_from_json(m, at(mp, k++)));
    return r;
}

json to_json(const RelationSearchReport& r) {
    json cands = json::array();
    for (const auto& c : r.candidates) cands.push_back(to_json(c));
    json sat = json::array();
    for (bool b : r.satisfied) sat.push_back(b);
    return {{"r_max", r.r_max},
            {"candidates", cands},
            {"satisfied", sat},
            {"alpha", r.alpha ? to_json(*r.alpha) : json(nullptr)},
            {"message", r.message}};
}

} // namespace kha::io
