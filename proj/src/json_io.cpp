#include "gkmfiber/json_io.hpp"

#include "gkmfiber/errors.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

namespace gkmfiber {

namespace {

Json integer_to_json(const Integer& z)
{
    if (z.fits_slong_p())
        return static_cast<std::int64_t>(z.get_si());
    return z.get_str();
}

Integer integer_from_json(const Json& j, const std::string& field)
{
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) {
            const auto u = j.get<std::uint64_t>();
            return Integer(std::to_string(u));
        }
        return Integer(std::to_string(j.get<std::int64_t>()));
    }
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
        if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
            throw InvalidArgument(field + ": \"" + s + "\" is not a decimal integer");
        return Integer(s);
    }
    throw InvalidArgument(field + ": expected an integer");
}

std::size_t index_from_json(const Json& j, const std::string& field)
{
    if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0))
        throw InvalidArgument(field + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

std::size_t parse_key(const std::string& key, const std::string& field)
{
    std::size_t value = 0;
    const auto [end, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
    if (ec != std::errc() || end != key.data() + key.size() || key.empty())
        throw InvalidArgument(field + ": key \"" + key + "\" is not a non-negative integer");
    return value;
}

const Json& member(const Json& j, const char* name, const std::string& field)
{
    if (!j.is_object())
        throw InvalidArgument((field.empty() ? std::string("input") : field) + ": expected an object");
    const auto it = j.find(name);
    if (it == j.end())
        throw InvalidArgument(field + (field.empty() ? "" : ".") + name + ": missing");
    return *it;
}

const Json& array_member(const Json& j, const char* name, const std::string& field)
{
    const Json& a = member(j, name, field);
    if (!a.is_array())
        throw InvalidArgument(field + (field.empty() ? "" : ".") + name + ": expected an array");
    return a;
}

const Json& object_member(const Json& j, const char* name, const std::string& field)
{
    const Json& a = member(j, name, field);
    if (!a.is_object())
        throw InvalidArgument(field + (field.empty() ? "" : ".") + name + ": expected an object");
    return a;
}

std::string sub(const std::string& prefix, const std::string& name)
{
    return prefix + name;
}

Json generators_to_json(const std::vector<GradedGenerator>& gens)
{
    Json out = Json::array();
    for (const GradedGenerator& g : gens)
        out.push_back(Json{{"degree", g.degree}, {"class", class_to_json(g.cls)}});
    return out;
}

Json perm_to_json(const std::vector<std::size_t>& perm)
{
    Json out = Json::array();
    for (std::size_t p : perm)
        out.push_back(p);
    return out;
}

} // namespace

Json rational_to_json(const Rational& r)
{
    return Json::array({integer_to_json(r.get_num()), integer_to_json(r.get_den())});
}

Rational rational_from_json(const Json& j, const std::string& field)
{
    if (j.is_number_integer())
        return Rational(integer_from_json(j, field));
    if (!j.is_array() || j.size() != 2)
        throw InvalidArgument(field + ": expected [num, den]");
    const Integer num = integer_from_json(j[0], field + "[0]");
    const Integer den = integer_from_json(j[1], field + "[1]");
    if (den == 0)
        throw InvalidArgument(field + ": zero denominator");
    return make_rational(num, den);
}

Json vector_to_json(std::span<const Rational> v)
{
    Json out = Json::array();
    for (const Rational& r : v)
        out.push_back(rational_to_json(r));
    return out;
}

RationalVector vector_from_json(const Json& j, const std::string& field, std::size_t expected_length)
{
    if (!j.is_array() || j.size() != expected_length)
        throw InvalidArgument(field + ": expected an array of " + std::to_string(expected_length) + " rationals");
    RationalVector v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(rational_from_json(j[i], field + "[" + std::to_string(i) + "]"));
    return v;
}

Json matrix_to_json(const RationalMatrix& m)
{
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        out.push_back(vector_to_json(m.row(r)));
    return out;
}

RationalMatrix matrix_from_json(const Json& j, const std::string& field, std::size_t n)
{
    if (!j.is_array() || j.size() != n)
        throw InvalidArgument(field + ": expected " + std::to_string(n) + " rows");
    RationalMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const RationalVector row = vector_from_json(j[r], field + "[" + std::to_string(r) + "]", n);
        for (std::size_t c = 0; c < n; ++c)
            m(r, c) = row[c];
    }
    return m;
}

Json polynomial_to_json(const Polynomial& p)
{
    Json out = Json::array();
    for (const auto& [mono, coeff] : p.terms()) {
        Json exps = Json::array();
        for (unsigned e : mono)
            exps.push_back(e);
        out.push_back(Json{{"coeffs", rational_to_json(coeff)}, {"exps", exps}});
    }
    return out;
}

Polynomial polynomial_from_json(const Json& j, const std::string& field, std::size_t n)
{
    if (!j.is_array())
        throw InvalidArgument(field + ": expected a list of terms");
    Polynomial p(n);
    for (std::size_t t = 0; t < j.size(); ++t) {
        const std::string where = field + "[" + std::to_string(t) + "]";
        const Rational c = rational_from_json(member(j[t], "coeffs", where), where + ".coeffs");
        const Json& exps = array_member(j[t], "exps", where);
        if (exps.size() != n)
            throw InvalidArgument(where + ".exps: expected " + std::to_string(n) + " exponents");
        Monomial m(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t e = index_from_json(exps[i], where + ".exps[" + std::to_string(i) + "]");
            if (e > std::numeric_limits<unsigned>::max())
                throw InvalidArgument(where + ".exps[" + std::to_string(i) + "]: exponent too large");
            m[i] = static_cast<unsigned>(e);
        }
        p.add_term(m, c);
    }
    return p;
}

Json graph_to_json(const GkmGraph& g)
{
    Json vertices = Json::array();
    for (const GkmVertex& v : g.vertices())
        vertices.push_back(Json{{"id", v.id}, {"label", v.label}});
    Json edges = Json::array();
    for (const GkmEdge& e : g.edges())
        edges.push_back(Json{{"src", e.source},
                             {"dst", e.target},
                             {"weight", vector_to_json(e.weight.coefficients())},
                             {"opp", e.opposite}});
    return Json{{"dim_t", g.dim_t()}, {"vertices", vertices}, {"edges", edges}};
}

GkmGraph graph_from_json(const Json& j, const std::string& prefix)
{
    const std::string field = prefix.empty() ? "" : prefix.substr(0, prefix.size() - 1);
    const std::size_t n = index_from_json(member(j, "dim_t", field), sub(prefix, "dim_t"));
    if (n == 0)
        throw InvalidArgument(sub(prefix, "dim_t") + ": must be positive");
    GkmGraph g(n);
    const Json& vertices = array_member(j, "vertices", field);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const std::string where = sub(prefix, "vertices[" + std::to_string(i) + "]");
        const std::size_t id = index_from_json(member(vertices[i], "id", where), where + ".id");
        if (id != i)
            throw InvalidArgument(where + ".id: expected " + std::to_string(i));
        std::string label;
        if (const auto it = vertices[i].find("label"); it != vertices[i].end()) {
            if (!it->is_string())
                throw InvalidArgument(where + ".label: expected a string");
            label = it->get<std::string>();
        }
        g.add_vertex(label);
    }
    const Json& edges = array_member(j, "edges", field);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string where = sub(prefix, "edges[" + std::to_string(i) + "]");
        GkmEdge e;
        e.source = index_from_json(member(edges[i], "src", where), where + ".src");
        e.target = index_from_json(member(edges[i], "dst", where), where + ".dst");
        e.opposite = index_from_json(member(edges[i], "opp", where), where + ".opp");
        if (e.source >= g.vertex_count())
            throw InvalidArgument(where + ".src: no vertex " + std::to_string(e.source));
        if (e.target >= g.vertex_count())
            throw InvalidArgument(where + ".dst: no vertex " + std::to_string(e.target));
        if (e.opposite >= edges.size())
            throw InvalidArgument(where + ".opp: no edge " + std::to_string(e.opposite));
        e.weight = LinearForm(vector_from_json(member(edges[i], "weight", where), where + ".weight", n));
        g.add_directed_edge(std::move(e));
    }
    try {
        g.validate();
    } catch (const InvalidArgument& e) {
        throw InvalidArgument(prefix + e.what());
    }
    return g;
}

Json class_to_json(const GkmClass& c)
{
    Json out = Json::object();
    for (std::size_t v = 0; v < c.size(); ++v)
        out[std::to_string(v)] = polynomial_to_json(c.values[v]);
    return out;
}

GkmClass class_from_json(const Json& j, const std::string& field, std::size_t vertices, std::size_t n)
{
    if (!j.is_object())
        throw InvalidArgument(field + ": expected an object keyed by vertex id");
    GkmClass c{std::vector<Polynomial>(vertices, Polynomial(n))};
    std::vector<bool> seen(vertices, false);
    for (const auto& [key, value] : j.items()) {
        const std::size_t v = parse_key(key, field);
        if (v >= vertices)
            throw InvalidArgument(field + "." + key + ": no such vertex");
        c.values[v] = polynomial_from_json(value, field + "." + key, n);
        seen[v] = true;
    }
    for (std::size_t v = 0; v < vertices; ++v)
        if (!seen[v])
            throw InvalidArgument(field + "." + std::to_string(v) + ": missing");
    return c;
}

Json fibration_to_json(const GkmFibration& f)
{
    Json out = graph_to_json(f.total());
    out["base"] = graph_to_json(f.base());
    Json projection = Json::object();
    for (std::size_t u = 0; u < f.projection().size(); ++u)
        projection[std::to_string(u)] = f.projection()[u];
    out["projection"] = projection;
    Json data = Json::object();
    for (std::size_t e = 0; e < f.base().edge_count(); ++e) {
        Json transport = Json::object();
        for (const auto& [u, v] : f.edge_data(e).transport)
            transport[std::to_string(u)] = v;
        data[std::to_string(e)] = Json{{"transport", transport}, {"twist", matrix_to_json(f.edge_data(e).twist)}};
    }
    out["edge_data"] = data;
    return out;
}

GkmFibration fibration_from_json(const Json& j)
{
    GkmGraph total = graph_from_json(j);
    GkmGraph base = graph_from_json(member(j, "base", ""), "base.");
    const Json& pj = object_member(j, "projection", "");
    std::vector<std::size_t> projection(total.vertex_count());
    std::vector<bool> seen(total.vertex_count(), false);
    for (const auto& [key, value] : pj.items()) {
        const std::size_t u = parse_key(key, "projection");
        if (u >= total.vertex_count())
            throw InvalidArgument("projection." + key + ": no such total vertex");
        projection[u] = index_from_json(value, "projection." + key);
        seen[u] = true;
    }
    for (std::size_t u = 0; u < seen.size(); ++u)
        if (!seen[u])
            throw InvalidArgument("projection." + std::to_string(u) + ": missing");

    std::map<std::size_t, EdgeTransport> data;
    for (const auto& [key, value] : object_member(j, "edge_data", "").items()) {
        const std::string where = "edge_data." + key;
        const std::size_t e = parse_key(key, "edge_data");
        EdgeTransport d;
        for (const auto& [from, to] : object_member(value, "transport", where).items())
            d.transport.emplace(parse_key(from, where + ".transport"), index_from_json(to, where + ".transport." + from));
        d.twist = matrix_from_json(member(value, "twist", where), where + ".twist", total.dim_t());
        data.emplace(e, std::move(d));
    }
    return GkmFibration(std::move(total), std::move(base), std::move(projection), std::move(data));
}

Json root_system_to_json(const RootSystem& rs)
{
    Json roots = Json::array();
    Json coroots = Json::array();
    for (std::size_t i = 0; i < rs.positive_roots.size(); ++i) {
        roots.push_back(vector_to_json(rs.positive_roots[i].coefficients()));
        coroots.push_back(vector_to_json(rs.coroots[i]));
    }
    Json simple = Json::array();
    for (std::size_t s : rs.simple_roots)
        simple.push_back(s);
    return Json{{"series", std::string(1, series_letter(rs.series))},
                {"rank", rs.rank},
                {"dim_t", rs.dim},
                {"positive_roots", roots},
                {"coroots", coroots},
                {"simple_roots", simple}};
}

Json cosets_to_json(const CosetSpace& cs)
{
    Json out = Json::array();
    for (std::size_t i = 0; i < cs.size(); ++i)
        out.push_back(Json{{"representative_word", cs.representatives[i].word_string()}, {"length", cs.lengths[i]}});
    return out;
}

Json balance_to_json(const BalanceReport& r)
{
    Json out = Json::array();
    for (const BalanceEntry& b : r.entries)
        out.push_back(Json{{"edge", b.edge},
                           {"twist_fixes_kernel", b.twist_fixes_kernel},
                           {"transport_respects_edges", b.transport_respects_edges},
                           {"pass", b.ok()}});
    return out;
}

Json holonomy_to_json(const HolonomyGroup& g)
{
    auto elements = [](const std::vector<HolonomyElement>& list) {
        Json out = Json::array();
        for (const HolonomyElement& h : list)
            out.push_back(Json{{"perm", perm_to_json(h.perm)}, {"twist", matrix_to_json(h.twist)}});
        return out;
    };
    return Json{{"base_point", g.base_point},
                {"order", g.order()},
                {"generators", elements(g.generators)},
                {"elements", elements(g.elements)}};
}

Json cs_report_to_json(const std::vector<CsDegreeReport>& r)
{
    Json out = Json::array();
    for (const CsDegreeReport& d : r)
        out.push_back(Json{{"degree", d.degree},
                           {"dim_direct", d.dim_direct},
                           {"dim_cs", d.dim_cs},
                           {"direct_in_cs", d.direct_in_cs},
                           {"cs_in_direct", d.cs_in_direct},
                           {"pass", d.pass()}});
    return out;
}

Json span_checks_to_json(const std::vector<SpanCheck>& checks)
{
    Json out = Json::array();
    for (const SpanCheck& s : checks)
        out.push_back(Json{{"degree", s.degree}, {"span", s.span}, {"ambient", s.ambient}, {"pass", s.ok()}});
    return out;
}

Json basis_report_to_json(const GradedBasisReport& r)
{
    return Json{{"max_degree", r.max_degree},
                {"ambient_dims", r.ambient_dims},
                {"multiplicities", r.multiplicities},
                {"generators", generators_to_json(r.generators)}};
}

Json product_basis_to_json(const ProductBasis& pb)
{
    std::vector<std::size_t> mult;
    for (const GradedGenerator& g : pb.classes) {
        if (mult.size() <= g.degree)
            mult.resize(g.degree + 1, 0);
        ++mult[g.degree];
    }
    return Json{{"class_count", pb.classes.size()},
                {"evaluation_rank", pb.evaluation_rank},
                {"multiplicities", mult},
                {"per_degree", span_checks_to_json(pb.checks)},
                {"pass", pb.pass}};
}

Json tower_report_to_json(const TowerReport& r)
{
    Json stages = Json::array();
    for (const StageReport& s : r.stages)
        stages.push_back(Json{{"index", s.index},
                              {"base", s.base_label},
                              {"fiber", s.fiber_label},
                              {"holonomy_order", s.holonomy_order},
                              {"class_count", s.class_count},
                              {"expected_count", s.expected_count},
                              {"multiplicities", s.multiplicities},
                              {"length_histogram", s.length_histogram},
                              {"per_degree_dims", span_checks_to_json(s.per_degree)},
                              {"holonomy_invariant", s.holonomy_invariant},
                              {"weyl_invariant", s.weyl_invariant},
                              {"pass", s.pass}});
    return Json{{"series", std::string(1, series_letter(r.spec.series))},
                {"rank", r.spec.rank},
                {"stages", stages},
                {"class_count", r.classes.size()},
                {"pass", r.pass}};
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("input: cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return Json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument(std::string("input: ") + e.what());
    }
}

} // namespace gkmfiber
