// Acceptance runner: `acceptance [N ...]` checks the listed criteria (all when none are given)
// and prints one PASS/FAIL line per criterion. Exit status 1 if any selected criterion fails.

#include "gkmfiber/cli.hpp"
#include "gkmfiber/errors.hpp"
#include "gkmfiber/json_io.hpp"
#include "gkmfiber/towers.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace gkmfiber;

namespace {

struct Checker {
    bool ok = true;
    std::vector<std::string> notes;

    void expect(bool condition, const std::string& what)
    {
        if (!condition) {
            ok = false;
            notes.push_back("FAIL " + what);
        } else {
            notes.push_back("ok   " + what);
        }
    }
};

std::string join(const std::vector<std::size_t>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

HomogeneousFibration fibration(Series s, int n, const char* k1, const char* k)
{
    return build_homogeneous_fibration(build_root_system(s, n), IsotropyDatum::parse(k1), IsotropyDatum::parse(k));
}

struct GraphCase {
    const char* name;
    Series s;
    int n;
    const char* k;
};

constexpr std::array<GraphCase, 7> census{{{"A2/T", Series::A, 2, ""},
                                           {"A3/T", Series::A, 3, ""},
                                           {"B2/T", Series::B, 2, ""},
                                           {"C2/T", Series::C, 2, ""},
                                           {"D3/T", Series::D, 3, ""},
                                           {"CP^2", Series::A, 2, "2"},
                                           {"Gr_2^+(R^5)", Series::B, 2, "2"}}};

void criterion_1(Checker& c)
{
    const std::array<std::size_t, 7> vertices{6, 24, 8, 8, 24, 3, 4};
    const std::array<std::size_t, 7> valence{3, 6, 4, 4, 6, 2, 3};
    for (std::size_t i = 0; i < census.size(); ++i) {
        const GkmGraph g = build_homogeneous_graph(build_root_system(census[i].s, census[i].n),
                                                   IsotropyDatum::parse(census[i].k));
        c.expect(g.vertex_count() == vertices[i] && g.valence() == valence[i],
                 std::string(census[i].name) + ": " + std::to_string(g.vertex_count()) + " vertices, valence " +
                     std::to_string(g.valence().value_or(0)));
    }
}

void criterion_2(Checker& c)
{
    for (const GraphCase& gc : census) {
        const RootSystem rs = build_root_system(gc.s, gc.n);
        const IsotropyDatum k = IsotropyDatum::parse(gc.k);
        const GkmGraph g = build_homogeneous_graph(rs, k);
        const auto betti = poincare_polynomial(rs, k);
        std::vector<std::size_t> dims;
        bool equal = true;
        for (unsigned d = 0; d <= 4; ++d) {
            dims.push_back(graded_dimension(g, d));
            equal = equal && dims.back() == formality_dimension(betti, rs.dim, d);
        }
        c.expect(equal, std::string(gc.name) + ": dims " + join(dims) + " match the Betti prediction");
    }
}

void criterion_3(Checker& c)
{
    for (auto [name, s] : {std::pair{"Fl(C^3) -> CP^2", Series::A}, std::pair{"B2 flag -> Gr_2^+(R^5)", Series::B},
                           std::pair{"C2 flag -> CP^3", Series::C}}) {
        const BalanceReport r = check_balanced(fibration(s, 2, "", "2").fibration);
        c.expect(r.ok(), std::string(name) + ": balanced on " + std::to_string(r.entries.size()) + " base edges");
    }
    const HomogeneousFibration hf = fibration(Series::A, 2, "", "2");
    const GkmFibration& good = hf.fibration;
    Json j = fibration_to_json(good);
    Json data = Json::object();
    for (std::size_t e : good.base().undirected_edges())
        data[std::to_string(e)] = j["edge_data"][std::to_string(e)];
    const std::size_t bad = good.base().undirected_edges()[1];
    data[std::to_string(bad)]["twist"][0][0] = Json::array({3, 1});
    j["edge_data"] = data;
    const BalanceReport r = check_balanced(fibration_from_json(j));
    c.expect(r.failed_edges() == std::vector<std::size_t>{bad},
             "corrupted twist on base edge " + std::to_string(bad) + " is the only failure");
}

bool cs_passes(const GkmFibration& f, unsigned d, std::vector<std::size_t>& dims)
{
    bool ok = true;
    for (const CsDegreeReport& r : verify_chang_skjelbred(f, d)) {
        dims.push_back(r.dim_cs);
        ok = ok && r.pass();
    }
    return ok;
}

void criterion_4(Checker& c)
{
    const auto check = [&c](const GkmFibration& f, const std::string& name, std::optional<std::size_t> degree_one) {
        std::vector<std::size_t> dims;
        bool ok = cs_passes(f, 3, dims) && dims.size() == 4;
        if (degree_one)
            ok = ok && dims[1] == *degree_one;
        c.expect(ok, name + ": dims " + join(dims) + ", both containments");
    };
    check(fibration(Series::A, 2, "", "2").fibration, "Fl(C^3) -> CP^2", 4);
    check(fibration(Series::B, 2, "", "2").fibration, "B2 flag -> Gr_2^+(R^5)", std::nullopt);
    const HomogeneousFibration hf = fibration(Series::A, 2, "", "2");
    for (std::size_t e : hf.fibration.base().undirected_edges())
        check(restrict_to_base_edge(hf.fibration, e), "sub-bundle over base edge " + std::to_string(e) + " (CP^1 base)",
              std::nullopt);
    check(fibration(Series::D, 2, "", "2").fibration, "D2/T -> CP^1", std::nullopt);
}

void criterion_5(Checker& c)
{
    std::mt19937 rng(2024);
    struct Case {
        const char* name;
        Series s;
        int n;
        const char* k;
        std::size_t order;
    };
    for (const Case& hc : {Case{"Fl(C^3) -> CP^2", Series::A, 2, "2", 2}, Case{"Fl(C^4) -> CP^3", Series::A, 3, "2,3", 6},
                           Case{"B3 flag -> Gr_2^+(R^7)", Series::B, 3, "2,3", 8}}) {
        const HomogeneousFibration hf = fibration(hc.s, hc.n, "", hc.k);
        const GkmFibration& f = hf.fibration;
        const HolonomyGroup g = holonomy_group(f, 0);
        c.expect(g.order() == hc.order, std::string(hc.name) + ": |W_p| = " + std::to_string(g.order()));

        const GkmGraph& fiber = f.fiber(0).graph;
        bool law = true;
        bool congruences = true;
        for (unsigned d = 1; d <= 2; ++d) {
            const auto basis = degree_space(fiber, d);
            const GradedPiece piece(fiber.vertex_count(), fiber.dim_t(), d);
            RationalVector x(piece.dimension());
            std::uniform_int_distribution<int> dist(-6, 6);
            for (const RationalVector& b : basis) {
                const Rational s = dist(rng);
                for (std::size_t i = 0; i < x.size(); ++i)
                    x[i] += s * b[i];
            }
            const GkmClass cls = piece.to_class(x);
            for (const HolonomyElement& a : g.elements) {
                const GkmClass ac = act_on_class(a, cls);
                congruences = congruences && is_gkm_class(fiber, ac).ok;
                for (const HolonomyElement& b : g.elements)
                    law = law && act_on_class(compose(a, b), cls) == act_on_class(a, act_on_class(b, cls));
            }
        }
        c.expect(law, std::string(hc.name) + ": (ab).c = a.(b.c) for all pairs");
        c.expect(congruences, std::string(hc.name) + ": every element preserves congruences");
    }
}

void criterion_6(Checker& c)
{
    for (auto [name, s] : {std::pair{"A2", Series::A}, std::pair{"B2", Series::B}, std::pair{"C2", Series::C}}) {
        const RootSystem rs = build_root_system(s, 2);
        const HomogeneousFibration hf = fibration(s, 2, "", "2");
        const ProductBasis pb = evaluate_product_basis(hf.fibration, 3);
        // Prediction from the fiber and base Betti numbers alone.
        const auto bf = poincare_polynomial(levi_subsystem(rs, {2}), {});
        const auto bb = poincare_polynomial(rs, IsotropyDatum::parse("2"));
        std::vector<long> product(bf.size() + bb.size() - 1, 0);
        for (std::size_t i = 0; i < bf.size(); ++i)
            for (std::size_t j = 0; j < bb.size(); ++j)
                product[i + j] += bf[i] * bb[j];
        bool matches = true;
        std::vector<std::size_t> spans;
        for (const SpanCheck& sc : pb.checks) {
            spans.push_back(sc.span);
            matches = matches && sc.ok() && sc.span == formality_dimension(product, rs.dim, sc.degree);
        }
        c.expect(pb.pass && matches && pb.classes.size() == WeylGroup(rs).size(),
                 std::string(name) + ": " + std::to_string(pb.classes.size()) + " product classes, spans " +
                     join(spans) + " for d <= 3");
    }
}

void criterion_7(Checker& c)
{
    for (auto [s, n, count] : {std::tuple{Series::A, 2, 6ul}, std::tuple{Series::A, 3, 24ul},
                               std::tuple{Series::B, 2, 8ul}, std::tuple{Series::C, 2, 8ul},
                               std::tuple{Series::D, 3, 24ul}}) {
        const std::string name = std::string(1, series_letter(s)) + std::to_string(n);
        try {
            const TowerReport r = iterated_invariant_basis(build_tower(s, n), 3);
            const StageReport& top = r.stages.back();
            bool invariant = true;
            for (const StageReport& st : r.stages)
                invariant = invariant && st.holonomy_invariant;
            c.expect(r.pass && r.classes.size() == count && invariant,
                     name + ": " + std::to_string(r.classes.size()) + " classes, multiplicities " +
                         join(top.multiplicities) + ", holonomy invariant");
        } catch (const std::exception& e) {
            c.expect(false, name + ": " + e.what());
        }
    }
}

void criterion_8(Checker& c)
{
    struct Case {
        const char* name;
        Series s;
        int n;
        const char* k;
    };
    for (const Case& pc : {Case{"CP^1", Series::A, 1, ""}, Case{"CP^2", Series::A, 2, "2"},
                           Case{"CP^3", Series::A, 3, "2,3"}, Case{"CP^3 (C2)", Series::C, 2, "2"},
                           Case{"Gr_2^+(R^5)", Series::B, 2, "2"}, Case{"Gr_2^+(R^6)", Series::D, 3, "2,3"}}) {
        const HomogeneousSpace base = make_homogeneous_space(build_root_system(pc.s, pc.n), IsotropyDatum::parse(pc.k));
        try {
            const PowerClassReport r =
                symplectic_power_classes(base, LinearForm::basis(base.graph.dim_t(), 0), base.graph.vertex_count(), 3);
            std::string detail;
            for (const SpanCheck& sc : r.checks)
                if (!sc.ok())
                    detail += ", degree " + std::to_string(sc.degree) + " span " + std::to_string(sc.span) + " of " +
                              std::to_string(sc.ambient);
            c.expect(r.determinant != 0 && r.independent, std::string(pc.name) + ": determinant nonzero");
            c.expect(r.spanning(), std::string(pc.name) + ": powers span degrees <= 3" + detail);
        } catch (const std::exception& e) {
            c.expect(false, std::string(pc.name) + ": " + e.what());
        }
    }
}

// P with a = P g over S(t*), or nullopt.
std::optional<std::vector<std::vector<Polynomial>>> change_of_basis(const GkmGraph& g,
                                                                    const std::vector<GradedGenerator>& from,
                                                                    const std::vector<GradedGenerator>& to)
{
    std::vector<std::vector<Polynomial>> p;
    for (const GradedGenerator& a : to) {
        auto row = express_in_generators(g, from, a.cls);
        if (!row)
            return std::nullopt;
        p.push_back(*row);
    }
    return p;
}

bool is_identity_product(const std::vector<std::vector<Polynomial>>& p, const std::vector<std::vector<Polynomial>>& q,
                         std::size_t n)
{
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.front().size(); ++j) {
            Polynomial s(n);
            for (std::size_t k = 0; k < q.size(); ++k)
                s += p[i][k] * q[k][j];
            if (s != Polynomial::constant(n, i == j ? 1 : 0))
                return false;
        }
    return true;
}

void criterion_9(Checker& c)
{
    const auto x = [](std::size_t n, std::size_t i) { return Polynomial::variable(n, i); };
    const auto one = [](std::size_t n) { return Polynomial::constant(n, 1); };

    // CP^1: vertices e, s1; alpha = x1 - x2 = 2 x1.
    std::map<std::string, std::vector<Polynomial>> cp1{{"e", {one(1), Polynomial(1)}},
                                                      {"s1", {one(1), Rational(2) * x(1, 0)}}};
    // CP^2: lambda(e) = x1, lambda(s1) = x2, lambda(s2s1) = x3 = -x1 - x2; classes 1, lambda(e) - lambda(v),
    // (lambda(e) - lambda(v))(lambda(s1) - lambda(v)).
    const Polynomial x3 = -x(2, 0) - x(2, 1);
    std::map<std::string, std::vector<Polynomial>> cp2{
        {"e", {one(2), Polynomial(2), Polynomial(2)}},
        {"s1", {one(2), x(2, 0) - x(2, 1), Polynomial(2)}},
        {"s2s1", {one(2), x(2, 0) - x3, (x(2, 0) - x3) * (x(2, 1) - x3)}}};

    for (auto [name, s, n, k, hand] : {std::tuple{"CP^1", Series::A, 1, "", cp1}, std::tuple{"CP^2", Series::A, 2, "2", cp2}}) {
        const GkmGraph g = build_homogeneous_graph(build_root_system(s, n), IsotropyDatum::parse(k));
        const std::size_t classes = hand.begin()->second.size();
        std::vector<GradedGenerator> h(classes);
        for (std::size_t i = 0; i < classes; ++i) {
            h[i].degree = static_cast<unsigned>(i);
            for (const GkmVertex& v : g.vertices())
                h[i].cls.values.push_back(hand.at(v.label)[i]);
        }
        bool hand_ok = true;
        for (const GradedGenerator& hg : h)
            hand_ok = hand_ok && is_gkm_class(g, hg.cls).ok;
        const GradedBasisReport report = module_generators(g, static_cast<unsigned>(classes - 1));
        const auto p = change_of_basis(g, report.generators, h);
        const auto q = change_of_basis(g, h, report.generators);
        const bool inverse = p && q && is_identity_product(*p, *q, g.dim_t()) && is_identity_product(*q, *p, g.dim_t());
        c.expect(hand_ok && report.generators.size() == classes && inverse,
                 std::string(name) + ": computed and hand bases related by an invertible S(t*)-matrix");
    }
}

std::string run_tool(const std::string& args)
{
    std::string command = std::string(GKMFIBER_TOOL) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe)
        return "<popen failed>";
    std::string output;
    std::array<char, 4096> buffer{};
    std::size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        output.append(buffer.data(), n);
    const int status = pclose(pipe);
    return output + "\n<status " + std::to_string(status) + ">";
}

void criterion_10(Checker& c)
{
    for (const char* args :
         {"rootsys --series B --rank 2 --k 2", "graph --series A --rank 2 --k 2", "basis --series A --rank 2 --max-degree 3",
          "fibration --series A --rank 2 --k 2", "holonomy --series A --rank 3 --k 2,3",
          "verify-cs --series A --rank 2 --k 2 --k1 '' --max-degree 3",
          "verify-tensor --series C --rank 2 --k 2 --max-degree 3", "tower --series B --rank 2 --max-degree 3",
          "tower --series A --rank 2 --max-degree 3 --pretty", "graph --series Q --rank 2"}) {
        const std::string first = run_tool(args);
        const std::string second = run_tool(args);
        const std::string third = run_tool(args);
        c.expect(first == second && second == third && first.size() > 20,
                 std::string("gkmfiber ") + args + ": " + std::to_string(first.size()) + " identical bytes x3");
    }
}

const std::map<int, std::pair<const char*, std::function<void(Checker&)>>> criteria{
    {1, {"graph census", criterion_1}},
    {2, {"formality / Hilbert identity", criterion_2}},
    {3, {"balancedness", criterion_3}},
    {4, {"fiber-bundle Chang-Skjelbred", criterion_4}},
    {5, {"holonomy", criterion_5}},
    {6, {"tensor-product basis", criterion_6}},
    {7, {"towers", criterion_7}},
    {8, {"symplectic powers", criterion_8}},
    {9, {"oracle cross-check", criterion_9}},
    {10, {"CLI determinism", criterion_10}},
};

} // namespace

int main(int argc, char** argv)
{
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.push_back(std::atoi(argv[i]));
    if (selected.empty())
        for (const auto& [n, _] : criteria)
            selected.push_back(n);

    bool all = true;
    for (int n : selected) {
        const auto it = criteria.find(n);
        if (it == criteria.end()) {
            std::cout << "criterion " << n << ": FAIL (unknown criterion)\n";
            all = false;
            continue;
        }
        Checker c;
        const auto start = std::chrono::steady_clock::now();
        try {
            it->second.second(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        for (const std::string& note : c.notes)
            std::cout << "  " << note << '\n';
        std::ostringstream line;
        line << "criterion " << n << ": " << (c.ok ? "PASS" : "FAIL") << " (" << it->second.first << ", "
             << std::fixed << std::setprecision(2) << seconds << " s)";
        std::cout << line.str() << std::endl;
        all = all && c.ok;
    }
    return all ? 0 : 1;
}
