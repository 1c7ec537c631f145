#include "gkmfiber/towers.hpp"

#include "gkmfiber/errors.hpp"

#include <algorithm>

namespace gkmfiber {

namespace {

std::string base_label(Series series, int s)
{
    const std::string n = std::to_string(s);
    switch (series) {
    case Series::A:
        return "CP^" + n;
    case Series::B:
        return "Gr_2^+(R^" + std::to_string(2 * s + 1) + ")";
    case Series::C:
        return "CP^" + std::to_string(2 * s - 1);
    case Series::D:
        return s == 2 ? "CP^1 x CP^1" : "Gr_2^+(R^" + std::to_string(2 * s) + ")";
    }
    return {};
}

std::set<int> interval(int lo, int hi)
{
    std::set<int> out;
    for (int i = lo; i <= hi; ++i)
        out.insert(i);
    return out;
}

std::vector<std::size_t> degree_multiplicities(const std::vector<GradedGenerator>& gens)
{
    std::vector<std::size_t> m;
    for (const GradedGenerator& g : gens) {
        if (m.size() <= g.degree)
            m.resize(g.degree + 1, 0);
        ++m[g.degree];
    }
    return m;
}

GkmClass restrict_to_fiber(const Fiber& fiber, const GkmClass& c)
{
    GkmClass out;
    for (std::size_t u : fiber.vertices)
        out.values.push_back(c.values[u]);
    return out;
}

// c(s.u) = s.c(u) for every simple reflection s of the group acting on the vertices of L/T.
bool left_weyl_invariant(const HomogeneousSpace& space, const GkmClass& c)
{
    for (std::size_t simple : space.roots.simple_roots) {
        const RationalMatrix s = reflection(space.roots, simple).matrix;
        for (std::size_t u = 0; u < c.size(); ++u) {
            const std::size_t image = space.vertex_of(space.group.index_of(s * space.representative(u)));
            if (c.values[image] != substitute_linear(c.values[u], s))
                return false;
        }
    }
    return true;
}

} // namespace

TowerSpec build_tower(Series series, int rank, std::size_t max_group_order)
{
    if (rank < 1)
        throw InvalidArgument("rank: must be at least 1");
    if (series == Series::D && rank < 3)
        throw InvalidArgument("rank: the D tower needs rank at least 3");
    if (expected_weyl_order(series, rank) > max_group_order)
        throw InvalidArgument("rank: the Weyl group of order " + std::to_string(expected_weyl_order(series, rank)) +
                              " exceeds the group order bound " + std::to_string(max_group_order));

    TowerSpec spec;
    spec.series = series;
    spec.rank = rank;
    std::string previous = "pt";
    for (int s = series == Series::D ? 2 : 1; s <= rank; ++s) {
        TowerStage stage;
        stage.index = static_cast<int>(spec.stages.size()) + 1;
        stage.levi = interval(rank - s + 1, rank);
        if (s >= 2 && !(series == Series::D && s == 2))
            stage.k = IsotropyDatum{interval(2, s)};
        stage.lambda_coordinate = static_cast<std::size_t>(rank - s);
        stage.base_label = base_label(series, s);
        stage.fiber_label = previous;
        stage.total_label = std::string(1, series_letter(series)) + std::to_string(s) + " flag";
        previous = stage.total_label;
        spec.stages.push_back(std::move(stage));
    }
    return spec;
}

GkmClass symplectic_class(const HomogeneousSpace& base, const LinearForm& lambda)
{
    if (lambda.dimension() != base.graph.dim_t())
        throw InvalidArgument("lambda: expected " + std::to_string(base.graph.dim_t()) + " coefficients");
    GkmClass c;
    for (std::size_t v = 0; v < base.graph.vertex_count(); ++v)
        c.values.push_back(apply(base.representative(v), lambda).to_polynomial());
    if (!is_gkm_class(base.graph, c).ok)
        throw InvalidArgument("lambda: " + lambda.to_string() + " is not fixed by W_K, so w.lambda is not a class");
    return c;
}

bool PowerClassReport::spanning() const
{
    return std::all_of(checks.begin(), checks.end(), [](const SpanCheck& s) { return s.ok(); });
}

PowerClassReport symplectic_power_classes(const HomogeneousSpace& base, const LinearForm& lambda, std::size_t count,
                                          unsigned max_degree)
{
    const GkmGraph& g = base.graph;
    if (count != g.vertex_count())
        throw InvalidArgument("count: expected the vertex count " + std::to_string(g.vertex_count()));
    const GkmClass c = symplectic_class(base, lambda);

    PowerClassReport report;
    std::vector<GkmClass> plain;
    for (std::size_t j = 0; j < count; ++j) {
        GkmClass p;
        for (const Polynomial& v : c.values)
            p.values.push_back(v.pow(static_cast<unsigned>(j)));
        plain.push_back(p);
        report.classes.push_back({static_cast<unsigned>(j), std::move(p)});
    }
    report.determinant = evaluation_determinant(plain, g.dim_t());
    report.independent = evaluation_rank(plain, g.dim_t()) == count;
    if (!report.independent)
        throw VerificationFailure("powers of " + lambda.to_string() + " have a singular evaluation matrix");
    for (unsigned d = 0; d <= max_degree; ++d)
        report.checks.push_back({d, module_span_rank(g, report.classes, d), graded_dimension(g, d)});
    return report;
}

std::vector<GradedGenerator> stage_base_classes(Series series, const TowerStage& stage, const HomogeneousSpace& base)
{
    const std::size_t n = base.graph.dim_t();
    const std::size_t m = stage.lambda_coordinate;
    const GkmClass c = symplectic_class(base, LinearForm::basis(n, m));
    const std::size_t vertices = base.graph.vertex_count();
    const std::size_t powers = series == Series::D ? vertices - 1 : vertices;

    std::vector<GradedGenerator> out;
    for (std::size_t j = 0; j < powers; ++j) {
        GkmClass p;
        for (const Polynomial& v : c.values)
            p.values.push_back(v.pow(static_cast<unsigned>(j)));
        out.push_back({static_cast<unsigned>(j), std::move(p)});
    }
    if (series == Series::D) {
        // The middle-degree class missing from the powers: w.(e_{m+1} ... e_n).
        Polynomial euler = Polynomial::constant(n, 1);
        for (std::size_t i = m + 1; i < n; ++i)
            euler = euler * Polynomial::variable(n, i);
        GkmClass e;
        for (std::size_t v = 0; v < vertices; ++v)
            e.values.push_back(substitute_linear(euler, base.representative(v)));
        if (!is_gkm_class(base.graph, e).ok)
            throw InternalInconsistency("stage " + std::to_string(stage.index) + ": the middle class is not a class");
        const auto degree = static_cast<unsigned>(n - m - 1);
        const auto pos = std::find_if(out.begin(), out.end(), [&](const GradedGenerator& g) { return g.degree > degree; });
        out.insert(pos, {degree, std::move(e)});
    }
    return out;
}

TowerReport iterated_invariant_basis(const TowerSpec& spec, unsigned max_degree, std::size_t max_group_order)
{
    const RootSystem top = build_root_system(spec.series, spec.rank);
    TowerReport report;
    report.spec = spec;

    std::optional<HomogeneousSpace> previous;
    std::vector<GradedGenerator> previous_classes;
    for (const TowerStage& stage : spec.stages) {
        const std::string where = "stage " + std::to_string(stage.index) + ": ";
        const RootSystem levi = levi_subsystem(top, stage.levi);
        const HomogeneousFibration hf = build_homogeneous_fibration(levi, stage.k1, stage.k, max_group_order);
        const GkmFibration& f = hf.fibration;
        const std::size_t base_point = hf.base.vertex_of(0);
        const Fiber& fiber = f.fiber(base_point);
        const HolonomyGroup g = holonomy_group(f, base_point, max_group_order);

        // The fiber over the identity coset is the previous flag graph, matched through Weyl elements.
        std::vector<GradedGenerator> fiber_classes;
        if (!previous) {
            if (fiber.vertices.size() != 1)
                throw InternalInconsistency(where + "the bottom stage has a fiber of size " +
                                            std::to_string(fiber.vertices.size()));
            fiber_classes.push_back({0, GkmClass::constant(1, top.dim, 1)});
        } else {
            if (fiber.vertices.size() != previous->graph.vertex_count())
                throw InternalInconsistency(where + "fiber size differs from the previous flag graph");
            std::vector<std::size_t> match;
            for (std::size_t u : fiber.vertices) {
                const auto element = previous->group.find(hf.total.representative(u));
                if (!element)
                    throw InternalInconsistency(where + "a fiber vertex is not an element of the previous Levi");
                match.push_back(previous->vertex_of(*element));
            }
            for (const GradedGenerator& c : previous_classes) {
                GkmClass r;
                for (std::size_t i : match)
                    r.values.push_back(c.cls.values[i]);
                fiber_classes.push_back({c.degree, std::move(r)});
            }
        }

        std::vector<GradedGenerator> transported;
        for (const GradedGenerator& c : fiber_classes) {
            if (!is_invariant(g, c.cls))
                throw VerificationFailure(where + "a class of the previous stage is not fixed by the holonomy group");
            transported.push_back({c.degree, transport_invariant_class(f, g, c.cls)});
        }

        StageReport sr;
        sr.index = stage.index;
        sr.base_label = stage.base_label;
        sr.fiber_label = stage.fiber_label;
        sr.holonomy_order = g.order();

        ProductBasis pb;
        try {
            pb = product_basis(f, transported, stage_base_classes(spec.series, stage, hf.base), max_degree);
        } catch (const VerificationFailure& e) {
            throw VerificationFailure(where + e.what());
        }
        sr.class_count = pb.classes.size();
        sr.expected_count = hf.total.group.size();
        sr.multiplicities = degree_multiplicities(pb.classes);
        sr.length_histogram = poincare_polynomial(hf.total.cosets);
        sr.per_degree = pb.checks;
        sr.holonomy_invariant = true;
        sr.weyl_invariant = true;
        for (const GradedGenerator& c : pb.classes) {
            const GkmClass r = restrict_to_fiber(fiber, c.cls);
            for (const HolonomyElement& h : g.elements)
                sr.holonomy_invariant = sr.holonomy_invariant && act_on_class(h, r) == r;
            sr.weyl_invariant = sr.weyl_invariant && left_weyl_invariant(hf.total, c.cls);
        }
        bool histogram = sr.multiplicities.size() == sr.length_histogram.size();
        for (std::size_t j = 0; histogram && j < sr.multiplicities.size(); ++j)
            histogram = sr.multiplicities[j] == static_cast<std::size_t>(sr.length_histogram[j]);
        sr.pass = pb.pass && sr.class_count == sr.expected_count && histogram && sr.holonomy_invariant &&
                  sr.weyl_invariant;
        report.stages.push_back(sr);

        previous = hf.total;
        previous_classes = std::move(pb.classes);
    }

    report.classes = previous_classes;
    report.top = previous->graph;
    report.pass = std::all_of(report.stages.begin(), report.stages.end(), [](const StageReport& s) { return s.pass; });
    return report;
}

} // namespace gkmfiber
