#include "gkmfiber/graph.hpp"

#include "gkmfiber/errors.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

namespace gkmfiber {

std::size_t GkmGraph::add_vertex(std::string label)
{
    const std::size_t id = vertices_.size();
    vertices_.push_back({id, std::move(label)});
    out_.emplace_back();
    return id;
}

std::size_t GkmGraph::add_edge_pair(std::size_t u, std::size_t v, const LinearForm& weight)
{
    if (u >= vertices_.size() || v >= vertices_.size())
        throw InvalidArgument("edge endpoint out of range");
    if (weight.dimension() != dim_t_ || weight.is_zero())
        throw InvalidArgument("edge weight must be a nonzero form on t*");
    const std::size_t id = edges_.size();
    add_directed_edge({u, v, weight, id + 1});
    add_directed_edge({v, u, -weight, id});
    return id;
}

void GkmGraph::add_directed_edge(GkmEdge e)
{
    if (e.source >= vertices_.size() || e.target >= vertices_.size())
        throw InvalidArgument("edge endpoint out of range");
    out_[e.source].push_back(edges_.size());
    edges_.push_back(std::move(e));
}

std::optional<std::size_t> GkmGraph::valence() const
{
    if (vertices_.empty())
        return std::nullopt;
    const std::size_t first = out_[0].size();
    for (const auto& list : out_)
        if (list.size() != first)
            return std::nullopt;
    return first;
}

bool GkmGraph::is_simple() const
{
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t e : undirected_edges()) {
        auto key = std::minmax(edges_[e].source, edges_[e].target);
        if (!seen.insert(key).second)
            return false;
    }
    return true;
}

void GkmGraph::validate() const
{
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const GkmEdge& edge = edges_[e];
        const std::string where = "edges[" + std::to_string(e) + "]";
        if (edge.weight.dimension() != dim_t_)
            throw InvalidArgument(where + ".weight: expected " + std::to_string(dim_t_) + " coefficients");
        if (edge.weight.is_zero())
            throw InvalidArgument(where + ".weight: zero weight");
        if (edge.source == edge.target)
            throw InvalidArgument(where + ": loop edge");
        if (edge.opposite >= edges_.size() || edge.opposite == e)
            throw InvalidArgument(where + ".opp: invalid opposite edge");
        const GkmEdge& opp = edges_[edge.opposite];
        if (opp.opposite != e || opp.source != edge.target || opp.target != edge.source)
            throw InvalidArgument(where + ".opp: opposite pairing is not an involution with swapped endpoints");
        if (opp.weight != -edge.weight)
            throw InvalidArgument(where + ".weight: opposite edge weight is not the negative");
    }
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        const auto& list = out_[v];
        for (std::size_t i = 0; i < list.size(); ++i)
            for (std::size_t j = i + 1; j < list.size(); ++j)
                if (!linearly_independent(edges_[list[i]].weight, edges_[list[j]].weight))
                    throw InvalidArgument("edges[" + std::to_string(list[j]) + "].weight: not independent of edges[" +
                                          std::to_string(list[i]) + "].weight at vertex " + std::to_string(v));
    }
}

std::vector<std::size_t> GkmGraph::undirected_edges() const
{
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges_.size(); ++e)
        if (e < edges_[e].opposite)
            out.push_back(e);
    return out;
}

// ---------------------------------------------------------------------------

GkmClass GkmClass::constant(std::size_t vertices, std::size_t dim_t, const Rational& c)
{
    return {std::vector<Polynomial>(vertices, Polynomial::constant(dim_t, c))};
}

int GkmClass::degree() const
{
    int deg = -1;
    for (const Polynomial& p : values) {
        if (p.is_zero())
            continue;
        if (!p.is_homogeneous())
            throw InvalidArgument("class has an inhomogeneous value");
        if (deg >= 0 && deg != p.degree())
            throw InvalidArgument("class values have different degrees");
        deg = p.degree();
    }
    return deg;
}

GkmClass& GkmClass::operator+=(const GkmClass& o)
{
    if (o.values.size() != values.size())
        throw InvalidArgument("classes on different vertex sets");
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] += o.values[i];
    return *this;
}

GkmClass operator+(GkmClass a, const GkmClass& b)
{
    a += b;
    return a;
}

GkmClass operator-(GkmClass a, const GkmClass& b)
{
    if (a.values.size() != b.values.size())
        throw InvalidArgument("classes on different vertex sets");
    for (std::size_t i = 0; i < a.values.size(); ++i)
        a.values[i] -= b.values[i];
    return a;
}

GkmClass operator*(const GkmClass& a, const GkmClass& b)
{
    if (a.values.size() != b.values.size())
        throw InvalidArgument("classes on different vertex sets");
    GkmClass r;
    r.values.reserve(a.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i)
        r.values.push_back(a.values[i] * b.values[i]);
    return r;
}

GkmClass operator*(const Polynomial& p, const GkmClass& c)
{
    GkmClass r;
    r.values.reserve(c.values.size());
    for (const Polynomial& v : c.values)
        r.values.push_back(p * v);
    return r;
}

GkmClass operator*(const Rational& s, GkmClass c)
{
    for (Polynomial& v : c.values)
        v *= s;
    return c;
}

ClassCheck is_gkm_class(const GkmGraph& g, const GkmClass& c)
{
    if (c.values.size() != g.vertex_count())
        throw InvalidArgument("class has " + std::to_string(c.values.size()) + " values for a graph with " +
                              std::to_string(g.vertex_count()) + " vertices");
    ClassCheck check;
    for (std::size_t e : g.undirected_edges()) {
        const GkmEdge& edge = g.edge(e);
        Polynomial rem = canonical_remainder(c.values[edge.source] - c.values[edge.target], edge.weight);
        if (!rem.is_zero()) {
            check.ok = false;
            check.violations.push_back({e, std::move(rem)});
        }
    }
    return check;
}

// ---------------------------------------------------------------------------

namespace {

LinearForm normalized_line(const LinearForm& l)
{
    return l * (1 / l[l.pivot()]);
}

} // namespace

HomogeneousSpace make_homogeneous_space(const RootSystem& rs, const IsotropyDatum& k, std::size_t max_group_order)
{
    k.validate(rs);
    WeylGroup group(rs, max_group_order);
    CosetSpace cosets = coset_space(group, k);

    std::vector<std::size_t> edge_roots;
    for (std::size_t i = 0; i < rs.positive_roots.size(); ++i) {
        const RationalVector coords = rs.simple_coordinates(rs.positive_roots[i]);
        for (std::size_t j = 0; j < coords.size(); ++j)
            if (!is_zero(coords[j]) && !k.simple_subset.contains(static_cast<int>(j + 1))) {
                edge_roots.push_back(i);
                break;
            }
    }
    std::vector<std::size_t> reflection_index;
    for (std::size_t r : edge_roots)
        reflection_index.push_back(group.index_of(reflection(rs, r).matrix));

    GkmGraph graph(rs.dim);
    for (std::size_t v = 0; v < cosets.size(); ++v)
        graph.add_vertex(cosets.representatives[v].word_string());

    std::set<std::tuple<std::size_t, std::size_t, LinearForm>> present;
    for (std::size_t v = 0; v < cosets.size(); ++v) {
        const std::size_t rep = cosets.representative_index[v];
        for (std::size_t i = 0; i < edge_roots.size(); ++i) {
            const std::size_t target = cosets.coset_of[group.multiply(rep, reflection_index[i])];
            const LinearForm weight = apply(cosets.representatives[v].matrix, rs.positive_roots[edge_roots[i]]);
            auto [lo, hi] = std::minmax(v, target);
            if (present.emplace(lo, hi, normalized_line(weight)).second)
                graph.add_edge_pair(v, target, weight);
        }
    }

    // The weights at [w] must be exactly w(Delta_G^+ \ Delta_K^+), from either endpoint.
    for (std::size_t v = 0; v < cosets.size(); ++v) {
        std::set<LinearForm> expected;
        for (std::size_t r : edge_roots)
            expected.insert(apply(cosets.representatives[v].matrix, rs.positive_roots[r]));
        std::set<LinearForm> actual;
        for (std::size_t e : graph.out_edges(v))
            actual.insert(graph.edge(e).weight);
        if (expected != actual)
            throw InternalInconsistency("axial function at vertex " + std::to_string(v) + " of " + rs.label +
                                        " disagrees with w(Delta_G,K^+)");
    }
    graph.validate();
    return {rs, k, std::move(group), std::move(cosets), std::move(graph), std::move(edge_roots)};
}

GkmGraph build_homogeneous_graph(const RootSystem& rs, const IsotropyDatum& k)
{
    return make_homogeneous_space(rs, k).graph;
}

// ---------------------------------------------------------------------------

GradedPiece::GradedPiece(std::size_t vertices, std::size_t dim_t, unsigned degree)
    : vertices_(vertices), monomials_(dim_t, degree)
{}

RationalVector GradedPiece::coordinates(const GkmClass& c) const
{
    if (c.values.size() != vertices_)
        throw InvalidArgument("class has the wrong number of vertices");
    RationalVector v(dimension());
    for (std::size_t u = 0; u < vertices_; ++u) {
        const RationalVector block = c.values[u].coordinates(monomials_);
        std::copy(block.begin(), block.end(), v.begin() + static_cast<std::ptrdiff_t>(offset(u)));
    }
    return v;
}

GkmClass GradedPiece::to_class(std::span<const Rational> coords) const
{
    if (coords.size() != dimension())
        throw InvalidArgument("coordinate vector has the wrong length");
    GkmClass c;
    for (std::size_t u = 0; u < vertices_; ++u)
        c.values.push_back(Polynomial::from_coordinates(monomials_, coords.subspan(offset(u), monomials_.size())));
    return c;
}

const RationalMatrix& ConstraintSystem::remainder(const LinearForm& weight)
{
    for (const auto& [w, m] : remainder_cache_)
        if (w == weight)
            return m;
    remainder_cache_.emplace_back(weight, remainder_matrix(piece_->monomials(), weight));
    return remainder_cache_.back().second;
}

void ConstraintSystem::add_rows(std::size_t u, const RationalMatrix& a, std::size_t v, const RationalMatrix& b)
{
    const std::size_t m = piece_->monomials().size();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        RationalVector row(piece_->dimension());
        for (std::size_t c = 0; c < m; ++c) {
            row[piece_->offset(u) + c] += a(r, c);
            row[piece_->offset(v) + c] -= b(r, c);
        }
        if (!is_zero_vector(row))
            rows_.push_back(std::move(row));
    }
}

void ConstraintSystem::add_congruence(std::size_t u, std::size_t v, const LinearForm& weight)
{
    const RationalMatrix& r = remainder(weight);
    add_rows(u, r, v, r);
}

void ConstraintSystem::add_twisted_congruence(std::size_t u, std::size_t v, const LinearForm& weight,
                                              const RationalMatrix& transform)
{
    const RationalMatrix r = remainder(weight);
    add_rows(u, r, v, r * transform);
}

RationalMatrix ConstraintSystem::matrix() const
{
    if (rows_.empty())
        return RationalMatrix(0, piece_->dimension());
    return RationalMatrix::from_rows(rows_, piece_->dimension());
}

std::vector<RationalVector> ConstraintSystem::solutions() const
{
    return nullspace(matrix());
}

bool ConstraintSystem::satisfied_by(std::span<const Rational> x) const
{
    for (const RationalVector& row : rows_) {
        Rational s = 0;
        for (std::size_t i = 0; i < row.size(); ++i)
            if (!is_zero(row[i]) && !is_zero(x[i]))
                s += row[i] * x[i];
        if (!is_zero(s))
            return false;
    }
    return true;
}

std::vector<RationalVector> degree_space(const GkmGraph& g, unsigned d)
{
    GradedPiece piece(g.vertex_count(), g.dim_t(), d);
    ConstraintSystem system(piece);
    for (std::size_t e : g.undirected_edges())
        system.add_congruence(g.edge(e).source, g.edge(e).target, g.edge(e).weight);
    return system.solutions();
}

std::size_t graded_dimension(const GkmGraph& g, unsigned d)
{
    return degree_space(g, d).size();
}

namespace {

std::size_t binomial(std::size_t n, std::size_t k)
{
    if (k > n)
        return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

std::size_t formality_dimension(const std::vector<long>& betti, std::size_t n, unsigned d)
{
    std::size_t total = 0;
    for (std::size_t j = 0; j < betti.size() && j <= d; ++j)
        total += static_cast<std::size_t>(betti[j]) * binomial(d - j + n - 1, n - 1);
    return total;
}

std::vector<RationalVector> module_span(const GradedPiece& piece, const std::vector<GradedGenerator>& gens)
{
    std::vector<RationalVector> out;
    const std::size_t n = piece.monomials().variable_count();
    for (const GradedGenerator& g : gens) {
        if (g.degree > piece.degree())
            continue;
        for (const Monomial& m : monomials_of_degree(n, piece.degree() - g.degree))
            out.push_back(piece.coordinates(Polynomial::monomial(m) * g.cls));
    }
    return out;
}

std::size_t module_span_rank(const GkmGraph& g, const std::vector<GradedGenerator>& gens, unsigned d)
{
    GradedPiece piece(g.vertex_count(), g.dim_t(), d);
    IncrementalBasis basis(piece.dimension());
    for (const RationalVector& v : module_span(piece, gens))
        basis.add(v);
    return basis.rank();
}

namespace {

void extend_generators(const GkmGraph& g, unsigned d, const std::vector<GradedGenerator>& preferred,
                       GradedBasisReport& report)
{
    GradedPiece piece(g.vertex_count(), g.dim_t(), d);
    const std::vector<RationalVector> space = degree_space(g, d);
    IncrementalBasis span(piece.dimension());
    for (const RationalVector& v : module_span(piece, report.generators))
        span.add(v);
    std::size_t emitted = 0;
    for (const GradedGenerator& p : preferred) {
        if (p.degree != d || span.rank() == space.size())
            continue;
        if (!is_gkm_class(g, p.cls).ok)
            throw InvalidArgument("preferred generator is not a class of the graph");
        if (span.add(piece.coordinates(p.cls))) {
            report.generators.push_back(p);
            ++emitted;
        }
    }
    for (const RationalVector& v : space) {
        if (span.rank() == space.size())
            break;
        if (span.add(v)) {
            report.generators.push_back({d, piece.to_class(v)});
            ++emitted;
        }
    }
    report.ambient_dims.push_back(space.size());
    report.multiplicities.push_back(emitted);
    report.max_degree = d;
}

} // namespace

GradedBasisReport module_generators(const GkmGraph& g, unsigned max_degree, const std::vector<GradedGenerator>& preferred)
{
    GradedBasisReport report;
    for (unsigned d = 0; d <= max_degree; ++d)
        extend_generators(g, d, preferred, report);
    return report;
}

GradedBasisReport complete_module_generators(const GkmGraph& g, unsigned degree_cap)
{
    GradedBasisReport report;
    for (unsigned d = 0; d <= degree_cap; ++d) {
        extend_generators(g, d, {}, report);
        if (report.generators.size() >= g.vertex_count())
            return report;
    }
    throw VerificationFailure("module generators did not reach the vertex count by degree " +
                              std::to_string(degree_cap));
}

std::optional<std::vector<Polynomial>> express_in_generators(const GkmGraph& g, const std::vector<GradedGenerator>& gens,
                                                             const GkmClass& target)
{
    const int deg = target.degree();
    std::vector<Polynomial> coeffs(gens.size(), Polynomial(g.dim_t()));
    if (deg < 0)
        return coeffs;
    const auto d = static_cast<unsigned>(deg);
    GradedPiece piece(g.vertex_count(), g.dim_t(), d);

    std::vector<std::pair<std::size_t, Monomial>> column_source;
    std::vector<RationalVector> columns;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].degree > d)
            continue;
        for (const Monomial& m : monomials_of_degree(g.dim_t(), d - gens[i].degree)) {
            columns.push_back(piece.coordinates(Polynomial::monomial(m) * gens[i].cls));
            column_source.emplace_back(i, m);
        }
    }
    RationalMatrix a(piece.dimension(), columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (std::size_t r = 0; r < piece.dimension(); ++r)
            a(r, c) = columns[c][r];
    const auto x = solve(a, piece.coordinates(target));
    if (!x)
        return std::nullopt;
    for (std::size_t c = 0; c < columns.size(); ++c)
        coeffs[column_source[c].first].add_term(column_source[c].second, (*x)[c]);
    return coeffs;
}

GkmClass pullback_class(const std::vector<std::size_t>& projection, std::size_t base_vertices, const GkmClass& base_class)
{
    if (base_class.values.size() != base_vertices)
        throw InvalidArgument("base class has the wrong number of vertices");
    std::vector<bool> hit(base_vertices, false);
    GkmClass out;
    for (std::size_t b : projection) {
        if (b >= base_vertices)
            throw InvalidArgument("projection maps to a nonexistent base vertex");
        hit[b] = true;
        out.values.push_back(base_class.values[b]);
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
        throw InvalidArgument("projection is not onto the base vertices");
    return out;
}

RationalVector sample_point(std::size_t dim_t, int which)
{
    std::mt19937 gen(20231u + 7919u * static_cast<unsigned>(which));
    RationalVector p(dim_t);
    for (auto& x : p) {
        const auto num = static_cast<std::int64_t>(gen() % 199) - 99;
        const auto den = static_cast<std::int64_t>(gen() % 23) + 1;
        x = make_rational(num == 0 ? 101 : num, den);
    }
    return p;
}

namespace {

RationalMatrix evaluation_matrix(const std::vector<GkmClass>& classes, const RationalVector& point)
{
    const std::size_t rows = classes.empty() ? 0 : classes.front().values.size();
    RationalMatrix m(rows, classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (classes[c].values.size() != rows)
            throw InvalidArgument("classes on different vertex sets");
        for (std::size_t r = 0; r < rows; ++r)
            m(r, c) = classes[c].values[r].evaluate(point);
    }
    return m;
}

} // namespace

std::size_t evaluation_rank(const std::vector<GkmClass>& classes, std::size_t dim_t, int samples)
{
    std::size_t best = 0;
    for (int s = 0; s < samples; ++s) {
        best = std::max(best, rank(evaluation_matrix(classes, sample_point(dim_t, s))));
        if (best == classes.size())
            break;
    }
    return best;
}

Rational evaluation_determinant(const std::vector<GkmClass>& classes, std::size_t dim_t)
{
    return determinant(evaluation_matrix(classes, sample_point(dim_t, 0)));
}

} // namespace gkmfiber
