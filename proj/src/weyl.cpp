#include "gkmfiber/weyl.hpp"

#include "gkmfiber/errors.hpp"

#include <deque>
#include <sstream>

namespace gkmfiber {

Series parse_series(const std::string& s)
{
    if (s == "A" || s == "a")
        return Series::A;
    if (s == "B" || s == "b")
        return Series::B;
    if (s == "C" || s == "c")
        return Series::C;
    if (s == "D" || s == "d")
        return Series::D;
    throw InvalidArgument("unsupported series '" + s + "' (expected A, B, C or D)");
}

char series_letter(Series s)
{
    switch (s) {
    case Series::A: return 'A';
    case Series::B: return 'B';
    case Series::C: return 'C';
    case Series::D: return 'D';
    }
    return '?';
}

const LinearForm& RootSystem::simple_root(std::size_t one_based) const
{
    if (one_based == 0 || one_based > simple_roots.size())
        throw InvalidArgument("simple root index out of range");
    return positive_roots[simple_roots[one_based - 1]];
}

std::optional<std::pair<std::size_t, int>> RootSystem::locate(const LinearForm& root) const
{
    const LinearForm neg = -root;
    for (std::size_t i = 0; i < positive_roots.size(); ++i) {
        if (positive_roots[i] == root)
            return std::pair{i, 1};
        if (positive_roots[i] == neg)
            return std::pair{i, -1};
    }
    return std::nullopt;
}

RationalVector RootSystem::simple_coordinates(const LinearForm& root) const
{
    RationalMatrix s(dim, simple_roots.size());
    for (std::size_t j = 0; j < simple_roots.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i)
            s(i, j) = positive_roots[simple_roots[j]][i];
    auto x = solve(s, root.coefficients());
    if (!x)
        throw InvalidArgument("vector is not in the span of the simple roots");
    return *x;
}

namespace {

struct RootBuilder {
    std::size_t n;
    RootSystem rs;

    void add(RationalVector root, RationalVector coroot)
    {
        rs.positive_roots.emplace_back(std::move(root));
        rs.coroots.push_back(std::move(coroot));
    }

    RationalVector unit(std::size_t i, const Rational& c = 1) const
    {
        RationalVector v(n);
        v[i] = c;
        return v;
    }

    static RationalVector combine(const RationalVector& a, const RationalVector& b, int sign)
    {
        RationalVector v = a;
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] += sign * b[i];
        return v;
    }

    void mark_simple(const LinearForm& root)
    {
        for (std::size_t i = 0; i < rs.positive_roots.size(); ++i)
            if (rs.positive_roots[i] == root) {
                rs.simple_roots.push_back(i);
                return;
            }
        throw InternalInconsistency("simple root missing from positive roots");
    }
};

} // namespace

RootSystem build_root_system(Series series, int rank)
{
    if (rank < 1 || (series == Series::D && rank < 2))
        throw InvalidArgument(std::string("unsupported rank ") + std::to_string(rank) + " for series " +
                              series_letter(series));
    const auto n = static_cast<std::size_t>(rank);
    RootBuilder b{n, {}};
    b.rs.series = series;
    b.rs.rank = rank;
    b.rs.dim = n;
    b.rs.label = std::string(1, series_letter(series)) + std::to_string(rank);

    if (series == Series::A) {
        // x_{n+1} = -(x_1 + ... + x_n) on the trace-zero torus.
        auto form = [&](std::size_t i) {
            if (i < n)
                return b.unit(i);
            return RationalVector(n, Rational(-1));
        };
        auto coform = [&](std::size_t i) { return i < n ? b.unit(i) : RationalVector(n); };
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = i + 1; j <= n; ++j)
                b.add(RootBuilder::combine(form(i), form(j), -1), RootBuilder::combine(coform(i), coform(j), -1));
        for (std::size_t i = 0; i < n; ++i)
            b.mark_simple(LinearForm(RootBuilder::combine(form(i), form(i + 1), -1)));
        return b.rs;
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto r = RootBuilder::combine(b.unit(i), b.unit(j), -1);
            b.add(r, r);
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto r = RootBuilder::combine(b.unit(i), b.unit(j), 1);
            b.add(r, r);
        }
    if (series == Series::B)
        for (std::size_t i = 0; i < n; ++i)
            b.add(b.unit(i), b.unit(i, 2));
    if (series == Series::C)
        for (std::size_t i = 0; i < n; ++i)
            b.add(b.unit(i, 2), b.unit(i));

    for (std::size_t i = 0; i + 1 < n; ++i)
        b.mark_simple(LinearForm(RootBuilder::combine(b.unit(i), b.unit(i + 1), -1)));
    switch (series) {
    case Series::B: b.mark_simple(LinearForm(b.unit(n - 1))); break;
    case Series::C: b.mark_simple(LinearForm(b.unit(n - 1, 2))); break;
    case Series::D: b.mark_simple(LinearForm(RootBuilder::combine(b.unit(n - 2), b.unit(n - 1), 1))); break;
    case Series::A: break;
    }
    return b.rs;
}

RootSystem levi_subsystem(const RootSystem& rs, const std::set<int>& simple_subset)
{
    IsotropyDatum{simple_subset}.validate(rs);
    RootSystem levi;
    levi.series = rs.series;
    levi.rank = rs.rank;
    levi.dim = rs.dim;
    levi.label = rs.label + "{" + IsotropyDatum{simple_subset}.to_string() + "}";
    for (std::size_t i = 0; i < rs.positive_roots.size(); ++i) {
        const RationalVector coords = rs.simple_coordinates(rs.positive_roots[i]);
        bool inside = true;
        for (std::size_t j = 0; j < coords.size(); ++j)
            if (!is_zero(coords[j]) && !simple_subset.contains(static_cast<int>(j + 1)))
                inside = false;
        if (!inside)
            continue;
        levi.positive_roots.push_back(rs.positive_roots[i]);
        levi.coroots.push_back(rs.coroots[i]);
    }
    for (int s : simple_subset) {
        const LinearForm& root = rs.simple_root(static_cast<std::size_t>(s));
        for (std::size_t i = 0; i < levi.positive_roots.size(); ++i)
            if (levi.positive_roots[i] == root)
                levi.simple_roots.push_back(i);
    }
    return levi;
}

// ---------------------------------------------------------------------------

IsotropyDatum IsotropyDatum::parse(const std::string& text)
{
    IsotropyDatum k;
    std::string token;
    std::istringstream in(text);
    auto to_int = [&](const std::string& t) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(t, &used);
        } catch (const std::exception&) {
            throw InvalidArgument("simple subset: '" + t + "' is not an integer");
        }
        if (used != t.size())
            throw InvalidArgument("simple subset: '" + t + "' is not an integer");
        return v;
    };
    while (std::getline(in, token, ',')) {
        const auto b = token.find_first_not_of(" \t");
        if (b == std::string::npos)
            continue;
        token = token.substr(b, token.find_last_not_of(" \t") - b + 1);
        const auto dots = token.find("..");
        if (dots == std::string::npos) {
            k.simple_subset.insert(to_int(token));
            continue;
        }
        const int lo = to_int(token.substr(0, dots));
        const int hi = to_int(token.substr(dots + 2));
        for (int i = lo; i <= hi; ++i)
            k.simple_subset.insert(i);
    }
    return k;
}

std::string IsotropyDatum::to_string() const
{
    std::string s;
    for (int i : simple_subset) {
        if (!s.empty())
            s += ',';
        s += std::to_string(i);
    }
    return s;
}

void IsotropyDatum::validate(const RootSystem& rs) const
{
    for (int i : simple_subset)
        if (i < 1 || static_cast<std::size_t>(i) > rs.simple_count())
            throw InvalidArgument("simple root " + std::to_string(i) + " out of range for " + rs.label);
}

std::string WeylElement::word_string() const
{
    if (word.empty())
        return "e";
    std::string s;
    for (int i : word)
        s += "s" + std::to_string(i);
    return s;
}

WeylElement reflection(const RootSystem& rs, std::size_t root_index)
{
    if (root_index >= rs.positive_roots.size())
        throw InvalidArgument("root index out of range");
    const LinearForm& root = rs.positive_roots[root_index];
    const RationalVector& coroot = rs.coroots[root_index];
    RationalMatrix m = RationalMatrix::identity(rs.dim);
    for (std::size_t i = 0; i < rs.dim; ++i)
        for (std::size_t j = 0; j < rs.dim; ++j)
            m(i, j) -= root[i] * coroot[j];
    return {std::move(m), {}};
}

std::vector<WeylElement> generate_weyl_group(const RootSystem& rs, std::size_t max_order)
{
    return WeylGroup(rs, max_order).elements();
}

WeylGroup::WeylGroup(const RootSystem& rs, std::size_t max_order) : rs_(rs)
{
    std::vector<RationalMatrix> generators;
    for (std::size_t s = 0; s < rs.simple_count(); ++s)
        generators.push_back(reflection(rs, rs.simple_roots[s]).matrix);

    elements_.push_back({RationalMatrix::identity(rs.dim), {}});
    lookup_.emplace(elements_[0].matrix.data(), 0);
    for (std::size_t cur = 0; cur < elements_.size(); ++cur)
        for (std::size_t s = 0; s < generators.size(); ++s) {
            RationalMatrix next = elements_[cur].matrix * generators[s];
            if (lookup_.contains(next.data()))
                continue;
            if (elements_.size() >= max_order)
                throw ResourceLimit("Weyl group of " + rs.label + " exceeds the order bound " +
                                    std::to_string(max_order));
            std::vector<int> word = elements_[cur].word;
            word.push_back(static_cast<int>(s + 1));
            lookup_.emplace(next.data(), elements_.size());
            elements_.push_back({std::move(next), std::move(word)});
        }
}

std::optional<std::size_t> WeylGroup::find(const RationalMatrix& m) const
{
    auto it = lookup_.find(m.data());
    if (it == lookup_.end())
        return std::nullopt;
    return it->second;
}

std::size_t WeylGroup::index_of(const RationalMatrix& m) const
{
    auto i = find(m);
    if (!i)
        throw InternalInconsistency("matrix is not an element of the Weyl group of " + rs_.label);
    return *i;
}

std::size_t WeylGroup::multiply(std::size_t a, std::size_t b) const
{
    return index_of(elements_.at(a).matrix * elements_.at(b).matrix);
}

std::size_t WeylGroup::inverse(std::size_t a) const
{
    return index_of(gkmfiber::inverse(elements_.at(a).matrix));
}

int WeylGroup::length(std::size_t a) const
{
    return root_inversion_count(rs_, elements_.at(a).matrix);
}

std::vector<std::size_t> WeylGroup::parabolic_subgroup(const IsotropyDatum& k) const
{
    k.validate(rs_);
    std::vector<std::size_t> gens;
    for (int s : k.simple_subset)
        gens.push_back(index_of(reflection(rs_, rs_.simple_roots[static_cast<std::size_t>(s - 1)]).matrix));
    std::vector<std::size_t> members{0};
    std::vector<bool> seen(size(), false);
    seen[0] = true;
    for (std::size_t cur = 0; cur < members.size(); ++cur)
        for (std::size_t g : gens) {
            const std::size_t next = multiply(members[cur], g);
            if (!seen[next]) {
                seen[next] = true;
                members.push_back(next);
            }
        }
    return members;
}

int root_inversion_count(const RootSystem& rs, const RationalMatrix& w)
{
    int count = 0;
    for (const LinearForm& root : rs.positive_roots) {
        const auto where = rs.locate(apply(w, root));
        if (!where)
            throw InternalInconsistency("matrix does not permute the roots of " + rs.label);
        if (where->second < 0)
            ++count;
    }
    return count;
}

CosetSpace coset_space(const WeylGroup& w, const IsotropyDatum& k)
{
    const auto sub = w.parabolic_subgroup(k);
    constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
    CosetSpace cs;
    cs.k = k;
    cs.coset_of.assign(w.size(), unassigned);
    // Breadth-first order lists elements by nondecreasing length, so the first
    // member met in each coset is its minimal representative.
    for (std::size_t g = 0; g < w.size(); ++g) {
        if (cs.coset_of[g] != unassigned)
            continue;
        const std::size_t id = cs.representatives.size();
        for (std::size_t v : sub)
            cs.coset_of[w.multiply(g, v)] = id;
        const int len = w.length(g);
        if (static_cast<std::size_t>(len) != w[g].word.size())
            throw InternalInconsistency("word length and inversion count disagree");
        cs.representatives.push_back(w[g]);
        cs.representative_index.push_back(g);
        cs.lengths.push_back(len);
    }
    return cs;
}

CosetSpace coset_space(const RootSystem& rs, const IsotropyDatum& k)
{
    return coset_space(WeylGroup(rs), k);
}

std::vector<long> poincare_polynomial(const CosetSpace& cosets)
{
    std::vector<long> b;
    for (int len : cosets.lengths) {
        if (b.size() <= static_cast<std::size_t>(len))
            b.resize(static_cast<std::size_t>(len) + 1, 0);
        ++b[static_cast<std::size_t>(len)];
    }
    return b;
}

std::vector<long> poincare_polynomial(const RootSystem& rs, const IsotropyDatum& k)
{
    return poincare_polynomial(coset_space(rs, k));
}

std::size_t expected_weyl_order(Series series, int rank)
{
    std::size_t fact = 1;
    for (int i = 2; i <= rank; ++i)
        fact *= static_cast<std::size_t>(i);
    switch (series) {
    case Series::A: return fact * static_cast<std::size_t>(rank + 1);
    case Series::B:
    case Series::C: return fact << rank;
    case Series::D: return fact << (rank - 1);
    }
    return 0;
}

} // namespace gkmfiber
