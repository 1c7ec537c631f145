#include "doctest.h"

#include "gkmfiber/errors.hpp"
#include "gkmfiber/weyl.hpp"

#include <algorithm>
#include <map>

using namespace gkmfiber;

namespace {

// Oracle: W_K is the stabilizer of a weight that pairs to zero exactly with the
// coroots of K, so cosets wW_K are the distinct points of the orbit W.lambda.
std::map<RationalVector, int> orbit_oracle(const RootSystem& rs, const IsotropyDatum& k)
{
    RationalMatrix coroots(rs.simple_count(), rs.dim);
    RationalVector rhs(rs.simple_count());
    for (std::size_t i = 0; i < rs.simple_count(); ++i) {
        for (std::size_t j = 0; j < rs.dim; ++j)
            coroots(i, j) = rs.coroots[rs.simple_roots[i]][j];
        rhs[i] = k.simple_subset.contains(static_cast<int>(i + 1)) ? 0 : 1;
    }
    const RationalVector lambda = *solve(coroots, rhs);
    std::map<RationalVector, int> min_length;
    for (const WeylElement& w : generate_weyl_group(rs)) {
        const RationalVector point = w.matrix * std::span<const Rational>(lambda);
        const int len = root_inversion_count(rs, w.matrix);
        auto [it, inserted] = min_length.try_emplace(point, len);
        if (!inserted)
            it->second = std::min(it->second, len);
    }
    return min_length;
}

std::vector<int> sorted_lengths(const CosetSpace& cs)
{
    std::vector<int> l = cs.lengths;
    std::sort(l.begin(), l.end());
    return l;
}

} // namespace

TEST_CASE("root systems")
{
    CHECK(build_root_system(Series::A, 2).positive_roots.size() == 3);
    const RootSystem b2 = build_root_system(Series::B, 2);
    REQUIRE(b2.positive_roots.size() == 4);
    CHECK(b2.positive_roots[0] == LinearForm({1, -1}));
    CHECK(b2.positive_roots[1] == LinearForm({1, 1}));
    CHECK(b2.positive_roots[2] == LinearForm({1, 0}));
    CHECK(b2.positive_roots[3] == LinearForm({0, 1}));
    const RootSystem d2 = build_root_system(Series::D, 2);
    CHECK(d2.positive_roots.size() == 2);
    CHECK_THROWS_AS(build_root_system(Series::D, 1), InvalidArgument);
    CHECK_THROWS_AS(build_root_system(Series::A, 0), InvalidArgument);

    for (Series s : {Series::A, Series::B, Series::C, Series::D})
        for (int n = (s == Series::D ? 2 : 1); n <= 4; ++n) {
            const RootSystem rs = build_root_system(s, n);
            const std::size_t expected = s == Series::A ? n * (n + 1) / 2 : (s == Series::D ? n * (n - 1) : n * n);
            CHECK(rs.positive_roots.size() == expected);
            CHECK(rs.simple_count() == static_cast<std::size_t>(n));
            for (std::size_t i = 0; i < rs.positive_roots.size(); ++i) {
                CHECK(rs.positive_roots[i].pair(rs.coroots[i]) == 2);
                for (std::size_t j = i + 1; j < rs.positive_roots.size(); ++j)
                    CHECK(linearly_independent(rs.positive_roots[i], rs.positive_roots[j]));
            }
        }
}

TEST_CASE("reflections")
{
    const RootSystem b2 = build_root_system(Series::B, 2);
    RationalMatrix swap(2, 2);
    swap(0, 1) = 1;
    swap(1, 0) = 1;
    CHECK(reflection(b2, 0).matrix == swap);
    RationalMatrix flip = RationalMatrix::identity(2);
    flip(0, 0) = -1;
    CHECK(reflection(b2, 2).matrix == flip);

    const RootSystem a3 = build_root_system(Series::A, 3);
    for (std::size_t i = 0; i < a3.positive_roots.size(); ++i) {
        const RationalMatrix s = reflection(a3, i).matrix;
        CHECK(s * s == RationalMatrix::identity(3));
        CHECK(apply(s, a3.positive_roots[i]) == -a3.positive_roots[i]);
    }
}

TEST_CASE("Weyl group orders")
{
    CHECK(generate_weyl_group(build_root_system(Series::A, 2)).size() == 6);
    CHECK(generate_weyl_group(build_root_system(Series::B, 2)).size() == 8);
    CHECK(generate_weyl_group(build_root_system(Series::D, 3)).size() == 24);
    for (Series s : {Series::A, Series::B, Series::C, Series::D})
        for (int n = (s == Series::D ? 2 : 1); n <= 3; ++n)
            CHECK(generate_weyl_group(build_root_system(s, n)).size() == expected_weyl_order(s, n));
    CHECK_THROWS_AS(generate_weyl_group(build_root_system(Series::B, 3), 20), ResourceLimit);
}

TEST_CASE("Weyl elements permute the roots and lengths agree")
{
    for (Series s : {Series::A, Series::B, Series::C, Series::D}) {
        const RootSystem rs = build_root_system(s, 3);
        const WeylGroup w(rs);
        for (std::size_t i = 0; i < w.size(); ++i) {
            for (const LinearForm& r : rs.positive_roots)
                CHECK(rs.locate(apply(w[i].matrix, r)).has_value());
            CHECK(static_cast<std::size_t>(w.length(i)) == w[i].word.size());
            CHECK(w.multiply(i, w.inverse(i)) == 0);
        }
    }
}

TEST_CASE("coset spaces")
{
    const RootSystem a2 = build_root_system(Series::A, 2);
    const RootSystem b2 = build_root_system(Series::B, 2);
    const CosetSpace cp2 = coset_space(a2, IsotropyDatum::parse("2"));
    CHECK(cp2.size() == 3);
    CHECK(sorted_lengths(cp2) == std::vector<int>{0, 1, 2});
    CHECK(coset_space(a2, {}).size() == 6);
    const CosetSpace gr = coset_space(b2, IsotropyDatum::parse("2"));
    CHECK(gr.size() == 4);
    CHECK(sorted_lengths(gr) == std::vector<int>{0, 1, 2, 3});
    CHECK(coset_space(b2, IsotropyDatum::parse("1,2")).size() == 1);
}

TEST_CASE("cosets match the orbit oracle")
{
    struct Case {
        Series s;
        int n;
        const char* k;
    };
    for (const Case& c : {Case{Series::A, 2, "2"}, Case{Series::A, 3, "2,3"}, Case{Series::A, 3, "1,3"},
                          Case{Series::B, 2, "2"}, Case{Series::B, 3, "2,3"}, Case{Series::C, 3, "1"},
                          Case{Series::D, 3, "2,3"}, Case{Series::D, 4, "2..4"}}) {
        const RootSystem rs = build_root_system(c.s, c.n);
        const IsotropyDatum k = IsotropyDatum::parse(c.k);
        const auto oracle = orbit_oracle(rs, k);
        const CosetSpace cs = coset_space(rs, k);
        CHECK(cs.size() == oracle.size());
        std::vector<int> oracle_lengths;
        for (const auto& [pt, len] : oracle)
            oracle_lengths.push_back(len);
        std::sort(oracle_lengths.begin(), oracle_lengths.end());
        CHECK(sorted_lengths(cs) == oracle_lengths);
    }
}

TEST_CASE("Poincare polynomials")
{
    const RootSystem a2 = build_root_system(Series::A, 2);
    CHECK(poincare_polynomial(a2, {}) == std::vector<long>{1, 2, 2, 1});
    CHECK(poincare_polynomial(build_root_system(Series::A, 3), IsotropyDatum::parse("2,3")) ==
          std::vector<long>{1, 1, 1, 1});
    CHECK(poincare_polynomial(build_root_system(Series::B, 2), IsotropyDatum::parse("2")) ==
          std::vector<long>{1, 1, 1, 1});
    // Even-dimensional quadric Gr_2^+(R^6).
    CHECK(poincare_polynomial(build_root_system(Series::D, 3), IsotropyDatum::parse("2,3")) ==
          std::vector<long>{1, 1, 2, 1, 1});

    for (Series s : {Series::A, Series::B, Series::C, Series::D})
        for (const char* k : {"", "2", "1,3", "2..3"}) {
            const RootSystem rs = build_root_system(s, 3);
            const auto b = poincare_polynomial(rs, IsotropyDatum::parse(k));
            CHECK(std::equal(b.begin(), b.end(), b.rbegin()));
            long sum = 0;
            for (long x : b)
                sum += x;
            CHECK(static_cast<std::size_t>(sum) == coset_space(rs, IsotropyDatum::parse(k)).size());
        }
}

TEST_CASE("Levi subsystems")
{
    const RootSystem b3 = build_root_system(Series::B, 3);
    const RootSystem levi = levi_subsystem(b3, {2, 3});
    CHECK(levi.dim == 3);
    CHECK(levi.positive_roots.size() == 4);
    CHECK(WeylGroup(levi).size() == 8);
    const RootSystem d2 = levi_subsystem(build_root_system(Series::D, 3), {2, 3});
    CHECK(d2.positive_roots.size() == 2);
    CHECK(WeylGroup(d2).size() == 4);
}

TEST_CASE("isotropy datum parsing")
{
    CHECK(IsotropyDatum::parse("").simple_subset.empty());
    CHECK(IsotropyDatum::parse("2..4").simple_subset == std::set<int>{2, 3, 4});
    CHECK(IsotropyDatum::parse(" 1, 3").simple_subset == std::set<int>{1, 3});
    CHECK_THROWS_AS(IsotropyDatum::parse("x"), InvalidArgument);
    CHECK_THROWS_AS(IsotropyDatum::parse("4").validate(build_root_system(Series::A, 3)), InvalidArgument);
}
