#include "doctest.h"

#include "cabdl/curve/zeta.hpp"
#include "cabdl/jacobian/jacobian.hpp"
#include "cabdl/relations/index_calculus.hpp"

using namespace cabdl;

namespace {

CurveModel curve(std::uint32_t p, int n, int d, std::vector<std::array<long, 3>> const & m)
{
    return validate_curve(make_curve_spec(p, n, d, m));
}

GroupOptions options(int B, int m)
{
    GroupOptions o;
    o.overrides.B = B;
    o.overrides.m = m;
    return o;
}

Ideal class_of_column(Jacobian const & J, FactorBase const & fb, BigColumn const & col)
{
    Ideal acc = J.identity();
    for (auto const & [i, c] : col)
        acc = J.add(acc, J.scalar_mul(J.class_of(fb[i]), c));
    return acc;
}

std::vector<mpz_class> prime_divisors(mpz_class n)
{
    std::vector<mpz_class> out;
    for (mpz_class p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    if (n > 1)
        out.push_back(n);
    return out;
}

}  // namespace

TEST_CASE("elliptic curves: h equals N_1")
{
    for (auto const & [C, m] : {std::pair{curve(5, 2, 3, {{3, 0, 1}, {1, 0, 1}, {0, 0, 1}}), 3},
                                std::pair{curve(7, 2, 3, {{3, 0, 1}, {1, 0, 1}, {0, 0, 3}}), 2}}) {
        Rng rng(1);
        auto const G = compute_group_structure(C, options(2, m), rng);
        CHECK(G.snf.h == mpz_class(static_cast<unsigned long>(count_points(C, 1))));
        CHECK(G.rank == G.fb.size());
        CHECK(G.snf.r() <= 2);
    }
}

TEST_CASE("genus 0: trivial group")
{
    auto const C = curve(3, 2, 1, {{1, 0, 1}});
    auto o = options(2, 3);
    Rng rng(1);
    auto const G = compute_group_structure(C, o, rng);
    CHECK(G.snf.h == 1);
    CHECK(G.snf.r() == 0);
}

TEST_CASE("generators have the stated orders")
{
    auto const C = curve(5, 3, 4, {{4, 0, 1}, {0, 0, 1}});
    Jacobian const J(C);
    Rng rng(5);
    auto const G = compute_group_structure(C, options(3, 4), rng);
    REQUIRE(G.h_exact);
    CHECK(G.snf.h == *G.h_exact);
    for (int i = 1; i <= G.snf.r(); ++i) {
        auto const h = G.snf.factors[static_cast<std::size_t>(i - 1)];
        Ideal const D = class_of_column(J, G.fb, generator(G.snf, i));
        CHECK(J.scalar_mul(D, h).is_unit());
        for (auto const & p : prime_divisors(h))
            CHECK_FALSE(J.scalar_mul(D, h / p).is_unit());
    }
    // relations map to zero coordinates
    for (auto const & rel : G.relations.relations) {
        for (auto const & c : group_coordinates(G.snf, rel.exps))
            CHECK(c == 0);
    }
}

TEST_CASE("failure modes")
{
    auto const C = curve(5, 2, 3, {{3, 0, 1}, {1, 0, 1}, {0, 0, 1}});
    int const t = build_factor_base(C, 2).size();

    SUBCASE("half the relations: rank failure")
    {
        auto o = options(2, 3);
        o.overrides.s = t / 2;
        Rng rng(3);
        try {
            compute_group_structure(C, o, rng);
            FAIL("expected a rank failure");
        } catch (Error const & e) {
            CHECK(e.kind() == ErrorKind::rank);
            CHECK(exit_code(e.kind()) == 4);
        }
    }
    SUBCASE("fabricated unit relations: order failure")
    {
        auto o = options(2, 3);
        o.fabricated = t;
        Rng rng(3);
        try {
            compute_group_structure(C, o, rng);
            FAIL("expected an order failure");
        } catch (Error const & e) {
            CHECK(e.kind() == ErrorKind::order);
            CHECK(exit_code(e.kind()) == 5);
        }
    }
    SUBCASE("truncated bounds also catch it")
    {
        auto o = options(2, 3);
        o.fabricated = t;
        o.bounds = BoundsMode::truncated;
        o.lambda = 1;
        Rng rng(3);
        CHECK_THROWS_AS(compute_group_structure(C, o, rng), Error);
    }
}

TEST_CASE("truncated bounds recover h")
{
    auto const C = curve(5, 3, 4, {{4, 0, 1}, {0, 0, 1}});
    auto o = options(3, 4);
    o.bounds = BoundsMode::truncated;
    o.lambda = 2;
    Rng rng(9);
    auto const G = compute_group_structure(C, o, rng);
    CHECK(G.snf.h == compute_zeta(C).h);
    CHECK(G.bounds.lower < G.snf.h.get_d());
    CHECK(G.bounds.upper > G.snf.h.get_d());
}

TEST_CASE("deterministic JSON")
{
    auto const C = curve(7, 2, 3, {{3, 0, 1}, {1, 0, 1}, {0, 0, 3}});
    Rng a(21), b(21);
    auto const ja = group_structure_to_json(compute_group_structure(C, options(2, 2), a), false).dump();
    auto const jb = group_structure_to_json(compute_group_structure(C, options(2, 2), b), false).dump();
    CHECK(ja == jb);
}

TEST_CASE("free relations are principal")
{
    auto const C = curve(7, 2, 3, {{3, 0, 1}, {1, 0, 1}, {0, 0, 3}});
    Jacobian const J(C);
    auto const fb = build_factor_base(C, 2);
    auto const cols = free_relations(C, fb);
    CHECK_FALSE(cols.empty());
    for (auto const & col : cols) {
        REQUIRE(col.size() == 2);
        BigColumn big;
        for (auto const & [i, e] : col) {
            CHECK(fb[i].u == fb[col.front().first].u);
            big.push_back({i, e});
        }
        CHECK(class_of_column(J, fb, big).is_unit());
    }
    auto o = options(2, 2);
    o.free_relations = true;
    Rng rng(21);
    auto const G = compute_group_structure(C, o, rng);
    CHECK(G.free_count == static_cast<int>(cols.size()));
    CHECK(G.snf.h == mpz_class(static_cast<unsigned long>(count_points(C, 1))));
}
