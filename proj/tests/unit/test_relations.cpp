#include "doctest.h"

#include <cmath>
#include <fstream>
#include <map>

#include "cabdl/algebra/factor.hpp"
#include "cabdl/jacobian/jacobian.hpp"
#include "cabdl/relations/relations.hpp"
#include "helpers.hpp"

using namespace cabdl;
using cabdl::test::P;

namespace {

CurveModel curve(std::uint32_t p, int n, int d, std::vector<std::array<long, 3>> const & m)
{
    return validate_curve(make_curve_spec(p, n, d, m));
}

CurveModel c_genus3() { return curve(5, 3, 4, {{4, 0, 1}, {0, 0, 1}}); }

struct Case {
    CurveModel C;
    int B, m;
};

std::vector<Case> cases()
{
    return {{c_genus3(), 3, 2},
            {curve(2, 3, 4, {{4, 0, 1}, {0, 1, 1}, {1, 0, 1}}), 5, 5},
            {curve(3, 2, 5, {{5, 0, 1}, {2, 0, 1}, {0, 0, 2}, {1, 1, 1}}), 3, 4},
            {curve(7, 2, 3, {{3, 0, 1}, {1, 0, 1}, {0, 0, 3}}), 2, 2}};
}

// upper tail of the chi-square distribution (Wilson-Hilferty)
double chi_square_p(double x, double k)
{
    double const z = (std::cbrt(x / k) - (1 - 2 / (9 * k))) / std::sqrt(2 / (9 * k));
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

}  // namespace

TEST_CASE("norm examples")
{
    auto C = c_genus3();
    auto F = C.field();
    CHECK(norm_of_phi(C, {Poly(F), P(F, {1})}) == P(F, {1, 0, 0, 0, 1}));
    CHECK(norm_of_phi(C, {P(F, {0, 1}), P(F, {1})}) == P(F, {1, 0, 0, 4, 1}));
    CHECK(norm_of_phi(C, {P(F, {-4}), P(F, {1})}) == P(F, {0, 0, 0, 0, 1}));
}

TEST_CASE("closed-form norm agrees with the resultant")
{
    for (auto const & [C, B, m] : cases()) {
        auto F = C.field();
        PhiSampler sampler(F, 3);
        Rng rng(8);
        for (int trial = 0; trial < 40; ++trial) {
            auto phi = sampler.draw(rng);
            Poly N = norm_of_phi(C, phi);
            CHECK(N == resultant_y_sylvester(BiPoly(F, {phi.a, phi.b}), C.poly()));
            CHECK(N.degree() <= C.n() * 3 + C.d());
        }
    }
}

TEST_CASE("decomposition examples")
{
    auto C = c_genus3();
    auto F = C.field();
    auto fb = build_factor_base(C, 1);
    Rng rng(1);
    auto rel = decompose_divisor(C, fb, {P(F, {-4}), P(F, {1})}, rng);
    REQUIRE(rel.has_value());
    Place const target{P(F, {0, 1}), P(F, {4}), false};
    REQUIRE(rel->exps.size() == 1);
    CHECK(fb[rel->exps[0].first] == target);
    CHECK(rel->exps[0].second == 4);
    CHECK(rel->infinite == -4);

    // X + Y has norm X^4 + 4X^3 + 1, which has no linear factor only if irreducible pieces exceed B
    FunctionPhi phi{P(F, {0, 1}), P(F, {1})};
    auto N = norm_of_phi(C, phi);
    auto fac = factor(N);
    bool smooth1 = fac.max_degree() <= 1;
    CHECK(decompose_divisor(C, fb, phi, rng).has_value() == smooth1);
    auto fb4 = build_factor_base(C, 4);
    CHECK(decompose_divisor(C, fb4, phi, rng).has_value());
}

TEST_CASE("relations are principal and balanced")
{
    for (auto const & [C, B, m] : cases()) {
        Jacobian J(C);
        auto fb = build_factor_base(C, B);
        Rng rng(77);
        auto set = collect_relations(C, fb, m, 30, rng);
        CHECK(set.relations.size() == 30);
        CHECK(set.stats.hits == 30);
        CHECK(set.stats.trials >= 30);
        std::set<FunctionPhi> sources;
        for (auto const & r : set.relations) {
            long total = 0;
            Divisor D;
            for (auto const & [i, e] : r.exps) {
                CHECK(e > 0);
                total += e * fb[i].degree();
                D.add(fb[i], e);
            }
            CHECK(total == norm_of_phi(C, r.source).degree());
            CHECK(total == -r.infinite);
            Ideal I = J.ideal_from_divisor(D);
            Row phi(static_cast<std::size_t>(C.n()), Poly(C.field()));
            phi[0] = r.source.a;
            phi[1] = r.source.b;
            CHECK(I == J.principal(phi));
            CHECK(J.reduce(I).is_unit());
            CHECK(sources.insert(normalized(r.source)).second);
        }
        auto R = set.matrix();
        CHECK(R.s() == 30);
    }
}

TEST_CASE("sampler contracts")
{
    auto F2 = FiniteField::prime(2);
    PhiSampler tiny(F2, 0);
    Rng rng(3);
    std::set<std::pair<Poly, Poly>> got;
    for (int i = 0; i < 2; ++i) {
        auto phi = tiny.next(rng);
        REQUIRE(phi.has_value());
        CHECK(phi->b == P(F2, {1}));
        CHECK(phi->a.degree() <= 0);
        got.insert({phi->a, phi->b});
    }
    CHECK(got.size() == 2);
    CHECK_FALSE(tiny.next(rng).has_value());

    auto F5 = FiniteField::prime(5);
    PhiSampler s(F5, 1);
    std::set<FunctionPhi> seen;
    auto const total = s.class_count();
    REQUIRE(total.has_value());
    for (std::uint64_t i = 0; i < *total; ++i) {
        auto phi = s.next(rng);
        REQUIRE(phi.has_value());
        CHECK(phi->a.degree() <= 1);
        CHECK(phi->b.degree() <= 1);
        CHECK_FALSE(phi->b.is_zero());
        CHECK(gcd(phi->a, phi->b).is_one());
        CHECK(seen.insert(normalized(*phi)).second);
    }
    CHECK_FALSE(s.next(rng).has_value());
}

TEST_CASE("sampler is uniform on coprime pairs")
{
    auto F5 = FiniteField::prime(5);
    // exhaustive list of valid pairs with deg <= 1
    std::map<std::pair<std::vector<Elem>, std::vector<Elem>>, int> counts;
    for (Elem a0 = 0; a0 < 5; ++a0)
        for (Elem a1 = 0; a1 < 5; ++a1)
            for (Elem b0 = 0; b0 < 5; ++b0)
                for (Elem b1 = 0; b1 < 5; ++b1) {
                    Poly a(F5, {a0, a1}), b(F5, {b0, b1});
                    if (!b.is_zero() && gcd(a, b).is_one())
                        counts[{a.coeffs(), b.coeffs()}] = 0;
                }
    PhiSampler s(F5, 1);
    Rng rng(2024);
    int const draws = 20000;
    for (int i = 0; i < draws; ++i) {
        auto phi = s.draw(rng);
        auto it = counts.find({phi.a.coeffs(), phi.b.coeffs()});
        REQUIRE(it != counts.end());
        ++it->second;
    }
    double const expected = static_cast<double>(draws) / static_cast<double>(counts.size());
    double chi = 0;
    for (auto const & [k, c] : counts)
        chi += (c - expected) * (c - expected) / expected;
    CHECK(chi_square_p(chi, static_cast<double>(counts.size() - 1)) > 0.01);
}

TEST_CASE("planner")
{
    CHECK(sigma_root(0, 9) == doctest::Approx(2.0));
    CHECK(sigma_root(0, 2.25) == doctest::Approx(2.0 / 3 * 1.5));
    double s = sigma_root(1.3, 0.7);
    CHECK(s * s - 4.0 / 9 * 1.3 * s - 4.0 / 9 * 0.7 == doctest::Approx(0).epsilon(1e-12));

    auto C = c_genus3();
    std::ifstream in(CABDL_TEST_DATA "/plan_golden.json");
    REQUIRE(in);
    auto golden = nlohmann::json::parse(in);
    auto plan = plan_parameters(C);
    CHECK(plan.M == doctest::Approx(golden["M"].get<double>()));
    CHECK(plan.n0 == doctest::Approx(golden["n0"].get<double>()));
    CHECK(plan.d0 == doctest::Approx(golden["d0"].get<double>()));
    CHECK(plan.sigma == doctest::Approx(golden["sigma"].get<double>()));
    CHECK(plan.tau == doctest::Approx(golden["tau"].get<double>()));
    CHECK(plan.rho == doctest::Approx(golden["rho"].get<double>()));
    CHECK(plan.B == golden["B"].get<int>());
    CHECK(plan.m == golden["m"].get<int>());

    ParameterOverrides o;
    o.B = 3;
    o.m = 4;
    auto pinned = plan_parameters(C, o);
    CHECK(pinned.B == 3);
    CHECK(pinned.m == 4);
    auto fb = build_factor_base(C, 3);
    plan_relation_count(pinned, C, fb.size(), o);
    CHECK(pinned.s == 2L * fb.size());

    // default parameters leave too few functions for this curve
    CHECK_THROWS_AS(plan_relation_count(plan, C, fb.size()), Error);
    o.s = 0;
    plan_relation_count(plan, C, fb.size(), o);
    CHECK(plan.s == 0);
}

TEST_CASE("smooth polynomial probability")
{
    for (std::uint32_t p : {2u, 3u}) {
        auto F = FiniteField::prime(p);
        for (int N = 1; N <= 6; ++N)
            for (int B = 1; B <= 3; ++B) {
                auto all = cabdl::test::all_monic(F, N);
                std::size_t smooth = 0;
                for (auto const & f : all)
                    smooth += factor(f).max_degree() <= B;
                CHECK(smooth_polynomial_probability(p, N, B) ==
                      doctest::Approx(static_cast<double>(smooth) / static_cast<double>(all.size())));
            }
    }
}

TEST_CASE("collection edge cases")
{
    auto C = c_genus3();
    auto fb = build_factor_base(C, 1);
    Rng rng(4);
    auto empty = collect_relations(C, fb, 2, 0, rng);
    CHECK(empty.relations.empty());
    CHECK(empty.stats.trials == 0);
    CHECK(empty.matrix().s() == 0);
    try {
        collect_relations(C, fb, 0, 1000, rng);
        FAIL("expected exhaustion");
    } catch (Error const & e) {
        CHECK(e.kind() == ErrorKind::budget);
    }
    try {
        collect_relations(C, fb, 3, 1000, rng, 10);
        FAIL("expected budget failure");
    } catch (Error const & e) {
        CHECK(e.kind() == ErrorKind::budget);
    }

    Rng r1(99), r2(99);
    auto a = collect_relations(C, build_factor_base(C, 3), 2, 30, r1);
    auto b = collect_relations(C, build_factor_base(C, 3), 2, 30, r2);
    CHECK(relation_to_json(a.relations.back()) == relation_to_json(b.relations.back()));
    CHECK(stats_to_json(a.stats, false) == stats_to_json(b.stats, false));
    CHECK_FALSE(stats_to_json(a.stats, false).contains("seconds"));
}
