#include "doctest.h"

#include <set>

#include "cabdl/algebra/factor.hpp"
#include "cabdl/curve/factor_base.hpp"
#include "cabdl/curve/zeta.hpp"
#include "cabdl/jacobian/jacobian.hpp"
#include "helpers.hpp"

using namespace cabdl;
using cabdl::test::P;

namespace {

CurveModel curve(std::uint32_t p, int n, int d, std::vector<std::array<long, 3>> const & m)
{
    return validate_curve(make_curve_spec(p, n, d, m));
}

CurveModel c_genus3() { return curve(5, 3, 4, {{4, 0, 1}, {0, 0, 1}}); }
CurveModel c_elliptic() { return curve(5, 2, 3, {{3, 0, 1}, {1, 0, 1}, {0, 0, 1}}); }
CurveModel c_binary() { return curve(2, 3, 4, {{4, 0, 1}, {0, 1, 1}, {1, 0, 1}}); }
CurveModel c_hyper() { return curve(3, 2, 5, {{5, 0, 1}, {2, 0, 1}, {0, 0, 2}, {1, 1, 1}}); }

// least pole order of a nonzero element of I and the dimension of the
// space at that order, by linear algebra on monomials X^i Y^j
std::pair<long, int> minimal_weight_oracle(Jacobian const & J, Ideal const & I)
{
    auto const & C = J.curve();
    auto const & F = *C.field();
    for (long w = 0;; ++w) {
        std::vector<std::vector<Elem>> rows;
        for (int j = 0; j < C.n(); ++j)
            for (long i = 0; C.weight(i, j) <= w; ++i) {
                Row m(static_cast<std::size_t>(C.n()), Poly(C.field()));
                m[static_cast<std::size_t>(j)] = Poly::monomial(C.field(), 1, static_cast<std::size_t>(i));
                Row nf = J.normal_form(m, I);
                std::vector<Elem> v;
                for (int c = 0; c < C.n(); ++c)
                    for (int e = 0; e < I(c, c).degree(); ++e)
                        v.push_back(nf[static_cast<std::size_t>(c)][static_cast<std::size_t>(e)]);
                rows.push_back(v);
            }
        // rank of the normal-form matrix
        std::size_t const cols = rows.empty() ? 0 : rows[0].size();
        std::size_t rank = 0;
        for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
            std::size_t piv = rank;
            while (piv < rows.size() && rows[piv][c] == 0)
                ++piv;
            if (piv == rows.size())
                continue;
            std::swap(rows[piv], rows[rank]);
            Elem inv = F.inv(rows[rank][c]);
            for (auto & x : rows[rank])
                x = F.mul(x, inv);
            for (std::size_t r = 0; r < rows.size(); ++r)
                if (r != rank && rows[r][c] != 0) {
                    Elem t = rows[r][c];
                    for (std::size_t k = 0; k < cols; ++k)
                        rows[r][k] = F.sub(rows[r][k], F.mul(t, rows[rank][k]));
                }
            ++rank;
        }
        if (rank < rows.size())
            return {w, static_cast<int>(rows.size() - rank)};
    }
}

std::size_t closure_size(Jacobian const & J, std::vector<Ideal> const & gens)
{
    std::set<Ideal> seen{J.identity()};
    std::vector<Ideal> frontier{J.identity()};
    while (!frontier.empty()) {
        std::vector<Ideal> next;
        for (auto const & a : frontier)
            for (auto const & g : gens) {
                Ideal s = J.add(a, g);
                if (seen.insert(s).second)
                    next.push_back(s);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

std::vector<Ideal> place_classes(Jacobian const & J, int B)
{
    std::vector<Ideal> out;
    auto const fb = build_factor_base(J.curve(), B);
    for (auto const & Pl : fb.places())
        out.push_back(J.class_of(Pl));
    return out;
}

}  // namespace

TEST_CASE("place ideals")
{
    Jacobian J(c_genus3());
    auto F = J.field();
    Place Pl{P(F, {0, 1}), P(F, {4}), false};
    Ideal I = J.place_ideal(Pl);
    CHECK(I.degree() == 1);
    CHECK(J.is_ideal(I));
    CHECK(J.contains(I, Row{P(F, {0, 1}), Poly(F), Poly(F)}));
    CHECK(J.contains(I, Row{P(F, {-4}), P(F, {1}), Poly(F)}));
    CHECK_FALSE(J.contains(I, Row{P(F, {1}), Poly(F), Poly(F)}));

    Divisor D;
    CHECK(J.ideal_from_divisor(D).is_unit());
    D.add(Pl, 2);
    Ideal I2 = J.ideal_from_divisor(D);
    CHECK(I2.degree() == 2);
    CHECK(I2.norm() == P(F, {0, 0, 1}));

    Divisor bad;
    bad.add(Place::at_infinity(F), 1);
    CHECK_THROWS_AS(J.ideal_from_divisor(bad), Error);
    CHECK_THROWS_AS(J.place_ideal(Place{P(F, {0, 1}), P(F, {1}), false}), Error);
}

TEST_CASE("principal ideals and valuations")
{
    Jacobian J(c_genus3());
    auto F = J.field();
    // Y - 4 vanishes to order 4 at (X, Y - 4)
    Row phi{P(F, {-4}), P(F, {1}), Poly(F)};
    Ideal I = J.principal(phi);
    CHECK(I.degree() == J.weight(phi));
    CHECK(I.norm() == P(F, {0, 0, 0, 0, 1}));
    CHECK(J.valuation(I, Place{P(F, {0, 1}), P(F, {4}), false}) == 4);
    CHECK(J.reduce(I).is_unit());

    Rng rng(3);
    auto sup = J.support(I, rng);
    REQUIRE(sup.has_value());
    CHECK(sup->degree() == 4);
    CHECK(J.ideal_from_divisor(*sup) == I);
}

TEST_CASE("minimal element matches linear algebra oracle")
{
    for (auto const & C : {c_genus3(), c_binary(), c_hyper(), c_elliptic()}) {
        Jacobian J(C);
        Rng rng(11);
        auto fb = build_factor_base(C, 2);
        for (int trial = 0; trial < 25; ++trial) {
            Divisor D;
            int parts = 1 + static_cast<int>(rng.below(4));
            for (int k = 0; k < parts; ++k)
                D.add(fb[static_cast<int>(rng.below(static_cast<std::uint64_t>(fb.size())))], 1 + static_cast<long>(rng.below(2)));
            Ideal I = J.ideal_from_divisor(D);
            CHECK(I.degree() == D.degree());
            Row f = J.minimal_element(I);
            CHECK(J.contains(I, f));
            auto [w, dim] = minimal_weight_oracle(J, I);
            CHECK(J.weight(f) == w);
            CHECK(dim == 1);
            Ideal R = J.reduce(I);
            CHECK(R.degree() <= C.genus());
            CHECK(J.is_ideal(R));
        }
    }
}

TEST_CASE("group laws")
{
    for (auto const & C : {c_genus3(), c_binary(), c_hyper()}) {
        Jacobian J(C);
        Rng rng(5);
        for (int trial = 0; trial < 15; ++trial) {
            Ideal A = J.random_class(rng), B = J.random_class(rng), D = J.random_class(rng);
            CHECK(J.add(A, J.identity()) == A);
            CHECK(J.add(A, J.negate(A)).is_unit());
            CHECK(J.add(A, B) == J.add(B, A));
            CHECK(J.add(J.add(A, B), D) == J.add(A, J.add(B, D)));
            CHECK(J.scalar_mul(A, 0).is_unit());
            CHECK(J.scalar_mul(A, 1) == A);
            CHECK(J.scalar_mul(A, 3) == J.add(A, J.add(A, A)));
            CHECK(J.scalar_mul(A, -2) == J.negate(J.add(A, A)));
            CHECK(J.reduce(A) == A);
        }
    }
}

TEST_CASE("Lagrange with the zeta class number")
{
    for (auto const & C : {c_genus3(), c_binary(), c_hyper(), c_elliptic()}) {
        Jacobian J(C);
        mpz_class const h = compute_zeta(C).h;
        Rng rng(23);
        for (int trial = 0; trial < 20; ++trial)
            CHECK(J.scalar_mul(J.random_class(rng), h).is_unit());
    }
}

TEST_CASE("random classes when every rational point is ramified")
{
    // Y^2 = -X^3 - 1 over F_7: -c^3 - 1 is 0 or a non-square for every c
    auto const C = curve(7, 2, 3, {{3, 0, 1}, {0, 0, 1}});
    Jacobian J(C);
    REQUIRE(compute_zeta(C).h == 4);
    Rng rng(2);
    std::set<std::string> seen;
    for (int trial = 0; trial < 40; ++trial) {
        Ideal const A = J.random_class(rng);
        CHECK(J.scalar_mul(A, 4).is_unit());
        seen.insert(A.key());
    }
    // one affine point is never equivalent to P_inf: the three nonzero classes
    CHECK(seen.size() == 3);
}

TEST_CASE("class enumeration reproduces h")
{
    for (auto const & C : {c_elliptic(), c_genus3(), c_binary()}) {
        Jacobian J(C);
        auto const h = compute_zeta(C).h;
        CHECK(closure_size(J, place_classes(J, 2)) == h.get_ui());
    }
}

TEST_CASE("support extraction")
{
    Jacobian J(c_hyper());
    Rng rng(9);
    int extracted = 0;
    for (int trial = 0; trial < 30; ++trial) {
        Ideal A = J.random_class(rng);
        auto D = J.support(A, rng);
        if (!D)
            continue;
        ++extracted;
        CHECK(D->is_effective());
        CHECK(D->degree() == A.degree());
        CHECK(J.ideal_from_divisor(*D) == A);
        CHECK(J.class_of(*D) == A);
    }
    CHECK(extracted > 5);
}

TEST_CASE("brute force dlog")
{
    Jacobian J(c_genus3());
    mpz_class const h = compute_zeta(J.curve()).h;
    Rng rng(2);
    Ideal base = J.random_class(rng);
    CHECK(*brute_force_dlog(J, base, J.identity(), h) == 0);
    if (!base.is_unit())
        CHECK(*brute_force_dlog(J, base, base, h) == 1);
    for (int trial = 0; trial < 5; ++trial) {
        mpz_class x = static_cast<unsigned long>(rng.below(h.get_ui()));
        Ideal target = J.scalar_mul(base, x);
        auto got = brute_force_dlog(J, base, target, h);
        REQUIRE(got.has_value());
        CHECK(J.scalar_mul(base, *got) == target);
        CHECK(*got <= x);
    }
    CHECK_THROWS_AS(brute_force_dlog(J, base, base, mpz_class(1000), 10), Error);
}

TEST_CASE("ideal serialization")
{
    Jacobian J(c_binary());
    Rng rng(4);
    Ideal A = J.random_class(rng);
    auto j = ideal_to_json(A);
    CHECK(ideal_from_json(J, nlohmann::json::parse(j.dump())) == A);

    auto bad = j;
    bad["basis"][0][0] = nlohmann::json::array({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1});
    CHECK_THROWS_AS(ideal_from_json(J, bad), Error);
    CHECK_THROWS_AS(ideal_from_json(J, nlohmann::json{{"basis", 3}}), Error);
}
