#include "doctest.h"

#include "cabdl/algebra/bipoly.hpp"
#include "cabdl/error.hpp"
#include "helpers.hpp"

using namespace cabdl;
using test::P;

namespace {

BiPoly curve345(FieldPtr const & F)
{
    // Y^3 + X^4 + 1
    return BiPoly(F, {P(F, {1, 0, 0, 0, 1}), Poly(F), Poly(F), P(F, {1})});
}

BiPoly random_bipoly(FieldPtr const & F, int dy, int dx, Rng & rng)
{
    std::vector<Poly> c;
    for (int j = 0; j <= dy; ++j)
        c.push_back(test::random_poly(F, dx, rng));
    return BiPoly(F, c);
}

BiPoly mul(BiPoly const & a, BiPoly const & b)
{
    std::vector<Poly> c(a.coeffs().size() + b.coeffs().size() - 1, Poly(a.field()));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] += a[i] * b[j];
    return BiPoly(a.field(), c);
}

// Pseudo-remainder sequence with content removal: true iff f and g have a
// common factor of positive Y-degree in F_q(X)[Y].
bool common_factor_in_y(BiPoly f, BiPoly g)
{
    auto content_free = [](BiPoly const & h) {
        Poly c(h.field());
        for (auto const & p : h.coeffs())
            c = gcd(c, p);
        std::vector<Poly> out;
        for (auto const & p : h.coeffs())
            out.push_back(p / c);
        return BiPoly(h.field(), out);
    };
    if (f.degree_y() < g.degree_y())
        std::swap(f, g);
    while (!g.is_zero()) {
        if (g.degree_y() == 0)
            return false;
        // prem(f, g)
        std::vector<Poly> r = f.coeffs();
        Poly const lg = g[static_cast<std::size_t>(g.degree_y())];
        for (int k = f.degree_y(); k >= g.degree_y(); --k) {
            Poly const lead = r[static_cast<std::size_t>(k)];
            for (auto & x : r)
                x = x * lg;
            for (int j = 0; j <= g.degree_y(); ++j)
                r[static_cast<std::size_t>(k - g.degree_y() + j)] -= lead * g[static_cast<std::size_t>(j)];
        }
        BiPoly rem(f.field(), r);
        f = g;
        g = rem.is_zero() ? rem : content_free(rem);
    }
    return f.degree_y() > 0;
}

}  // namespace

TEST_CASE("resultant examples on Y^3 + X^4 + 1 over F_5")
{
    auto F = FiniteField::prime(5);
    auto C = curve345(F);
    BiPoly y(F, {Poly(F), P(F, {1})});
    BiPoly ypx(F, {P(F, {0, 1}), P(F, {1})});
    BiPoly ym4(F, {P(F, {-4}), P(F, {1})});
    for (auto res : {resultant_y_sylvester, resultant_y_interpolated, resultant_y}) {
        CHECK(res(y, C) == P(F, {1, 0, 0, 0, 1}));
        CHECK(res(ym4, C) == P(F, {0, 0, 0, 0, 1}));
    }
    // degree bound 7 exceeds what F_5 can interpolate; the dispatcher falls
    // back to the Sylvester route
    CHECK(resultant_y_sylvester(ypx, C) == P(F, {1, 0, 0, 4, 1}));
    CHECK(resultant_y(ypx, C) == P(F, {1, 0, 0, 4, 1}));
    CHECK_THROWS_AS(resultant_y_interpolated(ypx, C), Error);
    // closed form (-a)^3 + b^3 X^4 + 1 with a = X, b = 1
    auto a = P(F, {0, 1});
    CHECK(resultant_y(ypx, C) == pow(-a, 3) + P(F, {0, 0, 0, 0, 1}) + P(F, {1}));
}

TEST_CASE("constant-in-Y arguments are a domain error")
{
    auto F = FiniteField::prime(5);
    BiPoly a(F, {P(F, {1, 1})}), b(F, {P(F, {2})});
    CHECK_THROWS_AS(resultant_y(a, b), Error);
}

TEST_CASE("Sylvester and interpolation routes agree")
{
    auto F = FiniteField::prime(31);
    Rng rng(17);
    for (int i = 0; i < 60; ++i) {
        auto f = random_bipoly(F, 1 + static_cast<int>(rng.below(3)), 3, rng);
        auto g = random_bipoly(F, 1 + static_cast<int>(rng.below(3)), 3, rng);
        if (f.degree_y() < 1 || g.degree_y() < 1)
            continue;
        CHECK(resultant_y_sylvester(f, g) == resultant_y_interpolated(f, g));
    }
}

TEST_CASE("resultant vanishes iff there is a common factor in Y")
{
    Rng rng(23);
    for (auto p : {2u, 3u, 5u}) {
        auto F = FiniteField::prime(p);
        int zero = 0, nonzero = 0;
        for (int i = 0; i < 150; ++i) {
            BiPoly f, g;
            if (i % 3 == 0) {
                auto h = random_bipoly(F, 1, 1, rng);
                f = mul(h, random_bipoly(F, 1, 2, rng));
                g = mul(h, random_bipoly(F, 1, 2, rng));
            } else {
                f = random_bipoly(F, 2, 2, rng);
                g = random_bipoly(F, 2, 1, rng);
            }
            if (f.degree_y() < 1 || g.degree_y() < 1)
                continue;
            bool const z = resultant_y(f, g).is_zero();
            CHECK(z == common_factor_in_y(f, g));
            (z ? zero : nonzero)++;
        }
        CHECK(zero > 0);
        CHECK(nonzero > 0);
    }
}

TEST_CASE("lift_root examples")
{
    auto F = FiniteField::prime(5);
    auto C = curve345(F);
    auto u = P(F, {0, 1});
    auto v = lift_root(C, u, P(F, {4}), 5);
    CHECK(v == P(F, {4, 0, 0, 0, 3}));
    CHECK(C.eval_y(v, pow(u, 5)).is_zero());
    CHECK(lift_root(C, u, P(F, {4}), 1) == P(F, {4}));

    BiPoly G(F, {P(F, {0, -1}), Poly(F), P(F, {1})});   // Y^2 - X
    CHECK_THROWS_AS(lift_root(G, u, P(F, {0}), 3), RamifiedPlace);
}

TEST_CASE("lifted roots satisfy the curve modulo u^e")
{
    auto F = FiniteField::prime(7);
    Rng rng(4);
    BiPoly C(F, {P(F, {3, 1, 0, 0, 0, 1}), P(F, {0, 2}), P(F, {1})});   // Y^2 + 2XY + X^5 + X + 3
    int lifted = 0;
    for (Elem x = 0; x < 7; ++x) {
        auto u = P(F, {-static_cast<long>(x), 1});
        auto spec = C.specialize_at(x);
        for (Elem y = 0; y < 7; ++y) {
            if (spec.eval(y) != 0)
                continue;
            for (unsigned e : {2u, 5u, 9u}) {
                try {
                    auto v = lift_root(C, u, Poly::constant(F, y), e);
                    CHECK(C.eval_y(v, pow(u, e)).is_zero());
                    CHECK((v - Poly::constant(F, y)) % u == Poly(F));
                    CHECK(v.degree() < static_cast<int>(e));
                    ++lifted;
                } catch (RamifiedPlace const &) {
                }
            }
        }
    }
    CHECK(lifted > 0);
}
