#include "doctest.h"

#include <map>

#include "cabdl/algebra/factor.hpp"
#include "cabdl/error.hpp"
#include "helpers.hpp"

using namespace cabdl;
using test::P;

namespace {

// Factorization by exhaustive trial division over monic polynomials of
// increasing degree.
std::map<Poly, unsigned> trial_division(Poly f)
{
    std::map<Poly, unsigned> out;
    f = f.monic();
    for (int d = 1; 2 * d <= f.degree(); ++d) {
        for (auto const & q : test::all_monic(f.field(), d)) {
            while (f.degree() >= d && (f % q).is_zero()) {
                ++out[q];
                f = f / q;
            }
        }
    }
    if (f.degree() > 0)
        ++out[f];
    return out;
}

long necklace(long q, int d)
{
    // (1/d) sum_{e | d} mu(d/e) q^e
    auto mobius = [](int n) {
        int m = 1;
        for (int p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                n /= p;
                if (n % p == 0)
                    return 0;
                m = -m;
            }
        }
        if (n > 1)
            m = -m;
        return m;
    };
    long s = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e)
            continue;
        long qe = 1;
        for (int i = 0; i < e; ++i)
            qe *= q;
        s += mobius(d / e) * qe;
    }
    return s / d;
}

}  // namespace

TEST_CASE("factor X^2 + 1 over F_5")
{
    auto F = FiniteField::prime(5);
    auto fa = factor(P(F, {1, 0, 1}));
    REQUIRE(fa.factors.size() == 2);
    CHECK(fa.factors[0].first == P(F, {2, 1}));
    CHECK(fa.factors[1].first == P(F, {3, 1}));
    CHECK(fa.factors[0].second == 1);
}

TEST_CASE("factor X^4 over F_5")
{
    auto F = FiniteField::prime(5);
    auto fa = factor(P(F, {0, 0, 0, 0, 1}));
    REQUIRE(fa.factors.size() == 1);
    CHECK(fa.factors[0].first == P(F, {0, 1}));
    CHECK(fa.factors[0].second == 4);
}

TEST_CASE("factor X^4 + 4X^3 + 1 over F_5 matches trial division")
{
    auto F = FiniteField::prime(5);
    auto f = P(F, {1, 0, 0, 4, 1});
    auto fa = factor(f);
    auto oracle = trial_division(f);
    std::map<Poly, unsigned> got(fa.factors.begin(), fa.factors.end());
    CHECK(got == oracle);
}

TEST_CASE("factoring zero is a domain error")
{
    auto F = FiniteField::prime(5);
    CHECK_THROWS_AS(factor(Poly(F)), Error);
}

TEST_CASE("factorization reproduces random inputs")
{
    auto F2 = FiniteField::prime(2);
    auto F3 = FiniteField::prime(3);
    std::vector<FieldPtr> fields = {F2, F3, FiniteField::prime(5), FiniteField::prime(7),
                                    extension_of_degree(F2, 2), extension_of_degree(F3, 2)};
    Rng rng(2024);
    for (auto const & F : fields) {
        for (int i = 0; i < 1000; ++i) {
            auto f = test::random_poly(F, static_cast<int>(rng.below(31)), rng);
            if (f.is_zero())
                continue;
            auto fa = factor(f, rng);
            CHECK(fa.expand(F) == f);
            for (auto const & [g, e] : fa.factors) {
                CHECK(g.is_monic());
                CHECK(e >= 1);
            }
            if (i % 50 == 0) {
                for (auto const & [g, e] : fa.factors)
                    if (g.degree() <= 6 && F->order() <= 3)
                        CHECK(test::brute_irreducible(g));
            }
            int b = static_cast<int>(rng.below(6)) + 1;
            CHECK(is_smooth(f, b) == (fa.max_degree() <= b));
        }
    }
}

TEST_CASE("factorization is reproducible across RNG streams")
{
    auto F = FiniteField::prime(3);
    Rng a(1), b(99), gen(5);
    for (int i = 0; i < 50; ++i) {
        auto f = test::random_monic(F, 20, gen);
        auto x = factor(f, a), y = factor(f, b);
        CHECK(x.factors == y.factors);
    }
}

TEST_CASE("irreducible enumeration")
{
    auto F2 = FiniteField::prime(2);
    auto l = irreducibles_up_to(F2, 2);
    REQUIRE(l.size() == 3);
    CHECK(l[0] == P(F2, {0, 1}));
    CHECK(l[1] == P(F2, {1, 1}));
    CHECK(l[2] == P(F2, {1, 1, 1}));

    auto F3 = FiniteField::prime(3);
    auto l3 = irreducibles_up_to(F3, 1);
    REQUIRE(l3.size() == 3);
    CHECK(l3[2] == P(F3, {2, 1}));

    auto F5 = FiniteField::prime(5);
    auto l5 = irreducibles_up_to(F5, 3);
    CHECK(l5.size() == 5 + 10 + 40);
    long brute = 0;
    for (int d = 1; d <= 3; ++d)
        for (auto const & p : test::all_monic(F5, d))
            brute += test::brute_irreducible(p);
    CHECK(brute == 55);
    for (std::size_t i = 1; i < l5.size(); ++i)
        CHECK(l5[i - 1] < l5[i]);
}

TEST_CASE("irreducible counts match the necklace formula")
{
    for (auto [q, B] : std::vector<std::pair<unsigned, int>>{{2, 8}, {3, 5}, {5, 3}, {7, 3}}) {
        auto F = FiniteField::prime(q);
        auto l = irreducibles_up_to(F, B);
        long expect = 0;
        for (int d = 1; d <= B; ++d)
            expect += necklace(q, d);
        CHECK(static_cast<long>(l.size()) == expect);
    }
    auto F4 = extension_of_degree(FiniteField::prime(2), 2);
    long expect4 = necklace(4, 1) + necklace(4, 2) + necklace(4, 3);
    CHECK(static_cast<long>(irreducibles_up_to(F4, 3).size()) == expect4);
}

TEST_CASE("roots agree with exhaustive evaluation")
{
    Rng rng(8);
    for (auto const & F : {FiniteField::prime(7), extension_of_degree(FiniteField::prime(2), 3)}) {
        for (int i = 0; i < 100; ++i) {
            auto f = test::random_monic(F, 1 + static_cast<int>(rng.below(6)), rng);
            std::vector<Elem> brute;
            for (Elem x = 0; x < F->order(); ++x)
                if (f.eval(x) == 0)
                    brute.push_back(x);
            CHECK(roots(f, rng) == brute);
        }
    }
}
