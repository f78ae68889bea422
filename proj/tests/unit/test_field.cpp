#include "doctest.h"

#include "cabdl/algebra/factor.hpp"
#include "cabdl/algebra/field.hpp"
#include "cabdl/error.hpp"
#include "helpers.hpp"

using namespace cabdl;

TEST_CASE("prime field arithmetic")
{
    auto F = FiniteField::prime(5);
    CHECK(F->inv(2) == 3);
    CHECK(F->pow(2, 4) == 1);
    CHECK(F->add(4, 3) == 2);
    CHECK(F->sub(1, 3) == 3);
    CHECK(F->neg(0) == 0);
    CHECK(F->from_int(-1) == 4);
}

TEST_CASE("inverse of zero is a domain error")
{
    auto F = FiniteField::prime(7);
    try {
        F->inv(0);
        FAIL("expected throw");
    } catch (Error const & e) {
        CHECK(e.kind() == ErrorKind::domain);
    }
}

TEST_CASE("non-prime characteristic is rejected")
{
    CHECK_THROWS_AS(FiniteField::prime(6), Error);
}

TEST_CASE("F_8 with modulus t^3 + t + 1")
{
    auto F2 = FiniteField::prime(2);
    auto F8 = FiniteField::extension(F2, {1, 1, 0, 1});
    CHECK(F8->order() == 8);
    // t = 0b010, t^2 = 0b100, t + 1 = 0b011
    CHECK(F8->mul(2, 4) == 3);
    CHECK(F8->mul(F8->inv(6), 6) == 1);
}

TEST_CASE("reducible modulus is rejected")
{
    auto F2 = FiniteField::prime(2);
    CHECK_THROWS_AS(FiniteField::extension(F2, {1, 0, 1}), Error);
}

TEST_CASE("field axioms on random elements")
{
    auto F3 = FiniteField::prime(3);
    auto F5 = FiniteField::prime(5);
    std::vector<FieldPtr> fields = {
        F5,
        FiniteField::extension(F3, {2, 2, 1}),                       // F_9, table path
        extension_of_degree(FiniteField::prime(2), 13),              // F_8192, direct path
        extension_of_degree(extension_of_degree(F5, 2), 3),          // tower F_{25^3}
    };
    Rng rng(11);
    for (auto const & F : fields) {
        for (int i = 0; i < 300; ++i) {
            Elem a = F->random(rng), b = F->random(rng), c = F->random(rng);
            CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
            CHECK(F->sub(F->add(a, b), b) == a);
            if (a != 0) {
                CHECK(F->mul(a, F->inv(a)) == 1);
                CHECK(F->pow(a, F->order() - 1) == 1);
            }
        }
    }
}

TEST_CASE("digits round-trip through the immediate base")
{
    auto F5 = FiniteField::prime(5);
    auto E = extension_of_degree(F5, 3);
    for (Elem a = 0; a < E->order(); a += 7)
        CHECK(E->from_digits(E->digits(a)) == a);
}
