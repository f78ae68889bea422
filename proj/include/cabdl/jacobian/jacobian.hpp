#pragma once

#include <optional>

#include "json.hpp"

#include "cabdl/curve/curve.hpp"
#include "cabdl/jacobian/ideal.hpp"
#include "cabdl/rng.hpp"

namespace cabdl {

// Degree-zero divisor classes D - deg(D) P_inf, each represented by the
// ideal of the unique effective D of least degree in its class. The unit
// ideal is the identity. All operations return such reduced ideals unless
// stated otherwise.
class Jacobian {
public:
    explicit Jacobian(CurveModel const & C);

    CurveModel const & curve() const noexcept { return curve_; }
    int n() const noexcept { return curve_.n(); }
    FieldPtr const & field() const noexcept { return curve_.field(); }

    Ideal identity() const;

    // ---- element arithmetic in A
    Row element(BiPoly const & f) const;
    Row multiply(Row const & a, Row const & b) const;
    // pole order at infinity; -1 for zero
    long weight(Row const & a) const;
    // value at Y = v modulo m (m may be zero)
    Poly evaluate(Row const & a, Poly const & v, Poly const & m) const;

    // ---- ideals (not reduced)
    // Hermite form of the module spanned by gens. When modulus is nonzero it
    // must lie in that module.
    Ideal hnf(std::vector<Row> gens, Poly const & modulus) const;
    Ideal principal(Row const & f) const;
    Ideal place_ideal(Place const & P) const;
    Ideal product(Ideal const & a, Ideal const & b) const;
    Ideal power(Ideal const & a, unsigned e) const;
    // product of place ideals; usage error if P_inf is in the support or
    // some coefficient is negative
    Ideal ideal_from_divisor(Divisor const & D) const;
    // normal form of a modulo the module
    Row normal_form(Row a, Ideal const & I) const;
    bool contains(Ideal const & I, Row const & a) const;
    // closed under multiplication by Y
    bool is_ideal(Ideal const & I) const;

    // nonzero element of least pole order, leading coefficient 1
    Row minimal_element(Ideal const & I) const;
    // (f) : I = { g : g I in fA } for f in I
    Ideal quotient(Row const & f, Ideal const & I) const;

    // ---- class group
    // (f) : I for a minimal f; represents the inverse class and is reduced
    Ideal flip(Ideal const & I) const;
    Ideal reduce(Ideal const & I) const;
    Ideal add(Ideal const & a, Ideal const & b) const;
    Ideal negate(Ideal const & a) const;
    Ideal subtract(Ideal const & a, Ideal const & b) const { return add(a, negate(b)); }
    Ideal scalar_mul(Ideal const & a, mpz_class const & m) const;
    Ideal scalar_mul(Ideal const & a, long m) const { return scalar_mul(a, mpz_class(m)); }
    // class of an arbitrary divisor with P_inf as base point
    Ideal class_of(Divisor const & D) const;
    Ideal class_of(Place const & P) const;

    // Places and multiplicities of an ideal's divisor when all of them are
    // unramified of inertia degree one; nullopt otherwise.
    std::optional<Divisor> support(Ideal const & I, Rng & rng) const;
    // valuation of I at the unramified place P
    long valuation(Ideal const & I, Place const & P) const;

    // class of a random effective divisor of degree g
    Ideal random_class(Rng & rng) const;

private:
    CurveModel curve_;
    BiPoly dF_;   // dF/dY
};

// Least x in [0, bound) with x * base = target, by baby-step giant-step.
// Budget error when bound exceeds the ceiling.
std::optional<mpz_class> brute_force_dlog(Jacobian const & J, Ideal const & base, Ideal const & target,
                                          mpz_class const & bound, unsigned long ceiling = 100'000'000);

nlohmann::json ideal_to_json(Ideal const & I);
// Validates shape, canonical form and ideal closure; integrity error otherwise.
Ideal ideal_from_json(Jacobian const & J, nlohmann::json const & j);

}  // namespace cabdl
