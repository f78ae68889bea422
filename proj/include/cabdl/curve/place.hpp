#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cabdl/curve/curve.hpp"
#include "cabdl/rng.hpp"

namespace cabdl {

// Prime divisor (u, Y - v) of inertia degree 1, or the unique place at
// infinity of a C_ab curve.
struct Place {
    Poly u;
    Poly v;
    bool infinite = false;

    static Place at_infinity(FieldPtr const & f);

    int degree() const noexcept { return infinite ? 1 : u.degree(); }

    // (deg u, u, v) with the infinite place last
    friend std::strong_ordering operator<=>(Place const & a, Place const & b);
    friend bool operator==(Place const & a, Place const & b)
    {
        return a.infinite == b.infinite && a.u == b.u && a.v == b.v;
    }

    std::string to_string() const;
};

// Formal sum of places with nonzero integer coefficients.
class Divisor {
public:
    Divisor() = default;

    void add(Place const & p, long e);
    long coefficient(Place const & p) const;
    long degree() const;
    bool is_effective() const;
    bool empty() const noexcept { return terms_.empty(); }
    Divisor affine_part() const;
    std::map<Place, long> const & terms() const noexcept { return terms_; }

    friend bool operator==(Divisor const &, Divisor const &) = default;

private:
    std::map<Place, long> terms_;
};

struct PlacesOver {
    std::vector<Poly> simple;     // v of the inertia-degree-1 unramified places
    std::vector<Poly> multiple;   // multiple roots: ramified, excluded
};

// Degree-one factors of the curve over F_q[X]/(u)[Y] for a monic
// irreducible u.
PlacesOver places_over(CurveModel const & C, Poly const & u, Rng & rng);

// F(X, v) = 0 mod u and dF/dY(X, v) != 0 mod u
bool is_unramified_place(CurveModel const & C, Place const & P);

}  // namespace cabdl
