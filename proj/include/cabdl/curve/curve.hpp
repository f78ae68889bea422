#pragma once

#include <array>
#include <string>
#include <vector>

#include "cabdl/algebra/bipoly.hpp"
#include "cabdl/error.hpp"

namespace cabdl {

struct Monomial {
    int i = 0;   // X exponent
    int j = 0;   // Y exponent, j < n
    Elem c = 0;
};

// Unvalidated curve data Y^n + sum c X^i Y^j.
struct CurveSpec {
    FieldPtr field;
    int n = 0;
    int d = 0;
    std::vector<Monomial> monomials;
};

enum class RejectReason {
    malformed,
    gcd_violation,
    inseparable,
    weight_violation,
    singular,
};

char const * to_string(RejectReason r) noexcept;

class CurveRejected : public Error {
public:
    CurveRejected(RejectReason r, std::string const & detail)
        : Error(ErrorKind::validation, std::string(to_string(r)) + ": " + detail), reason_(r) {}
    RejectReason reason() const noexcept { return reason_; }

private:
    RejectReason reason_;
};

// A validated C_ab curve Y^n + X^d + f(X, Y) with gcd(n, d) = 1, p not
// dividing n, every monomial of f of weight n i + d j < n d, and no affine
// singular point. Immutable.
class CurveModel {
public:
    FieldPtr const & field() const noexcept { return spec_.field; }
    int n() const noexcept { return spec_.n; }
    int d() const noexcept { return spec_.d; }
    int genus() const noexcept { return (spec_.n - 1) * (spec_.d - 1) / 2; }
    std::uint64_t q() const noexcept { return spec_.field->order(); }
    std::vector<Monomial> const & monomials() const noexcept { return spec_.monomials; }
    CurveSpec const & spec() const noexcept { return spec_; }

    // Full defining polynomial including the leading Y^n.
    BiPoly const & poly() const noexcept { return poly_; }
    // Coefficient of Y^j (j < n) in the defining polynomial.
    Poly const & coeff(int j) const { return poly_.coeffs()[static_cast<std::size_t>(j)]; }

    // pole order at infinity of X^i Y^j
    long weight(long i, long j) const noexcept { return spec_.n * i + spec_.d * j; }

    std::string to_string() const;

private:
    friend CurveModel validate_curve(CurveSpec spec);
    CurveModel(CurveSpec spec, BiPoly poly) : spec_(std::move(spec)), poly_(std::move(poly)) {}

    CurveSpec spec_;
    BiPoly poly_;
};

// Throws CurveRejected with a distinct reason for each failure.
CurveModel validate_curve(CurveSpec spec);

// Convenience constructor from integer coefficients over a prime field.
CurveSpec make_curve_spec(std::uint32_t p, int n, int d, std::vector<std::array<long, 3>> const & monomials);

}  // namespace cabdl
