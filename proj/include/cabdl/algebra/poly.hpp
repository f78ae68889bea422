#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cabdl/algebra/field.hpp"

namespace cabdl {

// Univariate polynomial over a FiniteField, coefficients low-to-high with
// no trailing zeros. The zero polynomial has degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(FieldPtr f) : field_(std::move(f)) {}
    Poly(FieldPtr f, std::vector<Elem> coeffs);

    static Poly constant(FieldPtr f, Elem c);
    static Poly monomial(FieldPtr f, Elem c, std::size_t deg);
    static Poly x(FieldPtr f) { return monomial(std::move(f), 1, 1); }
    static Poly one(FieldPtr f) { return constant(std::move(f), 1); }

    FieldPtr const & field() const noexcept { return field_; }
    FiniteField const & F() const noexcept { return *field_; }

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
    Elem lc() const noexcept { return c_.empty() ? 0 : c_.back(); }
    Elem operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    std::vector<Elem> const & coeffs() const noexcept { return c_; }

    void set_coeff(std::size_t i, Elem v);

    Poly monic() const;
    Poly derivative() const;
    Elem eval(Elem x) const;
    Poly shift(std::size_t k) const;   // times X^k
    Poly scale(Elem s) const;
    // Truncate to terms of degree < k, i.e. reduce modulo X^k.
    Poly truncate(std::size_t k) const;

    Poly & operator+=(Poly const & o);
    Poly & operator-=(Poly const & o);
    Poly & operator*=(Poly const & o);

    friend Poly operator+(Poly a, Poly const & b) { return a += b; }
    friend Poly operator-(Poly a, Poly const & b) { return a -= b; }
    friend Poly operator*(Poly const & a, Poly const & b);
    Poly operator-() const;

    friend bool operator==(Poly const & a, Poly const & b)
    {
        return a.c_ == b.c_ && (a.field_ == b.field_ || !a.field_ || !b.field_
                                || a.field_->same_as(*b.field_));
    }

    // Total order: by degree, then coefficients from the top down.
    friend std::strong_ordering operator<=>(Poly const & a, Poly const & b);

    std::string to_string(char var = 'X') const;

private:
    void trim();

    FieldPtr field_;
    std::vector<Elem> c_;
};

// Quotient and remainder. Throws domain error on division by zero.
std::pair<Poly, Poly> divmod(Poly const & a, Poly const & b);
Poly operator/(Poly const & a, Poly const & b);
Poly operator%(Poly const & a, Poly const & b);
// a / b, asserting the division is exact.
Poly exact_div(Poly const & a, Poly const & b);

// Monic gcd; gcd(0, 0) = 0.
Poly gcd(Poly const & a, Poly const & b);

struct XgcdResult {
    Poly g, s, t;   // g = s a + t b, g monic (or zero)
};
XgcdResult xgcd(Poly const & a, Poly const & b);

// Inverse of a modulo m; throws domain error if not invertible.
Poly inv_mod(Poly const & a, Poly const & m);

Poly mulmod(Poly const & a, Poly const & b, Poly const & m);
Poly powmod(Poly const & a, mpz_class const & e, Poly const & m);
Poly pow(Poly const & a, unsigned e);

// Composition f(g).
Poly compose(Poly const & f, Poly const & g);

// Largest e with u^e | f, for nonzero f and nonconstant u.
unsigned valuation(Poly const & f, Poly const & u);

}  // namespace cabdl
