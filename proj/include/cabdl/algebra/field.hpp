#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cabdl/rng.hpp"

namespace cabdl {

// Field elements are encoded as integers in [0, q). For F_p this is the
// residue; for an extension of degree k over a base field of order Q the
// element sum c_i t^i is encoded as sum enc(c_i) Q^i. Addition therefore
// acts digit-wise modulo p on the p-adic expansion at every tower level.
using Elem = std::uint32_t;

class FiniteField;
using FieldPtr = std::shared_ptr<FiniteField const>;

class FiniteField {
public:
    // F_p. p must be prime and below 2^31.
    static FieldPtr prime(std::uint32_t p);

    // base[t]/(modulus). modulus is monic of degree >= 1 over base, given
    // low-to-high; irreducibility is checked. The order must stay below 2^32.
    static FieldPtr extension(FieldPtr base, std::vector<Elem> modulus);

    std::uint32_t characteristic() const noexcept { return p_; }
    std::uint64_t order() const noexcept { return q_; }
    // Degree over the immediate base (1 for a prime field).
    unsigned degree() const noexcept { return k_; }
    // Degree over the prime field.
    unsigned absolute_degree() const noexcept { return abs_deg_; }
    bool is_prime_field() const noexcept { return !base_; }
    FieldPtr const & base() const noexcept { return base_; }
    std::vector<Elem> const & modulus() const noexcept { return modulus_; }

    bool same_as(FiniteField const & o) const;

    Elem add(Elem a, Elem b) const
    {
        if (base_)
            return ext_add(a, b);
        Elem const s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const
    {
        if (base_)
            return ext_sub(a, b);
        return a >= b ? a - b : a + (p_ - b);
    }
    Elem neg(Elem a) const
    {
        if (base_)
            return ext_neg(a);
        return a == 0 ? 0 : p_ - a;
    }
    Elem mul(Elem a, Elem b) const
    {
        if (base_)
            return ext_mul(a, b);
        return static_cast<Elem>((std::uint64_t(a) * b) % p_);
    }
    Elem inv(Elem a) const;   // throws domain error on zero
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;
    Elem from_int(std::int64_t v) const;   // image of an integer
    Elem random(Rng & rng) const { return static_cast<Elem>(rng.below(q_)); }

    // Coordinates over the immediate base, length degree().
    std::vector<Elem> digits(Elem a) const;
    Elem from_digits(std::span<Elem const> d) const;

private:
    FiniteField() = default;

    Elem ext_add(Elem a, Elem b) const;
    Elem ext_sub(Elem a, Elem b) const;
    Elem ext_neg(Elem a) const;
    Elem ext_mul(Elem a, Elem b) const;
    Elem slow_mul(Elem a, Elem b) const;
    void build_tables();

    std::uint32_t p_ = 0;
    std::uint64_t q_ = 0;
    unsigned k_ = 1;
    unsigned abs_deg_ = 1;
    std::uint64_t base_order_ = 0;
    FieldPtr base_;
    std::vector<Elem> modulus_;

    // log/antilog tables for small non-prime fields
    std::vector<std::uint32_t> log_;
    std::vector<Elem> exp_;
};

// Throws a usage error unless both fields are the same.
void check_same_field(FiniteField const & a, FiniteField const & b);

bool is_prime(std::uint64_t n);

}  // namespace cabdl
