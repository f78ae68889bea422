#pragma once

#include <initializer_list>
#include <vector>

#include "cabdl/algebra/bipoly.hpp"
#include "cabdl/algebra/poly.hpp"
#include "cabdl/rng.hpp"

namespace cabdl::test {

inline Poly P(FieldPtr const & f, std::initializer_list<long> c)
{
    std::vector<Elem> v;
    for (long x : c)
        v.push_back(f->from_int(x));
    return Poly(f, v);
}

inline Poly random_poly(FieldPtr const & f, int max_deg, Rng & rng)
{
    std::vector<Elem> c(static_cast<std::size_t>(max_deg) + 1);
    for (auto & x : c)
        x = f->random(rng);
    return Poly(f, c);
}

inline Poly random_monic(FieldPtr const & f, int deg, Rng & rng)
{
    std::vector<Elem> c(static_cast<std::size_t>(deg) + 1);
    for (auto & x : c)
        x = f->random(rng);
    c.back() = 1;
    return Poly(f, c);
}

// all monic polynomials of exactly the given degree
inline std::vector<Poly> all_monic(FieldPtr const & f, int deg)
{
    std::vector<Poly> out;
    std::uint64_t count = 1;
    for (int i = 0; i < deg; ++i)
        count *= f->order();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<Elem> c(static_cast<std::size_t>(deg) + 1);
        auto t = idx;
        for (int j = 0; j < deg; ++j) {
            c[static_cast<std::size_t>(j)] = static_cast<Elem>(t % f->order());
            t /= f->order();
        }
        c.back() = 1;
        out.emplace_back(f, c);
    }
    return out;
}

// Irreducibility by exhaustive trial division; independent of the
// Frobenius-based test in the library.
inline bool brute_irreducible(Poly const & p)
{
    if (p.degree() < 1)
        return false;
    for (int d = 1; 2 * d <= p.degree(); ++d)
        for (auto const & q : all_monic(p.field(), d))
            if ((p % q).is_zero())
                return false;
    return true;
}

}  // namespace cabdl::test
