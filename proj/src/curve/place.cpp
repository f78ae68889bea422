#include "cabdl/curve/place.hpp"

#include "cabdl/algebra/factor.hpp"

namespace cabdl {

Place Place::at_infinity(FieldPtr const & f)
{
    Place p;
    p.u = Poly(f);
    p.v = Poly(f);
    p.infinite = true;
    return p;
}

std::strong_ordering operator<=>(Place const & a, Place const & b)
{
    if (a.infinite != b.infinite)
        return a.infinite ? std::strong_ordering::greater : std::strong_ordering::less;
    if (auto c = a.u <=> b.u; c != 0)
        return c;
    return a.v <=> b.v;
}

std::string Place::to_string() const
{
    if (infinite)
        return "P_inf";
    return "(" + u.to_string() + ", Y - (" + v.to_string() + "))";
}

void Divisor::add(Place const & p, long e)
{
    if (e == 0)
        return;
    auto [it, fresh] = terms_.emplace(p, e);
    if (!fresh) {
        it->second += e;
        if (it->second == 0)
            terms_.erase(it);
    }
}

long Divisor::coefficient(Place const & p) const
{
    auto it = terms_.find(p);
    return it == terms_.end() ? 0 : it->second;
}

long Divisor::degree() const
{
    long d = 0;
    for (auto const & [p, e] : terms_)
        d += e * p.degree();
    return d;
}

bool Divisor::is_effective() const
{
    for (auto const & [p, e] : terms_)
        if (e < 0)
            return false;
    return true;
}

Divisor Divisor::affine_part() const
{
    Divisor r;
    for (auto const & [p, e] : terms_)
        if (!p.infinite)
            r.terms_.emplace(p, e);
    return r;
}

PlacesOver places_over(CurveModel const & C, Poly const & u, Rng & rng)
{
    PlacesOver out;
    auto const E = residue_field(u);
    Poly const f = C.poly().specialize(E, u);
    Poly const df = f.derivative();
    for (Elem r : roots(f, rng)) {
        Poly v = from_residue(C.field(), *E, r);
        if (df.eval(r) == 0)
            out.multiple.push_back(std::move(v));
        else
            out.simple.push_back(std::move(v));
    }
    return out;
}

bool is_unramified_place(CurveModel const & C, Place const & P)
{
    if (P.infinite)
        return true;
    if (P.u.degree() < 1 || !P.u.is_monic() || P.v.degree() >= P.u.degree())
        return false;
    return C.poly().eval_y(P.v, P.u).is_zero() && !C.poly().derivative_y().eval_y(P.v, P.u).is_zero();
}

}  // namespace cabdl
