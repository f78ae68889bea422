#include "cabdl/curve/curve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "cabdl/algebra/factor.hpp"

namespace cabdl {

char const * to_string(RejectReason r) noexcept
{
    switch (r) {
    case RejectReason::malformed:
        return "malformed";
    case RejectReason::gcd_violation:
        return "gcd-violation";
    case RejectReason::inseparable:
        return "inseparable";
    case RejectReason::weight_violation:
        return "weight-violation";
    case RejectReason::singular:
        return "singular-curve";
    }
    return "unknown";
}

namespace {

// True if some affine point annihilates F, dF/dX and dF/dY.
bool has_affine_singularity(BiPoly const & F)
{
    BiPoly const Fy = F.derivative_y();
    BiPoly const Fx = F.derivative_x();
    Poly const r1 = resultant_y(F, Fy);
    if (r1.is_zero())
        return true;   // repeated factor in Y
    Poly g = r1;
    if (!Fx.is_zero()) {
        Poly const r2 = Fx.degree_y() >= 1 ? resultant_y(F, Fx) : pow(Fx[0], static_cast<unsigned>(F.degree_y()));
        g = gcd(r1, r2);
    }
    g = g.monic();
    if (g.degree() < 1)
        return false;
    for (auto const & [u, e] : factor(g).factors) {
        (void)e;
        auto E = residue_field(u);
        Poly h = F.specialize(E, u);
        h = gcd(h, Fy.specialize(E, u));
        if (!Fx.is_zero())
            h = gcd(h, Fx.specialize(E, u));
        if (h.degree() >= 1)
            return true;
    }
    return false;
}

}  // namespace

CurveModel validate_curve(CurveSpec spec)
{
    if (!spec.field)
        throw CurveRejected(RejectReason::malformed, "missing field");
    if (spec.n < 1 || spec.d < 1)
        throw CurveRejected(RejectReason::malformed, "n and d must be positive");
    if (std::gcd(spec.n, spec.d) != 1)
        throw CurveRejected(RejectReason::gcd_violation, "gcd(n, d) != 1");
    if (spec.n % static_cast<int>(spec.field->characteristic()) == 0)
        throw CurveRejected(RejectReason::inseparable, "characteristic divides n");

    // merge duplicates and drop zeros
    std::map<std::pair<int, int>, Elem> terms;
    for (auto const & m : spec.monomials) {
        if (m.i < 0 || m.j < 0 || m.j >= spec.n)
            throw CurveRejected(RejectReason::malformed, "monomial exponent out of range");
        if (m.c >= spec.field->order())
            throw CurveRejected(RejectReason::malformed, "coefficient out of range");
        auto & c = terms[{m.j, m.i}];
        c = spec.field->add(c, m.c);
    }
    std::vector<Monomial> mons;
    for (auto const & [ji, c] : terms)
        if (c != 0)
            mons.push_back({ji.second, ji.first, c});
    bool has_lead = false;
    for (auto const & m : mons) {
        long const w = long(spec.n) * m.i + long(spec.d) * m.j;
        if (m.i == spec.d && m.j == 0) {
            has_lead = true;
            continue;
        }
        if (w >= long(spec.n) * spec.d)
            throw CurveRejected(RejectReason::weight_violation,
                                "monomial X^" + std::to_string(m.i) + " Y^" + std::to_string(m.j)
                                    + " has weight >= n d");
    }
    if (!has_lead)
        throw CurveRejected(RejectReason::malformed, "missing X^d term");
    spec.monomials = mons;

    auto const & F = spec.field;
    std::vector<Poly> coeffs(static_cast<std::size_t>(spec.n) + 1, Poly(F));
    for (auto const & m : mons)
        coeffs[static_cast<std::size_t>(m.j)] += Poly::monomial(F, m.c, static_cast<std::size_t>(m.i));
    coeffs.back() = Poly::one(F);
    BiPoly poly(F, coeffs);

    if (has_affine_singularity(poly))
        throw CurveRejected(RejectReason::singular, "affine singular point");

    return CurveModel(std::move(spec), std::move(poly));
}

CurveSpec make_curve_spec(std::uint32_t p, int n, int d, std::vector<std::array<long, 3>> const & monomials)
{
    CurveSpec s;
    s.field = FiniteField::prime(p);
    s.n = n;
    s.d = d;
    for (auto const & m : monomials)
        s.monomials.push_back({static_cast<int>(m[0]), static_cast<int>(m[1]), s.field->from_int(m[2])});
    return s;
}

std::string CurveModel::to_string() const
{
    std::ostringstream os;
    os << "Y^" << n();
    for (auto it = spec_.monomials.rbegin(); it != spec_.monomials.rend(); ++it) {
        os << " + ";
        if (it->c != 1 || (it->i == 0 && it->j == 0))
            os << it->c;
        if (it->i > 0)
            os << "X" << (it->i > 1 ? "^" + std::to_string(it->i) : "");
        if (it->j > 0)
            os << "Y" << (it->j > 1 ? "^" + std::to_string(it->j) : "");
    }
    os << " over F_" << q();
    return os.str();
}

}  // namespace cabdl
