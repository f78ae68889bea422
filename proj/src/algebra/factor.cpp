#include "cabdl/algebra/factor.hpp"

#include <algorithm>

#include "cabdl/error.hpp"

namespace cabdl {

namespace {

mpz_class field_order(FiniteField const & F) { return mpz_class(static_cast<unsigned long>(F.order())); }

// x^Q mod f
Poly frobenius(Poly const & a, Poly const & f)
{
    return powmod(a, field_order(f.F()), f);
}

// p-th root of a polynomial all of whose exponents are multiples of p
Poly pth_root(Poly const & f)
{
    auto const & F = f.F();
    auto const p = F.characteristic();
    std::uint64_t const root_exp = F.order() / p;
    std::vector<Elem> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p)
        c.push_back(F.pow(f.coeffs()[i], root_exp));
    return Poly(f.field(), std::move(c));
}

Poly random_poly_below(FieldPtr const & f, int deg, Rng & rng)
{
    std::vector<Elem> c(static_cast<std::size_t>(deg));
    for (auto & x : c)
        x = f->random(rng);
    return Poly(f, std::move(c));
}

}  // namespace

Poly Factorization::expand(FieldPtr const & f) const
{
    Poly r = Poly::constant(f, leading);
    for (auto const & [g, e] : factors)
        r *= pow(g, e);
    return r;
}

int Factorization::max_degree() const
{
    int m = 0;
    for (auto const & fe : factors)
        m = std::max(m, fe.first.degree());
    return m;
}

std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(Poly const & f0)
{
    if (f0.is_zero())
        fail(ErrorKind::domain, "squarefree decomposition of zero");
    std::vector<std::pair<Poly, unsigned>> out;
    Poly f = f0.monic();
    if (f.degree() <= 0)
        return out;
    auto const p = f.F().characteristic();

    auto merge_pth = [&](Poly const & c) {
        auto sub = squarefree_decomposition(pth_root(c));
        for (auto & [g, e] : sub)
            out.emplace_back(std::move(g), e * p);
    };

    Poly d = f.derivative();
    if (d.is_zero()) {
        merge_pth(f);
    } else {
        Poly c = gcd(f, d);
        Poly w = exact_div(f, c);
        unsigned i = 1;
        while (!w.is_one()) {
            Poly y = gcd(w, c);
            Poly z = exact_div(w, y);
            if (!z.is_one())
                out.emplace_back(std::move(z), i);
            ++i;
            w = std::move(y);
            c = exact_div(c, w);
        }
        if (!c.is_one())
            merge_pth(c);
    }
    // merge equal multiplicities coming from different branches
    std::sort(out.begin(), out.end(), [](auto const & a, auto const & b) { return a.second < b.second; });
    std::vector<std::pair<Poly, unsigned>> merged;
    for (auto & fe : out) {
        if (!merged.empty() && merged.back().second == fe.second)
            merged.back().first *= fe.first;
        else
            merged.push_back(std::move(fe));
    }
    return merged;
}

std::vector<std::pair<Poly, unsigned>> distinct_degree_factor(Poly const & f0)
{
    std::vector<std::pair<Poly, unsigned>> out;
    Poly f = f0.monic();
    Poly const x = Poly::x(f.field());
    Poly h = x % f;
    for (unsigned d = 1; f.degree() >= 2 * static_cast<int>(d); ++d) {
        h = frobenius(h, f);
        Poly g = gcd(f, h - x);
        if (!g.is_one()) {
            f = exact_div(f, g);
            h = h % f;
            out.emplace_back(std::move(g), d);
        }
    }
    if (f.degree() > 0)
        out.emplace_back(f, static_cast<unsigned>(f.degree()));
    return out;
}

std::vector<Poly> equal_degree_split(Poly const & g, unsigned d, Rng & rng)
{
    if (g.degree() <= static_cast<int>(d))
        return {g.monic()};
    auto const & F = g.F();
    std::vector<Poly> out;
    for (;;) {
        Poly a = random_poly_below(g.field(), g.degree(), rng);
        if (a.degree() < 1)
            continue;
        Poly b;
        if (F.characteristic() == 2) {
            // trace map a + a^2 + ... + a^(2^(m d - 1)), Q = 2^m
            unsigned const steps = F.absolute_degree() * d;
            Poly t = a;
            b = a;
            for (unsigned i = 1; i < steps; ++i) {
                t = mulmod(t, t, g);
                b += t;
            }
        } else {
            mpz_class e;
            mpz_pow_ui(e.get_mpz_t(), field_order(F).get_mpz_t(), d);
            e = (e - 1) / 2;
            b = powmod(a, e, g) - Poly::one(g.field());
        }
        Poly h = gcd(g, b);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            auto left = equal_degree_split(h, d, rng);
            auto right = equal_degree_split(exact_div(g, h), d, rng);
            out.insert(out.end(), left.begin(), left.end());
            out.insert(out.end(), right.begin(), right.end());
            return out;
        }
    }
}

Factorization factor(Poly const & f, Rng & rng)
{
    if (f.is_zero())
        fail(ErrorKind::domain, "factorization of the zero polynomial");
    Factorization res;
    res.leading = f.lc();
    for (auto const & [sq, mult] : squarefree_decomposition(f)) {
        for (auto const & [prod, d] : distinct_degree_factor(sq)) {
            for (auto & g : equal_degree_split(prod, d, rng))
                res.factors.emplace_back(std::move(g), mult);
        }
    }
    std::sort(res.factors.begin(), res.factors.end(),
              [](auto const & a, auto const & b) { return a.first < b.first; });
    return res;
}

Factorization factor(Poly const & f)
{
    Rng rng(0x5eed);
    return factor(f, rng);
}

bool is_irreducible(Poly const & f)
{
    int const n = f.degree();
    if (n < 1)
        return false;
    if (n == 1)
        return true;
    Poly const g = f.monic();
    Poly const x = Poly::x(g.field()) % g;
    // frobenius images x^(Q^i) for i = 1..n
    std::vector<Poly> fr(static_cast<std::size_t>(n) + 1);
    fr[0] = x;
    for (int i = 1; i <= n; ++i)
        fr[static_cast<std::size_t>(i)] = frobenius(fr[static_cast<std::size_t>(i - 1)], g);
    if (fr[static_cast<std::size_t>(n)] != x)
        return false;
    int m = n;
    for (int r = 2; r <= m; ++r) {
        if (m % r != 0)
            continue;
        while (m % r == 0)
            m /= r;
        if (!gcd(g, fr[static_cast<std::size_t>(n / r)] - x).is_one())
            return false;
    }
    return true;
}

bool is_smooth(Poly const & f0, int bound)
{
    if (f0.is_zero())
        fail(ErrorKind::domain, "smoothness of the zero polynomial");
    Poly f = f0.monic();
    if (f.degree() <= bound)
        return true;
    Poly const x = Poly::x(f.field());
    Poly h = x % f;
    for (int i = 1; i <= bound; ++i) {
        h = frobenius(h, f);
        Poly g = gcd(f, h - x);
        if (!g.is_one()) {
            // strip every power of the degree-dividing-i part
            do {
                f = exact_div(f, g);
                g = gcd(f, g);
            } while (!g.is_one());
            if (f.degree() <= bound)
                return true;
            h = h % f;
        }
        // no factor of degree <= i remains, so f is irreducible if small
        if (f.degree() < 2 * (i + 1))
            return f.degree() <= bound;
    }
    return f.degree() <= 0;
}

std::vector<Elem> roots(Poly const & f, Rng & rng)
{
    if (f.is_zero())
        fail(ErrorKind::domain, "roots of the zero polynomial");
    std::vector<Elem> out;
    if (f.degree() < 1)
        return out;
    Poly const g0 = f.monic();
    Poly const x = Poly::x(g0.field());
    Poly g = gcd(g0, frobenius(x % g0, g0) - x);
    if (g.degree() < 1)
        return out;
    auto const & F = g.F();
    for (auto const & lin : equal_degree_split(g, 1, rng))
        out.push_back(F.neg(lin[0]));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Elem> roots(Poly const & f)
{
    Rng rng(0x7007);
    return roots(f, rng);
}

std::vector<Poly> irreducibles_up_to(FieldPtr const & field, int bound)
{
    std::vector<Poly> out;
    auto const Q = field->order();
    for (int w = 1; w <= bound; ++w) {
        std::uint64_t count = 1;
        for (int i = 0; i < w; ++i)
            count *= Q;
        std::vector<Elem> c(static_cast<std::size_t>(w) + 1, 0);
        c[static_cast<std::size_t>(w)] = 1;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::uint64_t t = idx;
            for (int j = 0; j < w; ++j) {
                c[static_cast<std::size_t>(j)] = static_cast<Elem>(t % Q);
                t /= Q;
            }
            Poly p(field, c);
            if (w == 1 || is_irreducible(p))
                out.push_back(std::move(p));
        }
    }
    return out;
}

Poly first_irreducible(FieldPtr const & field, int degree)
{
    require(degree >= 1, ErrorKind::usage, "irreducible degree must be positive");
    auto const Q = field->order();
    std::vector<Elem> c(static_cast<std::size_t>(degree) + 1, 0);
    c[static_cast<std::size_t>(degree)] = 1;
    for (std::uint64_t idx = 0;; ++idx) {
        std::uint64_t t = idx;
        for (int j = 0; j < degree; ++j) {
            c[static_cast<std::size_t>(j)] = static_cast<Elem>(t % Q);
            t /= Q;
        }
        Poly p(field, c);
        if (is_irreducible(p))
            return p;
    }
}

FieldPtr residue_field(Poly const & u)
{
    require(u.is_monic() && u.degree() >= 1, ErrorKind::usage, "residue field needs a monic nonconstant modulus");
    return FiniteField::extension(u.field(), u.coeffs());
}

Elem to_residue(FiniteField const & ext, Poly const & a, Poly const & u)
{
    Poly r = a % u;
    return ext.from_digits(r.coeffs());
}

Poly from_residue(FieldPtr const & base, FiniteField const & ext, Elem e)
{
    return Poly(base, ext.digits(e));
}

FieldPtr extension_of_degree(FieldPtr const & field, int k)
{
    return residue_field(first_irreducible(field, k));
}

}  // namespace cabdl
