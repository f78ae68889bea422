#include "cabdl/jacobian/jacobian.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "cabdl/algebra/factor.hpp"

namespace cabdl {

namespace {

std::size_t ix(int i) { return static_cast<std::size_t>(i); }

// r -= q * s over columns 0..last
void axpy(Row & r, Poly const & q, Row const & s, int last)
{
    for (int c = 0; c <= last; ++c)
        if (!s[ix(c)].is_zero())
            r[ix(c)] -= q * s[ix(c)];
}

bool is_zero_row(Row const & r)
{
    return std::all_of(r.begin(), r.end(), [](Poly const & p) { return p.is_zero(); });
}

struct Lead {
    long weight;
    int column;
};

}  // namespace

Jacobian::Jacobian(CurveModel const & C) : curve_(C), dF_(C.poly().derivative_y()) {}

Ideal Jacobian::identity() const
{
    std::vector<Row> rows(ix(n()), Row(ix(n()), Poly(field())));
    for (int i = 0; i < n(); ++i)
        rows[ix(i)][ix(i)] = Poly::one(field());
    return Ideal(std::move(rows));
}

Row Jacobian::element(BiPoly const & f) const
{
    std::vector<Poly> c = f.coeffs();
    c.resize(std::max(c.size(), ix(n())), Poly(field()));
    // Y^n = -(F_0 + ... + F_{n-1} Y^{n-1})
    for (int k = static_cast<int>(c.size()) - 1; k >= n(); --k) {
        Poly const t = c[ix(k)];
        if (t.is_zero())
            continue;
        for (int j = 0; j < n(); ++j)
            if (!curve_.coeff(j).is_zero())
                c[ix(k - n() + j)] -= t * curve_.coeff(j);
        c[ix(k)] = Poly(field());
    }
    c.resize(ix(n()));
    return c;
}

Row Jacobian::multiply(Row const & a, Row const & b) const
{
    std::vector<Poly> c(ix(2 * n() - 1), Poly(field()));
    for (int i = 0; i < n(); ++i) {
        if (a[ix(i)].is_zero())
            continue;
        for (int j = 0; j < n(); ++j)
            if (!b[ix(j)].is_zero())
                c[ix(i + j)] += a[ix(i)] * b[ix(j)];
    }
    return element(BiPoly(field(), std::move(c)));
}

long Jacobian::weight(Row const & a) const
{
    long w = -1;
    for (int j = 0; j < n(); ++j)
        if (!a[ix(j)].is_zero())
            w = std::max(w, curve_.weight(a[ix(j)].degree(), j));
    return w;
}

Poly Jacobian::evaluate(Row const & a, Poly const & v, Poly const & m) const
{
    Poly r(field());
    for (int j = n() - 1; j >= 0; --j) {
        r = r * v + a[ix(j)];
        if (!m.is_zero())
            r = r % m;
    }
    return r;
}

Ideal Jacobian::hnf(std::vector<Row> gens, Poly const & modulus) const
{
    int const nn = n();
    bool const mod = !modulus.is_zero();
    auto reduce_row = [&](Row & r) {
        if (mod)
            for (auto & p : r)
                if (p.degree() >= modulus.degree())
                    p = p % modulus;
    };
    for (auto & r : gens)
        reduce_row(r);
    std::erase_if(gens, is_zero_row);

    std::vector<Row> out(ix(nn));
    for (int j = nn - 1; j >= 0; --j) {
        // modulus * e_j lies in the module; entries were reduced modulo it
        if (mod) {
            Row r(ix(nn), Poly(field()));
            r[ix(j)] = modulus;
            gens.push_back(std::move(r));
        }
        for (;;) {
            std::size_t piv = gens.size();
            int active = 0;
            for (std::size_t r = 0; r < gens.size(); ++r) {
                auto const & e = gens[r][ix(j)];
                if (e.is_zero())
                    continue;
                ++active;
                if (piv == gens.size() || e.degree() < gens[piv][ix(j)].degree())
                    piv = r;
            }
            if (piv == gens.size())
                fail(ErrorKind::integrity, "module is not of full rank");
            if (active == 1) {
                out[ix(j)] = std::move(gens[piv]);
                gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(piv));
                break;
            }
            Row const p = gens[piv];
            for (std::size_t r = 0; r < gens.size(); ++r) {
                if (r == piv || gens[r][ix(j)].is_zero())
                    continue;
                axpy(gens[r], gens[r][ix(j)] / p[ix(j)], p, j);
                reduce_row(gens[r]);
            }
            std::erase_if(gens, is_zero_row);
        }
    }

    for (int i = 0; i < nn; ++i) {
        Elem const s = field()->inv(out[ix(i)][ix(i)].lc());
        if (s != 1)
            for (auto & p : out[ix(i)])
                p = p.scale(s);
        for (int j = i - 1; j >= 0; --j) {
            auto const & e = out[ix(i)][ix(j)];
            if (e.degree() >= out[ix(j)][ix(j)].degree())
                axpy(out[ix(i)], e / out[ix(j)][ix(j)], out[ix(j)], j);
        }
    }
    return Ideal(std::move(out));
}

Ideal Jacobian::principal(Row const & f) const
{
    require(!is_zero_row(f), ErrorKind::domain, "principal ideal of zero");
    std::vector<Row> gens;
    Row y(ix(n()), Poly(field()));
    if (n() > 1)
        y[1] = Poly::one(field());
    Row cur = f;
    for (int k = 0; k < n(); ++k) {
        gens.push_back(cur);
        if (k + 1 < n())
            cur = multiply(cur, y);
    }
    return hnf(std::move(gens), Poly(field()));
}

Ideal Jacobian::place_ideal(Place const & P) const
{
    require(!P.infinite, ErrorKind::usage, "the infinite place has no affine ideal");
    if (!curve_.poly().eval_y(P.v, P.u).is_zero())
        fail(ErrorKind::domain, "not a place of the curve: " + P.to_string());
    std::vector<Row> rows(ix(n()), Row(ix(n()), Poly(field())));
    rows[0][0] = P.u;
    Poly vk = Poly::one(field());
    for (int k = 1; k < n(); ++k) {
        vk = (vk * P.v) % P.u;
        rows[ix(k)][0] = -vk;
        rows[ix(k)][ix(k)] = Poly::one(field());
    }
    return Ideal(std::move(rows));
}

Ideal Jacobian::product(Ideal const & a, Ideal const & b) const
{
    if (a.is_unit())
        return b;
    if (b.is_unit())
        return a;
    std::vector<Row> gens;
    for (auto const & r : a.rows())
        for (auto const & s : b.rows())
            gens.push_back(multiply(r, s));
    return hnf(std::move(gens), a(0, 0) * b(0, 0));
}

Ideal Jacobian::power(Ideal const & a, unsigned e) const
{
    Ideal r = identity();
    Ideal base = a;
    while (e) {
        if (e & 1)
            r = product(r, base);
        e >>= 1;
        if (e)
            base = product(base, base);
    }
    return r;
}

Ideal Jacobian::ideal_from_divisor(Divisor const & D) const
{
    Ideal r = identity();
    for (auto const & [P, e] : D.terms()) {
        require(!P.infinite, ErrorKind::usage, "infinite place in an affine divisor");
        require(e > 0, ErrorKind::usage, "divisor is not effective");
        r = product(r, power(place_ideal(P), static_cast<unsigned>(e)));
    }
    return r;
}

Row Jacobian::normal_form(Row a, Ideal const & I) const
{
    for (int j = n() - 1; j >= 0; --j)
        if (a[ix(j)].degree() >= I(j, j).degree())
            axpy(a, a[ix(j)] / I(j, j), I.rows()[ix(j)], j);
    return a;
}

bool Jacobian::contains(Ideal const & I, Row const & a) const
{
    return is_zero_row(normal_form(a, I));
}

bool Jacobian::is_ideal(Ideal const & I) const
{
    if (n() == 1)
        return true;
    Row y(ix(n()), Poly(field()));
    y[1] = Poly::one(field());
    for (auto const & r : I.rows())
        if (!contains(I, multiply(r, y)))
            return false;
    return true;
}

Row Jacobian::minimal_element(Ideal const & I) const
{
    // weak Popov form for the pole-order weight: leading columns become
    // pairwise distinct, so the lightest row is the lightest element
    std::vector<Row> rows = I.rows();
    auto lead = [&](Row const & r) {
        Lead l{-1, -1};
        for (int j = 0; j < n(); ++j)
            if (!r[ix(j)].is_zero()) {
                long w = curve_.weight(r[ix(j)].degree(), j);
                if (w > l.weight)
                    l = {w, j};
            }
        return l;
    };
    for (;;) {
        bool changed = false;
        for (std::size_t a = 0; a < rows.size() && !changed; ++a)
            for (std::size_t b = a + 1; b < rows.size() && !changed; ++b) {
                Lead la = lead(rows[a]), lb = lead(rows[b]);
                if (la.column != lb.column)
                    continue;
                std::size_t hi = a, lo = b;
                if (la.weight < lb.weight) {
                    std::swap(hi, lo);
                    std::swap(la, lb);
                }
                int const j = la.column;
                auto const shift = static_cast<std::size_t>((la.weight - lb.weight) / n());
                Elem const c = field()->div(rows[hi][ix(j)].lc(), rows[lo][ix(j)].lc());
                Poly const q = Poly::monomial(field(), c, shift);
                axpy(rows[hi], q, rows[lo], n() - 1);
                changed = true;
            }
        if (!changed)
            break;
    }
    auto best = std::min_element(rows.begin(), rows.end(),
                                 [&](Row const & x, Row const & y) { return weight(x) < weight(y); });
    Row f = *best;
    Lead const l = lead(f);
    Elem const s = field()->inv(f[ix(l.column)].lc());
    for (auto & p : f)
        p = p.scale(s);
    return f;
}

Ideal Jacobian::quotient(Row const & f, Ideal const & I) const
{
    Ideal const fA = principal(f);
    auto const & F = *field();
    int const nn = n();
    // F_q-basis of A / fA: X^k Y^j with k < deg of the j-th diagonal entry
    std::vector<int> offset(ix(nn) + 1, 0);
    for (int j = 0; j < nn; ++j)
        offset[ix(j) + 1] = offset[ix(j)] + fA(j, j).degree();
    int const N = offset[ix(nn)];
    if (N == 0)
        return identity();
    int const cols = nn * N;

    // rows: coordinates of (X^k Y^j) b_r mod fA for every basis row b_r of I
    std::vector<std::vector<Elem>> M(ix(N), std::vector<Elem>(ix(cols + N), 0));
    Row yj(ix(nn), Poly(field()));
    for (int j = 0; j < nn; ++j) {
        std::fill(yj.begin(), yj.end(), Poly(field()));
        yj[ix(j)] = Poly::one(field());
        for (int r = 0; r < nn; ++r) {
            Row cur = normal_form(multiply(yj, I.rows()[ix(r)]), fA);
            for (int k = 0; k < fA(j, j).degree(); ++k) {
                auto & dst = M[ix(offset[ix(j)] + k)];
                for (int c = 0; c < nn; ++c)
                    for (int e = 0; e < fA(c, c).degree(); ++e)
                        dst[ix(r * N + offset[ix(c)] + e)] = cur[ix(c)][ix(e)];
                for (auto & p : cur)
                    p = p.shift(1);
                cur = normal_form(std::move(cur), fA);
            }
        }
    }
    for (int i = 0; i < N; ++i)
        M[ix(i)][ix(cols + i)] = 1;

    // row echelon on the first cols columns; zero rows carry the kernel
    int rank = 0;
    for (int c = 0; c < cols && rank < N; ++c) {
        int piv = -1;
        for (int r = rank; r < N; ++r)
            if (M[ix(r)][ix(c)] != 0) {
                piv = r;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(M[ix(piv)], M[ix(rank)]);
        Elem const inv = F.inv(M[ix(rank)][ix(c)]);
        for (auto & x : M[ix(rank)])
            x = F.mul(x, inv);
        for (int r = rank + 1; r < N; ++r) {
            Elem const t = M[ix(r)][ix(c)];
            if (t == 0)
                continue;
            for (int k = c; k < cols + N; ++k)
                M[ix(r)][ix(k)] = F.sub(M[ix(r)][ix(k)], F.mul(t, M[ix(rank)][ix(k)]));
        }
        ++rank;
    }

    std::vector<Row> gens = fA.rows();
    for (int r = rank; r < N; ++r) {
        Row g(ix(nn), Poly(field()));
        for (int j = 0; j < nn; ++j) {
            std::vector<Elem> c(ix(fA(j, j).degree()));
            for (std::size_t k = 0; k < c.size(); ++k)
                c[k] = M[ix(r)][ix(cols + offset[ix(j)]) + k];
            g[ix(j)] = Poly(field(), std::move(c));
        }
        gens.push_back(std::move(g));
    }
    Ideal J = hnf(std::move(gens), fA(0, 0));
    require(J.degree() == N - I.degree(), ErrorKind::integrity, "colon ideal has the wrong degree");
    return J;
}

Ideal Jacobian::flip(Ideal const & I) const
{
    if (I.is_unit())
        return I;
    return quotient(minimal_element(I), I);
}

Ideal Jacobian::reduce(Ideal const & I) const
{
    if (I.is_unit())
        return I;
    Ideal r = flip(flip(I));
    require(r.degree() <= curve_.genus(), ErrorKind::integrity, "reduced ideal exceeds the genus");
    return r;
}

Ideal Jacobian::add(Ideal const & a, Ideal const & b) const
{
    if (a.is_unit())
        return b;
    if (b.is_unit())
        return a;
    return reduce(product(a, b));
}

Ideal Jacobian::negate(Ideal const & a) const
{
    return flip(a);
}

Ideal Jacobian::scalar_mul(Ideal const & a, mpz_class const & m) const
{
    if (m < 0)
        return scalar_mul(negate(a), -m);
    Ideal r = identity();
    for (auto bit = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2)) - 1; bit >= 0 && m != 0; --bit) {
        r = add(r, r);
        if (mpz_tstbit(m.get_mpz_t(), static_cast<mp_bitcnt_t>(bit)))
            r = add(r, a);
    }
    return r;
}

Ideal Jacobian::class_of(Place const & P) const
{
    if (P.infinite)
        return identity();
    return reduce(place_ideal(P));
}

Ideal Jacobian::class_of(Divisor const & D) const
{
    Ideal r = identity();
    for (auto const & [P, e] : D.terms())
        if (!P.infinite)
            r = add(r, scalar_mul(class_of(P), e));
    return r;
}

long Jacobian::valuation(Ideal const & I, Place const & P) const
{
    require(!P.infinite, ErrorKind::usage, "valuation at infinity of an ideal");
    unsigned const prec = static_cast<unsigned>(I.degree() / P.u.degree() + 1);
    Poly const v = lift_root(curve_.poly(), P.u, P.v, prec);
    Poly const m = pow(P.u, prec);
    long best = prec;
    for (auto const & r : I.rows()) {
        Poly const e = evaluate(r, v, m);
        if (!e.is_zero())
            best = std::min<long>(best, cabdl::valuation(e, P.u));
    }
    return best;
}

std::optional<Divisor> Jacobian::support(Ideal const & I, Rng & rng) const
{
    Divisor D;
    if (I.is_unit())
        return D;
    for (auto const & [u, e] : factor(I.norm(), rng).factors) {
        long accounted = 0;
        for (auto const & v : places_over(curve_, u, rng).simple) {
            Place P{u, v, false};
            long const val = valuation(I, P);
            if (val > 0) {
                D.add(P, val);
                accounted += val;
            }
        }
        if (accounted != static_cast<long>(e))
            return std::nullopt;
    }
    return D;
}

Ideal Jacobian::random_class(Rng & rng) const
{
    int const g = curve_.genus();
    if (g == 0)
        return identity();
    auto const & F = *field();
    // ramified places are admitted: (u, Y - v) is still a maximal ideal
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<Elem> c(ix(g) + 1);
        for (auto & x : c)
            x = F.random(rng);
        c.back() = 1;
        Divisor D;
        bool ok = true;
        for (auto const & [w, e] : factor(Poly(field(), c), rng).factors) {
            auto const over = places_over(curve_, w, rng);
            std::size_t const k = over.simple.size() + over.multiple.size();
            if (k == 0) {
                ok = false;
                break;
            }
            auto const i = rng.below(k);
            Poly const & v = i < over.simple.size() ? over.simple[i] : over.multiple[i - over.simple.size()];
            D.add(Place{w, v, false}, e);
        }
        if (ok)
            return reduce(ideal_from_divisor(D));
    }
    fail(ErrorKind::domain, "no effective divisor of degree g built from degree-one places");
}

std::optional<mpz_class> brute_force_dlog(Jacobian const & J, Ideal const & base, Ideal const & target,
                                          mpz_class const & bound, unsigned long ceiling)
{
    if (bound <= 0)
        return std::nullopt;
    require(bound <= ceiling, ErrorKind::budget, "brute-force bound exceeds the ceiling");
    auto const b = bound.get_ui();
    auto const m = static_cast<unsigned long>(std::ceil(std::sqrt(static_cast<double>(b))));
    std::unordered_map<std::string, unsigned long> baby;
    Ideal cur = J.identity();
    for (unsigned long j = 0; j < m; ++j) {
        baby.emplace(cur.key(), j);
        cur = J.add(cur, base);
    }
    Ideal const giant = J.negate(cur);
    Ideal t = target;
    for (unsigned long i = 0; i <= m; ++i) {
        if (auto it = baby.find(t.key()); it != baby.end()) {
            unsigned long const x = i * m + it->second;
            if (x < b)
                return mpz_class(x);
            return std::nullopt;
        }
        t = J.add(t, giant);
    }
    return std::nullopt;
}

nlohmann::json ideal_to_json(Ideal const & I)
{
    auto basis = nlohmann::json::array();
    for (auto const & r : I.rows()) {
        auto row = nlohmann::json::array();
        for (auto const & p : r)
            row.push_back(p.coeffs());
        basis.push_back(row);
    }
    return nlohmann::json{{"basis", basis}};
}

Ideal ideal_from_json(Jacobian const & J, nlohmann::json const & j)
{
    std::vector<Row> rows;
    try {
        auto const & basis = j.at("basis");
        require(basis.is_array() && static_cast<int>(basis.size()) == J.n(), ErrorKind::integrity,
                "ideal basis has the wrong shape");
        for (auto const & r : basis) {
            require(r.is_array() && static_cast<int>(r.size()) == J.n(), ErrorKind::integrity,
                    "ideal basis has the wrong shape");
            Row row;
            for (auto const & c : r) {
                std::vector<Elem> v = c.get<std::vector<Elem>>();
                for (Elem x : v)
                    require(x < J.field()->order(), ErrorKind::integrity, "coefficient outside the field");
                row.emplace_back(J.field(), std::move(v));
            }
            rows.push_back(std::move(row));
        }
    } catch (nlohmann::json::exception const & e) {
        fail(ErrorKind::integrity, std::string("malformed ideal: ") + e.what());
    }
    for (int i = 0; i < J.n(); ++i)
        require(!rows[ix(i)][ix(i)].is_zero(), ErrorKind::integrity, "ideal basis is singular");
    Ideal I(rows);
    require(J.hnf(rows, Poly(J.field())) == I, ErrorKind::integrity, "ideal basis is not in canonical form");
    require(J.is_ideal(I), ErrorKind::integrity, "module is not an ideal");
    return I;
}

}  // namespace cabdl
