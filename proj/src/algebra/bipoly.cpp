#include "cabdl/algebra/bipoly.hpp"

#include <algorithm>

#include "cabdl/algebra/factor.hpp"
#include "cabdl/error.hpp"

namespace cabdl {

BiPoly::BiPoly(FieldPtr f, std::vector<Poly> coeffs) : field_(std::move(f)), c_(std::move(coeffs))
{
    for (auto & p : c_) {
        if (!p.field())
            p = Poly(field_);
        check_same_field(*field_, p.F());
    }
    trim();
}

void BiPoly::trim()
{
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

int BiPoly::degree_x() const noexcept
{
    int d = -1;
    for (auto const & p : c_)
        d = std::max(d, p.degree());
    return d;
}

BiPoly BiPoly::derivative_y() const
{
    std::vector<Poly> d;
    for (std::size_t j = 1; j < c_.size(); ++j)
        d.push_back(c_[j].scale(field_->from_int(static_cast<std::int64_t>(j % field_->characteristic()))));
    return BiPoly(field_, std::move(d));
}

BiPoly BiPoly::derivative_x() const
{
    std::vector<Poly> d;
    for (auto const & p : c_)
        d.push_back(p.derivative());
    return BiPoly(field_, std::move(d));
}

Poly BiPoly::eval_y(Poly const & v, Poly const & m) const
{
    Poly r(field_);
    for (std::size_t j = c_.size(); j-- > 0;) {
        r = r * v + c_[j];
        if (!m.is_zero())
            r = r % m;
    }
    return r;
}

Poly BiPoly::specialize(FieldPtr const & ext, Poly const & u) const
{
    std::vector<Elem> c(c_.size());
    for (std::size_t j = 0; j < c_.size(); ++j)
        c[j] = to_residue(*ext, c_[j], u);
    return Poly(ext, std::move(c));
}

Poly BiPoly::specialize_at(Elem x) const
{
    std::vector<Elem> c(c_.size());
    for (std::size_t j = 0; j < c_.size(); ++j)
        c[j] = c_[j].eval(x);
    return Poly(field_, std::move(c));
}

namespace {

void check_resultant_args(BiPoly const & f, BiPoly const & g)
{
    check_same_field(*f.field(), *g.field());
    if (f.degree_y() < 1 && g.degree_y() < 1)
        fail(ErrorKind::domain, "resultant of two polynomials constant in Y");
}

// Sylvester matrix with the rows of f first; entries in F_q[X]
std::vector<std::vector<Poly>> sylvester(BiPoly const & f, BiPoly const & g)
{
    int const m = std::max(f.degree_y(), 0);
    int const n = std::max(g.degree_y(), 0);
    int const N = m + n;
    std::vector<std::vector<Poly>> M(static_cast<std::size_t>(N),
                                     std::vector<Poly>(static_cast<std::size_t>(N), Poly(f.field())));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k)
            M[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + k)] = f[static_cast<std::size_t>(m - k)];
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k)
            M[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + k)] = g[static_cast<std::size_t>(n - k)];
    return M;
}

// Resultant when one argument has Y-degree zero: c^deg(other)
Poly degenerate_resultant(BiPoly const & f, BiPoly const & g)
{
    if (f.is_zero() || g.is_zero())
        return Poly(f.field());
    if (f.degree_y() == 0)
        return pow(f[0], static_cast<unsigned>(g.degree_y()));
    return pow(g[0], static_cast<unsigned>(f.degree_y()));
}

}  // namespace

Poly resultant_y_sylvester(BiPoly const & f, BiPoly const & g)
{
    check_resultant_args(f, g);
    if (f.is_zero() || g.is_zero() || f.degree_y() == 0 || g.degree_y() == 0)
        return degenerate_resultant(f, g);
    auto M = sylvester(f, g);
    std::size_t const N = M.size();
    Poly prev = Poly::one(f.field());
    bool negate = false;
    for (std::size_t k = 0; k + 1 < N; ++k) {
        if (M[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < N && M[r][k].is_zero())
                ++r;
            if (r == N)
                return Poly(f.field());
            std::swap(M[k], M[r]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < N; ++i) {
            for (std::size_t j = k + 1; j < N; ++j)
                M[i][j] = exact_div(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev);
            M[i][k] = Poly(f.field());
        }
        prev = M[k][k];
    }
    Poly det = M[N - 1][N - 1];
    return negate ? -det : det;
}

Poly resultant_y_interpolated(BiPoly const & f, BiPoly const & g)
{
    check_resultant_args(f, g);
    if (f.is_zero() || g.is_zero() || f.degree_y() == 0 || g.degree_y() == 0)
        return degenerate_resultant(f, g);
    auto const & F = *f.field();
    int const m = f.degree_y(), n = g.degree_y();
    std::uint64_t const bound = static_cast<std::uint64_t>(n) * std::max(f.degree_x(), 0)
                                + static_cast<std::uint64_t>(m) * std::max(g.degree_x(), 0);
    if (F.order() <= bound)
        fail(ErrorKind::usage, "field too small for resultant interpolation");
    auto const M = sylvester(f, g);
    std::size_t const N = M.size();
    std::vector<Elem> xs, ys;
    for (std::uint64_t xi = 0; xi <= bound; ++xi) {
        Elem const x = static_cast<Elem>(xi);
        std::vector<std::vector<Elem>> A(N, std::vector<Elem>(N));
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                A[i][j] = M[i][j].eval(x);
        Elem det = 1;
        for (std::size_t k = 0; k < N && det != 0; ++k) {
            std::size_t r = k;
            while (r < N && A[r][k] == 0)
                ++r;
            if (r == N) {
                det = 0;
                break;
            }
            if (r != k) {
                std::swap(A[r], A[k]);
                det = F.neg(det);
            }
            det = F.mul(det, A[k][k]);
            Elem const pinv = F.inv(A[k][k]);
            for (std::size_t i = k + 1; i < N; ++i) {
                if (A[i][k] == 0)
                    continue;
                Elem const c = F.mul(A[i][k], pinv);
                for (std::size_t j = k; j < N; ++j)
                    A[i][j] = F.sub(A[i][j], F.mul(c, A[k][j]));
            }
        }
        xs.push_back(x);
        ys.push_back(det);
    }
    // Newton interpolation
    std::size_t const P = xs.size();
    std::vector<Elem> dd = ys;
    for (std::size_t lvl = 1; lvl < P; ++lvl)
        for (std::size_t i = P - 1; i >= lvl; --i)
            dd[i] = F.div(F.sub(dd[i], dd[i - 1]), F.sub(xs[i], xs[i - lvl]));
    Poly r(f.field());
    for (std::size_t i = P; i-- > 0;) {
        r = r * Poly(f.field(), {F.neg(xs[i]), 1});
        r += Poly::constant(f.field(), dd[i]);
    }
    return r;
}

Poly resultant_y(BiPoly const & f, BiPoly const & g)
{
    check_resultant_args(f, g);
    auto const bound = static_cast<std::uint64_t>(std::max(g.degree_y(), 0)) * std::max(f.degree_x(), 0)
                       + static_cast<std::uint64_t>(std::max(f.degree_y(), 0)) * std::max(g.degree_x(), 0);
    if (f.field()->order() > bound)
        return resultant_y_interpolated(f, g);
    return resultant_y_sylvester(f, g);
}

Poly lift_root(BiPoly const & G, Poly const & u, Poly const & v0, unsigned e)
{
    require(e >= 1, ErrorKind::usage, "lift precision must be at least 1");
    require(u.degree() >= 1, ErrorKind::usage, "lift modulus must be nonconstant");
    if (!G.eval_y(v0, u).is_zero())
        fail(ErrorKind::domain, "lift_root: v0 is not a root modulo u");
    BiPoly const dG = G.derivative_y();
    if (dG.eval_y(v0, u).is_zero())
        throw RamifiedPlace("ramified place: dG/dY vanishes at the root");
    Poly v = v0 % u;
    unsigned prec = 1;
    while (prec < e) {
        prec = std::min(2 * prec, e);
        Poly const mod = pow(u, prec);
        Poly const num = G.eval_y(v, mod);
        Poly const den = dG.eval_y(v, mod);
        v = (v - num * inv_mod(den, mod)) % mod;
    }
    return v;
}

}  // namespace cabdl
