#include "cabdl/algebra/poly.hpp"

#include <sstream>

#include "cabdl/error.hpp"

namespace cabdl {

namespace {

FieldPtr const & common_field(Poly const & a, Poly const & b)
{
    if (!a.field())
        return b.field();
    if (!b.field())
        return a.field();
    check_same_field(a.F(), b.F());
    return a.field();
}

}  // namespace

Poly::Poly(FieldPtr f, std::vector<Elem> coeffs) : field_(std::move(f)), c_(std::move(coeffs))
{
    for (Elem c : c_)
        require(c < field_->order(), ErrorKind::usage, "coefficient out of field range");
    trim();
}

Poly Poly::constant(FieldPtr f, Elem c)
{
    Poly p(std::move(f));
    if (c != 0)
        p.c_.push_back(c);
    return p;
}

Poly Poly::monomial(FieldPtr f, Elem c, std::size_t deg)
{
    Poly p(std::move(f));
    if (c != 0) {
        p.c_.assign(deg + 1, 0);
        p.c_[deg] = c;
    }
    return p;
}

void Poly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

void Poly::set_coeff(std::size_t i, Elem v)
{
    if (i >= c_.size()) {
        if (v == 0)
            return;
        c_.resize(i + 1, 0);
    }
    c_[i] = v;
    trim();
}

Poly Poly::monic() const
{
    if (is_zero() || is_monic())
        return *this;
    return scale(F().inv(lc()));
}

Poly Poly::scale(Elem s) const
{
    Poly r(field_);
    if (s == 0 || is_zero())
        return r;
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = F().mul(c_[i], s);
    r.trim();
    return r;
}

Poly Poly::derivative() const
{
    Poly r(field_);
    if (c_.size() <= 1)
        return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.c_[i - 1] = F().mul(c_[i], F().from_int(static_cast<std::int64_t>(i % F().characteristic())));
    r.trim();
    return r;
}

Elem Poly::eval(Elem x) const
{
    Elem r = 0;
    for (std::size_t i = c_.size(); i-- > 0;)
        r = F().add(F().mul(r, x), c_[i]);
    return r;
}

Poly Poly::shift(std::size_t k) const
{
    Poly r(field_);
    if (is_zero())
        return r;
    r.c_.assign(k, 0);
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
}

Poly Poly::truncate(std::size_t k) const
{
    Poly r(field_);
    r.c_.assign(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(k, c_.size())));
    r.trim();
    return r;
}

Poly & Poly::operator+=(Poly const & o)
{
    field_ = common_field(*this, o);
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] = F().add(c_[i], o.c_[i]);
    trim();
    return *this;
}

Poly & Poly::operator-=(Poly const & o)
{
    field_ = common_field(*this, o);
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] = F().sub(c_[i], o.c_[i]);
    trim();
    return *this;
}

Poly Poly::operator-() const
{
    Poly r(field_);
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = F().neg(c_[i]);
    return r;
}

Poly operator*(Poly const & a, Poly const & b)
{
    auto const & f = common_field(a, b);
    Poly r(f);
    if (a.is_zero() || b.is_zero())
        return r;
    auto const & F = *f;
    auto const & ac = a.c_;
    auto const & bc = b.c_;
    r.c_.assign(ac.size() + bc.size() - 1, 0);
    if (F.is_prime_field()) {
        // accumulate in 64 bits and reduce lazily
        std::uint64_t const p = F.characteristic();
        std::uint64_t const limit = UINT64_MAX - (p - 1) * (p - 1);
        std::vector<std::uint64_t> acc(r.c_.size(), 0);
        for (std::size_t i = 0; i < ac.size(); ++i) {
            if (ac[i] == 0)
                continue;
            for (std::size_t j = 0; j < bc.size(); ++j) {
                auto & s = acc[i + j];
                s += std::uint64_t(ac[i]) * bc[j];
                if (s >= limit)
                    s %= p;
            }
        }
        for (std::size_t i = 0; i < acc.size(); ++i)
            r.c_[i] = static_cast<Elem>(acc[i] % p);
    } else {
        for (std::size_t i = 0; i < ac.size(); ++i) {
            if (ac[i] == 0)
                continue;
            for (std::size_t j = 0; j < bc.size(); ++j)
                r.c_[i + j] = F.add(r.c_[i + j], F.mul(ac[i], bc[j]));
        }
    }
    r.trim();
    return r;
}

Poly & Poly::operator*=(Poly const & o)
{
    *this = *this * o;
    return *this;
}

std::strong_ordering operator<=>(Poly const & a, Poly const & b)
{
    if (a.degree() != b.degree())
        return a.degree() <=> b.degree();
    for (std::size_t i = a.c_.size(); i-- > 0;)
        if (a.c_[i] != b.c_[i])
            return a.c_[i] <=> b.c_[i];
    return std::strong_ordering::equal;
}

std::string Poly::to_string(char var) const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0)
            continue;
        if (!first)
            os << " + ";
        first = false;
        if (i == 0 || c_[i] != 1)
            os << c_[i];
        if (i > 0) {
            if (c_[i] != 1)
                os << '*';
            os << var;
            if (i > 1)
                os << '^' << i;
        }
    }
    return os.str();
}

std::pair<Poly, Poly> divmod(Poly const & a, Poly const & b)
{
    if (b.is_zero())
        fail(ErrorKind::domain, "polynomial division by zero");
    auto const & f = common_field(a, b);
    auto const & F = *f;
    if (a.degree() < b.degree())
        return {Poly(f), a};
    std::vector<Elem> r = a.coeffs();
    auto const & bc = b.coeffs();
    std::size_t const db = bc.size() - 1;
    std::vector<Elem> q(r.size() - db, 0);
    Elem const binv = F.inv(b.lc());
    for (std::size_t i = r.size(); i-- > db;) {
        Elem c = r[i];
        if (c == 0)
            continue;
        if (binv != 1)
            c = F.mul(c, binv);
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j)
            r[i - db + j] = F.sub(r[i - db + j], F.mul(c, bc[j]));
    }
    r.resize(db);
    return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

Poly operator/(Poly const & a, Poly const & b) { return divmod(a, b).first; }
Poly operator%(Poly const & a, Poly const & b) { return divmod(a, b).second; }

Poly exact_div(Poly const & a, Poly const & b)
{
    auto [q, r] = divmod(a, b);
    if (!r.is_zero())
        fail(ErrorKind::integrity, "inexact polynomial division");
    return q;
}

Poly gcd(Poly const & a, Poly const & b)
{
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

XgcdResult xgcd(Poly const & a, Poly const & b)
{
    auto const & f = common_field(a, b);
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(f), s1(f);
    Poly t0(f), t1 = Poly::one(f);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!r0.is_zero() && !r0.is_monic()) {
        Elem c = f->inv(r0.lc());
        r0 = r0.scale(c);
        s0 = s0.scale(c);
        t0 = t0.scale(c);
    }
    return {std::move(r0), std::move(s0), std::move(t0)};
}

Poly inv_mod(Poly const & a, Poly const & m)
{
    auto res = xgcd(a % m, m);
    if (!res.g.is_one())
        fail(ErrorKind::domain, "polynomial not invertible modulo m");
    return res.s % m;
}

Poly mulmod(Poly const & a, Poly const & b, Poly const & m) { return (a * b) % m; }

Poly powmod(Poly const & a, mpz_class const & e, Poly const & m)
{
    Poly base = a % m;
    Poly r = Poly::one(base.field() ? base.field() : m.field()) % m;
    if (e < 0)
        fail(ErrorKind::domain, "negative exponent");
    std::size_t const bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mulmod(r, r, m);
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = mulmod(r, base, m);
    }
    return r;
}

Poly pow(Poly const & a, unsigned e)
{
    Poly r = Poly::one(a.field());
    Poly b = a;
    while (e) {
        if (e & 1)
            r *= b;
        e >>= 1;
        if (e)
            b *= b;
    }
    return r;
}

Poly compose(Poly const & f, Poly const & g)
{
    Poly r(f.field());
    for (std::size_t i = f.coeffs().size(); i-- > 0;)
        r = r * g + Poly::constant(f.field(), f.coeffs()[i]);
    return r;
}

unsigned valuation(Poly const & f, Poly const & u)
{
    if (f.is_zero())
        fail(ErrorKind::domain, "valuation of zero polynomial");
    if (u.degree() < 1)
        fail(ErrorKind::domain, "valuation with respect to a constant");
    unsigned e = 0;
    Poly g = f;
    for (;;) {
        auto [q, r] = divmod(g, u);
        if (!r.is_zero())
            return e;
        g = std::move(q);
        ++e;
    }
}

}  // namespace cabdl
