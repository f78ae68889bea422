#include "cabdl/algebra/field.hpp"

#include <string>

#include "cabdl/algebra/factor.hpp"
#include "cabdl/algebra/poly.hpp"
#include "cabdl/error.hpp"

namespace cabdl {

namespace {

constexpr std::uint64_t table_limit = 1u << 12;

std::vector<std::uint64_t> prime_divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

}  // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

FieldPtr FiniteField::prime(std::uint32_t p)
{
    require(p < (1u << 31), ErrorKind::usage, "characteristic too large");
    require(is_prime(p), ErrorKind::usage, "field characteristic is not prime");
    auto f = std::shared_ptr<FiniteField>(new FiniteField());
    f->p_ = p;
    f->q_ = p;
    return f;
}

FieldPtr FiniteField::extension(FieldPtr base, std::vector<Elem> modulus)
{
    require(static_cast<bool>(base), ErrorKind::usage, "null base field");
    while (!modulus.empty() && modulus.back() == 0)
        modulus.pop_back();
    require(modulus.size() >= 2, ErrorKind::usage, "extension modulus must have degree >= 1");
    require(modulus.back() == 1, ErrorKind::usage, "extension modulus must be monic");
    for (Elem c : modulus)
        require(c < base->order(), ErrorKind::usage, "modulus coefficient out of range");
    unsigned k = static_cast<unsigned>(modulus.size() - 1);

    long double order = 1;
    for (unsigned i = 0; i < k; ++i)
        order *= static_cast<long double>(base->order());
    require(order < 4294967296.0L, ErrorKind::usage, "extension field order exceeds 32 bits");

    if (k > 1) {
        Poly m(base, modulus);
        require(is_irreducible(m), ErrorKind::usage, "extension modulus is not irreducible");
    }

    auto f = std::shared_ptr<FiniteField>(new FiniteField());
    f->p_ = base->p_;
    f->k_ = k;
    f->abs_deg_ = base->abs_deg_ * k;
    f->base_order_ = base->order();
    f->q_ = static_cast<std::uint64_t>(order);
    f->base_ = std::move(base);
    f->modulus_ = std::move(modulus);
    if (f->q_ <= table_limit && f->q_ > 2)
        f->build_tables();
    return f;
}

bool FiniteField::same_as(FiniteField const & o) const
{
    if (this == &o)
        return true;
    if (p_ != o.p_ || q_ != o.q_ || k_ != o.k_ || modulus_ != o.modulus_)
        return false;
    if (!base_ && !o.base_)
        return true;
    if (!base_ || !o.base_)
        return false;
    return base_->same_as(*o.base_);
}

void check_same_field(FiniteField const & a, FiniteField const & b)
{
    if (!a.same_as(b))
        fail(ErrorKind::usage, "operands belong to different fields");
}

Elem FiniteField::ext_add(Elem a, Elem b) const
{
    if (p_ == 2)
        return a ^ b;
    Elem r = 0, scale = 1;
    while (a || b) {
        Elem da = a % p_, db = b % p_;
        Elem s = da + db;
        if (s >= p_)
            s -= p_;
        r += s * scale;
        scale *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

Elem FiniteField::ext_neg(Elem a) const
{
    if (p_ == 2)
        return a;
    Elem r = 0, scale = 1;
    while (a) {
        Elem da = a % p_;
        r += (da == 0 ? 0 : p_ - da) * scale;
        scale *= p_;
        a /= p_;
    }
    return r;
}

Elem FiniteField::ext_sub(Elem a, Elem b) const
{
    return ext_add(a, ext_neg(b));
}

Elem FiniteField::ext_mul(Elem a, Elem b) const
{
    if (a == 0 || b == 0)
        return 0;
    if (!exp_.empty()) {
        std::uint64_t s = std::uint64_t(log_[a]) + log_[b];
        if (s >= q_ - 1)
            s -= q_ - 1;
        return exp_[s];
    }
    return slow_mul(a, b);
}

Elem FiniteField::slow_mul(Elem a, Elem b) const
{
    auto const & B = *base_;
    auto da = digits(a), db = digits(b);
    std::vector<Elem> r(2 * k_ - 1, 0);
    for (unsigned i = 0; i < k_; ++i) {
        if (da[i] == 0)
            continue;
        for (unsigned j = 0; j < k_; ++j)
            if (db[j] != 0)
                r[i + j] = B.add(r[i + j], B.mul(da[i], db[j]));
    }
    for (unsigned i = 2 * k_ - 2; i >= k_; --i) {
        Elem c = r[i];
        if (c != 0) {
            for (unsigned j = 0; j < k_; ++j)
                r[i - k_ + j] = B.sub(r[i - k_ + j], B.mul(c, modulus_[j]));
        }
        r[i] = 0;
    }
    return from_digits(std::span<Elem const>(r.data(), k_));
}

Elem FiniteField::inv(Elem a) const
{
    if (a == 0)
        fail(ErrorKind::domain, "inverse of zero");
    if (!base_) {
        std::int64_t t = 0, nt = 1, r = p_, nr = a;
        while (nr != 0) {
            std::int64_t qt = r / nr;
            std::int64_t tmp = t - qt * nt;
            t = nt;
            nt = tmp;
            tmp = r - qt * nr;
            r = nr;
            nr = tmp;
        }
        if (t < 0)
            t += p_;
        return static_cast<Elem>(t);
    }
    if (!exp_.empty())
        return exp_[log_[a] == 0 ? 0 : q_ - 1 - log_[a]];
    return pow(a, q_ - 2);
}

Elem FiniteField::pow(Elem a, std::uint64_t e) const
{
    Elem r = 1;
    while (e) {
        if (e & 1)
            r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Elem FiniteField::from_int(std::int64_t v) const
{
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0)
        r += p_;
    return static_cast<Elem>(r);
}

std::vector<Elem> FiniteField::digits(Elem a) const
{
    if (!base_)
        return {a};
    std::vector<Elem> d(k_);
    for (unsigned i = 0; i < k_; ++i) {
        d[i] = static_cast<Elem>(a % base_order_);
        a = static_cast<Elem>(a / base_order_);
    }
    return d;
}

Elem FiniteField::from_digits(std::span<Elem const> d) const
{
    if (!base_) {
        require(d.size() <= 1, ErrorKind::usage, "too many digits for a prime field");
        return d.empty() ? 0 : d[0];
    }
    require(d.size() <= k_, ErrorKind::usage, "too many digits for field");
    std::uint64_t r = 0;
    for (std::size_t i = d.size(); i-- > 0;)
        r = r * base_order_ + d[i];
    return static_cast<Elem>(r);
}

void FiniteField::build_tables()
{
    auto const order = q_ - 1;
    auto const primes = prime_divisors(order);
    Elem gen = 0;
    for (Elem g = 2; g < q_; ++g) {
        bool ok = true;
        for (auto r : primes) {
            Elem x = 1, base = g;
            for (std::uint64_t e = order / r; e; e >>= 1) {
                if (e & 1)
                    x = slow_mul(x, base);
                base = slow_mul(base, base);
            }
            if (x == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen = g;
            break;
        }
    }
    if (gen == 0)
        fail(ErrorKind::integrity, "no primitive element found");
    exp_.assign(order, 0);
    log_.assign(q_, 0);
    Elem x = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
        exp_[i] = x;
        log_[x] = static_cast<std::uint32_t>(i);
        x = slow_mul(x, gen);
    }
}

}  // namespace cabdl
