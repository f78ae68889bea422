#include "cabdl/curve/zeta.hpp"

#include <cmath>

#include "cabdl/algebra/factor.hpp"

namespace cabdl {

namespace {

std::uint64_t ipow(std::uint64_t b, int e)
{
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i)
        r *= b;
    return r;
}

}  // namespace

std::uint64_t count_points(CurveModel const & C, int i, std::uint64_t ceiling)
{
    require(i >= 1, ErrorKind::usage, "extension degree must be positive");
    long double const size = std::pow(static_cast<long double>(C.q()), i);
    if (size > static_cast<long double>(ceiling))
        fail(ErrorKind::budget, "q^i = " + std::to_string(static_cast<double>(size)) + " exceeds the point-count ceiling");
    FieldPtr const E = i == 1 ? C.field() : extension_of_degree(C.field(), i);
    auto const & F = *E;
    // coefficients of the curve embed as constants of the tower
    std::vector<Poly> coeffs;
    for (auto const & c : C.poly().coeffs())
        coeffs.emplace_back(E, c.coeffs());
    mpz_class const Q(static_cast<unsigned long>(F.order()));
    std::uint64_t affine = 0;
    std::vector<Elem> spec(coeffs.size());
    Poly const y = Poly::x(E);
    for (std::uint64_t xi = 0; xi < F.order(); ++xi) {
        Elem const x = static_cast<Elem>(xi);
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            spec[j] = coeffs[j].eval(x);
        Poly const f(E, spec);
        if (f.degree() == 1) {
            ++affine;
            continue;
        }
        Poly const g = gcd(f, powmod(y, Q, f) - y);
        affine += static_cast<std::uint64_t>(std::max(g.degree(), 0));
    }
    return affine + 1;
}

ZetaData zeta_from_counts(std::uint64_t q, int genus, std::vector<std::uint64_t> const & counts)
{
    require(genus >= 0, ErrorKind::usage, "negative genus");
    require(static_cast<int>(counts.size()) == genus, ErrorKind::usage, "exactly g point counts are required");
    ZetaData z;
    z.q = q;
    z.genus = genus;
    z.counts = counts;
    int const g = genus;
    // power sums of the Frobenius eigenvalues: s_k = q^k + 1 - N_k
    std::vector<mpz_class> s(static_cast<std::size_t>(g) + 1);
    mpz_class qk = 1;
    for (int k = 1; k <= g; ++k) {
        qk *= static_cast<unsigned long>(q);
        s[static_cast<std::size_t>(k)] = qk + 1 - mpz_class(static_cast<unsigned long>(counts[static_cast<std::size_t>(k - 1)]));
    }
    z.L.assign(static_cast<std::size_t>(2 * g) + 1, 0);
    z.L[0] = 1;
    for (int k = 1; k <= g; ++k) {
        mpz_class acc = 0;
        for (int i = 1; i <= k; ++i)
            acc += s[static_cast<std::size_t>(i)] * z.L[static_cast<std::size_t>(k - i)];
        if (acc % k != 0)
            fail(ErrorKind::integrity, "point counts do not yield an integral L-polynomial");
        z.L[static_cast<std::size_t>(k)] = -acc / k;
    }
    for (int i = 0; i < g; ++i) {
        mpz_class qp;
        mpz_ui_pow_ui(qp.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(g - i));
        z.L[static_cast<std::size_t>(2 * g - i)] = qp * z.L[static_cast<std::size_t>(i)];
    }
    z.h = 0;
    for (auto const & a : z.L)
        z.h += a;
    auto const hw = hasse_weil_interval(q, genus);
    long double const hd = z.h.get_d();
    if (hd < hw.lower - 1e-6L || hd > hw.upper + 1e-6L)
        fail(ErrorKind::integrity, "class number outside the Hasse-Weil interval");
    return z;
}

std::vector<mpz_class> counts_from_l_polynomial(ZetaData const & z, int k)
{
    // k a_k = -sum_{i=1}^k s_i a_{k-i}; solve for s_k
    int const g2 = 2 * z.genus;
    auto a = [&](int i) -> mpz_class { return i <= g2 ? z.L[static_cast<std::size_t>(i)] : mpz_class(0); };
    std::vector<mpz_class> s(static_cast<std::size_t>(k) + 1), out;
    mpz_class qk = 1;
    for (int m = 1; m <= k; ++m) {
        mpz_class acc = -m * a(m);
        for (int i = 1; i < m; ++i)
            acc -= s[static_cast<std::size_t>(i)] * a(m - i);
        s[static_cast<std::size_t>(m)] = acc;
        qk *= static_cast<unsigned long>(z.q);
        out.push_back(qk + 1 - acc);
    }
    return out;
}

ZetaData compute_zeta(CurveModel const & C, std::uint64_t ceiling)
{
    std::vector<std::uint64_t> counts;
    for (int i = 1; i <= C.genus(); ++i)
        counts.push_back(count_points(C, i, ceiling));
    return zeta_from_counts(C.q(), C.genus(), counts);
}

HasseWeil hasse_weil_interval(std::uint64_t q, int genus)
{
    long double const r = std::sqrt(static_cast<long double>(q));
    return {std::pow(r - 1, 2 * genus), std::pow(r + 1, 2 * genus)};
}

ClassNumberBounds class_number_bounds_from_counts(std::uint64_t q, int genus, std::vector<std::uint64_t> const & counts)
{
    int const g = genus;
    int const lambda = static_cast<int>(counts.size());
    require(lambda <= g, ErrorKind::usage, "more counts than the genus");
    ClassNumberBounds b;
    if (g == 0) {
        b.lower = 1 / std::sqrt(2.0L);
        b.upper = std::sqrt(2.0L);
        b.within_factor_two = true;
        return b;
    }
    // a_0..a_lambda from the known counts
    std::vector<long double> s(static_cast<std::size_t>(lambda) + 1, 0), a(static_cast<std::size_t>(lambda) + 1, 0);
    a[0] = 1;
    for (int k = 1; k <= lambda; ++k) {
        s[static_cast<std::size_t>(k)] = std::pow(static_cast<long double>(q), k) + 1 - static_cast<long double>(counts[static_cast<std::size_t>(k - 1)]);
        long double acc = 0;
        for (int i = 1; i <= k; ++i)
            acc += s[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(k - i)];
        a[static_cast<std::size_t>(k)] = std::round(-acc / k);
    }
    auto weight = [&](int i) { return i < g ? 1 + std::pow(static_cast<long double>(q), g - i) : 1.0L; };
    long double centre = 0, radius = 0;
    for (int i = 0; i <= lambda; ++i)
        centre += weight(i) * a[static_cast<std::size_t>(i)];
    for (int i = lambda + 1; i <= g; ++i) {
        long double binom = 1;
        for (int t = 0; t < i; ++t)
            binom = binom * (2 * g - t) / (t + 1);
        radius += weight(i) * binom * std::pow(static_cast<long double>(q), i / 2.0L);
    }
    auto const hw = hasse_weil_interval(q, g);
    long double lo = std::max(centre - radius, hw.lower);
    long double hi = std::min(centre + radius, hw.upper);
    if (hi < 2 * lo) {
        long double const ht = std::sqrt(lo * hi);
        b.lower = ht / std::sqrt(2.0L);
        b.upper = ht * std::sqrt(2.0L);
        b.within_factor_two = true;
    } else {
        b.lower = lo - 0.5L;
        b.upper = hi + 0.5L;
    }
    return b;
}

ClassNumberBounds class_number_bounds(CurveModel const & C, BoundsMode mode, int lambda, std::uint64_t ceiling)
{
    int const g = C.genus();
    if (mode == BoundsMode::exact) {
        auto z = compute_zeta(C, ceiling);
        ClassNumberBounds b;
        b.lower = b.upper = z.h.get_d();
        b.exact = true;
        return b;
    }
    require(lambda >= 0 && lambda <= g, ErrorKind::usage, "truncation length must lie in [0, g]");
    std::vector<std::uint64_t> counts;
    for (int i = 1; i <= lambda; ++i)
        counts.push_back(count_points(C, i, ceiling));
    return class_number_bounds_from_counts(C.q(), g, counts);
}

}  // namespace cabdl
