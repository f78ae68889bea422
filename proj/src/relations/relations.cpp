#include "cabdl/relations/relations.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "cabdl/algebra/factor.hpp"

namespace cabdl {

namespace {

constexpr std::uint64_t enumeration_limit = 2'000'000;
constexpr std::uint64_t duplicate_streak_limit = 1'000'000;

// number of monic irreducibles of degree k over F_q
long double irreducible_count(std::uint64_t q, int k)
{
    long double total = 0;
    for (int d = 1; d <= k; ++d) {
        if (k % d)
            continue;
        int m = k / d, mu = 1;
        for (int p = 2; p * p <= m && mu; ++p)
            if (m % p == 0) {
                m /= p;
                if (m % p == 0)
                    mu = 0;
                mu = -mu;
            }
        if (m > 1)
            mu = -mu;
        total += mu * std::pow(static_cast<long double>(q), d);
    }
    return total / k;
}

}  // namespace

Poly norm_of_phi(CurveModel const & C, FunctionPhi const & phi)
{
    Poly const na = -phi.a;
    Poly r = pow(na, static_cast<unsigned>(C.n()));
    Poly nap = Poly::one(C.field());
    std::vector<Poly> bp{Poly::one(C.field())};
    for (int k = 1; k <= C.n(); ++k)
        bp.push_back(bp.back() * phi.b);
    for (int j = 0; j < C.n(); ++j) {
        if (!C.coeff(j).is_zero())
            r += C.coeff(j) * nap * bp[static_cast<std::size_t>(C.n() - j)];
        nap *= na;
    }
    return r;
}

std::optional<std::vector<std::pair<Place, long>>> divisor_of_phi(CurveModel const & C, FunctionPhi const & phi,
                                                                  int bound, Rng & rng)
{
    Poly const N = norm_of_phi(C, phi);
    if (N.is_zero())
        fail(ErrorKind::integrity, "norm of a nonzero function vanished");
    if (!is_smooth(N, bound))
        return std::nullopt;
    BiPoly const dF = C.poly().derivative_y();
    std::vector<std::pair<Place, long>> out;
    long total = 0;
    for (auto const & [u, e] : factor(N, rng).factors) {
        Poly const bu = phi.b % u;
        if (bu.is_zero())
            fail(ErrorKind::integrity, "norm factor divides b although gcd(a, b) = 1");
        Poly const v = (-(phi.a % u) * inv_mod(bu, u)) % u;
        if (dF.eval_y(v, u).is_zero())
            return std::nullopt;
        Poly const lifted = lift_root(C.poly(), u, v, e + 1);
        Poly const val = (phi.a + phi.b * lifted) % pow(u, e + 1);
        long const ev = val.is_zero() ? static_cast<long>(e) + 1 : static_cast<long>(valuation(val, u));
        total += ev * u.degree();
        out.emplace_back(Place{u, v, false}, ev);
    }
    if (total != N.degree())
        fail(ErrorKind::integrity, "valuations of div(phi) do not add up to deg Norm(phi)");
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Relation> decompose_divisor(CurveModel const & C, FactorBase const & fb, FunctionPhi const & phi,
                                          Rng & rng)
{
    auto const div = divisor_of_phi(C, phi, fb.bound(), rng);
    if (!div)
        return std::nullopt;
    Relation rel;
    rel.source = phi;
    long degree = 0;
    for (auto const & [P, e] : *div) {
        auto const idx = fb.index_of(P);
        if (!idx)
            return std::nullopt;
        rel.exps.emplace_back(*idx, e);
        degree += e * P.degree();
    }
    std::sort(rel.exps.begin(), rel.exps.end());
    rel.infinite = -degree;
    return rel;
}

FunctionPhi normalized(FunctionPhi const & phi)
{
    Elem const s = phi.b.F().inv(phi.b.lc());
    return {phi.a.scale(s), phi.b.scale(s)};
}

PhiSampler::PhiSampler(FieldPtr field, int m) : field_(std::move(field)), m_(m)
{
    require(m >= 0, ErrorKind::usage, "degree bound m must be nonnegative");
}

Poly PhiSampler::random_poly(Rng & rng) const
{
    std::vector<Elem> c(static_cast<std::size_t>(m_) + 1);
    for (auto & x : c)
        x = field_->random(rng);
    return Poly(field_, std::move(c));
}

FunctionPhi PhiSampler::draw(Rng & rng) const
{
    for (;;) {
        Poly a = random_poly(rng);
        Poly b = random_poly(rng);
        if (b.is_zero() || !gcd(a, b).is_one())
            continue;
        return {std::move(a), std::move(b)};
    }
}

std::optional<std::uint64_t> PhiSampler::class_count() const
{
    if (count_)
        return *count_;
    std::uint64_t const q = field_->order();
    long double const space = std::pow(static_cast<long double>(q), 2 * m_ + 1);
    if (space > enumeration_limit) {
        count_ = std::optional<std::uint64_t>{};
        return *count_;
    }
    std::uint64_t qa = 1;
    for (int i = 0; i <= m_; ++i)
        qa *= q;
    auto poly_of = [&](std::uint64_t idx, int len) {
        std::vector<Elem> c(static_cast<std::size_t>(len));
        for (auto & x : c) {
            x = static_cast<Elem>(idx % q);
            idx /= q;
        }
        return Poly(field_, std::move(c));
    };
    std::uint64_t count = 0;
    std::uint64_t qb = 1;
    for (int db = 0; db <= m_; ++db) {
        for (std::uint64_t ib = 0; ib < qb; ++ib) {
            Poly b = poly_of(ib, db) + Poly::monomial(field_, 1, static_cast<std::size_t>(db));
            for (std::uint64_t ia = 0; ia < qa; ++ia)
                count += gcd(poly_of(ia, m_ + 1), b).is_one();
        }
        qb *= q;
    }
    count_ = count;
    return count;
}

std::optional<FunctionPhi> PhiSampler::next(Rng & rng)
{
    auto const total = class_count();
    std::uint64_t streak = 0;
    for (;;) {
        if (total && seen_.size() >= *total)
            return std::nullopt;
        FunctionPhi phi = draw(rng);
        if (seen_.insert(normalized(phi)).second)
            return phi;
        if (++streak >= duplicate_streak_limit)
            return std::nullopt;
    }
}

double sigma_root(double n0, double d0)
{
    double const b = 4.0 / 9.0 * n0;
    return (b + std::sqrt(b * b + 4 * (4.0 / 9.0) * d0)) / 2;
}

double smooth_polynomial_probability(std::uint64_t q, int N, int B)
{
    if (N <= B || N <= 0)
        return 1.0;
    // coefficients of prod_{k <= B} (1 - x^k)^(-I_k), scaled by q^-deg
    std::vector<long double> P(static_cast<std::size_t>(N) + 1, 0);
    P[0] = 1;
    long double const lq = static_cast<long double>(q);
    for (int k = 1; k <= B; ++k) {
        long double const I = irreducible_count(q, k);
        std::vector<long double> next(P.size(), 0);
        for (int deg = 0; deg <= N; ++deg) {
            long double term = 1;
            for (int j = 0; deg + k * j <= N; ++j) {
                if (j > 0)
                    term = term * (I + j - 1) / j / std::pow(lq, k);
                next[static_cast<std::size_t>(deg + k * j)] += P[static_cast<std::size_t>(deg)] * term;
            }
        }
        P = std::move(next);
    }
    return static_cast<double>(P[static_cast<std::size_t>(N)]);
}

ParameterPlan plan_parameters(CurveModel const & C, ParameterOverrides const & o)
{
    ParameterPlan p;
    double const g = std::max(C.genus(), 1);
    double const lq = std::log(static_cast<double>(C.q()));
    double const size = std::max(g * lq, std::exp(1.0));
    p.M = std::log(size) / lq;
    double const g13 = std::cbrt(g);
    double const M13 = std::cbrt(p.M);
    p.n0 = C.n() / (g13 / M13);
    p.d0 = C.d() / (g13 * g13 * M13);
    p.sigma = o.sigma.value_or(sigma_root(p.n0, p.d0));
    p.tau = (p.n0 * p.sigma + p.d0) / 3;
    p.rho = o.rho.value_or(std::sqrt(p.tau / 3));
    double const scale = g13 * M13 * M13;
    p.B = o.B.value_or(std::max(1, static_cast<int>(std::ceil(p.rho * scale - 1e-9))));
    p.m = o.m.value_or(std::max(1, static_cast<int>(std::floor(p.sigma * scale + 1e-9))));
    require(p.B >= 1, ErrorKind::usage, "B must be at least 1");
    require(p.m >= 0, ErrorKind::usage, "m must be nonnegative");
    p.overridden = o.B || o.m || o.rho || o.sigma;
    int const normdeg = C.n() * p.m + C.d();
    p.u = static_cast<double>(normdeg) / p.B;
    p.smooth_probability = smooth_polynomial_probability(C.q(), normdeg, p.B);
    return p;
}

void plan_relation_count(ParameterPlan & plan, CurveModel const & C, int t, ParameterOverrides const & o)
{
    plan.s = o.s.value_or(2L * t);
    require(plan.s >= 0, ErrorKind::usage, "relation count must be nonnegative");
    if (plan.s == 0)
        return;
    long double const space = std::pow(static_cast<long double>(C.q()), 2 * plan.m);
    long double const needed = 2.0L * plan.s / std::max(plan.smooth_probability, 1e-300);
    if (space < needed)
        fail(ErrorKind::usage, "search space q^(2m) = " + std::to_string(static_cast<double>(space)) +
                                   " is below the " + std::to_string(static_cast<double>(needed)) +
                                   " trials needed for " + std::to_string(plan.s) + " relations; increase m");
}

nlohmann::json plan_to_json(ParameterPlan const & p)
{
    return {{"n0", p.n0}, {"d0", p.d0},    {"M", p.M}, {"rho", p.rho}, {"sigma", p.sigma},
            {"tau", p.tau}, {"B", p.B},     {"m", p.m}, {"s", p.s},     {"u", p.u},
            {"smooth_probability", p.smooth_probability}};
}

RelationMatrix RelationSet::matrix() const
{
    RelationMatrix R;
    R.columns.reserve(relations.size());
    for (auto const & r : relations)
        R.columns.push_back(r.exps);
    return R;
}

std::vector<SparseColumn> free_relations(CurveModel const & C, FactorBase const & fb)
{
    std::map<Poly, SparseColumn> by_u;
    for (int i = 0; i < fb.size(); ++i)
        by_u[fb[i].u].push_back({i, 1});
    std::vector<SparseColumn> out;
    for (auto & [u, col] : by_u)
        if (static_cast<int>(col.size()) == C.n())
            out.push_back(std::move(col));
    return out;
}

RelationSet collect_relations(CurveModel const & C, FactorBase const & fb, int m, long s, Rng & rng,
                              std::uint64_t trial_budget)
{
    auto const start = std::chrono::steady_clock::now();
    RelationSet out;
    PhiSampler sampler(C.field(), m);
    auto report = [&] {
        return " after " + std::to_string(out.stats.trials) + " trials with " + std::to_string(out.stats.hits) +
               " relations of " + std::to_string(s);
    };
    while (static_cast<long>(out.relations.size()) < s) {
        if (trial_budget && out.stats.trials >= trial_budget)
            fail(ErrorKind::budget, "trial budget exhausted" + report());
        auto phi = sampler.next(rng);
        if (!phi)
            fail(ErrorKind::budget, "search space of functions exhausted" + report());
        ++out.stats.trials;
        if (auto rel = decompose_divisor(C, fb, *phi, rng)) {
            ++out.stats.hits;
            out.relations.push_back(std::move(*rel));
        }
    }
    std::sort(out.relations.begin(), out.relations.end(),
              [](Relation const & x, Relation const & y) { return normalized(x.source) < normalized(y.source); });
    out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

nlohmann::json relation_to_json(Relation const & r)
{
    auto exps = nlohmann::json::array();
    for (auto const & [i, e] : r.exps)
        exps.push_back({i, e});
    return {{"a", r.source.a.coeffs()}, {"b", r.source.b.coeffs()}, {"exps", exps}};
}

nlohmann::json stats_to_json(CollectionStats const & st, bool timings)
{
    nlohmann::json j{{"trials", st.trials}, {"hits", st.hits}, {"probability", st.probability()}};
    if (timings)
        j["seconds"] = st.seconds;
    return j;
}

}  // namespace cabdl
