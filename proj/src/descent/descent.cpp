#include "cabdl/descent/descent.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "cabdl/algebra/factor.hpp"
#include "cabdl/curve/curve_io.hpp"

namespace cabdl {

using nlohmann::json;

// ---------------------------------------------------------------- schedule

std::optional<int> DescentSchedule::target_for(int deg) const
{
    for (int b : bounds)
        if (b < deg)
            return b;
    return std::nullopt;
}

DescentSchedule default_schedule(CurveModel const & C, ParameterPlan const & plan, double epsilon, double nu)
{
    if (!(epsilon > 0 && epsilon < 1.0 / 6))
        fail(ErrorKind::usage, "epsilon must lie in (0, 1/6)");
    if (!(nu > 0))
        fail(ErrorKind::usage, "nu must be positive");
    DescentSchedule s;
    s.epsilon = epsilon;
    s.nu = nu;
    double const g = std::max(C.genus(), 1);
    int const B = plan.B;
    int const top = std::max(C.genus(), B);
    double const third = 1.0 / 3 + epsilon;
    auto degree_bound = [&](double alpha, double c) {
        double const raw = c * std::pow(g, alpha) * std::pow(plan.M, 1 - alpha);
        return static_cast<int>(std::floor(std::min(raw, 1e6)));
    };
    double c = third / nu;
    s.c.push_back(c);
    s.bounds.push_back(std::clamp(degree_bound(2.0 / 3 - epsilon, c), B, top));
    for (int k = 1; s.bounds.back() > B; ++k) {
        double const alpha = 2.0 / 3 - (k + 1) * epsilon;
        if (alpha <= third) {
            s.bounds.push_back(B);
            break;
        }
        c *= plan.n0 * third / nu;
        s.c.push_back(c);
        s.bounds.push_back(std::max(std::min(degree_bound(alpha, c), s.bounds.back() - 1), B));
    }
    s.rho_consistent = plan.rho > third * plan.n0 / 2;
    return s;
}

DescentSchedule explicit_schedule(std::vector<int> bounds, int B)
{
    if (bounds.empty())
        fail(ErrorKind::usage, "empty descent schedule");
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (bounds[i] < 1)
            fail(ErrorKind::usage, "descent bounds must be positive");
        if (i > 0 && bounds[i] >= bounds[i - 1])
            fail(ErrorKind::usage, "descent bounds must be strictly decreasing");
    }
    if (bounds.back() < B)
        fail(ErrorKind::usage, "descent bounds must not drop below the factor-base bound");
    if (bounds.back() > B)
        bounds.push_back(B);
    DescentSchedule s;
    s.bounds = std::move(bounds);
    s.explicit_bounds = true;
    return s;
}

json schedule_to_json(DescentSchedule const & s)
{
    json j = {{"bounds", s.bounds}, {"explicit", s.explicit_bounds}};
    if (!s.explicit_bounds) {
        j["epsilon"] = s.epsilon;
        j["nu"] = s.nu;
        j["c"] = s.c;
        j["rho_consistent"] = s.rho_consistent;
    }
    return j;
}

// ---------------------------------------------------------------- smoothing

Ideal const & ClassCache::operator()(int i)
{
    auto it = cache_.find(i);
    if (it == cache_.end())
        it = cache_.emplace(i, J_.class_of(fb_[i])).first;
    return it->second;
}

namespace {

// places of the reduced ideal when all have degree <= bound
std::optional<PlaceTerms> smooth_support(Jacobian const & J, Ideal const & I, int bound, Rng & rng)
{
    if (I.degree() > 0 && !is_smooth(I.norm(), bound))
        return std::nullopt;
    auto const div = J.support(I, rng);
    if (!div)
        return std::nullopt;
    PlaceTerms out;
    for (auto const & [P, e] : div->terms()) {
        if (P.degree() > bound)
            return std::nullopt;
        out.emplace_back(P, e);
    }
    return out;
}

Ideal randomizer_class(Jacobian const & J, SparseColumn const & r, ClassCache & classes)
{
    Ideal acc = J.identity();
    for (auto const & [i, m] : r)
        acc = J.add(acc, J.scalar_mul(classes(i), m));
    return acc;
}

}  // namespace

HMResult hm_smooth(Jacobian const & J, Ideal const & D, int bound, FactorBase const & fb, ClassCache & classes,
                   Rng & rng, std::uint64_t budget)
{
    require(bound >= 1, ErrorKind::usage, "smoothing bound must be positive");
    int const t = fb.size();
    int const k = std::min(std::max(J.curve().genus(), 1), t);
    std::vector<int> idx(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i)
        idx[static_cast<std::size_t>(i)] = i;
    HMResult out;
    while (true) {
        if (out.trials >= budget)
            fail(ErrorKind::budget, "smoothing budget exhausted after " + std::to_string(out.trials)
                                        + " trials at degree bound " + std::to_string(bound));
        SparseColumn r;
        if (out.trials > 0) {
            if (t == 0)
                fail(ErrorKind::budget, "class is not smooth and the factor base is empty");
            // partial shuffle picks k distinct members
            for (int i = 0; i < k; ++i) {
                auto const j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(t - i)));
                std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
                long const m = static_cast<long>(rng.below(3)) - 1;
                if (m != 0)
                    r.emplace_back(idx[static_cast<std::size_t>(i)], m);
            }
            std::sort(r.begin(), r.end());
        }
        ++out.trials;
        Ideal const E = r.empty() ? D : J.add(D, randomizer_class(J, r, classes));
        if (auto places = smooth_support(J, E, bound, rng)) {
            out.places = std::move(*places);
            out.randomizer = std::move(r);
            return out;
        }
    }
}

// ---------------------------------------------------------------- lattice

namespace {

Poly poly_from_digits(FieldPtr const & f, std::uint64_t idx, int len)
{
    std::uint64_t const q = f->order();
    std::vector<Elem> c(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
        c[static_cast<std::size_t>(i)] = static_cast<Elem>(idx % q);
        idx /= q;
    }
    return Poly(f, std::move(c));
}

std::uint64_t ipow_sat(std::uint64_t b, int e)
{
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > unlimited / b)
            return unlimited;
        r *= b;
    }
    return r;
}

// (lambda, mu) with lambda of degree <= delta and mu monic of degree <= delta,
// encoded as lambda digits and (deg mu, mu digits)
struct Candidate {
    std::uint64_t lambda;
    int mu_degree;
    std::uint64_t mu;
};

constexpr std::uint64_t max_materialized_shell = std::uint64_t{1} << 22;

class ShellWalker {
public:
    ShellWalker(std::uint64_t q, int max_degree, Rng & rng) : q_(q), max_degree_(max_degree), rng_(rng) {}

    std::optional<Candidate> next()
    {
        while (true) {
            if (pos_ < shell_.size())
                return shell_[pos_++];
            if (sampling_)
                return sample();
            if (delta_ >= max_degree_)
                return std::nullopt;
            open(++delta_);
        }
    }

private:
    // deg lambda == delta, or deg mu == delta and deg lambda < delta
    void open(int delta)
    {
        shell_.clear();
        pos_ = 0;
        std::uint64_t const qd = ipow_sat(q_, delta);
        std::uint64_t const q1 = ipow_sat(q_, delta + 1);
        std::uint64_t mu_total = 0;
        for (int j = 0; j <= delta; ++j)
            mu_total += ipow_sat(q_, j);
        long double const size = static_cast<long double>(q1 - qd) * mu_total + static_cast<long double>(qd) * qd;
        if (q1 == unlimited || size > max_materialized_shell) {
            sampling_ = true;
            return;
        }
        for (std::uint64_t l = qd; l < q1; ++l)
            for (int j = 0; j <= delta; ++j)
                for (std::uint64_t m = 0, mj = ipow_sat(q_, j); m < mj; ++m)
                    shell_.push_back({l, j, m});
        for (std::uint64_t l = 0; l < qd; ++l)
            for (std::uint64_t m = 0; m < qd; ++m)
                shell_.push_back({l, delta, m});
        rng_.shuffle(shell_.begin(), shell_.end());
    }

    Candidate sample()
    {
        std::uint64_t const q1 = ipow_sat(q_, delta_ + 1);
        std::uint64_t const qd = ipow_sat(q_, delta_);
        while (true) {
            Candidate c{rng_.below(q1), static_cast<int>(rng_.below(static_cast<std::uint64_t>(delta_) + 1)), 0};
            c.mu = rng_.below(ipow_sat(q_, c.mu_degree));
            if (c.lambda >= qd || c.mu_degree == delta_)
                return c;
        }
    }

    std::uint64_t q_;
    int max_degree_;
    Rng & rng_;
    int delta_ = -1;
    bool sampling_ = false;
    std::vector<Candidate> shell_;
    std::size_t pos_ = 0;
};

DescentNode leaf(Place const & Q)
{
    DescentNode n;
    n.Q = Q;
    return n;
}

}  // namespace

DescentNode descent_step(CurveModel const & C, Place const & Q, int target, FactorBase const & fb, Rng & rng,
                         LatticeOptions const & opt)
{
    require(!Q.infinite, ErrorKind::usage, "descent needs an affine place");
    if (fb.contains(Q))
        return leaf(Q);
    if (Q.degree() <= target || target < fb.bound())
        fail(ErrorKind::usage, "descent target " + std::to_string(target) + " outside [B, deg Q) for a place of degree "
                                   + std::to_string(Q.degree()));
    if (opt.budget == 0)
        fail(ErrorKind::budget, "lattice search budget is zero");
    FieldPtr const & f = C.field();
    Poly const & u = Q.u;
    int const k = u.degree();
    int const max_degree = opt.max_degree >= 0 ? opt.max_degree : k + 2;
    ShellWalker walker(f->order(), max_degree, rng);
    DescentNode node;
    node.Q = Q;
    while (auto cand = walker.next()) {
        if (node.trials >= opt.budget)
            fail(ErrorKind::budget, "lattice search for a place of degree " + std::to_string(k) + " stopped after "
                                        + std::to_string(node.trials) + " candidates; raise the budget");
        ++node.trials;
        Poly const lambda = poly_from_digits(f, cand->lambda, max_degree + 1);
        Poly mu = poly_from_digits(f, cand->mu, cand->mu_degree);
        mu.set_coeff(static_cast<std::size_t>(cand->mu_degree), 1);
        // a + bY vanishes at Q: u | a + v b
        FunctionPhi phi{lambda * u - (mu * Q.v) % u, mu};
        if (!gcd(phi.a, phi.b).is_one())
            continue;
        Poly const N = norm_of_phi(C, phi);
        auto const [rest, rem] = divmod(N, u);
        if (!rem.is_zero())
            fail(ErrorKind::integrity, "lattice element does not vanish at Q");
        // every place over u has degree deg u > target, so u must divide once
        if ((rest % u).is_zero() || !is_smooth(rest, target))
            continue;
        auto const div = divisor_of_phi(C, phi, k, rng);
        if (!div)
            continue;
        bool ok = true, seen = false;
        std::vector<DescentChild> children;
        for (auto const & [P, e] : *div) {
            if (P == Q) {
                seen = e == 1;
                ok = ok && seen;
                continue;
            }
            if (P.degree() > target) {
                ok = false;
                break;
            }
            auto const idx = fb.index_of(P);
            if (P.degree() <= fb.bound() && !idx) {
                ok = false;
                break;
            }
            children.push_back({P, -e, idx});
        }
        if (!ok || !seen)
            continue;
        node.witness = phi;
        node.children = std::move(children);
        if (!verify_node(C, node, rng))
            fail(ErrorKind::integrity, "descent witness failed to re-verify");
        return node;
    }
    fail(ErrorKind::budget, "lattice of a place of degree " + std::to_string(k) + " exhausted up to coefficient degree "
                                + std::to_string(max_degree) + " after " + std::to_string(node.trials)
                                + " candidates; try a larger lattice degree");
}

DescentNode final_descent_step(CurveModel const & C, Place const & Q, FactorBase const & fb, Rng & rng,
                               LatticeOptions const & opt)
{
    return descent_step(C, Q, fb.bound(), fb, rng, opt);
}

bool verify_node(CurveModel const & C, DescentNode const & node, Rng & rng)
{
    if (!node.witness)
        return node.children.empty();
    auto const & phi = *node.witness;
    if (phi.b.is_zero() || !gcd(phi.a, phi.b).is_one())
        return false;
    std::optional<PlaceTerms> div;
    try {
        div = divisor_of_phi(C, phi, node.Q.degree(), rng);
    } catch (Error const &) {
        return false;
    }
    if (!div)
        return false;
    std::map<Place, long> expected{{node.Q, 1}};
    for (auto const & ch : node.children) {
        if (ch.coefficient == 0 || ch.place.degree() >= node.Q.degree() || expected.count(ch.place))
            return false;
        expected[ch.place] = -ch.coefficient;
    }
    std::map<Place, long> actual(div->begin(), div->end());
    return actual == expected;
}

// ---------------------------------------------------------------- dlog

mpz_class order_from_coordinates(std::vector<mpz_class> const & coords, std::vector<mpz_class> const & factors)
{
    mpz_class ord = 1;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        mpz_class g, o;
        mpz_gcd(g.get_mpz_t(), coords[i].get_mpz_t(), factors[i].get_mpz_t());
        o = factors[i] / g;
        mpz_lcm(ord.get_mpz_t(), ord.get_mpz_t(), o.get_mpz_t());
    }
    return ord;
}

namespace {

class Expander {
public:
    Expander(CurveModel const & C, FactorBase const & fb, DlogOptions const & opt, DescentTree & tree, Rng & rng)
        : C_(C), fb_(fb), opt_(opt), tree_(tree), rng_(rng)
    {
    }

    // factor-base exponent vector of [Q]
    std::vector<mpz_class> const & vector_of(Place const & Q, int level)
    {
        if (auto it = memo_.find(Q); it != memo_.end())
            return it->second;
        std::vector<mpz_class> v(static_cast<std::size_t>(fb_.size()));
        if (auto idx = fb_.index_of(Q)) {
            v[static_cast<std::size_t>(*idx)] = 1;
            return memo_.emplace(Q, std::move(v)).first->second;
        }
        if (Q.degree() <= fb_.bound())
            fail(ErrorKind::integrity, "place of degree <= B outside the factor base");
        if (tree_.size() >= opt_.max_nodes)
            fail(ErrorKind::budget, "descent tree reached " + std::to_string(tree_.size()) + " nodes");
        auto const target = opt_.schedule.target_for(Q.degree());
        if (!target)
            fail(ErrorKind::integrity, "no descent target below the place degree");
        DescentNode node = *target == fb_.bound() ? final_descent_step(C_, Q, fb_, rng_, opt_.lattice)
                                                  : descent_step(C_, Q, *target, fb_, rng_, opt_.lattice);
        node.level = level;
        auto const children = node.children;
        tree_.emplace(Q, std::move(node));
        for (auto const & ch : children) {
            auto const & w = vector_of(ch.place, level + 1);
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] += ch.coefficient * w[i];
        }
        return memo_.emplace(Q, std::move(v)).first->second;
    }

private:
    CurveModel const & C_;
    FactorBase const & fb_;
    DlogOptions const & opt_;
    DescentTree & tree_;
    Rng & rng_;
    std::map<Place, std::vector<mpz_class>> memo_;
};

std::vector<mpz_class> class_vector(HMResult const & hm, int t,
                                    std::function<std::vector<mpz_class> const &(Place const &)> const & vec)
{
    std::vector<mpz_class> v(static_cast<std::size_t>(t));
    for (auto const & [P, c] : hm.places) {
        auto const & w = vec(P);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] += c * w[i];
    }
    for (auto const & [i, m] : hm.randomizer)
        v[static_cast<std::size_t>(i)] -= m;
    return v;
}

void check_precomputation(Precomputation const & pre)
{
    if (static_cast<int>(pre.snf.T.size()) != pre.fb.size())
        fail(ErrorKind::usage, "precomputation does not match the factor base");
}

mpz_class solve_and_check(Jacobian const & J, Precomputation const & pre, Ideal const & D1, Ideal const & D2,
                          std::vector<mpz_class> const & alpha, std::vector<mpz_class> const & beta)
{
    auto const x = solve_cyclic_dlog(alpha, beta, pre.snf.factors);
    if (!x)
        fail(ErrorKind::integrity, "D2 does not lie in the subgroup generated by D1");
    if (!(J.scalar_mul(D1, *x) == D2))
        fail(ErrorKind::integrity, "recovered logarithm fails x D1 = D2");
    return *x;
}

}  // namespace

DlogResult discrete_log(Jacobian const & J, Precomputation const & pre, Ideal const & D1, Ideal const & D2,
                        DlogOptions const & opt, Rng & rng)
{
    check_precomputation(pre);
    require(!opt.schedule.bounds.empty() && opt.schedule.last() == pre.fb.bound(), ErrorKind::usage,
            "descent schedule must end at the factor-base bound");
    CurveModel const & C = J.curve();
    ClassCache classes(J, pre.fb);
    DlogResult r;
    Expander ex(C, pre.fb, opt, r.tree, rng);
    auto vec = [&](Place const & P) -> std::vector<mpz_class> const & { return ex.vector_of(P, 1); };
    int const t = pre.fb.size();
    for (auto * sc : {&r.d1, &r.d2}) {
        sc->D = sc == &r.d1 ? D1 : D2;
        sc->hm = hm_smooth(J, sc->D, opt.schedule.first(), pre.fb, classes, rng, opt.hm_budget);
        sc->exponents = class_vector(sc->hm, t, vec);
        sc->coordinates = group_coordinates(pre.snf, sc->exponents);
    }
    r.order = order_from_coordinates(r.d1.coordinates, pre.snf.factors);
    r.x = solve_and_check(J, pre, D1, D2, r.d1.coordinates, r.d2.coordinates);
    return r;
}

// ---------------------------------------------------------------- transcript

namespace {

json strings(std::vector<mpz_class> const & v)
{
    json a = json::array();
    for (auto const & x : v)
        a.push_back(x.get_str());
    return a;
}

std::vector<mpz_class> from_strings(json const & j)
{
    std::vector<mpz_class> v;
    for (auto const & s : j)
        v.emplace_back(s.get<std::string>());
    return v;
}

json smoothing_to_json(SmoothedClass const & sc)
{
    json places = json::array(), rand = json::array();
    for (auto const & [P, c] : sc.hm.places)
        places.push_back({place_to_json(P), c});
    for (auto const & [i, m] : sc.hm.randomizer)
        rand.push_back({i, m});
    return {{"class", ideal_to_json(sc.D)}, {"places", places},          {"randomizer", rand},
            {"trials", sc.hm.trials},       {"exponents", strings(sc.exponents)}, {"coordinates", strings(sc.coordinates)}};
}

}  // namespace

json transcript_to_json(DlogResult const & r, DlogOptions const & opt)
{
    json nodes = json::array();
    for (auto const & [Q, n] : r.tree) {
        json children = json::array();
        for (auto const & ch : n.children)
            children.push_back({place_to_json(ch.place), ch.coefficient});
        nodes.push_back({{"place", place_to_json(Q)},
                         {"level", n.level},
                         {"witness", {{"a", poly_to_json(n.witness->a)}, {"b", poly_to_json(n.witness->b)}}},
                         {"children", children},
                         {"trials", n.trials}});
    }
    return {{"schedule", schedule_to_json(opt.schedule)},
            {"D1", smoothing_to_json(r.d1)},
            {"D2", smoothing_to_json(r.d2)},
            {"nodes", nodes},
            {"x", r.x.get_str()},
            {"order", r.order.get_str()}};
}

void verify_transcript(Jacobian const & J, Precomputation const & pre, json const & tr, Rng & rng)
{
    check_precomputation(pre);
    CurveModel const & C = J.curve();
    FieldPtr const & f = C.field();
    FactorBase const & fb = pre.fb;
    int const t = fb.size();
    auto bad = [](std::string const & what) { fail(ErrorKind::integrity, "transcript: " + what); };
    try {
        // witnesses
        DescentTree tree;
        for (auto const & jn : tr.at("nodes")) {
            DescentNode n;
            n.Q = place_from_json(f, jn.at("place"));
            n.level = jn.at("level").get<int>();
            n.witness = FunctionPhi{poly_from_json(f, jn.at("witness").at("a")), poly_from_json(f, jn.at("witness").at("b"))};
            for (auto const & jc : jn.at("children")) {
                Place const P = place_from_json(f, jc.at(0));
                n.children.push_back({P, jc.at(1).get<long>(), fb.index_of(P)});
            }
            if (n.Q.infinite || fb.contains(n.Q) || tree.count(n.Q))
                bad("node at " + n.Q.to_string() + " is redundant");
            if (!verify_node(C, n, rng))
                bad("witness of " + n.Q.to_string() + " does not reproduce its children");
            tree.emplace(n.Q, std::move(n));
        }
        // bookkeeping; children have smaller degree, so recursion terminates
        std::map<Place, std::vector<mpz_class>> memo;
        std::function<std::vector<mpz_class> const &(Place const &)> vec = [&](Place const & Q)
            -> std::vector<mpz_class> const & {
            if (auto it = memo.find(Q); it != memo.end())
                return it->second;
            std::vector<mpz_class> v(static_cast<std::size_t>(t));
            if (auto idx = fb.index_of(Q)) {
                v[static_cast<std::size_t>(*idx)] = 1;
            } else {
                auto const it = tree.find(Q);
                if (it == tree.end())
                    bad("place " + Q.to_string() + " is neither in the factor base nor expanded");
                for (auto const & ch : it->second.children) {
                    auto const & w = vec(ch.place);
                    for (std::size_t i = 0; i < v.size(); ++i)
                        v[i] += ch.coefficient * w[i];
                }
            }
            return memo.emplace(Q, std::move(v)).first->second;
        };
        ClassCache classes(J, fb);
        std::vector<Ideal> D;
        std::vector<std::vector<mpz_class>> coords;
        for (char const * name : {"D1", "D2"}) {
            auto const & js = tr.at(name);
            Ideal const cls = ideal_from_json(J, js.at("class"));
            HMResult hm;
            Divisor smooth;
            for (auto const & jp : js.at("places")) {
                Place const P = place_from_json(f, jp.at(0));
                long const c = jp.at(1).get<long>();
                if (P.infinite || !is_unramified_place(C, P))
                    bad(std::string(name) + " smoothing uses an invalid place");
                hm.places.emplace_back(P, c);
                smooth.add(P, c);
            }
            for (auto const & jr : js.at("randomizer")) {
                int const i = jr.at(0).get<int>();
                if (i < 0 || i >= t)
                    bad("randomizer index out of range");
                hm.randomizer.emplace_back(i, jr.at(1).get<long>());
            }
            Ideal const rclass = randomizer_class(J, hm.randomizer, classes);
            if (!(J.subtract(J.class_of(smooth), rclass) == cls))
                bad(std::string(name) + " smoothing does not reproduce the class");
            auto const v = class_vector(hm, t, vec);
            if (v != from_strings(js.at("exponents")))
                bad(std::string(name) + " exponent vector differs from the expanded tree");
            auto const c = group_coordinates(pre.snf, v);
            if (c != from_strings(js.at("coordinates")))
                bad(std::string(name) + " coordinates differ");
            D.push_back(cls);
            coords.push_back(c);
        }
        mpz_class const x = solve_and_check(J, pre, D[0], D[1], coords[0], coords[1]);
        if (x != mpz_class(tr.at("x").get<std::string>()))
            bad("recorded logarithm differs from the recomputed one");
        if (order_from_coordinates(coords[0], pre.snf.factors) != mpz_class(tr.at("order").get<std::string>()))
            bad("recorded order differs");
    } catch (json::exception const & e) {
        bad(std::string("malformed: ") + e.what());
    } catch (std::invalid_argument const &) {
        bad("malformed number");
    }
}

}  // namespace cabdl
