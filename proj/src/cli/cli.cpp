#include "cabdl/cli/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cabdl/algebra/factor.hpp"
#include "cabdl/curve/curve_io.hpp"
#include "cabdl/descent/descent.hpp"
#include "cabdl/relations/index_calculus.hpp"

namespace cabdl {

namespace {

struct Common {
    std::string curve;
    std::uint64_t seed = 1;
    std::string out = "-";
    std::uint64_t ceiling = default_point_ceiling;
    bool timings = false;
};

struct PlanFlags {
    std::optional<int> B, m;
    std::optional<long> relations;
    std::optional<double> rho, sigma;

    ParameterOverrides overrides() const { return {B, m, relations, rho, sigma}; }
};

void add_common(CLI::App & app, Common & c, bool needs_curve = true)
{
    auto * opt = app.add_option("--curve", c.curve, "curve file (JSON)");
    if (needs_curve)
        opt->required();
    app.add_option("--seed", c.seed, "random seed");
    app.add_option("--out", c.out, "output path, - for standard output");
    app.add_option("--ceiling", c.ceiling, "largest field size q^i scanned when counting points");
    app.add_flag("--timings", c.timings, "include wall-clock timings in the output");
}

void add_plan(CLI::App & app, PlanFlags & p)
{
    app.add_option("--B", p.B, "factor-base degree bound")->check(CLI::PositiveNumber);
    app.add_option("--m", p.m, "degree bound of a and b in a + bY")->check(CLI::PositiveNumber);
    app.add_option("--relations", p.relations, "number of relations s")->check(CLI::PositiveNumber);
    app.add_option("--rho", p.rho, "factor-base constant")->check(CLI::PositiveNumber);
    app.add_option("--sigma", p.sigma, "sieving-space constant")->check(CLI::PositiveNumber);
}

void emit(Common const & c, json const & j)
{
    std::string const text = j.dump(2) + "\n";
    if (c.out == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream os(c.out, std::ios::binary);
    if (!os || !(os << text))
        fail(ErrorKind::usage, "cannot write " + c.out);
}

json read_json(std::string const & path, char const * what)
{
    std::ifstream is(path);
    if (!is)
        fail(ErrorKind::usage, std::string("cannot open ") + what + " " + path);
    try {
        return json::parse(is);
    } catch (json::exception const & e) {
        fail(ErrorKind::usage, std::string("malformed ") + what + ": " + e.what());
    }
}

void write_json(std::string const & path, json const & j)
{
    std::ofstream os(path, std::ios::binary);
    if (!os || !(os << j.dump() << "\n"))
        fail(ErrorKind::usage, "cannot write " + path);
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- oracle

void cmd_oracle(Common const & c)
{
    auto const C = load_curve(c.curve);
    auto const z = compute_zeta(C, c.ceiling);
    json L = json::array();
    for (auto const & a : z.L)
        L.push_back(a.get_str());
    emit(c, {{"curve", curve_to_json(C.spec())},
             {"q", C.q()},
             {"genus", C.genus()},
             {"counts", z.counts},
             {"L", L},
             {"h", z.h.get_str()}});
}

// ---------------------------------------------------------------- factor base

void cmd_factor_base(Common const & c, int B)
{
    auto const C = load_curve(c.curve);
    auto const fb = build_factor_base(C, B);
    json places = json::array(), ramified = json::array();
    for (auto const & P : fb.places())
        places.push_back(place_to_json(P));
    for (auto const & P : fb.ramified())
        ramified.push_back(place_to_json(P));
    emit(c, {{"B", B}, {"t", fb.size()}, {"places", places}, {"ramified", ramified}});
}

// ---------------------------------------------------------------- group structure

struct GroupFlags {
    std::string bounds = "exact";
    int lambda = 0;
    std::uint64_t budget = 0;
    int fabricate = 0;
    bool free_relations = false;
    std::string precomp;
};

void cmd_group_structure(Common const & c, PlanFlags const & p, GroupFlags const & g)
{
    auto const C = load_curve(c.curve);
    GroupOptions opt;
    opt.overrides = p.overrides();
    opt.ceiling = c.ceiling;
    opt.trial_budget = g.budget;
    opt.fabricated = g.fabricate;
    opt.free_relations = g.free_relations;
    opt.lambda = g.lambda;
    opt.bounds = g.bounds == "exact" ? BoundsMode::exact : BoundsMode::truncated;
    Rng rng(c.seed);
    auto const t0 = std::chrono::steady_clock::now();
    auto const G = compute_group_structure(C, opt, rng);
    json j = group_structure_to_json(G, c.timings);
    j["curve"] = curve_to_json(C.spec());
    if (c.timings)
        j["seconds"] = seconds_since(t0);
    if (!g.precomp.empty()) {
        json snf = snf_to_json(G.snf);
        snf.erase("U");
        write_json(g.precomp, {{"curve", curve_to_json(C.spec())}, {"B", G.fb.bound()}, {"t", G.fb.size()},
                               {"plan", plan_to_json(G.plan)}, {"snf", snf}});
        j["precomputation"] = g.precomp;
    }
    emit(c, j);
    if (!G.fb.ramified().empty())
        std::cerr << "warning: " << G.fb.ramified().size()
                  << " ramified places of degree <= B excluded from the factor base\n";
    std::cerr << "h = " << G.snf.h.get_str() << ", t = " << G.fb.size() << ", s = " << G.relations.relations.size()
              << "\n";
}

// ---------------------------------------------------------------- dlog

struct Loaded {
    Precomputation pre;
    ParameterPlan plan;
};

Loaded load_precomputation(CurveModel const & C, std::string const & path)
{
    if (path.empty())
        fail(ErrorKind::usage, "missing precomputation; run group-structure with --precomp first");
    json const j = read_json(path, "precomputation");
    Loaded L;
    try {
        if (j.at("curve") != curve_to_json(C.spec()))
            fail(ErrorKind::usage, "precomputation belongs to a different curve");
        int const B = j.at("B").get<int>();
        L.pre.fb = build_factor_base(C, B);
        if (j.at("t").get<int>() != L.pre.fb.size())
            fail(ErrorKind::integrity, "factor-base size differs from the precomputation");
        L.pre.snf = snf_from_json(j.at("snf"));
        ParameterOverrides o;
        o.B = B;
        auto const & jp = j.at("plan");
        o.m = jp.at("m").get<int>();
        o.rho = jp.at("rho").get<double>();
        o.sigma = jp.at("sigma").get<double>();
        L.plan = plan_parameters(C, o);
    } catch (json::exception const & e) {
        fail(ErrorKind::usage, std::string("malformed precomputation: ") + e.what());
    }
    if (static_cast<int>(L.pre.snf.T.size()) != L.pre.fb.size())
        fail(ErrorKind::integrity, "Smith form does not match the factor base");
    return L;
}

Ideal parse_class(Jacobian const & J, FactorBase const & fb, std::string const & spec, Rng rng)
{
    if (spec == "identity")
        return J.identity();
    if (spec == "random")
        return J.random_class(rng);
    if (spec.rfind("fb:", 0) == 0) {
        int i = -1;
        try {
            i = std::stoi(spec.substr(3));
        } catch (std::exception const &) {
        }
        if (i < 0 || i >= fb.size())
            fail(ErrorKind::usage, "factor-base index out of range in " + spec);
        return J.class_of(fb[i]);
    }
    if (spec.rfind("file:", 0) == 0)
        return J.reduce(ideal_from_json(J, read_json(spec.substr(5), "ideal")));
    fail(ErrorKind::usage, "class spec must be identity, random, fb:<index> or file:<path>, got " + spec);
}

std::vector<int> parse_bounds(std::string const & s)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (std::exception const &) {
            fail(ErrorKind::usage, "descent bounds must be comma-separated integers");
        }
    }
    return out;
}

struct DlogFlags {
    std::string precomp, d1 = "random", d2 = "identity", schedule, transcript;
    std::optional<std::string> x;
    double epsilon = 0.1, nu = 1.0;
    std::optional<std::uint64_t> budget;
    int lattice_degree = -1;
};

void cmd_dlog(Common const & c, DlogFlags const & f)
{
    auto const C = load_curve(c.curve);
    auto const L = load_precomputation(C, f.precomp);
    Jacobian const J(C);
    Rng const root(c.seed);
    Ideal const D1 = parse_class(J, L.pre.fb, f.d1, root.split(1));
    std::optional<mpz_class> x_in;
    if (f.x) {
        try {
            x_in = mpz_class(*f.x);
        } catch (std::invalid_argument const &) {
            fail(ErrorKind::usage, "--x must be an integer");
        }
    }
    Ideal const D2 = x_in ? J.scalar_mul(D1, *x_in) : parse_class(J, L.pre.fb, f.d2, root.split(2));
    DlogOptions opt;
    opt.schedule = f.schedule.empty() ? default_schedule(C, L.plan, f.epsilon, f.nu)
                                      : explicit_schedule(parse_bounds(f.schedule), L.pre.fb.bound());
    opt.lattice.max_degree = f.lattice_degree;
    if (f.budget) {
        opt.lattice.budget = *f.budget;
        opt.hm_budget = *f.budget;
    }
    Rng rng = root.split(3);
    auto const t0 = std::chrono::steady_clock::now();
    auto const r = discrete_log(J, L.pre, D1, D2, opt, rng);
    if (x_in) {
        mpz_class const want = ((*x_in % r.order) + r.order) % r.order;
        if (r.x % r.order != want)
            fail(ErrorKind::integrity, "self-check: recovered " + r.x.get_str() + " but expected " + want.get_str()
                                           + " modulo " + r.order.get_str());
    }
    json const tr = transcript_to_json(r, opt);
    json j = {{"x", r.x.get_str()},
              {"order", r.order.get_str()},
              {"verified", true},
              {"schedule", schedule_to_json(opt.schedule)},
              {"nodes", r.tree.size()},
              {"smoothing_trials", {r.d1.hm.trials, r.d2.hm.trials}},
              {"D1", ideal_to_json(D1)},
              {"D2", ideal_to_json(D2)}};
    if (x_in)
        j["self_check"] = x_in->get_str();
    if (f.transcript.empty()) {
        j["transcript"] = tr;
    } else {
        write_json(f.transcript, tr);
        j["transcript"] = f.transcript;
    }
    if (c.timings)
        j["seconds"] = seconds_since(t0);
    emit(c, j);
    std::cerr << "x = " << r.x.get_str() << " (order " << r.order.get_str() << ")\n";
}

void cmd_verify_transcript(Common const & c, std::string const & precomp, std::string const & transcript)
{
    auto const C = load_curve(c.curve);
    auto const L = load_precomputation(C, precomp);
    Jacobian const J(C);
    json const tr = read_json(transcript, "transcript");
    Rng rng(c.seed);
    verify_transcript(J, L.pre, tr, rng);
    emit(c, {{"verified", true}, {"x", tr.at("x")}, {"nodes", tr.at("nodes").size()}});
}

// ---------------------------------------------------------------- smoothness

struct BenchFlags {
    int m_min = 1, m_max = 6, B_min = 2, B_max = 5;
    std::uint64_t trials = 10000;
};

void cmd_bench_smoothness(Common const & c, BenchFlags const & b)
{
    auto const C = load_curve(c.curve);
    if (b.m_min < 1 || b.m_max < b.m_min || b.B_min < 1 || b.B_max < b.B_min || b.trials == 0)
        fail(ErrorKind::usage, "empty or invalid smoothness grid");
    FieldPtr const & F = C.field();
    std::uint64_t const q = C.q();
    Rng const root(c.seed);
    json cells = json::array();
    for (int m = b.m_min; m <= b.m_max; ++m) {
        PhiSampler sampler(F, m);
        for (int B = b.B_min; B <= b.B_max; ++B) {
            Rng rng = root.split(static_cast<std::uint64_t>(m) * 1000 + static_cast<std::uint64_t>(B));
            int const nu = C.n() * m + C.d();
            std::uint64_t phi_smooth = 0, poly_smooth = 0;
            for (std::uint64_t k = 0; k < b.trials; ++k) {
                auto const phi = sampler.draw(rng);
                Poly const N = norm_of_phi(C, phi);
                if (is_smooth(N, B))
                    ++phi_smooth;
                // random monic polynomial of degree nu
                std::vector<Elem> coeffs(static_cast<std::size_t>(nu) + 1);
                for (auto & e : coeffs)
                    e = F->random(rng);
                coeffs.back() = 1;
                if (is_smooth(Poly(F, coeffs), B))
                    ++poly_smooth;
            }
            double const u = static_cast<double>(nu) / B;
            double const trials = static_cast<double>(b.trials);
            cells.push_back({{"m", m},
                             {"B", B},
                             {"nu", nu},
                             {"mu", B},
                             {"u", u},
                             {"trials", b.trials},
                             {"phi_smooth", phi_smooth},
                             {"phi_probability", phi_smooth / trials},
                             {"poly_smooth", poly_smooth},
                             {"poly_probability", poly_smooth / trials},
                             {"prediction", std::exp(-u * std::log(u))},
                             {"exact_polynomial", smooth_polynomial_probability(q, nu, B)}});
        }
    }
    emit(c, {{"curve", curve_to_json(C.spec())}, {"cells", cells}});
}

}  // namespace

int run_cli(int argc, char ** argv)
{
    CLI::App app{"Index calculus in Jacobians of C_ab curves"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    Common common;
    PlanFlags plan;

    auto * oracle = app.add_subcommand("oracle", "exact zeta data by point counting");
    add_common(*oracle, common);

    int fb_bound = 1;
    auto * fbc = app.add_subcommand("factor-base", "list the factor base");
    add_common(*fbc, common);
    fbc->add_option("--B", fb_bound, "degree bound")->required()->check(CLI::PositiveNumber);

    GroupFlags gflags;
    auto * grp = app.add_subcommand("group-structure", "class group structure by index calculus");
    add_common(*grp, common);
    add_plan(*grp, plan);
    grp->add_option("--bounds", gflags.bounds, "class number bounds: exact or truncated")
        ->check(CLI::IsMember({"exact", "truncated"}));
    grp->add_option("--lambda", gflags.lambda, "point counts used by truncated bounds");
    grp->add_option("--budget", gflags.budget, "relation trial budget, 0 for none");
    grp->add_option("--fabricate", gflags.fabricate, "append unit relations for the first k places");
    grp->add_flag("--free-relations", gflags.free_relations, "append div(u) for every split u of degree <= B");
    grp->add_option("--precomp", gflags.precomp, "write the precomputation for dlog here");

    DlogFlags dflags;
    auto * dl = app.add_subcommand("dlog", "discrete logarithm by descent");
    add_common(*dl, common);
    dl->add_option("--precomp", dflags.precomp, "precomputation written by group-structure");
    dl->add_option("--D1", dflags.d1, "base class: identity, random, fb:<i> or file:<path>");
    dl->add_option("--D2", dflags.d2, "target class, same forms");
    dl->add_option("--x", dflags.x, "self-check: set D2 = x D1 and compare");
    dl->add_option("--schedule", dflags.schedule, "explicit descent bounds, e.g. 5,4");
    dl->add_option("--epsilon", dflags.epsilon, "descent decrement");
    dl->add_option("--nu", dflags.nu, "time exponent");
    dl->add_option("--budget", dflags.budget, "trial budget per smoothing and per lattice search");
    dl->add_option("--lattice-degree", dflags.lattice_degree, "largest shell of lattice coefficients");
    dl->add_option("--transcript", dflags.transcript, "write the descent transcript here");

    std::string vt_precomp, vt_transcript;
    auto * vt = app.add_subcommand("verify-transcript", "replay a descent transcript");
    add_common(*vt, common);
    vt->add_option("--precomp", vt_precomp, "precomputation")->required();
    vt->add_option("--transcript", vt_transcript, "transcript")->required();

    BenchFlags bflags;
    auto * bench = app.add_subcommand("bench-smoothness", "empirical smoothness probabilities");
    add_common(*bench, common);
    bench->add_option("--trials", bflags.trials, "trials per cell");
    bench->add_option("--m-min", bflags.m_min);
    bench->add_option("--m-max", bflags.m_max);
    bench->add_option("--B-min", bflags.B_min);
    bench->add_option("--B-max", bflags.B_max);

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const & e) {
        int const rc = app.exit(e);
        return rc == 0 ? 0 : exit_code(ErrorKind::usage);
    }

    try {
        if (*oracle)
            cmd_oracle(common);
        else if (*fbc)
            cmd_factor_base(common, fb_bound);
        else if (*grp)
            cmd_group_structure(common, plan, gflags);
        else if (*dl)
            cmd_dlog(common, dflags);
        else if (*vt)
            cmd_verify_transcript(common, vt_precomp, vt_transcript);
        else if (*bench)
            cmd_bench_smoothness(common, bflags);
    } catch (Error const & e) {
        std::cerr << json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump() << "\n";
        return exit_code(e.kind());
    } catch (std::exception const & e) {
        std::cerr << json{{"error", "integrity"}, {"message", e.what()}}.dump() << "\n";
        return exit_code(ErrorKind::integrity);
    }
    return 0;
}

}  // namespace cabdl
