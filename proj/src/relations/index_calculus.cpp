#include "cabdl/relations/index_calculus.hpp"

#include <cmath>

#include "cabdl/curve/curve_io.hpp"

namespace cabdl {

GroupStructure compute_group_structure(CurveModel const & C, GroupOptions const & opt, Rng & rng)
{
    GroupStructure G;

    // step 1: class number bounds
    if (opt.bounds == BoundsMode::exact) {
        auto const z = compute_zeta(C, opt.ceiling);
        G.h_exact = z.h;
        G.h_tilde = z.h.get_d();
        G.bounds.lower = G.h_tilde / std::sqrt(2.0L);
        G.bounds.upper = G.h_tilde * std::sqrt(2.0L);
        G.bounds.within_factor_two = true;
    } else {
        G.bounds = class_number_bounds(C, BoundsMode::truncated, opt.lambda, opt.ceiling);
        G.h_tilde = std::sqrt(G.bounds.lower * G.bounds.upper);
    }

    // step 2: factor base
    G.plan = plan_parameters(C, opt.overrides);
    G.fb = build_factor_base(C, G.plan.B);
    int const t = G.fb.size();
    plan_relation_count(G.plan, C, t, opt.overrides);

    // step 3: relations
    G.relations = collect_relations(C, G.fb, G.plan.m, G.plan.s, rng, opt.trial_budget);
    RelationMatrix R = G.relations.matrix();
    R.t = t;
    if (opt.free_relations) {
        auto extra = free_relations(C, G.fb);
        G.free_count = static_cast<int>(extra.size());
        for (auto & col : extra)
            R.columns.push_back(std::move(col));
    }
    for (int k = 0; k < opt.fabricated && k < t; ++k)
        R.columns.push_back({{k, 1}});

    // step 4: rank
    G.rank = integer_rank(R, rng.seed());
    if (G.rank < t)
        fail(ErrorKind::rank, "rank of the relation matrix is " + std::to_string(G.rank) + " < t = " + std::to_string(t));

    // step 5: Smith normal form and the order check
    G.snf = smith_normal_form(R);
    long double const h = G.snf.h.get_d();
    if (!(h > G.bounds.lower && h < G.bounds.upper))
        fail(ErrorKind::order, "product of invariant factors " + G.snf.h.get_str() + " lies outside (h-, h+) = (" +
                                   std::to_string(static_cast<double>(G.bounds.lower)) + ", " +
                                   std::to_string(static_cast<double>(G.bounds.upper)) + ")");
    if (G.h_exact && G.snf.h != *G.h_exact)
        fail(ErrorKind::order, "product of invariant factors " + G.snf.h.get_str() + " differs from h = " +
                                   G.h_exact->get_str());
    return G;
}

nlohmann::json group_structure_to_json(GroupStructure const & G, bool timings)
{
    auto factors = nlohmann::json::array();
    for (auto const & f : G.snf.factors)
        factors.push_back(f.get_str());
    auto gens = nlohmann::json::array();
    for (int i = 1; i <= G.snf.r(); ++i) {
        auto g = nlohmann::json::array();
        for (auto const & [j, c] : generator(G.snf, i))
            g.push_back({place_to_json(G.fb[j]), c.get_str()});
        gens.push_back(g);
    }
    nlohmann::json j{{"h", G.snf.h.get_str()},
                     {"invariant_factors", factors},
                     {"generators", gens},
                     {"t", G.fb.size()},
                     {"s", G.relations.relations.size()},
                     {"free_relations", G.free_count},
                     {"ramified_excluded", G.fb.ramified().size()},
                     {"rank", G.rank},
                     {"bounds", {{"lower", static_cast<double>(G.bounds.lower)},
                                 {"upper", static_cast<double>(G.bounds.upper)},
                                 {"exact", G.h_exact.has_value()}}},
                     {"plan", plan_to_json(G.plan)},
                     {"statistics", stats_to_json(G.relations.stats, timings)}};
    if (G.h_exact)
        j["h_oracle"] = G.h_exact->get_str();
    return j;
}

}  // namespace cabdl
