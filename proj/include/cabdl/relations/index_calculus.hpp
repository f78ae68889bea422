#pragma once

#include "cabdl/curve/zeta.hpp"
#include "cabdl/linalg/snf.hpp"
#include "cabdl/relations/relations.hpp"

namespace cabdl {

struct GroupOptions {
    ParameterOverrides overrides;
    BoundsMode bounds = BoundsMode::exact;
    int lambda = 0;                       // truncated bounds only
    std::uint64_t ceiling = default_point_ceiling;
    std::uint64_t trial_budget = 0;       // 0 = unlimited
    int fabricated = 0;                   // unit columns e_1..e_k appended to R
    bool free_relations = false;          // append div(u) for split u
};

struct GroupStructure {
    ClassNumberBounds bounds;
    long double h_tilde = 0;
    std::optional<mpz_class> h_exact;     // exact mode only
    ParameterPlan plan;
    FactorBase fb;
    RelationSet relations;
    int free_count = 0;
    int rank = 0;
    SNFResult snf;
};

// Relation collection, rank check and Smith form. Rank error when rank R < t; order error when prod h_i leaves
// (h-, h+) or, with exact bounds, differs from h.
GroupStructure compute_group_structure(CurveModel const & C, GroupOptions const & opt, Rng & rng);

nlohmann::json group_structure_to_json(GroupStructure const & G, bool timings);

}  // namespace cabdl
