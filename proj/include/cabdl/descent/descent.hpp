#pragma once

#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "cabdl/jacobian/jacobian.hpp"
#include "cabdl/linalg/snf.hpp"
#include "cabdl/relations/relations.hpp"

namespace cabdl {

struct DescentSchedule {
    double epsilon = 0.1;
    double nu = 1.0;
    // delta_0 > delta_1 > ... > delta_K = B
    std::vector<int> bounds;
    std::vector<double> c;              // c_k, empty for explicit bounds
    bool explicit_bounds = false;
    bool rho_consistent = true;         // rho > (1/3 + eps) n0 / 2

    int first() const { return bounds.front(); }
    int last() const { return bounds.back(); }
    // largest bound strictly below deg, or nullopt when deg <= last()
    std::optional<int> target_for(int deg) const;
};

// Bounds from the c_k recursion, made integral, capped by max(g, B) at the
// top and ended at B.
DescentSchedule default_schedule(CurveModel const & C, ParameterPlan const & plan, double epsilon, double nu);
// Usage error unless strictly decreasing with last entry <= B; B is appended
// when the last entry is larger.
DescentSchedule explicit_schedule(std::vector<int> bounds, int B);

inline constexpr std::uint64_t unlimited = std::numeric_limits<std::uint64_t>::max();

using PlaceTerms = std::vector<std::pair<Place, long>>;

struct HMResult {
    PlaceTerms places;                  // [D] = sum c_Q [Q] - randomizer
    SparseColumn randomizer;            // factor-base exponents m_P
    std::uint64_t trials = 0;
};

// Memoizing source of factor-base place classes.
class ClassCache {
public:
    ClassCache(Jacobian const & J, FactorBase const & fb) : J_(J), fb_(fb) {}
    Ideal const & operator()(int i);

private:
    Jacobian const & J_;
    FactorBase const & fb_;
    std::map<int, Ideal> cache_;
};

// Budget error after budget trials.
HMResult hm_smooth(Jacobian const & J, Ideal const & D, int bound, FactorBase const & fb, ClassCache & classes,
                   Rng & rng, std::uint64_t budget = unlimited);

struct DescentChild {
    Place place;
    long coefficient = 0;
    std::optional<int> fb_index;        // set for factor-base places
};

struct DescentNode {
    Place Q;
    int level = 0;
    // phi with v_Q(phi) = 1; absent for factor-base leaves
    std::optional<FunctionPhi> witness;
    // [Q] = sum coefficient [P]
    std::vector<DescentChild> children;
    std::uint64_t trials = 0;

    bool is_leaf() const { return !witness.has_value(); }
};

// Expanded places keyed by place; children of a node are looked up here
// unless they lie in the factor base.
using DescentTree = std::map<Place, DescentNode>;

struct LatticeOptions {
    int max_degree = -1;                // largest shell of (lambda, mu); -1 = deg Q + 2
    std::uint64_t budget = unlimited;   // candidates; 0 fails at once
};

// Searches the lattice of Q for phi whose other places have degree <= target
// and, when of degree <= B, lie in the factor base. Returns a node whose
// children are unexpanded places. Factor-base places come back as leaves.
// Budget error when the shells or the budget run out.
DescentNode descent_step(CurveModel const & C, Place const & Q, int target, FactorBase const & fb, Rng & rng,
                         LatticeOptions const & opt = {});
DescentNode final_descent_step(CurveModel const & C, Place const & Q, FactorBase const & fb, Rng & rng,
                               LatticeOptions const & opt = {});

// Re-derives div(witness) and compares it with Q and the children.
bool verify_node(CurveModel const & C, DescentNode const & node, Rng & rng);

struct Precomputation {
    FactorBase fb;
    SNFResult snf;
};

struct DlogOptions {
    DescentSchedule schedule;
    LatticeOptions lattice;
    std::uint64_t hm_budget = unlimited;
    std::size_t max_nodes = 100000;
};

struct SmoothedClass {
    Ideal D;
    HMResult hm;
    std::vector<mpz_class> exponents;                  // factor-base vector of [D]
    std::vector<mpz_class> coordinates;
};

struct DlogResult {
    mpz_class x;
    mpz_class order;                    // order of D1
    SmoothedClass d1, d2;
    DescentTree tree;
};

// x with x D1 = D2, checked with the jacobian before returning. Integrity
// error when no x exists or the check fails.
DlogResult discrete_log(Jacobian const & J, Precomputation const & pre, Ideal const & D1, Ideal const & D2,
                        DlogOptions const & opt, Rng & rng);

// order of the class with the given coordinates
mpz_class order_from_coordinates(std::vector<mpz_class> const & coords, std::vector<mpz_class> const & factors);

nlohmann::json schedule_to_json(DescentSchedule const & s);
nlohmann::json transcript_to_json(DlogResult const & r, DlogOptions const & opt);

// Replays a transcript without searching: every witness, every smoothing
// step, the exponent bookkeeping, the coordinates and x D1 = D2. Integrity
// error on the first mismatch.
void verify_transcript(Jacobian const & J, Precomputation const & pre, nlohmann::json const & transcript, Rng & rng);

}  // namespace cabdl
