#pragma once

#include <optional>
#include <set>
#include <string>

#include "json.hpp"

#include "cabdl/curve/factor_base.hpp"
#include "cabdl/linalg/matrix.hpp"

namespace cabdl {

// phi = a(X) + b(X) Y with b != 0 and gcd(a, b) = 1.
struct FunctionPhi {
    Poly a;
    Poly b;

    friend bool operator==(FunctionPhi const &, FunctionPhi const &) = default;
    friend auto operator<=>(FunctionPhi const & x, FunctionPhi const & y)
    {
        if (auto c = x.a <=> y.a; c != 0)
            return c;
        return x.b <=> y.b;
    }
};

struct Relation {
    SparseColumn exps;       // factor-base index -> positive exponent
    long infinite = 0;       // -deg Norm(phi)
    FunctionPhi source;
};

// (-a)^n + sum_j F_j(X) (-a)^j b^(n-j), which is Res_Y(a + bY, curve).
Poly norm_of_phi(CurveModel const & C, FunctionPhi const & phi);

// Affine divisor of phi as (place, valuation) pairs in place order, or
// nullopt when the norm has a factor of degree > bound or some norm factor
// lies under a ramified place. Integrity error when the valuations do not
// add up to deg Norm.
std::optional<std::vector<std::pair<Place, long>>> divisor_of_phi(CurveModel const & C, FunctionPhi const & phi,
                                                                  int bound, Rng & rng);

// Affine divisor of phi over the factor base, or nullopt when the norm has
// a factor of degree > B or meets an excluded place. Integrity error when
// the valuations do not add up to deg Norm.
std::optional<Relation> decompose_divisor(CurveModel const & C, FactorBase const & fb, FunctionPhi const & phi,
                                          Rng & rng);

// Uniform coprime pairs of degree <= m. Pairs differing by a nonzero
// scalar have the same divisor and are emitted at most once.
class PhiSampler {
public:
    PhiSampler(FieldPtr field, int m);

    // next fresh pair; nullopt once every class has been emitted
    std::optional<FunctionPhi> next(Rng & rng);
    // one uniform draw without deduplication
    FunctionPhi draw(Rng & rng) const;
    std::size_t emitted() const noexcept { return seen_.size(); }
    // number of scalar classes of valid pairs when it is cheap to count
    std::optional<std::uint64_t> class_count() const;

private:
    Poly random_poly(Rng & rng) const;

    FieldPtr field_;
    int m_;
    std::set<FunctionPhi> seen_;
    mutable std::optional<std::optional<std::uint64_t>> count_;
};

FunctionPhi normalized(FunctionPhi const & phi);

struct ParameterOverrides {
    std::optional<int> B;
    std::optional<int> m;
    std::optional<long> s;
    std::optional<double> rho;
    std::optional<double> sigma;
};

struct ParameterPlan {
    double n0 = 0, d0 = 0, M = 0;
    double rho = 0, sigma = 0, tau = 0;
    int B = 1;
    int m = 1;
    long s = 0;                   // 0 until the factor base is known
    double u = 0;                 // (n m + d) / B
    double smooth_probability = 0;
    bool overridden = false;
};

ParameterPlan plan_parameters(CurveModel const & C, ParameterOverrides const & o = {});
// s = 2t unless overridden, then the search-space check: q^(2m) must be at
// least twice the expected number of trials s / p; usage error otherwise.
void plan_relation_count(ParameterPlan & plan, CurveModel const & C, int t, ParameterOverrides const & o = {});
nlohmann::json plan_to_json(ParameterPlan const & p);

// positive root of sigma^2 - (4/9) n0 sigma - (4/9) d0
double sigma_root(double n0, double d0);

// probability that a uniform monic polynomial of degree N is B-smooth
double smooth_polynomial_probability(std::uint64_t q, int N, int B);

struct CollectionStats {
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    double seconds = 0;
    double probability() const { return trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0; }
};

struct RelationSet {
    std::vector<Relation> relations;   // sorted by normalized source
    CollectionStats stats;
    RelationMatrix matrix() const;
};

// Draws until s relations are found. Budget error on exhaustion or when
// the trial budget (0 = unlimited) runs out.
RelationSet collect_relations(CurveModel const & C, FactorBase const & fb, int m, long s, Rng & rng,
                              std::uint64_t trial_budget = 0);

// div(u) for every monic irreducible u of degree <= B whose places are all
// in the factor base: u splits into n places of inertia degree 1.
std::vector<SparseColumn> free_relations(CurveModel const & C, FactorBase const & fb);

nlohmann::json relation_to_json(Relation const & r);
nlohmann::json stats_to_json(CollectionStats const & st, bool timings);

}  // namespace cabdl
