#include "cabdl/curve/factor_base.hpp"

#include <algorithm>

#include "cabdl/algebra/factor.hpp"

namespace cabdl {

FactorBase::FactorBase(int bound, std::vector<Place> places, std::vector<Place> ramified, FieldPtr const & f)
    : bound_(bound), places_(std::move(places)), ramified_(std::move(ramified)), infinite_(Place::at_infinity(f))
{
    std::sort(places_.begin(), places_.end());
    std::sort(ramified_.begin(), ramified_.end());
    for (std::size_t i = 0; i < places_.size(); ++i)
        index_.emplace(places_[i], static_cast<int>(i));
}

std::optional<int> FactorBase::index_of(Place const & p) const
{
    auto it = index_.find(p);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

bool FactorBase::is_excluded(Place const & p) const
{
    return std::binary_search(ramified_.begin(), ramified_.end(), p);
}

FactorBase build_factor_base(CurveModel const & C, int B)
{
    require(B >= 1, ErrorKind::usage, "factor base bound must be at least 1");
    Rng rng(0xfb);
    std::vector<Place> places, ramified;
    for (auto const & u : irreducibles_up_to(C.field(), B)) {
        auto over = places_over(C, u, rng);
        for (auto & v : over.simple)
            places.push_back({u, std::move(v), false});
        for (auto & v : over.multiple)
            ramified.push_back({u, std::move(v), false});
    }
    return FactorBase(B, std::move(places), std::move(ramified), C.field());
}

}  // namespace cabdl
