#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cabdl/curve/place.hpp"

namespace cabdl {

class FactorBase {
public:
    FactorBase() = default;
    FactorBase(int bound, std::vector<Place> places, std::vector<Place> ramified, FieldPtr const & f);

    int bound() const noexcept { return bound_; }
    // t: number of affine members
    int size() const noexcept { return static_cast<int>(places_.size()); }
    Place const & operator[](int i) const { return places_[static_cast<std::size_t>(i)]; }
    std::vector<Place> const & places() const noexcept { return places_; }
    Place const & infinite() const noexcept { return infinite_; }
    // excluded ramified places of degree <= bound
    std::vector<Place> const & ramified() const noexcept { return ramified_; }

    std::optional<int> index_of(Place const & p) const;
    bool contains(Place const & p) const { return index_of(p).has_value(); }
    bool is_excluded(Place const & p) const;

private:
    int bound_ = 0;
    std::vector<Place> places_;
    std::vector<Place> ramified_;
    Place infinite_;
    std::map<Place, int> index_;
};

// All unramified inertia-degree-1 affine places of degree <= B, in the
// fixed place order, plus the infinite place.
FactorBase build_factor_base(CurveModel const & C, int B);

}  // namespace cabdl
