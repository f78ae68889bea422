#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "cabdl/curve/curve.hpp"

namespace cabdl {

inline constexpr std::uint64_t default_point_ceiling = 20'000'000;

// Number of projective points of the nonsingular model over F_{q^i}: the
// affine solutions plus the single rational point at infinity. Throws a
// budget error if q^i exceeds the ceiling.
std::uint64_t count_points(CurveModel const & C, int i, std::uint64_t ceiling = default_point_ceiling);

struct ZetaData {
    std::uint64_t q = 0;
    int genus = 0;
    std::vector<std::uint64_t> counts;   // N_1..N_g
    std::vector<mpz_class> L;            // a_0..a_2g
    mpz_class h;                         // L(1)
};

// L-polynomial from N_1..N_g via Newton's identities and the functional
// equation. Throws integrity error if h leaves the Hasse-Weil interval.
ZetaData zeta_from_counts(std::uint64_t q, int genus, std::vector<std::uint64_t> const & counts);

// N_1..N_k recomputed from the L-polynomial (k may exceed g).
std::vector<mpz_class> counts_from_l_polynomial(ZetaData const & z, int k);

ZetaData compute_zeta(CurveModel const & C, std::uint64_t ceiling = default_point_ceiling);

struct HasseWeil {
    long double lower, upper;
};
HasseWeil hasse_weil_interval(std::uint64_t q, int genus);

struct ClassNumberBounds {
    long double lower = 0;   // h-
    long double upper = 0;   // h+
    bool exact = false;
    bool within_factor_two = false;
};

enum class BoundsMode { exact, truncated };

// exact: (h, h). truncated(lambda): uses N_1..N_lambda only; the unknown
// L-coefficients are bounded by binom(2g, i) q^(i/2). When the resulting
// interval is narrower than a factor 2 the returned bounds are
// h~/sqrt2, sqrt2 h~ around its geometric mean h~; otherwise the rigorous
// interval is returned with within_factor_two = false.
ClassNumberBounds class_number_bounds(CurveModel const & C, BoundsMode mode, int lambda = 0,
                                      std::uint64_t ceiling = default_point_ceiling);
ClassNumberBounds class_number_bounds_from_counts(std::uint64_t q, int genus, std::vector<std::uint64_t> const & counts);

}  // namespace cabdl
