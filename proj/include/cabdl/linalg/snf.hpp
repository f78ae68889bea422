#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

#include "cabdl/linalg/matrix.hpp"

namespace cabdl {

using IntMatrix = std::vector<std::vector<mpz_class>>;

IntMatrix to_dense(RelationMatrix const & R);
IntMatrix identity_matrix(int n);
IntMatrix multiply(IntMatrix const & a, IntMatrix const & b);

// Rank over Q: maximum of the ranks modulo a few primes; an exact
// fraction-free elimination settles disagreement and rank deficiency.
int integer_rank(RelationMatrix const & R, std::uint64_t seed = 0);
// fraction-free (Bareiss) elimination
int bareiss_rank(IntMatrix a);
mpz_class bareiss_determinant(IntMatrix a);

struct SNFResult {
    std::vector<mpz_class> factors;   // h_1 | h_2 | ... | h_r, all > 1
    mpz_class h;                      // product of the factors
    int rank = 0;
    IntMatrix T;                      // t x t
    IntMatrix Tinv;
    IntMatrix U;                      // s x s
    int r() const noexcept { return static_cast<int>(factors.size()); }
    // diagonal of S: h_r, ..., h_1, 1, ..., 1
    std::vector<mpz_class> diagonal() const;
};

// Requires full row rank. T R U = (S | 0) is checked before returning;
// integrity error on mismatch, rank error on rank deficiency.
SNFResult smith_normal_form(RelationMatrix const & R);
bool verify_snf(RelationMatrix const & R, SNFResult const & snf);

using BigColumn = std::vector<std::pair<int, mpz_class>>;

// D_i = sum_j P_j (T^-1)_{j, r-i}, a divisor class of order h_i (i = 1..r)
BigColumn generator(SNFResult const & snf, int i);

// (T v)_i reduced modulo the matching factor, listed in the order h_1..h_r.
std::vector<mpz_class> group_coordinates(SNFResult const & snf, std::vector<mpz_class> const & v);
std::vector<mpz_class> group_coordinates(SNFResult const & snf, SparseColumn const & v);

// Least x >= 0 with x alpha_i = beta_i mod h_i for all i.
std::optional<mpz_class> solve_cyclic_dlog(std::vector<mpz_class> const & alpha, std::vector<mpz_class> const & beta,
                                           std::vector<mpz_class> const & moduli);

nlohmann::json snf_to_json(SNFResult const & snf);
// U is optional; T and T^-1 are required.
SNFResult snf_from_json(nlohmann::json const & j);

}  // namespace cabdl
