#pragma once

#include <utility>
#include <vector>

#include "cabdl/algebra/poly.hpp"
#include "cabdl/rng.hpp"

namespace cabdl {

struct Factorization {
    Elem leading = 0;
    // monic irreducible factors with multiplicities, sorted by the Poly order
    std::vector<std::pair<Poly, unsigned>> factors;

    Poly expand(FieldPtr const & f) const;
    int max_degree() const;
};

// Full factorization: squarefree decomposition, distinct-degree, then
// randomized equal-degree splitting. Throws domain error on zero input.
Factorization factor(Poly const & f, Rng & rng);
Factorization factor(Poly const & f);

// Monic squarefree factors with multiplicities (Yun, with p-th roots in
// characteristic p).
std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(Poly const & f);

// Splits a monic squarefree polynomial into products of irreducibles of
// equal degree: (product, degree) pairs.
std::vector<std::pair<Poly, unsigned>> distinct_degree_factor(Poly const & f);

// Splits a product of distinct monic irreducibles of degree d.
std::vector<Poly> equal_degree_split(Poly const & g, unsigned d, Rng & rng);

bool is_irreducible(Poly const & f);

// True when every irreducible factor of f has degree <= bound. Does not
// compute the full factorization.
bool is_smooth(Poly const & f, int bound);

// Distinct roots in the coefficient field, sorted.
std::vector<Elem> roots(Poly const & f, Rng & rng);
std::vector<Elem> roots(Poly const & f);

// All monic irreducibles of degree <= bound, ordered by degree and then by
// the Poly order.
std::vector<Poly> irreducibles_up_to(FieldPtr const & field, int bound);

// Smallest monic irreducible of the given degree under the Poly order.
Poly first_irreducible(FieldPtr const & field, int degree);

// Extension field F_q[X]/(u) for a monic irreducible u, and the maps
// between residues and field elements.
FieldPtr residue_field(Poly const & u);
Elem to_residue(FiniteField const & ext, Poly const & a, Poly const & u);
Poly from_residue(FieldPtr const & base, FiniteField const & ext, Elem e);

// Element of F_{q^k}: the k-th degree extension of field built on
// first_irreducible(field, k).
FieldPtr extension_of_degree(FieldPtr const & field, int k);

}  // namespace cabdl
