#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "cabdl/curve/factor_base.hpp"

namespace cabdl {

using json = nlohmann::json;

// Field descriptor {"p", "k", "field_modulus"}.
FieldPtr field_from_json(json const & j);
json field_to_json(FiniteField const & F);

// Curve file {"p", "k", "field_modulus", "n", "d", "monomials": [[i, j, c], ...]}.
// c is an integer residue or, for k > 1, a coefficient vector over F_p.
CurveSpec curve_spec_from_json(json const & j);
json curve_to_json(CurveSpec const & spec);
CurveModel load_curve(std::string const & path);

// little-endian coefficient arrays of encoded residues
json poly_to_json(Poly const & p);
Poly poly_from_json(FieldPtr const & f, json const & j);

json place_to_json(Place const & p);
Place place_from_json(FieldPtr const & f, json const & j);

// JSON lines {"u": [...], "v": [...], "deg": w}
void write_factor_base(std::ostream & os, FactorBase const & fb);
FactorBase read_factor_base(std::istream & is, CurveModel const & C, int bound);

}  // namespace cabdl
