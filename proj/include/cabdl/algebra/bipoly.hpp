#pragma once

#include <vector>

#include "cabdl/algebra/poly.hpp"

namespace cabdl {

// Polynomial in Y with coefficients in F_q[X]; coeffs[j] multiplies Y^j.
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(FieldPtr f) : field_(std::move(f)) {}
    BiPoly(FieldPtr f, std::vector<Poly> coeffs);

    FieldPtr const & field() const noexcept { return field_; }
    int degree_y() const noexcept { return static_cast<int>(c_.size()) - 1; }
    int degree_x() const noexcept;
    bool is_zero() const noexcept { return c_.empty(); }
    Poly operator[](std::size_t j) const { return j < c_.size() ? c_[j] : Poly(field_); }
    std::vector<Poly> const & coeffs() const noexcept { return c_; }

    BiPoly derivative_y() const;
    BiPoly derivative_x() const;

    // G(X, v(X)) modulo m (no reduction when m is zero)
    Poly eval_y(Poly const & v, Poly const & m) const;
    Poly eval_y(Poly const & v) const { return eval_y(v, Poly(field_)); }
    // G(x, Y) for x in an extension field ext of the coefficient field
    // given by residues modulo u; u may be of degree 1.
    Poly specialize(FieldPtr const & ext, Poly const & u) const;
    // G(x, Y) for x in the coefficient field itself
    Poly specialize_at(Elem x) const;

    friend bool operator==(BiPoly const &, BiPoly const &) = default;

private:
    void trim();

    FieldPtr field_;
    std::vector<Poly> c_;
};

// Res_Y(f, g) with the Sylvester convention: the rows of f come first, so
// that Res_Y(f, g) = lc_Y(f)^deg_Y(g) * prod g(X, alpha) over the roots of f.
Poly resultant_y(BiPoly const & f, BiPoly const & g);
// Same determinant computed by fraction-free elimination over F_q[X].
Poly resultant_y_sylvester(BiPoly const & f, BiPoly const & g);
// Same determinant computed by evaluation at deg-bound + 1 points of F_q
// and interpolation. Requires q > bound; throws usage error otherwise.
Poly resultant_y_interpolated(BiPoly const & f, BiPoly const & g);

// Hensel lift of a simple root: returns v with G(X, v) = 0 mod u^e and
// v = v0 mod u. Throws RamifiedPlace if dG/dY(X, v0) vanishes mod u.
Poly lift_root(BiPoly const & G, Poly const & u, Poly const & v0, unsigned e);

}  // namespace cabdl
