#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cabdl/curve/place.hpp"

namespace cabdl {

// Element of A = F_q[X][Y]/(curve) in the basis 1, Y, ..., Y^(n-1).
using Row = std::vector<Poly>;

// Nonzero integral ideal of A as an F_q[X]-module in lower triangular
// Hermite form: row i has support in columns 0..i, monic diagonal, and
// entry (i, j) reduced modulo the diagonal entry (j, j) for i > j.
class Ideal {
public:
    Ideal() = default;
    explicit Ideal(std::vector<Row> rows) : rows_(std::move(rows)) {}

    int n() const noexcept { return static_cast<int>(rows_.size()); }
    Poly const & operator()(int i, int j) const
    {
        return rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    std::vector<Row> const & rows() const noexcept { return rows_; }

    // deg_X of the norm; equals the degree of the associated divisor
    int degree() const;
    Poly norm() const;
    bool is_unit() const;

    // compact textual key, equal iff the ideals are equal
    std::string key() const;

    friend bool operator==(Ideal const &, Ideal const &) = default;
    friend std::strong_ordering operator<=>(Ideal const & a, Ideal const & b);

private:
    std::vector<Row> rows_;
};

}  // namespace cabdl
