#include "cabdl/jacobian/ideal.hpp"

namespace cabdl {

int Ideal::degree() const
{
    int d = 0;
    for (int i = 0; i < n(); ++i)
        d += (*this)(i, i).degree();
    return d;
}

Poly Ideal::norm() const
{
    Poly p = Poly::one((*this)(0, 0).field());
    for (int i = 0; i < n(); ++i)
        p *= (*this)(i, i);
    return p;
}

bool Ideal::is_unit() const
{
    for (int i = 0; i < n(); ++i)
        if ((*this)(i, i).degree() != 0)
            return false;
    return true;
}

std::string Ideal::key() const
{
    std::string s;
    for (auto const & r : rows_) {
        for (auto const & p : r) {
            for (Elem c : p.coeffs()) {
                s += std::to_string(c);
                s += ',';
            }
            s += ';';
        }
        s += '|';
    }
    return s;
}

std::strong_ordering operator<=>(Ideal const & a, Ideal const & b)
{
    if (auto c = a.n() <=> b.n(); c != 0)
        return c;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j <= i; ++j)
            if (auto c = a(i, j) <=> b(i, j); c != 0)
                return c;
    return std::strong_ordering::equal;
}

}  // namespace cabdl
