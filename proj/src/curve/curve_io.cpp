#include "cabdl/curve/curve_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace cabdl {

namespace {

Elem coefficient_from_json(FiniteField const & F, json const & c)
{
    if (c.is_array()) {
        // coordinates over the prime field, low to high
        std::uint64_t r = 0, scale = 1;
        for (auto const & d : c) {
            r += F.from_int(d.get<std::int64_t>()) * scale;
            scale *= F.characteristic();
        }
        require(r < F.order(), ErrorKind::usage, "coefficient vector too long");
        return static_cast<Elem>(r);
    }
    return F.from_int(c.get<std::int64_t>());
}

json coefficient_to_json(FiniteField const & F, Elem c)
{
    if (F.is_prime_field())
        return c;
    json arr = json::array();
    for (unsigned i = 0; i < F.absolute_degree(); ++i) {
        arr.push_back(c % F.characteristic());
        c /= F.characteristic();
    }
    return arr;
}

}  // namespace

FieldPtr field_from_json(json const & j)
{
    try {
        auto const p = j.at("p").get<std::uint32_t>();
        int const k = j.value("k", 1);
        auto F = FiniteField::prime(p);
        if (k == 1)
            return F;
        require(k > 1, ErrorKind::usage, "field degree k must be positive");
        auto const & m = j.at("field_modulus");
        std::vector<Elem> mod;
        for (auto const & c : m)
            mod.push_back(F->from_int(c.get<std::int64_t>()));
        require(static_cast<int>(mod.size()) == k + 1, ErrorKind::usage, "field_modulus must have k + 1 coefficients");
        return FiniteField::extension(F, mod);
    } catch (json::exception const & e) {
        fail(ErrorKind::usage, std::string("bad field descriptor: ") + e.what());
    }
}

json field_to_json(FiniteField const & F)
{
    json j;
    j["p"] = F.characteristic();
    j["k"] = F.absolute_degree();
    if (!F.is_prime_field()) {
        require(F.base()->is_prime_field(), ErrorKind::usage, "only single extensions serialize");
        j["field_modulus"] = F.modulus();
    } else {
        j["field_modulus"] = json::array();
    }
    return j;
}

CurveSpec curve_spec_from_json(json const & j)
{
    try {
        CurveSpec s;
        s.field = field_from_json(j);
        s.n = j.at("n").get<int>();
        s.d = j.at("d").get<int>();
        for (auto const & m : j.at("monomials")) {
            require(m.is_array() && m.size() == 3, ErrorKind::usage, "monomial must be [i, j, c]");
            s.monomials.push_back({m[0].get<int>(), m[1].get<int>(), coefficient_from_json(*s.field, m[2])});
        }
        return s;
    } catch (json::exception const & e) {
        fail(ErrorKind::usage, std::string("bad curve description: ") + e.what());
    }
}

json curve_to_json(CurveSpec const & spec)
{
    json j = field_to_json(*spec.field);
    j["n"] = spec.n;
    j["d"] = spec.d;
    json mons = json::array();
    for (auto const & m : spec.monomials)
        mons.push_back({m.i, m.j, coefficient_to_json(*spec.field, m.c)});
    j["monomials"] = mons;
    return j;
}

CurveModel load_curve(std::string const & path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::usage, "cannot open curve file " + path);
    json j;
    try {
        in >> j;
    } catch (json::exception const & e) {
        fail(ErrorKind::usage, "curve file is not valid JSON: " + std::string(e.what()));
    }
    return validate_curve(curve_spec_from_json(j));
}

json poly_to_json(Poly const & p)
{
    return p.coeffs();
}

Poly poly_from_json(FieldPtr const & f, json const & j)
{
    std::vector<Elem> c;
    for (auto const & x : j)
        c.push_back(x.get<Elem>());
    return Poly(f, c);
}

json place_to_json(Place const & p)
{
    if (p.infinite)
        return json{{"infinite", true}};
    return json{{"u", poly_to_json(p.u)}, {"v", poly_to_json(p.v)}, {"deg", p.degree()}};
}

Place place_from_json(FieldPtr const & f, json const & j)
{
    if (j.value("infinite", false))
        return Place::at_infinity(f);
    return Place{poly_from_json(f, j.at("u")), poly_from_json(f, j.at("v")), false};
}

void write_factor_base(std::ostream & os, FactorBase const & fb)
{
    for (auto const & P : fb.places())
        os << place_to_json(P).dump() << '\n';
}

FactorBase read_factor_base(std::istream & is, CurveModel const & C, int bound)
{
    std::vector<Place> places;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        Place P = place_from_json(C.field(), json::parse(line));
        if (!is_unramified_place(C, P))
            fail(ErrorKind::integrity, "factor base entry is not an unramified place: " + P.to_string());
        places.push_back(std::move(P));
    }
    return FactorBase(bound, std::move(places), {}, C.field());
}

}  // namespace cabdl
