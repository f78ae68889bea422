#include "cabdl/linalg/snf.hpp"

#include <algorithm>

#include "cabdl/error.hpp"
#include "cabdl/rng.hpp"

namespace cabdl {

namespace {

std::size_t ix(int i) { return static_cast<std::size_t>(i); }

int cmpabs(mpz_class const & a, mpz_class const & b)
{
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

int cmpabs(mpz_class const & a, unsigned long b)
{
    return mpz_cmpabs_ui(a.get_mpz_t(), b);
}

// nearest-integer quotient, keeps remainders small
mpz_class round_div(mpz_class const & a, mpz_class const & b)
{
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_class const twice = 2 * r;
    if (b > 0 ? twice > b : twice < b)
        q += 1;
    return q;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime64(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (n % p == 0)
            return n == p;
    std::uint64_t d = n - 1;
    int s = 0;
    while (!(d & 1)) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < s && composite; ++i) {
            x = mulmod(x, x, n);
            composite = x != n - 1;
        }
        if (composite)
            return false;
    }
    return true;
}

int rank_mod_p(RelationMatrix const & R, std::uint64_t p)
{
    std::vector<std::vector<std::uint64_t>> a(ix(R.s()), std::vector<std::uint64_t>(ix(R.t), 0));
    for (int c = 0; c < R.s(); ++c)
        for (auto const & [i, e] : R.columns[ix(c)]) {
            long const m = e % static_cast<long>(p);
            a[ix(c)][ix(i)] = static_cast<std::uint64_t>(m < 0 ? m + static_cast<long>(p) : m);
        }
    // rows of a are the columns of R
    int rank = 0;
    for (int col = 0; col < R.t && rank < R.s(); ++col) {
        int piv = -1;
        for (int r = rank; r < R.s(); ++r)
            if (a[ix(r)][ix(col)]) {
                piv = r;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(a[ix(piv)], a[ix(rank)]);
        std::uint64_t const inv = powmod(a[ix(rank)][ix(col)], p - 2, p);
        for (int r = rank + 1; r < R.s(); ++r) {
            std::uint64_t const f = mulmod(a[ix(r)][ix(col)], inv, p);
            if (!f)
                continue;
            for (int k = col; k < R.t; ++k)
                a[ix(r)][ix(k)] = (a[ix(r)][ix(k)] + p - mulmod(f, a[ix(rank)][ix(k)], p)) % p;
        }
        ++rank;
    }
    return rank;
}

}  // namespace

IntMatrix to_dense(RelationMatrix const & R)
{
    IntMatrix a(ix(R.t), std::vector<mpz_class>(ix(R.s()), 0));
    for (int c = 0; c < R.s(); ++c)
        for (auto const & [i, e] : R.columns[ix(c)]) {
            require(i >= 0 && i < R.t, ErrorKind::usage, "relation index outside the factor base");
            a[ix(i)][ix(c)] = e;
        }
    return a;
}

IntMatrix identity_matrix(int n)
{
    IntMatrix a(ix(n), std::vector<mpz_class>(ix(n), 0));
    for (int i = 0; i < n; ++i)
        a[ix(i)][ix(i)] = 1;
    return a;
}

IntMatrix multiply(IntMatrix const & a, IntMatrix const & b)
{
    std::size_t const n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntMatrix c(n, std::vector<mpz_class>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0)
                continue;
            for (std::size_t j = 0; j < m; ++j)
                if (b[l][j] != 0)
                    c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

int bareiss_rank(IntMatrix a)
{
    std::size_t const n = a.size(), m = n ? a[0].size() : 0;
    mpz_class prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < n; ++col) {
        std::size_t piv = rank;
        while (piv < n && a[piv][col] == 0)
            ++piv;
        if (piv == n)
            continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = rank + 1; r < n; ++r) {
            for (std::size_t k = col + 1; k < m; ++k) {
                a[r][k] = a[rank][col] * a[r][k] - a[r][col] * a[rank][k];
                mpz_divexact(a[r][k].get_mpz_t(), a[r][k].get_mpz_t(), prev.get_mpz_t());
            }
            a[r][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return static_cast<int>(rank);
}

mpz_class bareiss_determinant(IntMatrix a)
{
    std::size_t const n = a.size();
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k] == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            for (std::size_t c = k + 1; c < n; ++c) {
                a[r][c] = a[k][k] * a[r][c] - a[r][k] * a[k][c];
                mpz_divexact(a[r][c].get_mpz_t(), a[r][c].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

int integer_rank(RelationMatrix const & R, std::uint64_t seed)
{
    int const full = std::min(R.t, R.s());
    if (full == 0)
        return 0;
    Rng rng(seed ^ 0x5eedULL);
    int best = -1;
    bool agree = true;
    for (int trial = 0; trial < 3; ++trial) {
        std::uint64_t p;
        do {
            p = (1ULL << 61) + rng.below(1ULL << 60);
        } while (!is_prime64(p));
        int const r = rank_mod_p(R, p);
        if (best >= 0 && r != best)
            agree = false;
        best = std::max(best, r);
        if (best == full)
            return best;
    }
    if (!agree || best < full)
        return bareiss_rank(to_dense(R));
    return best;
}

std::vector<mpz_class> SNFResult::diagonal() const
{
    std::vector<mpz_class> d(factors.rbegin(), factors.rend());
    d.resize(T.size(), 1);
    return d;
}

SNFResult smith_normal_form(RelationMatrix const & R)
{
    int const t = R.t, s = R.s();
    IntMatrix A = to_dense(R);
    IntMatrix T = identity_matrix(t);
    IntMatrix Tinv = identity_matrix(t);
    IntMatrix U = identity_matrix(s);

    auto swap_rows = [&](int a, int b) {
        if (a == b)
            return;
        std::swap(A[ix(a)], A[ix(b)]);
        std::swap(T[ix(a)], T[ix(b)]);
        for (auto & row : Tinv)
            std::swap(row[ix(a)], row[ix(b)]);
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b)
            return;
        for (auto & row : A)
            std::swap(row[ix(a)], row[ix(b)]);
        for (auto & row : U)
            std::swap(row[ix(a)], row[ix(b)]);
    };
    // row_i -= q row_k, acting on columns >= from of A
    auto row_op = [&](int i, int k, mpz_class const & q, int from) {
        for (int c = from; c < s; ++c)
            if (A[ix(k)][ix(c)] != 0)
                A[ix(i)][ix(c)] -= q * A[ix(k)][ix(c)];
        for (int c = 0; c < t; ++c)
            if (T[ix(k)][ix(c)] != 0)
                T[ix(i)][ix(c)] -= q * T[ix(k)][ix(c)];
        for (int r = 0; r < t; ++r)
            if (Tinv[ix(r)][ix(i)] != 0)
                Tinv[ix(r)][ix(k)] += q * Tinv[ix(r)][ix(i)];
    };
    auto col_op = [&](int j, int k, mpz_class const & q) {
        for (int r = k; r < t; ++r)
            if (A[ix(r)][ix(k)] != 0)
                A[ix(r)][ix(j)] -= q * A[ix(r)][ix(k)];
        for (int r = 0; r < s; ++r)
            if (U[ix(r)][ix(k)] != 0)
                U[ix(r)][ix(j)] -= q * U[ix(r)][ix(k)];
    };

    int rank = 0;
    for (int k = 0; k < t && k < s; ++k) {
        // global pivot of least absolute value
        int pr = -1, pc = -1;
        for (int i = k; i < t; ++i)
            for (int j = k; j < s; ++j)
                if (A[ix(i)][ix(j)] != 0 &&
                    (pr < 0 || cmpabs(A[ix(i)][ix(j)], A[ix(pr)][ix(pc)]) < 0)) {
                    pr = i;
                    pc = j;
                    if (cmpabs(A[ix(i)][ix(j)], 1) == 0)
                        goto found;
                }
    found:
        if (pr < 0)
            break;
        swap_rows(k, pr);
        swap_cols(k, pc);
        for (;;) {
            bool clean = true;
            for (int i = k + 1; i < t; ++i)
                if (A[ix(i)][ix(k)] != 0) {
                    row_op(i, k, round_div(A[ix(i)][ix(k)], A[ix(k)][ix(k)]), k);
                    if (A[ix(i)][ix(k)] != 0)
                        clean = false;
                }
            for (int j = k + 1; j < s; ++j)
                if (A[ix(k)][ix(j)] != 0) {
                    col_op(j, k, round_div(A[ix(k)][ix(j)], A[ix(k)][ix(k)]));
                    if (A[ix(k)][ix(j)] != 0)
                        clean = false;
                }
            if (!clean) {
                // move the smallest leftover in row or column k to the pivot
                int bi = k, bj = k;
                for (int i = k + 1; i < t; ++i)
                    if (A[ix(i)][ix(k)] != 0 && cmpabs(A[ix(i)][ix(k)], A[ix(bi)][ix(bj)]) < 0) {
                        bi = i;
                        bj = k;
                    }
                for (int j = k + 1; j < s; ++j)
                    if (A[ix(k)][ix(j)] != 0 && cmpabs(A[ix(k)][ix(j)], A[ix(bi)][ix(bj)]) < 0) {
                        bi = k;
                        bj = j;
                    }
                swap_rows(k, bi);
                swap_cols(k, bj);
                continue;
            }
            // divisibility: fold a row with a non-multiple into row k
            int bad = -1;
            if (cmpabs(A[ix(k)][ix(k)], 1) != 0)
                for (int i = k + 1; i < t && bad < 0; ++i)
                    for (int j = k + 1; j < s; ++j)
                        if (!mpz_divisible_p(A[ix(i)][ix(j)].get_mpz_t(), A[ix(k)][ix(k)].get_mpz_t())) {
                            bad = i;
                            break;
                        }
            if (bad < 0)
                break;
            row_op(k, bad, mpz_class(-1), k);
        }
        if (A[ix(k)][ix(k)] < 0) {
            for (int c = k; c < s; ++c)
                A[ix(k)][ix(c)] = -A[ix(k)][ix(c)];
            for (auto & x : T[ix(k)])
                x = -x;
            for (auto & row : Tinv)
                row[ix(k)] = -row[ix(k)];
        }
        ++rank;
    }
    if (rank < t)
        fail(ErrorKind::rank, "relation matrix has rank " + std::to_string(rank) + " < t = " + std::to_string(t));

    SNFResult out;
    out.rank = rank;
    for (int k = 0; k < t; ++k)
        if (A[ix(k)][ix(k)] > 1)
            out.factors.push_back(A[ix(k)][ix(k)]);
    out.h = 1;
    for (auto const & f : out.factors)
        out.h *= f;
    // reverse the first t rows and columns so that S = diag(h_r, ..., h_1, 1, ..., 1)
    std::reverse(T.begin(), T.end());
    for (auto & row : Tinv)
        std::reverse(row.begin(), row.end());
    for (auto & row : U)
        std::reverse(row.begin(), row.begin() + t);
    out.T = std::move(T);
    out.Tinv = std::move(Tinv);
    out.U = std::move(U);
    if (!verify_snf(R, out))
        fail(ErrorKind::integrity, "Smith transforms failed verification");
    return out;
}

bool verify_snf(RelationMatrix const & R, SNFResult const & snf)
{
    int const t = R.t, s = R.s();
    if (static_cast<int>(snf.T.size()) != t || static_cast<int>(snf.U.size()) != s)
        return false;
    if (!snf.Tinv.empty() && multiply(snf.T, snf.Tinv) != identity_matrix(t))
        return false;
    for (std::size_t i = 1; i < snf.factors.size(); ++i)
        if (!mpz_divisible_p(snf.factors[i].get_mpz_t(), snf.factors[i - 1].get_mpz_t()))
            return false;
    // T R computed from the sparse columns
    IntMatrix TR(ix(t), std::vector<mpz_class>(ix(s), 0));
    for (int c = 0; c < s; ++c)
        for (auto const & [k, e] : R.columns[ix(c)])
            for (int i = 0; i < t; ++i)
                if (snf.T[ix(i)][ix(k)] != 0)
                    TR[ix(i)][ix(c)] += snf.T[ix(i)][ix(k)] * e;
    IntMatrix const P = multiply(TR, snf.U);
    auto const d = snf.diagonal();
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < s; ++j) {
            mpz_class const want = i == j ? d[ix(i)] : mpz_class(0);
            if (P[ix(i)][ix(j)] != want)
                return false;
        }
    return true;
}

BigColumn generator(SNFResult const & snf, int i)
{
    require(i >= 1 && i <= snf.r(), ErrorKind::usage, "generator index out of range");
    BigColumn g;
    auto const col = static_cast<std::size_t>(snf.r() - i);
    for (std::size_t j = 0; j < snf.Tinv.size(); ++j)
        if (snf.Tinv[j][col] != 0)
            g.emplace_back(static_cast<int>(j), snf.Tinv[j][col]);
    return g;
}

std::vector<mpz_class> group_coordinates(SNFResult const & snf, std::vector<mpz_class> const & v)
{
    require(v.size() == snf.T.size(), ErrorKind::usage, "exponent vector length differs from the factor base size");
    int const r = snf.r();
    std::vector<mpz_class> out(ix(r));
    for (int k = 0; k < r; ++k) {
        // row r-1-k of T carries h_{k+1}
        auto const & row = snf.T[ix(r - 1 - k)];
        mpz_class acc = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0)
                acc += row[i] * v[i];
        mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), snf.factors[ix(k)].get_mpz_t());
        out[ix(k)] = acc;
    }
    return out;
}

std::vector<mpz_class> group_coordinates(SNFResult const & snf, SparseColumn const & v)
{
    std::vector<mpz_class> dense(snf.T.size(), 0);
    for (auto const & [i, e] : v) {
        require(i >= 0 && ix(i) < dense.size(), ErrorKind::usage, "exponent index outside the factor base");
        dense[ix(i)] += e;
    }
    return group_coordinates(snf, dense);
}

std::optional<mpz_class> solve_cyclic_dlog(std::vector<mpz_class> const & alpha, std::vector<mpz_class> const & beta,
                                           std::vector<mpz_class> const & moduli)
{
    require(alpha.size() == moduli.size() && beta.size() == moduli.size(), ErrorKind::usage,
            "coordinate vectors differ in length");
    mpz_class x = 0, L = 1;   // x mod L satisfies the components seen so far
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        mpz_class const & h = moduli[i];
        mpz_class a, b, g;
        mpz_fdiv_r(a.get_mpz_t(), alpha[i].get_mpz_t(), h.get_mpz_t());
        mpz_fdiv_r(b.get_mpz_t(), beta[i].get_mpz_t(), h.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), h.get_mpz_t());
        if (!mpz_divisible_p(b.get_mpz_t(), g.get_mpz_t()))
            return std::nullopt;
        // x = r mod m for this component
        mpz_class const m = h / g;
        mpz_class r = 0;
        if (m > 1) {
            mpz_class inv;
            mpz_class const am = a / g;
            mpz_invert(inv.get_mpz_t(), am.get_mpz_t(), m.get_mpz_t());
            r = (b / g) * inv;
            mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
        }
        // merge x mod L with r mod m
        mpz_class d, s, tt;
        mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), tt.get_mpz_t(), L.get_mpz_t(), m.get_mpz_t());
        mpz_class const diff = r - x;
        if (!mpz_divisible_p(diff.get_mpz_t(), d.get_mpz_t()))
            return std::nullopt;
        mpz_class const lcm = L / d * m;
        mpz_class nx = x + L * s * (diff / d);
        mpz_fdiv_r(nx.get_mpz_t(), nx.get_mpz_t(), lcm.get_mpz_t());
        x = nx;
        L = lcm;
    }
    return x;
}

namespace {

nlohmann::json matrix_to_json(IntMatrix const & a)
{
    auto out = nlohmann::json::array();
    for (auto const & row : a) {
        auto r = nlohmann::json::array();
        for (auto const & x : row)
            r.push_back(x.get_str());
        out.push_back(r);
    }
    return out;
}

IntMatrix matrix_from_json(nlohmann::json const & j)
{
    IntMatrix a;
    for (auto const & row : j) {
        std::vector<mpz_class> r;
        for (auto const & x : row)
            r.emplace_back(x.get<std::string>());
        a.push_back(std::move(r));
    }
    return a;
}

}  // namespace

nlohmann::json snf_to_json(SNFResult const & snf)
{
    auto factors = nlohmann::json::array();
    for (auto const & f : snf.factors)
        factors.push_back(f.get_str());
    return {{"factors", factors}, {"h", snf.h.get_str()}, {"rank", snf.rank},       {"T", matrix_to_json(snf.T)},
            {"Tinv", matrix_to_json(snf.Tinv)}, {"U", matrix_to_json(snf.U)}};
}

SNFResult snf_from_json(nlohmann::json const & j)
{
    try {
        SNFResult out;
        for (auto const & f : j.at("factors"))
            out.factors.emplace_back(f.get<std::string>());
        out.h = mpz_class(j.at("h").get<std::string>());
        out.rank = j.value("rank", 0);
        out.T = matrix_from_json(j.at("T"));
        out.Tinv = matrix_from_json(j.at("Tinv"));
        if (j.contains("U"))
            out.U = matrix_from_json(j.at("U"));
        auto const t = out.T.size();
        bool square = out.Tinv.size() == t;
        for (std::size_t i = 0; i < t && square; ++i)
            square = out.T[i].size() == t && out.Tinv[i].size() == t;
        require(square, ErrorKind::integrity, "T and T^-1 must be square of the same size");
        require(out.factors.size() <= t, ErrorKind::integrity, "more invariant factors than rows");
        mpz_class prod = 1;
        for (auto const & f : out.factors)
            prod *= f;
        require(prod == out.h, ErrorKind::integrity, "stored h differs from the product of the factors");
        return out;
    } catch (nlohmann::json::exception const & e) {
        fail(ErrorKind::integrity, std::string("malformed Smith form: ") + e.what());
    } catch (std::invalid_argument const &) {
        fail(ErrorKind::integrity, "malformed integer in Smith form");
    }
}

}  // namespace cabdl
