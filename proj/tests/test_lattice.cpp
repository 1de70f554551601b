#include <doctest.h>

#include "starkit/ideal.hpp"
#include "starkit/lattice.hpp"
#include "support.hpp"

#include <algorithm>
#include <functional>
#include <set>

using namespace starkit;
using namespace testsupport;

static IntMatrix mat(std::vector<std::vector<long>> r)
{
    std::vector<IntVec> rows;
    for (auto& x : r) rows.push_back(IntVec(x.begin(), x.end()));
    return IntMatrix::from_rows(rows, rows.empty() ? 0 : rows[0].size());
}

static std::vector<IntVec> vecs(std::vector<std::vector<long>> r)
{
    std::vector<IntVec> out;
    for (auto& x : r) out.push_back(IntVec(x.begin(), x.end()));
    return out;
}

TEST_CASE("hnf examples")
{
    CHECK(hnf(mat({{2, 0}, {0, 3}})).basis() == vecs({{2, 0}, {0, 3}}));
    CHECK(hnf(mat({{2, 4}, {1, 3}})).basis() == vecs({{1, 1}, {0, 2}}));
    CHECK(hnf(IntMatrix::identity(3)).basis() == vecs({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    CHECK(hnf(IntMatrix(2, 2)).rank() == 0);
}

TEST_CASE("snf examples")
{
    CHECK(snf(mat({{2, 0}, {0, 3}})).diag == std::vector<Int>{1, 6});
    CHECK(snf(IntMatrix(2, 3)).diag == std::vector<Int>{0, 0});
    CHECK(snf(mat({{4, 0}, {0, 6}})).diag == std::vector<Int>{2, 12});
}

static IntMatrix rand_mat(std::size_t r, std::size_t c, long h)
{
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rand_int(-h, h);
    return m;
}

// gcd of all k x k minors by brute force
static Int minor_gcd(const IntMatrix& m, std::size_t k)
{
    Int g = 0;
    std::size_t R = m.rows(), C = m.cols();
    std::vector<std::size_t> rs, cs;
    std::function<void(std::size_t)> pick_c;
    std::function<void(std::size_t)> pick_r = [&](std::size_t s) {
        if (rs.size() == k) { pick_c(0); return; }
        for (std::size_t i = s; i < R; ++i) { rs.push_back(i); pick_r(i + 1); rs.pop_back(); }
    };
    pick_c = [&](std::size_t s) {
        if (cs.size() == k) {
            IntMatrix sub(k, k);
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(rs[a], cs[b]);
            g = gcd(g, determinant(sub));
            return;
        }
        for (std::size_t j = s; j < C; ++j) { cs.push_back(j); pick_c(j + 1); cs.pop_back(); }
    };
    pick_r(0);
    return g;
}

TEST_CASE("snf transforms and minor gcds on random matrices")
{
    for (int it = 0; it < 60; ++it) {
        std::size_t r = rand_int(1, 4), c = rand_int(1, 4);
        IntMatrix m = rand_mat(r, c, 6);
        SNF s = snf(m);
        IntMatrix d = s.U * m * s.V;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) CHECK(d(i, j) == (i == j ? s.diag[i] : Int(0)));
        CHECK(abs(determinant(s.U)) == 1);
        CHECK(abs(determinant(s.V)) == 1);
        CHECK(s.V * s.Vinv == IntMatrix::identity(c));
        for (std::size_t i = 0; i + 1 < s.diag.size(); ++i)
            if (s.diag[i] != 0) CHECK(s.diag[i + 1] % s.diag[i] == 0);
        Int prod = 1;
        for (std::size_t k = 1; k <= s.diag.size(); ++k) {
            prod *= s.diag[k - 1];
            CHECK(prod == minor_gcd(m, k));
        }
    }
}

TEST_CASE("hnf is canonical: idempotent, order independent, span preserving")
{
    for (int it = 0; it < 80; ++it) {
        std::size_t r = rand_int(1, 6), c = rand_int(1, 4);
        IntMatrix m = rand_mat(r, c, 9);
        HNFLattice L = hnf(m);
        std::vector<IntVec> rows;
        for (std::size_t i = 0; i < r; ++i) rows.push_back(m.row(i));
        std::shuffle(rows.begin(), rows.end(), rng());
        CHECK(hnf_rows(rows, c) == L);
        CHECK(hnf_rows(L.basis(), c) == L);
        for (auto& v : rows) CHECK(L.contains(v));
        for (auto& b : L.basis()) CHECK(hnf(m).contains(b));
        for (std::size_t i = 0; i < L.rank(); ++i) {
            std::size_t p = L.pivots()[i];
            CHECK(L.basis()[i][p] > 0);
            for (std::size_t k = 0; k < i; ++k) {
                CHECK(L.basis()[k][p] >= 0);
                CHECK(L.basis()[k][p] < L.basis()[i][p]);
            }
        }
    }
}

TEST_CASE("membership agrees with brute force enumeration for small index lattices")
{
    int tested = 0;
    while (tested < 40) {
        std::size_t d = rand_int(1, 4);
        IntMatrix m = rand_mat(d + 1, d, 5);
        HNFLattice L = hnf(m);
        if (L.rank() != d || L.index() > 50) continue;
        ++tested;
        Int idx = L.index();
        long N = idx.get_si();
        // the lattice contains idx * Z^d; enumerate Z^d / idx by combinations of the basis
        std::set<std::vector<long>> members;
        std::vector<long> coef(d, 0);
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == d) {
                std::vector<long> v(d, 0);
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j) v[j] += coef[i] * L.basis()[i][j].get_si();
                for (auto& x : v) x = mod_l(x, N);
                members.insert(v);
                return;
            }
            for (long c = 0; c < N; ++c) { coef[k] = c; rec(k + 1); }
        };
        rec(0);
        long expect = 1;
        for (std::size_t i = 1; i < d; ++i) expect *= N;
        CHECK((long)members.size() == expect);
        for (int q = 0; q < 30; ++q) {
            IntVec v(d);
            std::vector<long> r(d);
            for (std::size_t j = 0; j < d; ++j) { long x = rand_int(-20, 20); v[j] = x; r[j] = mod_l(x, N); }
            CHECK(L.contains(v) == (members.count(r) > 0));
        }
    }
}

TEST_CASE("cokernel order matches quotient enumeration")
{
    for (int it = 0; it < 30; ++it) {
        IntMatrix m = rand_mat(2, 2, 4);
        Int det = determinant(m);
        if (det == 0) continue;
        AbelianStructure a = cokernel_structure(m);
        CHECK(a.order() == abs(det));
        // count classes of Z^2 / rowspan by canonical representatives mod |det|
        long N = Int(abs(det)).get_si();
        HNFLattice L = hnf(m);
        std::set<std::pair<long, long>> reps;
        for (long x = 0; x < N; ++x)
            for (long y = 0; y < N; ++y) {
                IntVec v{x, y};
                IntVec c;
                // reduce by the HNF basis to a canonical representative
                Int a0 = fmod(v[0], L.basis()[0][0]);
                Int k = (v[0] - a0) / L.basis()[0][0];
                Int b = v[1] - k * L.basis()[0][1];
                b = fmod(b, L.basis()[1][1]);
                reps.insert({a0.get_si(), b.get_si()});
            }
        CHECK((long)reps.size() == N);
    }
}

TEST_CASE("ideal_from_generators examples")
{
    auto C2 = make_group({2});
    ZG one = group_elem(C2, 0), s = group_elem(C2, 1);
    CHECK(GStableIdeal::from_generators(C2, {one + s}).lattice().basis() == vecs({{1, 1}}));
    GStableIdeal I = GStableIdeal::from_generators(C2, {group_elem(C2, 0, 2), one - s});
    CHECK(I.lattice().basis() == vecs({{1, 1}, {0, 2}}));
    CHECK(GStableIdeal::from_generators(C2, {}).is_zero());
    CHECK_THROWS(GStableIdeal::from_generators(C2, {group_elem(make_group({3}), 1)}));
}

TEST_CASE("ideal operations examples")
{
    auto G = make_group({3});
    auto two = GStableIdeal::from_generators(G, {group_elem(G, 0, 2)});
    auto three = GStableIdeal::from_generators(G, {group_elem(G, 0, 3)});
    CHECK(two * three == GStableIdeal::from_generators(G, {group_elem(G, 0, 6)}));
    auto C2 = make_group({2});
    ZG one = group_elem(C2, 0), s = group_elem(C2, 1);
    GStableIdeal I = GStableIdeal::from_generators(C2, {group_elem(C2, 0, 2), one - s});
    CHECK(I.contains(one + s));
    CHECK(I + GStableIdeal(C2) == I);
}

TEST_CASE("G-stable ideal properties")
{
    for (auto& ord : small_groups(6)) {
        auto G = make_group(ord);
        for (int it = 0; it < 4; ++it) {
            auto I = GStableIdeal::from_generators(G, {rand_zg(G, 3), rand_zg(G, 3)});
            auto J = GStableIdeal::from_generators(G, {rand_zg(G, 3)});
            auto P = I * J;
            CHECK(I.intersect(J).contains(P));
            for (auto& b : P.basis_elements())
                for (int g = 0; g < G->order(); ++g) CHECK(P.contains(b.shift(g)));
            auto Is = I.sharp();
            for (auto& b : Is.basis_elements())
                for (int g = 0; g < G->order(); ++g) CHECK(Is.contains(b.shift(g)));
            CHECK(Is.sharp() == I);
            CHECK(I + J == J + I);
        }
    }
}
