#include <doctest.h>

#include "starkit/fitting.hpp"
#include "support.hpp"

using namespace starkit;
using namespace testsupport;

static ZG zc(const GroupPtr& G, long c) { return group_elem(G, 0, c); }

static GStableIdeal ideal_of(const GroupPtr& G, std::vector<ZG> gens) { return GStableIdeal::from_generators(G, gens); }

TEST_CASE("fitting_ideal examples")
{
    auto T = make_group({});
    PresentedModule Z6(T, {{zc(T, 6)}}, 1);
    CHECK(fitting_ideal(Z6, 0) == ideal_of(T, {zc(T, 6)}));
    CHECK(fitting_ideal(Z6, 1).is_unit());

    PresentedModule D(T, {{zc(T, 2), zc(T, 0)}, {zc(T, 0), zc(T, 3)}}, 2);
    CHECK(fitting_ideal(D, 0) == ideal_of(T, {zc(T, 6)}));
    CHECK(fitting_ideal(D, 1).is_unit());

    auto C2 = make_group({2});
    ZG n = group_elem(C2, 0) + group_elem(C2, 1);
    PresentedModule P(C2, {{n}}, 1);
    CHECK(fitting_ideal(P, 0) == ideal_of(C2, {n}));
}

TEST_CASE("relative_fitting_ideal examples")
{
    auto T = make_group({});
    // Z/2 (+) Z/4 with N the Z/2 summand listed first
    PresentedModule M(T, {{zc(T, 2), zc(T, 0)}, {zc(T, 0), zc(T, 4)}}, 2);
    M.set_block(1, 1);
    CHECK(relative_fitting_ideal(M, 0, 1) == ideal_of(T, {zc(T, 4)}));
    CHECK(relative_fitting_oracle(M, 0, 1) == ideal_of(T, {zc(T, 4)}));
    for (std::size_t a = 0; a < 3; ++a) CHECK(relative_fitting_ideal(M, a, 0) == fitting_ideal(M, a));
    CHECK(relative_fitting_oracle(M, 0, 0) == fitting_ideal(M, 0));
    // b > nu = 1
    CHECK(relative_fitting_ideal(M, 0, 2) == fitting_ideal(M.quotient_by_block(), 0));
    CHECK(relative_fitting_oracle(M, 0, 2) == fitting_ideal(M.quotient_by_block(), 0));
    CHECK(minimal_block_generators(M) == 1);
}

TEST_CASE("relative Fitting ideal needs a block")
{
    auto T = make_group({});
    PresentedModule M(T, {{zc(T, 2)}}, 1);
    CHECK_THROWS_AS(relative_fitting_ideal(M, 0, 0), std::logic_error);
    PresentedModule B(T, {{zc(T, 2), zc(T, 0)}, {zc(T, 1), zc(T, 4)}}, 2);
    CHECK_THROWS_AS(B.set_block(1, 1), std::invalid_argument);
}

TEST_CASE("transpose_presentation examples")
{
    auto C2 = make_group({2});
    ZG one = group_elem(C2, 0), s = group_elem(C2, 1);
    PresentedModule A(C2, {{one + s}}, 1);
    PresentedModule At = transpose_presentation(A);
    CHECK(At.at(0, 0) == one + s);
    CHECK(fitting_ideal(At, 0) == fitting_ideal(A, 0));

    PresentedModule D(C2, {{zc(C2, 2), ZG(C2)}, {ZG(C2), one - s}}, 2);
    PresentedModule Dt = transpose_presentation(D);
    CHECK(fitting_ideal(Dt, 0) == ideal_of(C2, {(zc(C2, 2) * (one - s)).sharp()}));
    CHECK(fitting_ideal(Dt, 0) == fitting_ideal(D, 0));

    auto C3 = make_group({3});
    for (int it = 0; it < 10; ++it) {
        PresentedModule R(C3, 3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) R.at(i, j) = rand_zg(C3, 3);
        CHECK(fitting_ideal(transpose_presentation(R), 1) == fitting_ideal(R, 1).sharp());
    }
}

TEST_CASE("module_structure examples")
{
    auto C2 = make_group({2});
    ZG one = group_elem(C2, 0), s = group_elem(C2, 1);
    PresentedModule M(C2, {{one + s, zc(C2, 2)}}, 2);
    AbelianStructure a = module_structure(M);
    CHECK(a.torsion == std::vector<Int>{2});
    CHECK(a.free_rank == 0);

    PresentedModule F(C2, 2, 0);
    AbelianStructure f = module_structure(F);
    CHECK(f.torsion.empty());
    CHECK(f.free_rank == 4);

    auto T = make_group({});
    CHECK(module_structure(PresentedModule(T, {{zc(T, 6)}}, 1)).torsion == std::vector<Int>{6});
}

TEST_CASE("determinant over Z[G] is multiplicative")
{
    auto G = make_group({2, 2});
    for (int it = 0; it < 10; ++it) {
        std::vector<std::vector<ZG>> A(3, std::vector<ZG>(3)), B(3, std::vector<ZG>(3)), C(3, std::vector<ZG>(3, ZG(G)));
        for (auto& r : A)
            for (auto& e : r) e = rand_zg(G, 2);
        for (auto& r : B)
            for (auto& e : r) e = rand_zg(G, 2);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) C[i][j] += A[i][k] * B[k][j];
        CHECK(zg_determinant(C) == zg_determinant(A) * zg_determinant(B));
    }
}

TEST_CASE("minor enumeration cap")
{
    auto T = make_group({});
    PresentedModule big(T, 13, 1);
    CHECK_THROWS_AS(fitting_ideal(big, 0), std::invalid_argument);
}

TEST_CASE("json round trip")
{
    auto G = make_group({3});
    PresentedModule M(G, 2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) M.at(i, j) = rand_zg(G, 3);
    M.at(1, 0) = ZG(G);
    M.set_block(1, 1);
    PresentedModule R = PresentedModule::from_json(M.to_json());
    CHECK(R.block() == M.block());
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(R.at(i, j) == M.at(i, j));
}
