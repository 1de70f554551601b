#include "doctest.h"

#include "starkit/exterior.hpp"
#include "suites.hpp"

using namespace starkit;

namespace {

GroupPtr C2() { return make_group({2}); }

ZG z(const GroupPtr& G, long a, long b)
{
    ZG x(G);
    x.add_term(0, Int(a));
    x.add_term(1, Int(b));
    return x;
}

QG q(const ZG& x) { return to_rational(x); }

std::vector<int> whole(const GroupPtr& G)
{
    std::vector<int> h(G->order());
    for (int i = 0; i < G->order(); ++i) h[i] = i;
    return h;
}

} // namespace

TEST_CASE("hom_dual examples")
{
    GroupPtr G = C2();
    HomBasis f = hom_dual(GLattice::free(G, 1));
    REQUIRE(f.generators.size() == 1);
    // Z-basis of Z[G] is (1, sigma); the generator sends 1 to 1
    CHECK(f.maps[f.generators[0]] == std::vector<ZG>{z(G, 1, 0), z(G, 0, 1)});

    HomBasis ig = hom_dual(augmentation_lattice(G));
    REQUIRE(ig.maps.size() == 1);
    CHECK(ig.maps[0][0] == z(G, 1, -1));

    HomBasis tr = hom_dual(trivial_lattice(G));
    REQUIRE(tr.maps.size() == 1);
    CHECK(tr.maps[0][0] == z(G, 1, 1));
}

TEST_CASE("hom_dual maps are equivariant and lift to the free module")
{
    for (auto shape : std::vector<std::vector<long>>{{2}, {3}, {4}, {2, 2}}) {
        GroupPtr G = make_group(shape);
        for (const GLattice& M : {augmentation_lattice(G), trivial_lattice(G), GLattice::free(G, 2)}) {
            HomBasis hb = hom_dual(M);
            // Hom_G(M, Z[G]) and Hom_Z(M, Z) have the same rank
            CHECK(hb.maps.size() == M.zrank());
            for (auto& f : hb.maps) {
                FreeDual F = lift_to_free(M, f);
                for (std::size_t i = 0; i < M.zrank(); ++i) {
                    ZG v(G);
                    for (std::size_t j = 0; j < F.size(); ++j) v += F[j] * M.embedding()[i][j];
                    CHECK(v == f[i]);
                }
            }
        }
    }
}

TEST_CASE("wedge_eval examples")
{
    GroupPtr G = C2();
    FreeDual f{z(G, 2, 1)};
    WedgeElement m = WedgeElement::from_vectors(G, 1, {{q(z(G, 0, 3))}});
    CHECK(wedge_value({f}, m) == q(z(G, 3, 6)));

    FreeDual b1 = dual_basis_vector(G, 2, 0), b2 = dual_basis_vector(G, 2, 1);
    CHECK(wedge_value({b1, b2}, WedgeElement::basis(G, 2, {0, 1})) == QG::scalar(G, 1));

    // (b1 + sigma b2) ^ b2 contracted with b1^*
    WedgeElement w = WedgeElement::from_vectors(G, 2, {{q(z(G, 1, 0)), q(z(G, 0, 1))}, {QG(G), q(z(G, 1, 0))}});
    CHECK(wedge_eval({b1}, w) == WedgeElement::basis(G, 2, {1}));
    CHECK_THROWS(wedge_eval({b1, b2}, WedgeElement::basis(G, 2, {0})));
}

TEST_CASE("rubin_contains examples")
{
    GroupPtr G = C2();
    GLattice P = GLattice::free(G, 2);
    WedgeElement a = WedgeElement::basis(G, 2, {0, 1}).scale(q(z(G, 3, -2)));
    CHECK(rubin_contains(P, a));
    CHECK_FALSE(rubin_contains(P, WedgeElement::basis(G, 2, {0}).scale(QG::scalar(G, Rat(1, 2)))));

    // two embeddings of I(G): x -> x and x -> (x, sigma x)
    GLattice I1 = augmentation_lattice(G);
    GLattice I2 = GLattice::embedded(G, 2, {{z(G, 1, -1), z(G, -1, 1)}});
    for (Rat qq : {Rat(1), Rat(-3), Rat(1, 2), Rat(2, 3)}) {
        bool expect = is_integral(qq);
        WedgeElement m1 = WedgeElement::basis(G, 1, {0}).scale(q(z(G, 1, -1)).scale(qq));
        WedgeElement m2 = WedgeElement::from_vectors(G, 2, {{q(z(G, 1, -1)).scale(qq), q(z(G, -1, 1)).scale(qq)}});
        CHECK(rubin_contains(I1, m1) == expect);
        CHECK(rubin_contains(I2, m2) == expect);
        CHECK(rubin_contains_by_duals(I1, m1) == expect);
        CHECK(rubin_contains_by_duals(I2, m2) == expect);
    }
    // integral but outside Q I(G)
    CHECK_FALSE(rubin_contains(I1, WedgeElement::basis(G, 1, {0}).scale(q(z(G, 1, 1)))));
    CHECK_THROWS(rubin_contains(GLattice::from_action(G, {IntMatrix::identity(1)}), WedgeElement::basis(G, 1, {0})));
}

TEST_CASE("embedding checks")
{
    GroupPtr G = C2();
    // 2 Z[G] has torsion cokernel
    CHECK_THROWS(GLattice::embedded(G, 1, {{z(G, 2, 0)}, {z(G, 0, 2)}}));
    // Z (1 + 0 sigma) is not G-stable
    CHECK_THROWS(GLattice::embedded(G, 1, {{z(G, 1, 0)}}));
    IntMatrix bad = IntMatrix::identity(1);
    bad(0, 0) = 2;
    CHECK_THROWS(GLattice::from_action(G, {bad}));
}

TEST_CASE("norm_tensor examples")
{
    GroupPtr G = C2();
    {
        std::vector<int> H{0};
        GroupPtr Hg = subgroup_group(*G, H);
        HQuotient Q(G, H, GStableIdeal::unit(Hg));
        ZG x = z(G, 2, -5);
        NormTensor t = norm_tensor(WedgeElement::scalar(q(x), 1), Q);
        CHECK(t.coeff[0][0] == Q.reduce(ZG::scalar(Hg, 2)));
        CHECK(t.coeff[0][1] == Q.reduce(ZG::scalar(Hg, -5)));
    }
    std::vector<int> H = whole(G);
    GroupPtr Hg = subgroup_group(*G, H);
    HQuotient Q(G, H, GStableIdeal::unit(Hg));
    NormTensor t = norm_tensor(WedgeElement::scalar(QG::scalar(G, 1), 1), Q);
    CHECK(t.coeff[0][0] == Q.reduce(ZG::scalar(Hg, 1)));
    CHECK(t.coeff[0][1] == Q.reduce(ZG::scalar(Hg, 1)));
    // N_H(sigma m) is N_H(m) times sigma on the right factor, trivial modulo I(H)
    for (auto J : {GStableIdeal::unit(Hg), GStableIdeal::augmentation(Hg, whole(Hg))}) {
        HQuotient QJ(G, H, J);
        WedgeElement m = WedgeElement::scalar(q(z(G, 3, 0)), 1);
        NormTensor a = norm_tensor(m, QJ), b = norm_tensor(m.shift(1), QJ);
        for (int g = 0; g < 2; ++g) CHECK(b.coeff[0][g] == QJ.reduce(a.coeff[0][g] * ZG(Hg, 1, Int(1))));
        if (J.is_unit()) CHECK(a == b);
        else CHECK_FALSE(a == b);
    }
}

TEST_CASE("nu_map examples")
{
    GroupPtr G = C2();
    std::vector<int> H = whole(G);
    Quotient qu = quotient(*G, H);
    GroupPtr qg = make_group(qu.q.orders());
    WedgeElement a1 = WedgeElement::basis(qg, 1, {0}).scale(QG::scalar(qg, 5));
    CHECK(nu_map(a1, G, H) == xi_map(a1, G, H));
    WedgeElement a0 = WedgeElement::scalar(QG::scalar(qg, 1), 2);
    CHECK(nu_map(a0, G, H).coord(0) == q(z(G, 1, 1)));
    WedgeElement a2 = WedgeElement::basis(qg, 2, {0, 1});
    WedgeElement nu = nu_map(a2, G, H);
    CHECK(nu == WedgeElement::basis(G, 2, {0, 1}).scale(q(z(G, 1, 1))));
    CHECK(nu.scale(QG::scalar(G, 2)) == xi_map(a2, G, H));
}

TEST_CASE("phi_restrict examples")
{
    GroupPtr G = make_group({3});
    Quotient triv = quotient(*G, {0});
    GroupPtr tg = make_group(triv.q.orders());
    FreeDual f{z(G, 1, 2)};
    CHECK(phi_restrict({f}, triv, tg)[0][0].terms() == f[0].terms());

    GroupPtr C = C2();
    std::vector<int> H = whole(C);
    Quotient qu = quotient(*C, H);
    GroupPtr qg = make_group(qu.q.orders());
    auto phiH = phi_restrict({dual_basis_vector(C, 1, 0)}, qu, qg);
    CHECK(wedge_value(phiH, WedgeElement::basis(qg, 1, {0})) == QG::scalar(qg, 1));
}

TEST_CASE("prop49_check examples")
{
    GroupPtr G = C2();
    std::vector<int> H = whole(G);
    GroupPtr Hg = subgroup_group(*G, H);
    HQuotient Q(G, H, GStableIdeal::augmentation(Hg, whole(Hg)));
    WedgeElement in = WedgeElement::basis(G, 2, {0, 1}).scale(q(z(G, 2, -2)));
    Prop49Report r = prop49_check(in, Q);
    CHECK(r.in_JP);
    CHECK(r.NH_in_im_nu);
    CHECK(r.phi_integral);
    CHECK(r.identity_holds);
    Prop49Report s = prop49_check(WedgeElement::basis(G, 2, {0, 1}), Q);
    CHECK_FALSE(s.in_JP);
    CHECK_FALSE(s.NH_in_im_nu);
    CHECK_FALSE(s.phi_integral);
    CHECK(s.consistent());
}

TEST_CASE("exterior suites")
{
    for (auto r : {suites::exterior_formula(), suites::exterior_phi(), suites::exterior_nu(),
                   suites::exterior_norm_equivalence()}) {
        CHECK_MESSAGE(r.ok(), r.detail);
        CHECK(r.instances > 0);
    }
}
