#pragma once

#include "starkit/ideal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace starkit {

using Subset = std::vector<std::size_t>;

// increasing r-subsets of {0..d-1} in lexicographic order
const std::vector<Subset>& subsets(std::size_t d, std::size_t r);
std::size_t subset_index(std::size_t d, const Subset& s);

QG qg_determinant(const std::vector<std::vector<QG>>& m);

// element of Q wedge^r_G P for P = Z[G]^d, coordinates on b_S = b_{s_1} ^ ... ^ b_{s_r}
class WedgeElement {
public:
    WedgeElement(GroupPtr G, std::size_t d, std::size_t r);

    static WedgeElement basis(GroupPtr G, std::size_t d, const Subset& s);
    // m_1 ^ ... ^ m_r for vectors m_i in Q[G]^d
    static WedgeElement from_vectors(GroupPtr G, std::size_t d, const std::vector<std::vector<QG>>& ms);
    static WedgeElement scalar(const QG& x, std::size_t d);

    const GroupPtr& group_ptr() const { return G_; }
    std::size_t rank() const { return d_; }
    std::size_t degree() const { return r_; }
    const std::vector<Subset>& index() const { return subsets(d_, r_); }
    std::size_t size() const { return c_.size(); }

    QG& coord(std::size_t i) { return c_[i]; }
    const QG& coord(std::size_t i) const { return c_[i]; }
    const QG& coord(const Subset& s) const { return c_[subset_index(d_, s)]; }

    WedgeElement operator+(const WedgeElement& o) const;
    WedgeElement operator-(const WedgeElement& o) const;
    WedgeElement scale(const QG& x) const;
    WedgeElement shift(int g) const;
    bool operator==(const WedgeElement& o) const;
    bool operator!=(const WedgeElement& o) const { return !(*this == o); }

    bool is_zero() const;
    bool is_integral() const;
    // coordinates of the Z-basis g*b_S, subset-major
    RatVec flatten() const;

    std::string to_json() const;

private:
    GroupPtr G_;
    std::size_t d_, r_;
    std::vector<QG> c_;
    void check(const WedgeElement& o) const;
};

// a G-map P -> Z[G], given by the images of the basis vectors
using FreeDual = std::vector<ZG>;

FreeDual dual_basis_vector(GroupPtr G, std::size_t d, std::size_t i);
QG dual_apply(const FreeDual& f, const std::vector<QG>& m);

// contraction m_1^...^m_r -> sum (-1)^{i-1} f(m_i) m_1^..^m_i-hat^..^m_r
WedgeElement contract(const FreeDual& f, const WedgeElement& m);
// (f_1 ^ ... ^ f_s)(m) = f_s o ... o f_1 (m)
WedgeElement wedge_eval(const std::vector<FreeDual>& phi, const WedgeElement& m);
// the degree-zero value when s = r
QG wedge_value(const std::vector<FreeDual>& phi, const WedgeElement& m);
// signed sum over shuffles of det(f_i(m_sigma(j))) times the complementary wedge
WedgeElement wedge_eval_formula(const std::vector<FreeDual>& phi, GroupPtr G, std::size_t d,
                                const std::vector<std::vector<QG>>& ms);

// finitely generated Z-free Z[G]-module with the action of each group generator as a matrix on row vectors
class GLattice {
public:
    static GLattice free(GroupPtr G, std::size_t d);
    // the Z-span of the given vectors of Z[G]^d; must be G-stable with Z-torsion-free cokernel
    static GLattice embedded(GroupPtr G, std::size_t d, const std::vector<std::vector<ZG>>& zbasis);
    static GLattice from_action(GroupPtr G, std::vector<IntMatrix> action);

    const GroupPtr& group_ptr() const { return G_; }
    std::size_t zrank() const { return k_; }
    const std::vector<IntMatrix>& action() const { return act_; }
    bool has_embedding() const { return embedded_; }
    std::size_t ambient_rank() const { return d_; }
    const std::vector<std::vector<ZG>>& embedding() const { return emb_; }

private:
    GroupPtr G_;
    std::size_t k_ = 0, d_ = 0;
    bool embedded_ = false;
    std::vector<IntMatrix> act_;
    std::vector<std::vector<ZG>> emb_;
};

GLattice augmentation_lattice(GroupPtr G);
GLattice trivial_lattice(GroupPtr G);

// Z-basis of Hom_G(M, Z[G]); maps[t][i] is the image of the i-th Z-basis vector of M
struct HomBasis {
    std::vector<std::vector<ZG>> maps;
    // a subset of maps generating the dual as a Z[G]-module
    std::vector<std::size_t> generators;
};

HomBasis hom_dual(const GLattice& M);
// an integral G-map P -> Z[G] restricting to f on M
FreeDual lift_to_free(const GLattice& M, const std::vector<ZG>& f);

// m in Q wedge^r M, as an element of Q wedge^r P
bool in_rational_wedge(const GLattice& M, const WedgeElement& m);
bool rubin_contains(const GLattice& M, const WedgeElement& m);
// membership by testing all wedges of the dual Z-basis
bool rubin_contains_by_duals(const GLattice& M, const WedgeElement& m);

// Z[H]/I(H)J as an abelian group with canonical representatives
class HQuotient {
public:
    HQuotient(GroupPtr G, std::vector<int> H, GStableIdeal J);

    const GroupPtr& group_ptr() const { return G_; }
    const GroupPtr& h_group() const { return J_.group_ptr(); }
    const std::vector<int>& subgroup() const { return H_; }
    const std::vector<int>& incl() const { return incl_; }
    int h_index(int g) const;   // position of g in H
    const GStableIdeal& J() const { return J_; }

    ZG reduce(const ZG& x) const;
    bool in_J(const ZG& x) const { return J_.contains(x); }
    // J Z[G] and I(H) J Z[G]
    const GStableIdeal& JG() const { return jg_; }
    const GStableIdeal& IHJG() const { return ihjg_; }

private:
    GroupPtr G_;
    std::vector<int> H_, incl_;
    GStableIdeal J_, ihj_, jg_, ihjg_;
};

GroupPtr subgroup_group(const FiniteAbelianGroup& G, const std::vector<int>& H);

// N_H(m) in (wedge^r P) (x) Z[H]/I(H)J: coeff[S][g] is the factor on g*b_S
struct NormTensor {
    std::size_t d = 0, r = 0;
    std::vector<std::vector<ZG>> coeff;
    bool operator==(const NormTensor& o) const { return d == o.d && r == o.r && coeff == o.coeff; }
};

NormTensor norm_tensor(const WedgeElement& m, const HQuotient& Q);

// nu^{-1} as y[S][tau] in J_H, with tau running over G/H
struct NuPreimage {
    Quotient q;
    GroupPtr qg;
    std::vector<std::vector<ZG>> y;
};

std::optional<NuPreimage> nu_preimage(const NormTensor& t, const HQuotient& Q);

// coordinates of alpha in Q wedge^r_{G/H} P^H on N_H b_S, mapped into Q wedge^r_G P
WedgeElement nu_map(const WedgeElement& alpha, GroupPtr G, const std::vector<int>& H);
// the map induced by the inclusion P^H in P
WedgeElement xi_map(const WedgeElement& alpha, GroupPtr G, const std::vector<int>& H);
// N_H^r: Q wedge^r_G P -> Q wedge^r_{G/H} P^H
WedgeElement norm_power(const WedgeElement& m, const Quotient& q, GroupPtr qg);

std::vector<FreeDual> phi_restrict(const std::vector<FreeDual>& phi, const Quotient& q, GroupPtr qg);

struct Prop49Report {
    bool in_JP = false;
    bool NH_in_im_nu = false;
    bool phi_integral = false;
    bool identity_holds = false;
    bool consistent() const
    {
        bool agree = in_JP == NH_in_im_nu && NH_in_im_nu == phi_integral;
        return agree && (!in_JP || identity_holds);
    }
    std::string to_json() const;
};

// dual_basis: a Z[G]-basis of Hom_G(P, Z[G]); empty means the dual basis b_i^*
Prop49Report prop49_check(const WedgeElement& a, const HQuotient& Q, const std::vector<FreeDual>& dual_basis = {});

} // namespace starkit
