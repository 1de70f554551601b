#pragma once

#include "starkit/groupring.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <string>
#include <vector>

namespace starkit {

using Real = boost::multiprecision::cpp_bin_float_50;
using Complex = boost::multiprecision::cpp_complex_50;

// decimal digits we are willing to certify with 50-digit arithmetic
constexpr int kMaxCertifiedDigits = 40;

Real real_pi();
// log |1 - exp(2 pi i a / m)|
Real log_abs_one_minus_zeta(long m, long a);

// (Z/f)^x as a product of cyclic groups
struct UnitGroupMod {
    long f = 1;
    GroupPtr G;
    std::vector<long> residue;   // element -> residue in [0, f)
    std::vector<int> elem;       // residue -> element, -1 for non-units

    int of(long a) const;
};

UnitGroupMod unit_group_mod(long f);

// chi(a) = zeta_N^table[a], N the order of chi; table[a] = -1 when gcd(a, f) > 1
class DirichletChar {
public:
    DirichletChar(long f, long N, std::vector<long> table);

    static DirichletChar trivial(long f);
    // the quadratic character of a fundamental discriminant, modulus |d|
    static DirichletChar kronecker(long d);
    static DirichletChar from_group(const UnitGroupMod& U, const CharacterOfG& psi);
    // psi composed with (Z/f)^x -> (Z/f)^x / H given as an element map
    static DirichletChar from_quotient(const UnitGroupMod& U, const std::vector<int>& proj,
                                       const CharacterOfG& psi);

    long modulus() const { return f_; }
    long order() const { return N_; }
    long log_value(long a) const { return t_[mod_l(a, f_)]; }
    CycloNumber value(long a) const;
    std::vector<CycloNumber> generator_images(const UnitGroupMod& U) const;

    bool is_trivial() const { return N_ == 1; }
    bool is_even() const { return f_ <= 2 || log_value(f_ - 1) == 0; }
    long conductor() const;
    bool is_primitive() const { return conductor() == f_; }
    DirichletChar primitive() const;
    DirichletChar inverse() const;
    // the character at modulus F, a multiple of f
    DirichletChar extend(long F) const;

    bool operator==(const DirichletChar& o) const { return f_ == o.f_ && N_ == o.N_ && t_ == o.t_; }

    std::string str() const;

private:
    long f_, N_;
    std::vector<long> t_;
};

std::vector<DirichletChar> dirichlet_characters(long f);

// B_{1,chi} = sum_{a=1}^{f} chi(a) (a/f - 1/2), chi primitive
CycloNumber bernoulli_b1(const DirichletChar& chi);

struct LValue {
    CycloNumber value;   // the leading coefficient when order == 0, else 0
    int order = 0;
};

// places are given by their finite primes; infinity is always in S
int vanishing_order(const DirichletChar& chi, const std::vector<long>& S);
LValue l_value_zero(const DirichletChar& chi, const std::vector<long>& S, const std::vector<long>& T);

struct StickelbergerElement {
    long f = 1;
    UnitGroupMod U;
    Quotient q;            // Gal(K/Q) as (Z/f)^x / H
    GroupPtr G;
    std::vector<long> S, T;
    QG theta;

    int of(long a) const { return q.proj[U.of(a)]; }
    long residue(int g) const { return U.residue[q.section[g]]; }
    std::string to_json() const;
};

// K is the fixed field of the subgroup of (Z/f)^x generated by H_gens
StickelbergerElement stickelberger(long f, const std::vector<long>& H_gens, const std::vector<long>& S,
                                   const std::vector<long>& T);
// sum_chi L_{S,T}(chi^{-1}, 0) e_chi over the same Galois group
QG stickelberger_character_sum(const StickelbergerElement& ref);

// (1 - zeta_m)^{delta_T} as a formal product of the (1 - zeta_m^a)
struct CyclotomicUnit {
    long m = 1;
    std::vector<long> T;
    std::vector<std::pair<long, Int>> factors;

    // log |sigma_k(eps)| in the embedding zeta_m -> exp(2 pi i / m)
    Real log_abs(long k = 1) const;
    std::string to_json() const;
};

CyclotomicUnit cyclotomic_unit(long m, const std::vector<long>& T);

struct LDerivative {
    Complex value;   // coefficient of s^1 at s = 0, zero when order > 1
    int order = 1;
    Real error_bound;
};

LDerivative l_derivative_numeric(const DirichletChar& chi, const std::vector<long>& S, const std::vector<long>& T,
                                 int digits = 30);

struct RubinStarkReport {
    long m = 3;
    std::vector<long> S, T;
    bool torsion_free = false;
    // place labels: "inf:a" for sigma_a w_inf, "p:a" for sigma_a of the chosen place above p
    std::vector<std::string> places;
    std::vector<Real> recovered, expected;   // log |eps|_w
    Real max_error;
    int digits = 9;
    bool matches() const;
    std::string to_json() const;
};

RubinStarkReport rubin_stark_Q(long m, const std::vector<long>& T, int digits = 9);

std::string real_str(const Real& x, int digits = 20);

} // namespace starkit
