#pragma once

#include "starkit/cyclo.hpp"
#include "starkit/fitting.hpp"
#include "starkit/lattice.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace starkit {

// a + b sqrt(d), d a fundamental discriminant
class QuadNumber {
public:
    QuadNumber() = default;
    QuadNumber(long d, Rat a, Rat b = 0) : d_(d), a_(std::move(a)), b_(std::move(b)) {}
    // x + y omega with omega = (d + sqrt d)/2
    static QuadNumber from_omega(long d, const Rat& x, const Rat& y);

    long disc() const { return d_; }
    const Rat& rational_part() const { return a_; }
    const Rat& sqrt_part() const { return b_; }
    // coordinates on 1, omega
    Rat omega_x() const { return a_ - b_ * d_; }
    Rat omega_y() const { return 2 * b_; }

    QuadNumber operator+(const QuadNumber& o) const;
    QuadNumber operator-(const QuadNumber& o) const;
    QuadNumber operator-() const { return QuadNumber(d_, -a_, -b_); }
    QuadNumber operator*(const QuadNumber& o) const;
    QuadNumber operator*(const Rat& q) const { return QuadNumber(d_, a_ * q, b_ * q); }
    QuadNumber inverse() const;
    QuadNumber operator/(const QuadNumber& o) const { return *this * o.inverse(); }
    QuadNumber pow(long k) const;
    bool operator==(const QuadNumber& o) const { return d_ == o.d_ && a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const QuadNumber& o) const { return !(*this == o); }

    QuadNumber conj() const { return QuadNumber(d_, a_, -b_); }
    Rat norm() const { return a_ * a_ - b_ * b_ * d_; }
    Rat trace() const { return 2 * a_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_integral() const;
    // real embedding with sqrt d > 0; d > 0 only
    Real real_value() const;
    // log of the archimedean absolute value (complex modulus when d < 0)
    Real log_abs() const;
    // image in F_q given sqrt d -> s (mod q)
    long mod_prime(long q, long s) const;

    std::string str() const;

private:
    long d_ = 1;
    Rat a_, b_;
};

// integral ideal m [a, (b + sqrt d)/2]
class QuadIdeal {
public:
    QuadIdeal() = default;
    static QuadIdeal unit(long d);
    static QuadIdeal principal(const QuadNumber& alpha);
    // Z-span of the given algebraic integers, which must form an ideal
    static QuadIdeal from_zspan(long d, const std::vector<QuadNumber>& gens);
    static QuadIdeal from_form(long d, long a, long b);

    long disc() const { return d_; }
    const Int& content() const { return m_; }
    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    Int norm() const { return m_ * m_ * a_; }
    QuadNumber basis0() const;
    QuadNumber basis1() const;

    bool contains(const QuadNumber& x) const;
    QuadIdeal operator*(const QuadIdeal& o) const;
    QuadIdeal pow(long k) const;
    QuadIdeal conj() const;
    bool is_unit() const { return m_ == 1 && a_ == 1; }
    bool operator==(const QuadIdeal& o) const { return d_ == o.d_ && m_ == o.m_ && a_ == o.a_ && b_ == o.b_; }
    bool operator<(const QuadIdeal& o) const;

    std::string str() const;

private:
    long d_ = 1;
    Int m_ = 1, a_ = 1, b_ = 1;
};

// prime ideals above p; two for split p
std::vector<QuadIdeal> primes_above(long d, long p);
// valuation of x at a prime ideal
long valuation(const QuadNumber& x, const QuadIdeal& P);

class QuadField {
public:
    explicit QuadField(long d);
    long disc() const { return d_; }
    bool is_real() const { return d_ > 0; }
    // chi_d(p): 1 split, -1 inert, 0 ramified
    int splitting(long p) const;
    DirichletChar character() const { return DirichletChar::kronecker(d_); }
    long roots_of_unity() const;
    QuadNumber torsion_generator() const;
    QuadNumber omega() const { return QuadNumber::from_omega(d_, 0, 1); }

private:
    long d_;
};

struct FundamentalUnit {
    QuadNumber eps;   // smallest unit > 1 in the embedding sqrt d > 0
    int norm = 1;
    long period = 0;
};

FundamentalUnit fundamental_unit(long d);

struct Form {
    long a, b, c;
    bool operator==(const Form& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const Form& o) const;
};

Form reduce_form(long d, Form f);

// finite abelian group on ids 0..n-1 (0 the identity) with dlog over greedily chosen generators
struct GroupModel {
    std::vector<int> gens;
    std::vector<long> gen_orders;   // relative orders
    std::vector<IntVec> dlog;       // id -> exponents, e_j in [0, gen_orders[j])
    std::vector<IntVec> relations;  // generate the relation lattice of gens
    AbelianStructure structure;
};

// candidates are tried in order, then all ids
GroupModel build_group_model(int n, const std::function<int(int, int)>& mul, const std::vector<int>& candidates = {});

class FormClassGroup {
public:
    explicit FormClassGroup(long d);

    long disc() const { return d_; }
    int order() const { return (int)wide_rep_.size(); }
    int narrow_order() const { return (int)narrow_.size(); }
    const std::vector<Form>& narrow_forms() const { return narrow_; }
    // wide class of an ideal
    int class_of(const QuadIdeal& I) const;
    int narrow_class_of(const QuadIdeal& I) const;
    QuadIdeal representative(int cls) const;
    int mul(int x, int y) const;
    int inv(int x) const;
    const GroupModel& model() const { return model_; }
    const AbelianStructure& structure() const { return model_.structure; }

    std::string to_json() const;

private:
    long d_;
    std::vector<Form> narrow_;          // reduced representative with a > 0 per narrow class
    std::map<Form, int> reduced_to_narrow_;
    std::vector<int> narrow_to_wide_;
    std::vector<int> wide_rep_;          // wide class -> narrow class
    mutable std::vector<std::vector<int>> table_;
    GroupModel model_;
    int narrow_of_form(Form f) const;
    int narrow_mul(int x, int y) const;
};

const FormClassGroup& class_group(long d);

// a generator of a principal ideal, positive-norm preferred
std::optional<QuadNumber> principal_generator(const QuadIdeal& I);

// (O/m_T)^x with m_T the product of the primes above T
class ResidueUnits {
public:
    ResidueUnits(long d, std::vector<long> T);
    const std::vector<long>& orders() const { return orders_; }
    Int order() const;
    // discrete log of an element prime to T
    IntVec log(const QuadNumber& x) const;
    // action of conjugation on log vectors
    IntVec conj(const IntVec& v) const;

private:
    struct Comp {
        long ell;
        int kind;   // 1 split root, 0 ramified root, -1 inert
        long root;  // root of the minimal polynomial of omega mod ell
        int partner; // the conjugate component for split primes
    };
    long d_;
    std::vector<long> T_, orders_;
    std::vector<Comp> comps_;
    std::vector<std::vector<long>> logtab_;   // per component
    std::vector<long> gens_;
    long comp_log(std::size_t i, const QuadNumber& x) const;
};

// Cl^T_S(F): classes of ideals prime to T modulo T-congruent principal ideals and the primes above S
class RayClassT {
public:
    RayClassT(long d, std::vector<long> T, std::vector<long> S = {});

    long disc() const { return d_; }
    const std::vector<long>& T() const { return T_; }
    const std::vector<long>& S() const { return S_; }
    const AbelianStructure& structure() const { return st_; }
    Int order() const { return st_.order(); }
    Int class_number() const { return h_; }
    Int residue_order() const { return res_order_; }
    Int unit_image_order() const { return unit_image_; }
    bool torsion_free() const { return torsion_free_; }

    // coordinates on the cyclic factors, reduced
    IntVec log(const QuadIdeal& I) const;
    IntVec reduce(const IntVec& v) const;
    bool is_zero(const IntVec& v) const;
    // conjugation on coordinates (row vectors)
    const IntMatrix& conj_matrix() const { return conj_; }
    IntVec act(long a, long b, const IntVec& v) const;   // (a + b sigma) v
    // presentation over Z[Gal(F/Q)], Gal(F/Q) = Z/2 with sigma = element 1
    PresentedModule galois_module() const;

    std::string to_json() const;

private:
    long d_;
    std::vector<long> T_, S_;
    Int h_, res_order_, unit_image_;
    bool torsion_free_ = true;
    std::vector<QuadIdeal> gens_;     // prime ideals generating Cl
    GroupModel clmodel_;
    std::vector<int> gen_cls_;
    ResidueUnits A_;
    IntMatrix V_;                      // raw coordinates -> Smith coordinates
    std::vector<Int> diag_;
    std::vector<std::size_t> keep_;
    AbelianStructure st_;
    IntMatrix conj_;
    std::map<int, IntVec> cls_dlog_;
    IntVec raw_log(const QuadIdeal& I) const;
    IntVec smith(const IntVec& raw) const;
};

RayClassT ray_class_T(long d, const std::vector<long>& T, const std::vector<long>& S = {});

// S-units of F for S = infinity plus the given finite primes
class SUnitBasis {
public:
    SUnitBasis(long d, std::vector<long> S);

    long disc() const { return d_; }
    const std::vector<long>& S() const { return S_; }
    // finite places of F above S
    const std::vector<QuadIdeal>& places() const { return places_; }
    // gens[0] generates the torsion; then the fundamental unit (real F); then S-unit generators
    const std::vector<QuadNumber>& gens() const { return gens_; }
    long torsion_order() const { return w_; }
    std::size_t rank() const { return gens_.size() - 1; }
    // valuations: gens x places
    const IntMatrix& valuations() const { return vals_; }

    QuadNumber value(const IntVec& c) const;
    // exponent vector of an S-unit, torsion exponent reduced mod w
    std::optional<IntVec> coordinates(const QuadNumber& x) const;
    IntVec normalize(IntVec c) const;
    // conjugation as a matrix on exponent rows
    const IntMatrix& conj_matrix() const { return conj_; }

    // exponent vectors spanning O_{S,T}^x (together with the torsion relation)
    std::vector<IntVec> t_congruent_basis(const std::vector<long>& T) const;

    std::string to_json() const;

private:
    long d_;
    std::vector<long> S_;
    std::vector<QuadIdeal> places_;
    std::vector<QuadNumber> gens_;
    long w_ = 2;
    IntMatrix vals_, conj_;
    std::vector<IntVec> sbasis_;   // valuation lattice basis of the S-part generators
};

SUnitBasis s_units(long d, const std::vector<long>& S);

// quadratic Hilbert symbol; p = 0 is the real place
int hilbert_symbol(const Rat& a, const Rat& b, long p);

// x in F_P = Q_p for a split (or ramified) prime P above p: valuation and unit part mod p^k
struct LocalImage {
    long valuation = 0;
    Int unit;   // unit part mod p^k
};

LocalImage local_image(const QuadNumber& x, const QuadIdeal& P, int k);

// reciprocity for Q_l(mu_l): x = l^v u maps to sigma_c with c = u^{-1} mod l; the residue c
long cyclotomic_rec(const QuadNumber& x, const QuadIdeal& lambda);
// projection of c in (Z/l)^x onto its cyclic quotient of the given order: log_g(c) mod order, g the least primitive root
long rec_quotient_log(long c, long ell, long order);

// the sign of a real number in the fixed embedding
int real_sign(const QuadNumber& x);

} // namespace starkit
