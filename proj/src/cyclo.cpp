#include "starkit/cyclo.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace starkit {

namespace {

void check_primes(const std::vector<long>& ps, const char* what)
{
    std::set<long> seen;
    for (long p : ps) {
        if (!is_prime_l(p)) throw std::invalid_argument(std::string(what) + " contains a non-prime: " + std::to_string(p));
        if (!seen.insert(p).second) throw std::invalid_argument(std::string(what) + " lists a prime twice");
    }
}

void check_disjoint(const std::vector<long>& S, const std::vector<long>& T)
{
    for (long p : T)
        if (std::find(S.begin(), S.end(), p) != S.end())
            throw std::invalid_argument("S and T overlap at " + std::to_string(p));
}

Complex root_of_unity(long N, long k)
{
    Real t = 2 * real_pi() * Real(mod_l(k, N)) / Real(N);
    return Complex(cos(t), sin(t));
}

std::vector<long> divisors(long n)
{
    std::vector<long> d;
    for (long i = 1; i <= n; ++i)
        if (n % i == 0) d.push_back(i);
    return d;
}

// b = a mod f' with gcd(b, f) = 1
long lift_unit(long a, long fp, long f)
{
    for (long b = mod_l(a, fp);; b += fp)
        if (gcd_l(b, f) == 1) return mod_l(b, f);
}

} // namespace

Real real_pi() { return boost::math::constants::pi<Real>(); }

Real log_abs_one_minus_zeta(long m, long a)
{
    if (mod_l(a, m) == 0) throw std::domain_error("1 - zeta^a vanishes");
    Real s = sin(real_pi() * Real(mod_l(a, m)) / Real(m));
    return log(2 * abs(s));
}

std::string real_str(const Real& x, int digits)
{
    std::ostringstream os;
    os.precision(digits);
    os << std::scientific << x;
    return os.str();
}

int UnitGroupMod::of(long a) const
{
    int e = elem[mod_l(a, f)];
    if (e < 0) throw std::invalid_argument(std::to_string(a) + " is not a unit mod " + std::to_string(f));
    return e;
}

UnitGroupMod unit_group_mod(long f)
{
    if (f < 1) throw std::invalid_argument("modulus must be positive");
    std::vector<long> gens, orders;
    for (auto& [p, k] : factor_l(f)) {
        long pk = 1;
        for (int i = 0; i < k; ++i) pk *= p;
        long rest = f / pk;
        auto crt = [&](long g) {
            // g mod p^k, 1 mod rest
            long x = g;
            while (mod_l(x, rest) != 1 % rest) x += pk;
            return mod_l(x, f);
        };
        if (p == 2) {
            if (k >= 2) { gens.push_back(crt(pk - 1)); orders.push_back(2); }
            if (k >= 3) { gens.push_back(crt(5)); orders.push_back(pk / 4); }
        } else {
            long g = primitive_root_l(p);
            if (k >= 2 && powmod_l(g, p - 1, p * p) == 1) g += p;
            gens.push_back(crt(g));
            orders.push_back(pk / p * (p - 1));
        }
    }
    UnitGroupMod U;
    U.f = f;
    U.G = make_group(orders);
    U.residue.assign(U.G->order(), 0);
    U.elem.assign(f, -1);
    for (int x = 0; x < U.G->order(); ++x) {
        Exps e = U.G->element(x);
        long r = 1 % f;
        for (std::size_t i = 0; i < e.size(); ++i) r = (long)((__int128)r * powmod_l(gens[i], e[i], f) % f);
        U.residue[x] = r;
        U.elem[r] = x;
    }
    return U;
}

DirichletChar::DirichletChar(long f, long N, std::vector<long> table) : f_(f), N_(N), t_(std::move(table))
{
    if (f < 1 || N < 1 || (long)t_.size() != f) throw std::invalid_argument("bad character table");
    long g = N;
    for (long a = 0; a < f; ++a) {
        bool unit = gcd_l(a, f) == 1;
        if (unit != (t_[a] >= 0)) throw std::invalid_argument("character table support mismatch");
        if (unit) { t_[a] = mod_l(t_[a], N); g = gcd_l(g, t_[a]); }
    }
    long scale = N / g;   // the true order
    for (auto& k : t_)
        if (k >= 0) k /= g;
    N_ = scale;
}

DirichletChar DirichletChar::trivial(long f)
{
    std::vector<long> t(f);
    for (long a = 0; a < f; ++a) t[a] = gcd_l(a, f) == 1 ? 0 : -1;
    return DirichletChar(f, 1, t);
}

DirichletChar DirichletChar::kronecker(long d)
{
    if (!is_fundamental_discriminant(d)) throw std::invalid_argument("not a fundamental discriminant: " + std::to_string(d));
    long f = d < 0 ? -d : d;
    std::vector<long> t(f);
    for (long a = 0; a < f; ++a) {
        if (gcd_l(a, f) != 1) { t[a] = -1; continue; }
        t[a] = kronecker_l(d, a) == 1 ? 0 : 1;
    }
    return DirichletChar(f, 2, t);
}

DirichletChar DirichletChar::from_group(const UnitGroupMod& U, const CharacterOfG& psi)
{
    std::vector<int> id(U.G->order());
    for (int g = 0; g < U.G->order(); ++g) id[g] = g;
    return from_quotient(U, id, psi);
}

DirichletChar DirichletChar::from_quotient(const UnitGroupMod& U, const std::vector<int>& proj, const CharacterOfG& psi)
{
    std::vector<long> t(U.f, -1);
    for (long a = 0; a < U.f; ++a)
        if (U.elem[a] >= 0) t[a] = psi.log_value(proj[U.elem[a]]);
    return DirichletChar(U.f, psi.modulus(), t);
}

CycloNumber DirichletChar::value(long a) const
{
    long k = log_value(a);
    if (k < 0) return CycloNumber(N_);
    return CycloNumber::zeta_pow(N_, k);
}

std::vector<CycloNumber> DirichletChar::generator_images(const UnitGroupMod& U) const
{
    std::vector<CycloNumber> out;
    for (std::size_t i = 0; i < U.G->rank(); ++i) out.push_back(value(U.residue[U.G->generator(i)]));
    return out;
}

long DirichletChar::conductor() const
{
    for (long d : divisors(f_)) {
        bool ok = true;
        for (long a = 1; a < f_ && ok; a += d)
            if (t_[a] > 0) ok = false;
        if (ok) return d;
    }
    return f_;
}

DirichletChar DirichletChar::primitive() const
{
    long fc = conductor();
    std::vector<long> t(fc, -1);
    for (long a = 0; a < fc; ++a)
        if (gcd_l(a, fc) == 1) t[a] = t_[lift_unit(a, fc, f_)];
    return DirichletChar(fc, N_, t);
}

DirichletChar DirichletChar::inverse() const
{
    std::vector<long> t = t_;
    for (auto& k : t)
        if (k > 0) k = N_ - k;
    return DirichletChar(f_, N_, t);
}

DirichletChar DirichletChar::extend(long F) const
{
    if (F % f_) throw std::invalid_argument("extend: target modulus must be a multiple");
    std::vector<long> t(F, -1);
    for (long a = 0; a < F; ++a)
        if (gcd_l(a, F) == 1) t[a] = t_[a % f_];
    return DirichletChar(F, N_, t);
}

std::string DirichletChar::str() const
{
    std::ostringstream os;
    os << "chi(mod " << f_ << ", order " << N_ << ", conductor " << conductor() << ")";
    return os.str();
}

std::vector<DirichletChar> dirichlet_characters(long f)
{
    UnitGroupMod U = unit_group_mod(f);
    std::vector<DirichletChar> out;
    for (auto& psi : all_characters(U.G)) out.push_back(DirichletChar::from_group(U, psi));
    return out;
}

CycloNumber bernoulli_b1(const DirichletChar& chi)
{
    if (!chi.is_primitive()) throw std::invalid_argument("bernoulli_b1 needs a primitive character");
    long f = chi.modulus();
    CycloNumber s(chi.order());
    for (long a = 1; a <= f; ++a)
        if (chi.log_value(a) >= 0) s += chi.value(a) * (Rat(a, f) - Rat(1, 2));
    return s;
}

int vanishing_order(const DirichletChar& chi, const std::vector<long>& S)
{
    check_primes(S, "S");
    if (chi.is_trivial()) return (int)S.size();
    DirichletChar p = chi.primitive();
    int r = chi.is_even() ? 1 : 0;
    for (long l : S)
        if (p.modulus() % l != 0 && p.log_value(l) == 0) ++r;
    return r;
}

LValue l_value_zero(const DirichletChar& chi, const std::vector<long>& S, const std::vector<long>& T)
{
    check_primes(T, "T");
    check_disjoint(S, T);
    LValue out{CycloNumber(chi.order()), vanishing_order(chi, S)};
    if (out.order > 0) return out;
    DirichletChar p = chi.primitive();
    CycloNumber one(chi.order(), 1);
    CycloNumber v = -bernoulli_b1(p);
    for (long l : S)
        if (p.modulus() % l != 0) v *= one - p.value(l);
    for (long l : T) v *= one - p.value(l) * Rat(l);
    out.value = v;
    return out;
}

StickelbergerElement stickelberger(long f, const std::vector<long>& H_gens, const std::vector<long>& S,
                                   const std::vector<long>& T)
{
    check_primes(S, "S");
    check_primes(T, "T");
    check_disjoint(S, T);
    StickelbergerElement st;
    st.f = f;
    st.U = unit_group_mod(f);
    std::vector<int> hg;
    for (long h : H_gens) hg.push_back(st.U.of(h));
    std::vector<int> H = st.U.G->subgroup(hg);
    st.q = quotient(*st.U.G, H);
    st.G = std::make_shared<const FiniteAbelianGroup>(st.q.q);
    st.S = S;
    st.T = T;

    // conductor of K
    long fk = f;
    for (long d : divisors(f)) {
        bool ok = true;
        for (long a = 1; a < f && ok; a += d)
            if (gcd_l(a, f) == 1 && !std::binary_search(H.begin(), H.end(), st.U.of(a))) ok = false;
        if (ok) { fk = d; break; }
    }
    for (long p : prime_divisors_l(fk))
        if (std::find(S.begin(), S.end(), p) == S.end())
            throw std::invalid_argument("S must contain the ramified prime " + std::to_string(p));
    auto cls = [&](long a) { return st.of(lift_unit(a, fk, f)); };

    const FiniteAbelianGroup& G = *st.G;
    QG th(st.G);
    for (long a = 1; a <= fk; ++a)
        if (gcd_l(a, fk) == 1) th.add_term(G.inv(cls(a)), Rat(a, fk) - Rat(1, 2));
    for (long l : S)
        if (fk % l != 0) {
            QG e(st.G, 0, Rat(1));
            e.add_term(G.inv(cls(l)), Rat(-1));
            th *= e;
        }
    for (long l : T) {
        QG e(st.G, 0, Rat(1));
        e.add_term(G.inv(cls(l)), Rat(-l));
        th *= e;
    }
    st.theta = th;
    return st;
}

QG stickelberger_character_sum(const StickelbergerElement& ref)
{
    long M = ref.G->exponent();
    CG acc(ref.G);
    for (auto& psi : all_characters(ref.G)) {
        DirichletChar chi = DirichletChar::from_quotient(ref.U, ref.q.proj, psi);
        LValue L = l_value_zero(chi.inverse(), ref.S, ref.T);
        if (L.value.is_zero()) continue;
        acc += psi.idempotent(M).scale(unify(L.value, M));
    }
    return to_rational(acc);
}

std::string StickelbergerElement::to_json() const
{
    nlohmann::json j;
    j["level"] = f;
    j["S"] = S;
    j["T"] = T;
    j["galois_group"] = G->orders();
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [g, c] : theta.terms()) terms.push_back({{"sigma", residue(g)}, {"coeff", c.get_str()}});
    j["theta"] = terms;
    return j.dump();
}

CyclotomicUnit cyclotomic_unit(long m, const std::vector<long>& T)
{
    if (m < 2) throw std::invalid_argument("cyclotomic_unit needs m >= 2");
    check_primes(T, "T");
    std::map<long, Int> e{{1, Int(1)}};
    for (long l : T) {
        if (m % l == 0) throw std::invalid_argument("T must avoid primes dividing m");
        long li = invmod_l(l, m);
        std::map<long, Int> n;
        for (auto& [a, c] : e) {
            n[a] += c;
            n[a * li % m] -= c * l;
        }
        e.clear();
        for (auto& [a, c] : n)
            if (c != 0) e[a] = c;
    }
    CyclotomicUnit u;
    u.m = m;
    u.T = T;
    for (auto& [a, c] : e) u.factors.push_back({a, c});
    return u;
}

Real CyclotomicUnit::log_abs(long k) const
{
    Real s = 0;
    for (auto& [a, c] : factors) s += Real(c.get_str()) * log_abs_one_minus_zeta(m, a * k);
    return s;
}

std::string CyclotomicUnit::to_json() const
{
    nlohmann::json j;
    j["m"] = m;
    j["T"] = T;
    nlohmann::json f = nlohmann::json::array();
    for (auto& [a, c] : factors) f.push_back({{"a", a}, {"exponent", c.get_str()}});
    j["factors"] = f;
    return j.dump();
}

LDerivative l_derivative_numeric(const DirichletChar& chi, const std::vector<long>& S, const std::vector<long>& T,
                                 int digits)
{
    if (chi.is_trivial()) throw std::invalid_argument("l_derivative_numeric: trivial character not supported");
    if (!chi.is_even()) throw std::invalid_argument("l_derivative_numeric: character must be even");
    if (digits > kMaxCertifiedDigits) throw std::invalid_argument("requested precision exceeds the certified range");
    check_primes(T, "T");
    check_disjoint(S, T);
    LDerivative out;
    out.order = vanishing_order(chi, S);
    DirichletChar p = chi.primitive();
    long f = p.modulus();
    out.error_bound = Real(f + 10) * pow(Real(10), -45);
    if (out.order > 1) { out.value = Complex(0); return out; }
    Complex s(0);
    for (long a = 1; a < f; ++a)
        if (p.log_value(a) >= 0) s += root_of_unity(p.order(), p.log_value(a)) * log_abs_one_minus_zeta(f, a);
    s *= Real(-1) / 2;
    for (long l : S)
        if (f % l != 0) s *= Complex(1) - root_of_unity(p.order(), p.log_value(l));
    for (long l : T)
        if (f % l != 0) s *= Complex(1) - root_of_unity(p.order(), p.log_value(l)) * Real(l);
    out.value = s;
    return out;
}

bool RubinStarkReport::matches() const { return max_error < pow(Real(10), -digits); }

std::string RubinStarkReport::to_json() const
{
    nlohmann::json j;
    j["m"] = m;
    j["S"] = S;
    j["T"] = T;
    j["torsion_free"] = torsion_free;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < places.size(); ++i)
        rows.push_back({{"place", places[i]}, {"recovered", real_str(recovered[i])}, {"expected", real_str(expected[i])}});
    j["log_abs"] = rows;
    j["max_error"] = real_str(max_error, 6);
    j["digits"] = digits;
    return j.dump();
}

RubinStarkReport rubin_stark_Q(long m, const std::vector<long>& T, int digits)
{
    if (m < 3) throw std::invalid_argument("rubin_stark_Q needs m >= 3");
    if (digits > kMaxCertifiedDigits) throw std::invalid_argument("requested precision exceeds the certified range");
    RubinStarkReport rep;
    rep.m = m;
    rep.S = prime_divisors_l(m);
    rep.T = T;
    rep.digits = digits;
    check_primes(T, "T");
    check_disjoint(rep.S, T);
    rep.torsion_free = std::any_of(T.begin(), T.end(), [](long l) { return l % 2 == 1; });

    UnitGroupMod U = unit_group_mod(m);
    Quotient q = quotient(*U.G, U.G->subgroup({U.of(m - 1)}));
    GroupPtr G = std::make_shared<const FiniteAbelianGroup>(q.q);
    const int n = G->order();
    long M = G->exponent();

    // theta^(1) coefficients c_g = (1/|G|) sum_psi L'_{S,T}(psi^{-1}, 0) conj(psi(g))
    std::vector<Complex> c(n, Complex(0));
    for (auto& psi : all_characters(G)) {
        DirichletChar chi = DirichletChar::from_quotient(U, q.proj, psi).inverse();
        Complex L(0);
        if (chi.is_trivial()) {
            if (rep.S.size() == 1) {
                Real v = -log(Real(rep.S[0])) / 2;
                for (long l : T) v *= Real(1 - l);
                L = Complex(v);
            }
        } else {
            LDerivative d = l_derivative_numeric(chi, rep.S, T, digits);
            if (d.order == 1) L = d.value;
        }
        for (int g = 0; g < n; ++g) c[g] += L * root_of_unity(M, -psi.log_value(g)) / Real(n);
    }

    CyclotomicUnit eps = cyclotomic_unit(m, T);
    rep.max_error = 0;
    auto record = [&](const std::string& label, const Complex& rec, const Real& expect) {
        rep.places.push_back(label);
        rep.recovered.push_back(rec.real());
        rep.expected.push_back(expect);
        Real err = abs(rec.real() - expect) + abs(rec.imag());
        if (err > rep.max_error) rep.max_error = err;
    };
    for (int g = 0; g < n; ++g) {
        long a = U.residue[q.section[g]];
        record("inf:" + std::to_string(a), -c[g], eps.log_abs(invmod_l(a, m)));
    }
    bool prime_power = rep.S.size() == 1;
    Int esum = 0;
    for (auto& [a, e] : eps.factors) esum += e;
    for (std::size_t si = 0; si < rep.S.size(); ++si) {
        long l = rep.S[si];
        long rest = m;
        while (rest % l == 0) rest /= l;
        std::vector<int> D;
        for (int x = 0; x < U.G->order(); ++x) {
            long r = U.residue[x] % rest;
            bool in = false;
            long pw = 1 % rest;
            for (long k = 0; k < rest + 1 && !in; ++k, pw = pw * l % rest) in = (r == pw);
            if (in) D.push_back(q.proj[x]);
        }
        std::vector<int> Dg = G->subgroup(D);
        Quotient cos = quotient(*G, Dg);
        for (int k = 0; k < cos.q.order(); ++k) {
            Complex s(0);
            if (si == 0)
                for (int g = 0; g < n; ++g)
                    if (cos.proj[g] == k) s += c[g];
            Real expect = prime_power ? -Real(esum.get_str()) / 2 * log(Real(l)) : Real(0);
            long a = U.residue[q.section[cos.section[k]]];
            record(std::to_string(l) + ":" + std::to_string(a), s, expect);
        }
    }
    return rep;
}

} // namespace starkit
