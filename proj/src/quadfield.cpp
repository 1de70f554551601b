#include "starkit/quadfield.hpp"

#include <json.hpp>

#include <algorithm>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

namespace starkit {

namespace {

Real to_real(const Rat& q) { return Real(q.get_num().get_str()) / Real(q.get_den().get_str()); }

Int isqrt(const Int& n)
{
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

long rat_mod(const Rat& q, long p)
{
    Int den = q.get_den();
    if (fmod(den, Int(p)) == 0) throw std::domain_error("denominator not invertible mod " + std::to_string(p));
    long n = fmod(q.get_num(), Int(p)).get_si();
    long dm = fmod(den, Int(p)).get_si();
    return (long)((__int128)n * invmod_l(dm, p) % p);
}

long omega_c0(long d) { return d * (d - 1) / 4; }   // omega^2 = d omega - c0

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

Int norm_b(const Int& b, const Int& a)
{
    // representative of b mod 2a in (-a, a]
    Int r = fmod(b, 2 * a);
    if (r > a) r -= 2 * a;
    return r;
}

IntVec pad(IntVec v, std::size_t n)
{
    v.resize(n, Int(0));
    return v;
}

} // namespace

// ---------------------------------------------------------------- numbers

QuadNumber QuadNumber::from_omega(long d, const Rat& x, const Rat& y)
{
    return QuadNumber(d, x + y * make_rat(d, 2), y / 2);
}

QuadNumber QuadNumber::operator+(const QuadNumber& o) const { return QuadNumber(d_, a_ + o.a_, b_ + o.b_); }
QuadNumber QuadNumber::operator-(const QuadNumber& o) const { return QuadNumber(d_, a_ - o.a_, b_ - o.b_); }

QuadNumber QuadNumber::operator*(const QuadNumber& o) const
{
    return QuadNumber(d_, a_ * o.a_ + b_ * o.b_ * d_, a_ * o.b_ + b_ * o.a_);
}

QuadNumber QuadNumber::inverse() const
{
    Rat n = norm();
    if (n == 0) throw std::domain_error("inverse of zero");
    return QuadNumber(d_, a_ / n, -b_ / n);
}

QuadNumber QuadNumber::pow(long k) const
{
    QuadNumber base = k < 0 ? inverse() : *this;
    unsigned long e = k < 0 ? -k : k;
    QuadNumber r(d_, 1);
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

bool QuadNumber::is_integral() const { return starkit::is_integral(trace()) && starkit::is_integral(norm()); }

Real QuadNumber::real_value() const
{
    if (d_ < 0) throw std::domain_error("real_value of an imaginary quadratic number");
    return to_real(a_) + to_real(b_) * sqrt(Real(d_));
}

Real QuadNumber::log_abs() const
{
    if (is_zero()) throw std::domain_error("log of zero");
    if (d_ < 0) return log(to_real(norm())) / 2;
    return log(abs(real_value()));
}

long QuadNumber::mod_prime(long q, long s) const
{
    return mod_l(rat_mod(a_, q) + (long)((__int128)rat_mod(b_, q) * mod_l(s, q) % q), q);
}

std::string QuadNumber::str() const
{
    std::ostringstream os;
    os << a_.get_str();
    if (b_ != 0) os << (b_ > 0 ? "+" : "-") << Rat(abs(b_)).get_str() << "*sqrt(" << d_ << ")";
    return os.str();
}

int real_sign(const QuadNumber& x)
{
    if (x.disc() < 0) throw std::domain_error("real_sign needs a real quadratic field");
    int sa = sgn(x.rational_part()), sb = sgn(x.sqrt_part());
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with b^2 d
    Rat diff = x.rational_part() * x.rational_part() - x.sqrt_part() * x.sqrt_part() * x.disc();
    return diff > 0 ? sa : sb;
}

// ---------------------------------------------------------------- ideals

QuadIdeal QuadIdeal::unit(long d) { return from_form(d, 1, d & 1); }

QuadIdeal QuadIdeal::from_form(long d, long a, long b)
{
    if (a <= 0 || mod_l(b * b - d, 4 * a) != 0) throw std::invalid_argument("not an ideal form");
    QuadIdeal I;
    I.d_ = d;
    I.m_ = 1;
    I.a_ = a;
    I.b_ = norm_b(Int(b), Int(a));
    return I;
}

QuadIdeal QuadIdeal::from_zspan(long d, const std::vector<QuadNumber>& gens)
{
    std::vector<IntVec> rows;
    for (auto& g : gens) {
        Rat x = g.omega_x(), y = g.omega_y();
        if (!is_integral(x) || !is_integral(y)) throw std::invalid_argument("ideal generators must be integral");
        rows.push_back({y.get_num(), x.get_num()});
    }
    HNFLattice L = hnf_rows(rows, 2);
    if (L.rank() != 2) throw std::invalid_argument("generators do not span a lattice of full rank");
    const Int& g = L.basis()[0][0];
    const Int& u0 = L.basis()[0][1];
    const Int& A = L.basis()[1][1];
    if (A % g != 0 || u0 % g != 0) throw std::invalid_argument("Z-span is not an ideal");
    QuadIdeal I;
    I.d_ = d;
    I.m_ = g;
    I.a_ = A / g;
    I.b_ = norm_b(2 * (u0 / g) + d, I.a_);
    if (fmod(I.b_ * I.b_ - d, 4 * I.a_) != 0) throw std::invalid_argument("Z-span is not an ideal");
    return I;
}

QuadIdeal QuadIdeal::principal(const QuadNumber& alpha)
{
    if (alpha.is_zero()) throw std::invalid_argument("zero ideal");
    QuadNumber w = QuadNumber::from_omega(alpha.disc(), 0, 1);
    return from_zspan(alpha.disc(), {alpha, alpha * w});
}

QuadNumber QuadIdeal::basis0() const { return QuadNumber(d_, Rat(m_ * a_)); }
QuadNumber QuadIdeal::basis1() const { return QuadNumber(d_, make_rat(m_ * b_, 2), make_rat(m_, 2)); }

bool QuadIdeal::contains(const QuadNumber& x) const
{
    Rat y = 2 * x.sqrt_part() / Rat(m_);
    if (!is_integral(y)) return false;
    Rat r = x.rational_part() / Rat(m_) - y * Rat(b_) / 2;
    if (!is_integral(r)) return false;
    return r.get_num() % a_ == 0;
}

QuadIdeal QuadIdeal::operator*(const QuadIdeal& o) const
{
    QuadNumber x0 = basis0(), x1 = basis1(), y0 = o.basis0(), y1 = o.basis1();
    return from_zspan(d_, {x0 * y0, x0 * y1, x1 * y0, x1 * y1});
}

QuadIdeal QuadIdeal::pow(long k) const
{
    if (k < 0) throw std::invalid_argument("negative ideal power");
    QuadIdeal r = unit(d_), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

QuadIdeal QuadIdeal::conj() const
{
    QuadIdeal I = *this;
    I.b_ = norm_b(-b_, a_);
    return I;
}

bool QuadIdeal::operator<(const QuadIdeal& o) const
{
    if (m_ != o.m_) return m_ < o.m_;
    if (a_ != o.a_) return a_ < o.a_;
    return b_ < o.b_;
}

std::string QuadIdeal::str() const
{
    std::ostringstream os;
    if (m_ != 1) os << m_.get_str() << "*";
    os << "[" << a_.get_str() << ", (" << b_.get_str() << "+sqrt(" << d_ << "))/2]";
    return os.str();
}

std::vector<QuadIdeal> primes_above(long d, long p)
{
    if (!is_prime_l(p)) throw std::invalid_argument("primes_above needs a prime");
    int s = kronecker_l(d, p);
    if (s == -1) return {QuadIdeal::principal(QuadNumber(d, p))};
    for (long b = 0; b < 2 * p; ++b)
        if (mod_l(b * b - d, 4 * p) == 0) {
            QuadIdeal P = QuadIdeal::from_form(d, p, b);
            if (s == 0) return {P};
            std::vector<QuadIdeal> out{P, P.conj()};
            std::sort(out.begin(), out.end());
            return out;
        }
    throw std::logic_error("no square root of d mod 4p");
}

long valuation(const QuadNumber& x, const QuadIdeal& P)
{
    if (x.is_zero()) throw std::domain_error("valuation of zero");
    Int n = lcm(x.omega_x().get_den(), x.omega_y().get_den());
    QuadNumber y = x * Rat(n);
    long p;
    long e = 1;
    if (P.content() != 1) {
        p = P.content().get_si();   // inert
    } else {
        p = P.a().get_si();
        if (kronecker_l(P.disc(), p) == 0) e = 2;
    }
    long v = 0;
    QuadIdeal Q = P;
    while (Q.contains(y)) {
        ++v;
        Q = Q * P;
    }
    long vn = 0;
    for (Int t = n; t % p == 0; t /= p) ++vn;
    return v - e * vn;
}

// ---------------------------------------------------------------- field

QuadField::QuadField(long d) : d_(d)
{
    if (d == 1 || !is_fundamental_discriminant(d)) throw std::invalid_argument("not a quadratic fundamental discriminant: " + std::to_string(d));
}

int QuadField::splitting(long p) const { return kronecker_l(d_, p); }

long QuadField::roots_of_unity() const { return d_ == -4 ? 4 : d_ == -3 ? 6 : 2; }

QuadNumber QuadField::torsion_generator() const
{
    if (d_ == -4) return QuadNumber(d_, 0, Rat(1, 2));
    if (d_ == -3) return QuadNumber(d_, Rat(1, 2), Rat(1, 2));
    return QuadNumber(d_, -1);
}

FundamentalUnit fundamental_unit(long d)
{
    static std::map<long, FundamentalUnit> cache;
    if (auto it = cache.find(d); it != cache.end()) return it->second;
    QuadField F(d);
    if (d < 0) throw std::invalid_argument("fundamental_unit needs d > 0");
    long s = isqrt(Int(d)).get_si();
    long b = (s % 2 == d % 2) ? s : s - 1;
    long P = b, Q = 2;
    FundamentalUnit out;
    QuadNumber prod(d, 1);
    do {
        long a = (P + s) / Q;
        long P1 = a * Q - P;
        long Q1 = (d - P1 * P1) / Q;
        P = P1;
        Q = Q1;
        prod = prod * QuadNumber(d, make_rat(P, Q), make_rat(1, Q));
        ++out.period;
    } while (!(P == b && Q == 2));
    Rat n = prod.norm();
    if (!prod.is_integral() || (n != 1 && n != -1)) throw std::logic_error("continued fraction did not produce a unit");
    out.eps = prod;
    out.norm = n == 1 ? 1 : -1;
    cache[d] = out;
    return out;
}

// ---------------------------------------------------------------- forms

bool Form::operator<(const Form& o) const
{
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
}

namespace {

long form_c(long d, long a, long b)
{
    __int128 num = (__int128)b * b - d;
    return (long)(num / (4 * (__int128)a));
}

bool indefinite_reduced(long s, const Form& f)
{
    long A = f.a < 0 ? -f.a : f.a;
    return f.b > 0 && f.b <= s && s < 2 * A + f.b && 2 * A - f.b <= s;
}

Form rho(long d, long s, const Form& f)
{
    long c = f.c, C = c < 0 ? -c : c;
    long m = 2 * C;
    long b;
    if (C > s) {
        b = mod_l(-f.b, m);
        if (b > C) b -= m;
    } else {
        b = s - mod_l(s + f.b, m);
    }
    return Form{c, b, form_c(d, c, b)};
}

} // namespace

Form reduce_form(long d, Form f)
{
    if (d < 0) {
        if (f.a <= 0) throw std::invalid_argument("definite forms must be positive");
        for (;;) {
            long m = 2 * f.a;
            long b = mod_l(f.b, m);
            if (b > f.a) b -= m;
            f = Form{f.a, b, form_c(d, f.a, b)};
            if (f.a > f.c) { f = Form{f.c, -f.b, f.a}; continue; }
            break;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        return f;
    }
    long s = isqrt(Int(d)).get_si();
    for (int it = 0; !indefinite_reduced(s, f); ++it) {
        if (it > 100000) throw std::logic_error("form reduction did not terminate");
        f = rho(d, s, f);
    }
    return f;
}

GroupModel build_group_model(int n, const std::function<int(int, int)>& mul, const std::vector<int>& candidates)
{
    GroupModel M;
    std::vector<int> members{0};
    std::vector<char> in(n, 0);
    in[0] = 1;
    M.dlog.assign(n, IntVec{});
    std::vector<int> order = candidates;
    for (int i = 0; i < n; ++i) order.push_back(i);
    for (int g : order) {
        if ((int)members.size() == n) break;
        if (in[g]) continue;
        std::size_t k = M.gens.size();
        int x = g;
        long e = 1;
        while (!in[x]) { x = mul(x, g); ++e; }
        IntVec rel = pad(M.dlog[x], k + 1);
        for (auto& r : rel) r = -r;
        rel[k] += e;
        M.relations.push_back(rel);
        std::size_t old = members.size();
        int cur = 0;
        for (long i = 1; i < e; ++i) {
            cur = cur == 0 ? g : mul(cur, g);
            for (std::size_t j = 0; j < old; ++j) {
                int y = mul(members[j], cur);
                IntVec v = pad(M.dlog[members[j]], k + 1);
                v[k] = i;
                M.dlog[y] = v;
                in[y] = 1;
                members.push_back(y);
            }
        }
        M.gens.push_back(g);
        M.gen_orders.push_back(e);
    }
    std::size_t k = M.gens.size();
    for (auto& v : M.dlog) v = pad(v, k);
    for (auto& r : M.relations) r = pad(r, k);
    if (k) M.structure = cokernel_structure(IntMatrix::from_rows(M.relations, k));
    return M;
}

FormClassGroup::FormClassGroup(long d) : d_(d)
{
    QuadField F(d);
    std::vector<Form> reduced;
    if (d < 0) {
        for (long a = 1; 3 * a * a <= -d; ++a)
            for (long b = -a + 1; b <= a; ++b) {
                if (mod_l(b * b - d, 4 * a) != 0) continue;
                long c = form_c(d, a, b);
                if (c < a || (a == c && b < 0)) continue;
                reduced.push_back(Form{a, b, c});
            }
        std::sort(reduced.begin(), reduced.end());
        for (auto& f : reduced) {
            reduced_to_narrow_[f] = (int)narrow_.size();
            narrow_.push_back(f);
        }
    } else {
        long s = isqrt(Int(d)).get_si();
        for (long b = 1; b <= s; ++b) {
            if ((b - d) % 2 != 0) continue;
            long N = (d - b * b) / 4;
            for (long A = 1; 2 * A - b <= s; ++A)
                if (N % A == 0 && s < 2 * A + b) {
                    reduced.push_back(Form{A, b, -N / A});
                    reduced.push_back(Form{-A, b, N / A});
                }
        }
        std::sort(reduced.begin(), reduced.end());
        std::map<Form, int> cyc;
        std::vector<Form> reps;
        for (auto& f : reduced) {
            if (cyc.count(f)) continue;
            int id = (int)reps.size();
            Form best = f.a > 0 ? f : Form{0, 0, 0};
            Form g = f;
            do {
                cyc[g] = id;
                if (g.a > 0 && (best.a == 0 || g < best)) best = g;
                g = rho(d, s, g);
            } while (!(g == f));
            reps.push_back(best);
        }
        // representatives ordered by the form, cycle ids relabelled accordingly
        std::vector<int> perm(reps.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = (int)i;
        std::sort(perm.begin(), perm.end(), [&](int x, int y) { return reps[x] < reps[y]; });
        std::vector<int> relabel(reps.size());
        for (std::size_t i = 0; i < perm.size(); ++i) {
            relabel[perm[i]] = (int)i;
            narrow_.push_back(reps[perm[i]]);
        }
        for (auto& [f, id] : cyc) reduced_to_narrow_[f] = relabel[id];
    }
    // the principal class first
    int one = narrow_class_of(QuadIdeal::unit(d));
    if (one != 0) {
        std::swap(narrow_[0], narrow_[one]);
        for (auto& [f, id] : reduced_to_narrow_) {
            if (id == 0) id = one;
            else if (id == one) id = 0;
        }
    }
    table_.assign(narrow_.size(), std::vector<int>(narrow_.size(), -1));
    int kappa = d > 0 ? narrow_class_of(QuadIdeal::principal(QuadNumber(d, 0, 1))) : 0;
    narrow_to_wide_.assign(narrow_.size(), -1);
    for (int x = 0; x < (int)narrow_.size(); ++x) {
        if (narrow_to_wide_[x] >= 0) continue;
        int w = (int)wide_rep_.size();
        wide_rep_.push_back(x);
        narrow_to_wide_[x] = w;
        narrow_to_wide_[narrow_mul(x, kappa)] = w;
    }
    model_ = build_group_model(order(), [this](int x, int y) { return mul(x, y); });
}

int FormClassGroup::narrow_of_form(Form f) const
{
    Form r = reduce_form(d_, f);
    auto it = reduced_to_narrow_.find(r);
    if (it == reduced_to_narrow_.end()) throw std::logic_error("reduced form missing from the class list");
    return it->second;
}

int FormClassGroup::narrow_class_of(const QuadIdeal& I) const
{
    if (I.disc() != d_) throw std::invalid_argument("ideal from another field");
    long a = I.a().get_si(), b = I.b().get_si();
    return narrow_of_form(Form{a, b, form_c(d_, a, b)});
}

int FormClassGroup::class_of(const QuadIdeal& I) const { return narrow_to_wide_[narrow_class_of(I)]; }

int FormClassGroup::narrow_mul(int x, int y) const
{
    int& t = table_[x][y];
    if (t >= 0) return t;
    QuadIdeal I = QuadIdeal::from_form(d_, narrow_[x].a, narrow_[x].b);
    QuadIdeal J = QuadIdeal::from_form(d_, narrow_[y].a, narrow_[y].b);
    t = narrow_class_of(I * J);
    table_[y][x] = t;
    return t;
}

QuadIdeal FormClassGroup::representative(int cls) const
{
    const Form& f = narrow_[wide_rep_.at(cls)];
    return QuadIdeal::from_form(d_, f.a, f.b);
}

int FormClassGroup::mul(int x, int y) const { return narrow_to_wide_[narrow_mul(wide_rep_[x], wide_rep_[y])]; }

int FormClassGroup::inv(int x) const { return class_of(representative(x).conj()); }

std::string FormClassGroup::to_json() const
{
    nlohmann::json j;
    j["disc"] = d_;
    j["class_number"] = order();
    j["narrow_class_number"] = narrow_order();
    std::vector<std::string> inv;
    for (auto& t : structure().torsion) inv.push_back(t.get_str());
    j["invariants"] = inv;
    return j.dump();
}

const FormClassGroup& class_group(long d)
{
    static std::map<long, std::unique_ptr<FormClassGroup>> cache;
    auto& slot = cache[d];
    if (!slot) slot = std::make_unique<FormClassGroup>(d);
    return *slot;
}

std::optional<QuadNumber> principal_generator(const QuadIdeal& I)
{
    long d = I.disc();
    Int N = I.norm();
    auto try_xy = [&](const Int& X, const Int& Y) -> std::optional<QuadNumber> {
        if (fmod(X - Y * d, Int(2)) != 0) return std::nullopt;
        QuadNumber a(d, make_rat(X, 2), make_rat(Y, 2));
        if (I.contains(a)) return a;
        return std::nullopt;
    };
    if (d < 0) {
        for (Int Y = 0; Y * Y * (-d) <= 4 * N; ++Y) {
            Int X2 = 4 * N + d * Y * Y;
            if (!is_square(X2)) continue;
            Int X = isqrt(X2);
            for (int sx : {1, -1})
                for (int sy : {1, -1})
                    if (auto a = try_xy(sx * X, sy * Y)) return a;
        }
        return std::nullopt;
    }
    Real eps = fundamental_unit(d).eps.real_value();
    Real bound = (eps + 1) * sqrt(to_real(Rat(N))) / sqrt(Real(d)) + 1;
    if (bound > Real(1e8)) throw std::runtime_error("principal_generator: search range too large");
    long Ymax = (long)bound;
    for (int sn : {1, -1})
        for (long y = 0; y <= Ymax; ++y) {
            Int Y = y;
            Int X2 = 4 * sn * N + d * Y * Y;
            if (!is_square(X2)) continue;
            Int X = isqrt(X2);
            for (int sx : {1, -1})
                for (int sy : {1, -1})
                    if (auto a = try_xy(sx * X, sy * Y)) return a;
        }
    return std::nullopt;
}

// ---------------------------------------------------------------- (O/m_T)^x

ResidueUnits::ResidueUnits(long d, std::vector<long> T) : d_(d), T_(std::move(T))
{
    check_primes(T_, "T");
    long c0 = omega_c0(d);
    for (long l : T_) {
        int s = kronecker_l(d, l);
        if (s == -1) {
            long q = l * l - 1;
            auto mulf = [&](long x1, long y1, long x2, long y2, long& x, long& y) {
                long yy = y1 * y2 % l;
                x = mod_l(x1 * x2 - mod_l(c0, l) * yy, l);
                y = mod_l(x1 * y2 + x2 * y1 + mod_l(d, l) * yy, l);
            };
            std::vector<long> tab;
            for (long cand = l; cand < l * l; ++cand) {
                long gx = cand / l, gy = cand % l;
                tab.assign(l * l, -1);
                long x = 1, y = 0;
                long k = 0;
                for (; k < q; ++k) {
                    if (tab[x * l + y] >= 0) break;
                    tab[x * l + y] = k;
                    long nx, ny;
                    mulf(x, y, gx, gy, nx, ny);
                    x = nx;
                    y = ny;
                }
                if (k == q) break;
            }
            if (q > 1) {
                comps_.push_back(Comp{l, -1, 0, -1});
                orders_.push_back(q);
                logtab_.push_back(tab);
            }
            continue;
        }
        if (l == 2) continue;   // F_2^x is trivial
        long g = primitive_root_l(l);
        std::vector<long> tab(l, -1);
        long x = 1;
        for (long k = 0; k < l - 1; ++k) { tab[x] = k; x = x * g % l; }
        std::vector<long> roots;
        for (long r = 0; r < l; ++r)
            if (mod_l(r * r - d * r + c0, l) == 0) roots.push_back(r);
        std::size_t first = comps_.size();
        for (std::size_t i = 0; i < roots.size(); ++i) {
            comps_.push_back(Comp{l, s, roots[i], s == 1 ? (int)(first + 1 - i) : (int)(first + i)});
            orders_.push_back(l - 1);
            logtab_.push_back(tab);
        }
    }
}

Int ResidueUnits::order() const
{
    Int o = 1;
    for (long n : orders_) o *= n;
    return o;
}

long ResidueUnits::comp_log(std::size_t i, const QuadNumber& x) const
{
    const Comp& c = comps_[i];
    long l = c.ell;
    long X = rat_mod(x.omega_x(), l), Y = rat_mod(x.omega_y(), l);
    long k;
    if (c.kind == -1) k = logtab_[i][X * l + Y];
    else k = logtab_[i][mod_l(X + Y * c.root, l)];
    if (k < 0) throw std::domain_error("element is not prime to T");
    return k;
}

IntVec ResidueUnits::log(const QuadNumber& x) const
{
    IntVec v;
    for (std::size_t i = 0; i < comps_.size(); ++i) v.push_back(Int(comp_log(i, x)));
    return v;
}

IntVec ResidueUnits::conj(const IntVec& v) const
{
    IntVec out(v.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        const Comp& c = comps_[i];
        if (c.kind == -1) out[i] = fmod(v[i] * c.ell, Int(orders_[i]));
        else out[c.partner] = v[i];
    }
    return out;
}

// ---------------------------------------------------------------- Cl^T_S

RayClassT::RayClassT(long d, std::vector<long> T, std::vector<long> S)
    : d_(d), T_(std::move(T)), S_(std::move(S)), A_(d, T_)
{
    QuadField F(d);
    check_primes(S_, "S");
    check_disjoint(S_, T_);
    const FormClassGroup& Cl = class_group(d);
    h_ = Cl.order();
    res_order_ = A_.order();

    // prime ideals prime to T whose classes generate Cl
    std::vector<QuadIdeal> cand;
    std::vector<int> cand_cls;
    for (long bound = 64;; bound *= 2) {
        cand.clear();
        cand_cls.clear();
        for (long p = 2; p < bound; ++p) {
            if (!is_prime_l(p) || std::find(T_.begin(), T_.end(), p) != T_.end()) continue;
            if (kronecker_l(d, p) == -1) continue;
            for (auto& P : primes_above(d, p)) {
                cand.push_back(P);
                cand_cls.push_back(Cl.class_of(P));
            }
        }
        clmodel_ = build_group_model(Cl.order(), [&](int x, int y) { return Cl.mul(x, y); }, cand_cls);
        bool ok = true;
        for (int g : clmodel_.gens)
            if (std::find(cand_cls.begin(), cand_cls.end(), g) == cand_cls.end()) ok = false;
        if (ok) break;
        if (bound > 100000) throw std::runtime_error("could not find prime generators of the class group");
    }
    for (int g : clmodel_.gens) {
        auto it = std::find(cand_cls.begin(), cand_cls.end(), g);
        gens_.push_back(cand[it - cand_cls.begin()]);
        gen_cls_.push_back(g);
    }
    const std::size_t k = gens_.size(), t = A_.orders().size(), N = k + t;
    long hl = h_.get_si();

    std::vector<IntVec> rels;
    for (std::size_t i = 0; i < t; ++i) {
        IntVec r(N);
        r[k + i] = A_.orders()[i];
        rels.push_back(r);
    }
    auto principal_row = [&](const IntVec& v) {
        QuadIdeal J = QuadIdeal::unit(d);
        for (std::size_t i = 0; i < k; ++i) J = J * gens_[i].pow(v[i].get_si());
        auto alpha = principal_generator(J);
        if (!alpha) throw std::logic_error("expected a principal ideal: " + J.str());
        IntVec lg = A_.log(*alpha);
        IntVec r(N);
        for (std::size_t i = 0; i < k; ++i) r[i] = v[i];
        for (std::size_t i = 0; i < t; ++i) r[k + i] = -lg[i];
        rels.push_back(r);
    };
    for (auto& rel : clmodel_.relations) {
        IntVec v(k);
        for (std::size_t i = 0; i < k; ++i) v[i] = fmod(rel[i], Int(hl));
        principal_row(v);
    }
    for (std::size_t i = 0; i < k; ++i) {
        IntVec v(k);
        v[i] = hl;
        principal_row(v);
    }
    std::vector<QuadNumber> units{F.torsion_generator()};
    if (d > 0) units.push_back(fundamental_unit(d).eps);
    std::vector<IntVec> unit_rows;
    for (auto& u : units) {
        IntVec lg = A_.log(u);
        IntVec r(N);
        for (std::size_t i = 0; i < t; ++i) r[k + i] = lg[i];
        rels.push_back(r);
        unit_rows.push_back(lg);
    }
    {
        std::vector<IntVec> ar;
        for (std::size_t i = 0; i < t; ++i) {
            IntVec r(t);
            r[i] = A_.orders()[i];
            ar.push_back(r);
        }
        for (auto& u : unit_rows) ar.push_back(u);
        unit_image_ = t ? res_order_ / cokernel_structure(IntMatrix::from_rows(ar, t)).order() : Int(1);
    }
    QuadNumber z = F.torsion_generator();
    long w = F.roots_of_unity();
    for (long j = 1; j < w && t; ++j) {
        IntVec lg = A_.log(z.pow(j));
        bool zero = true;
        for (std::size_t i = 0; i < t; ++i)
            if (lg[i] != 0) zero = false;
        if (zero) torsion_free_ = false;
    }
    if (t == 0 && w > 1) torsion_free_ = false;

    for (long p : S_)
        for (auto& P : primes_above(d, p)) rels.push_back(raw_log(P));

    if (N == 0) {
        st_ = AbelianStructure{};
        conj_ = IntMatrix(0, 0);
        return;
    }
    SNF s = snf(IntMatrix::from_rows(rels, N));
    V_ = s.V;
    diag_ = s.diag;
    if (diag_.size() < N) throw std::logic_error("ray class group is infinite");
    for (std::size_t i = 0; i < N; ++i) {
        if (diag_[i] == 0) throw std::logic_error("ray class group is infinite");
        if (diag_[i] != 1) {
            keep_.push_back(i);
            st_.torsion.push_back(diag_[i]);
        }
    }
    // conjugation on raw generators
    IntMatrix C(N, N);
    for (std::size_t j = 0; j < k; ++j) {
        IntVec r = raw_log(gens_[j].conj());
        for (std::size_t c = 0; c < N; ++c) C(j, c) = r[c];
    }
    for (std::size_t i = 0; i < t; ++i) {
        IntVec e(t);
        e[i] = 1;
        IntVec r = A_.conj(e);
        for (std::size_t c = 0; c < t; ++c) C(k + i, k + c) = r[c];
    }
    conj_ = IntMatrix(keep_.size(), keep_.size());
    for (std::size_t a = 0; a < keep_.size(); ++a) {
        IntVec raw(N);
        for (std::size_t c = 0; c < N; ++c) raw[c] = s.Vinv(keep_[a], c);
        IntVec img(N);
        for (std::size_t r = 0; r < N; ++r)
            if (raw[r] != 0)
                for (std::size_t c = 0; c < N; ++c) img[c] += raw[r] * C(r, c);
        IntVec sm = smith(img);
        for (std::size_t b = 0; b < keep_.size(); ++b) conj_(a, b) = sm[b];
    }
}

IntVec RayClassT::raw_log(const QuadIdeal& I) const
{
    for (long l : T_)
        if (I.norm() % l == 0) throw std::invalid_argument("ideal is not prime to T");
    const FormClassGroup& Cl = class_group(d_);
    const std::size_t k = gens_.size(), t = A_.orders().size();
    int target = Cl.inv(Cl.class_of(I));
    const IntVec& e = clmodel_.dlog[target];
    QuadIdeal J = I;
    for (std::size_t i = 0; i < k; ++i) J = J * gens_[i].pow(e[i].get_si());
    auto alpha = principal_generator(J);
    if (!alpha) throw std::logic_error("expected a principal ideal: " + J.str());
    IntVec lg = A_.log(*alpha);
    IntVec r(k + t);
    for (std::size_t i = 0; i < k; ++i) r[i] = -e[i];
    for (std::size_t i = 0; i < t; ++i) r[k + i] = lg[i];
    return r;
}

IntVec RayClassT::smith(const IntVec& raw) const
{
    IntVec out;
    for (std::size_t i : keep_) {
        Int s = 0;
        for (std::size_t r = 0; r < raw.size(); ++r) s += raw[r] * V_(r, i);
        out.push_back(fmod(s, diag_[i]));
    }
    return out;
}

IntVec RayClassT::log(const QuadIdeal& I) const
{
    if (keep_.empty()) return {};
    return smith(raw_log(I));
}

IntVec RayClassT::reduce(const IntVec& v) const
{
    IntVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = fmod(v[i], st_.torsion[i]);
    return out;
}

bool RayClassT::is_zero(const IntVec& v) const
{
    for (auto& x : reduce(v))
        if (x != 0) return false;
    return true;
}

IntVec RayClassT::act(long a, long b, const IntVec& v) const
{
    std::size_t n = v.size();
    IntVec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a * v[i];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[j] += b * v[i] * conj_(i, j);
    return reduce(out);
}

PresentedModule RayClassT::galois_module() const
{
    GroupPtr G = make_group({2});
    std::size_t n = keep_.size();
    PresentedModule M(G, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        M.at(i, i) = ZG(G, 0, st_.torsion[i]);
        // sigma e_i - conj(e_i)
        M.at(i, n + i) = ZG(G, 1, Int(1));
        for (std::size_t j = 0; j < n; ++j)
            if (conj_(i, j) != 0) M.at(j, n + i) += ZG(G, 0, Int(-conj_(i, j)));
    }
    return M;
}

std::string RayClassT::to_json() const
{
    nlohmann::json j;
    j["disc"] = d_;
    j["T"] = T_;
    j["S"] = S_;
    std::vector<std::string> inv;
    for (auto& x : st_.torsion) inv.push_back(x.get_str());
    j["invariants"] = inv;
    j["order"] = order().get_str();
    j["class_number"] = h_.get_str();
    j["residue_order"] = res_order_.get_str();
    j["unit_image_order"] = unit_image_.get_str();
    j["torsion_free"] = torsion_free_;
    return j.dump();
}

RayClassT ray_class_T(long d, const std::vector<long>& T, const std::vector<long>& S) { return RayClassT(d, T, S); }

// ---------------------------------------------------------------- S-units

SUnitBasis::SUnitBasis(long d, std::vector<long> S) : d_(d), S_(std::move(S))
{
    QuadField F(d);
    check_primes(S_, "S");
    w_ = F.roots_of_unity();
    gens_.push_back(F.torsion_generator());
    if (d > 0) gens_.push_back(fundamental_unit(d).eps);
    for (long p : S_)
        for (auto& P : primes_above(d, p)) places_.push_back(P);
    const std::size_t s = places_.size();
    const FormClassGroup& Cl = class_group(d);
    const GroupModel& M = Cl.model();
    const std::size_t k = M.gens.size();
    std::vector<IntVec> kernel;
    if (k == 0) {
        for (std::size_t i = 0; i < s; ++i) {
            IntVec v(s);
            v[i] = 1;
            kernel.push_back(v);
        }
    } else if (s) {
        std::vector<IntVec> rows;
        for (auto& P : places_) rows.push_back(M.dlog[Cl.class_of(P)]);
        for (auto& r : M.relations) rows.push_back(r);
        HNFLattice K = left_kernel(IntMatrix::from_rows(rows, k));
        std::vector<IntVec> proj;
        for (auto& v : K.basis()) proj.push_back(IntVec(v.begin(), v.begin() + s));
        kernel = hnf_rows(proj, s).basis();
    }
    sbasis_ = kernel;
    for (auto& v : sbasis_) {
        QuadIdeal J = QuadIdeal::unit(d);
        Int D = 1;
        for (std::size_t i = 0; i < s; ++i) {
            long e = v[i].get_si();
            if (e > 0) J = J * places_[i].pow(e);
            if (e < 0) {
                J = J * places_[i].conj().pow(-e);
                for (long j = 0; j < -e; ++j) D *= places_[i].norm();
            }
        }
        auto alpha = principal_generator(J);
        if (!alpha) throw std::logic_error("expected a principal ideal: " + J.str());
        gens_.push_back(*alpha * make_rat(1, D));
    }
    vals_ = IntMatrix(gens_.size(), s);
    for (std::size_t g = 0; g < gens_.size(); ++g)
        for (std::size_t j = 0; j < s; ++j) vals_(g, j) = valuation(gens_[g], places_[j]);
    conj_ = IntMatrix(gens_.size(), gens_.size());
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        auto c = coordinates(gens_[g].conj());
        if (!c) throw std::logic_error("conjugate is not an S-unit");
        for (std::size_t j = 0; j < gens_.size(); ++j) conj_(g, j) = (*c)[j];
    }
}

QuadNumber SUnitBasis::value(const IntVec& c) const
{
    QuadNumber r(d_, 1);
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (c[i] != 0) r = r * gens_[i].pow(c[i].get_si());
    return r;
}

IntVec SUnitBasis::normalize(IntVec c) const
{
    c[0] = fmod(c[0], Int(w_));
    return c;
}

std::optional<IntVec> SUnitBasis::coordinates(const QuadNumber& x) const
{
    if (x.is_zero()) return std::nullopt;
    const std::size_t s = places_.size(), ng = gens_.size(), first = ng - sbasis_.size();
    IntVec out(ng);
    QuadNumber y = x;
    if (s) {
        IntVec vals(s);
        for (std::size_t j = 0; j < s; ++j) vals[j] = valuation(x, places_[j]);
        IntVec c;
        if (sbasis_.empty()) {
            for (auto& v : vals)
                if (v != 0) return std::nullopt;
        } else {
            if (!solve_left(IntMatrix::from_rows(sbasis_, s), vals, c)) return std::nullopt;
            for (std::size_t i = 0; i < c.size(); ++i) {
                out[first + i] = c[i];
                if (c[i] != 0) y = y / gens_[first + i].pow(c[i].get_si());
            }
        }
    }
    Rat n = y.norm();
    if (!y.is_integral() || (n != 1 && n != -1)) return std::nullopt;
    if (d_ > 0) {
        Real r = y.log_abs() / gens_[1].log_abs();
        long a = (long)round(r).convert_to<long>();
        out[1] = a;
        y = y / gens_[1].pow(a);
    }
    QuadNumber z(d_, 1);
    for (long k = 0; k < w_; ++k) {
        if (z == y) {
            out[0] = k;
            return out;
        }
        z = z * gens_[0];
    }
    return std::nullopt;
}

std::vector<IntVec> SUnitBasis::t_congruent_basis(const std::vector<long>& T) const
{
    check_disjoint(S_, T);
    ResidueUnits A(d_, T);
    const std::size_t ng = gens_.size(), t = A.orders().size();
    if (t == 0) {
        std::vector<IntVec> id;
        for (std::size_t i = 0; i < ng; ++i) {
            IntVec v(ng);
            v[i] = 1;
            id.push_back(v);
        }
        return id;
    }
    std::vector<IntVec> rows;
    for (auto& g : gens_) rows.push_back(A.log(g));
    for (std::size_t i = 0; i < t; ++i) {
        IntVec r(t);
        r[i] = A.orders()[i];
        rows.push_back(r);
    }
    HNFLattice K = left_kernel(IntMatrix::from_rows(rows, t));
    std::vector<IntVec> proj;
    for (auto& v : K.basis()) proj.push_back(IntVec(v.begin(), v.begin() + ng));
    return hnf_rows(proj, ng).basis();
}

std::string SUnitBasis::to_json() const
{
    nlohmann::json j;
    j["disc"] = d_;
    j["S"] = S_;
    std::vector<std::string> pl, gs;
    for (auto& P : places_) pl.push_back(P.str());
    for (auto& g : gens_) gs.push_back(g.str());
    j["places"] = pl;
    j["generators"] = gs;
    j["torsion_order"] = w_;
    return j.dump();
}

SUnitBasis s_units(long d, const std::vector<long>& S) { return SUnitBasis(d, S); }

// ---------------------------------------------------------------- local symbols

namespace {

// a = p^v u with u an integer prime to p; a is a nonzero integer
void split_p(Int a, long p, long& v, Int& u)
{
    v = 0;
    while (a % p == 0) { a /= p; ++v; }
    u = a;
}

int legendre(const Int& u, long p)
{
    Int pp = p;
    return mpz_legendre(fmod(u, pp).get_mpz_t(), pp.get_mpz_t());
}

} // namespace

int hilbert_symbol(const Rat& a0, const Rat& b0, long p)
{
    if (a0 == 0 || b0 == 0) throw std::domain_error("hilbert symbol of zero");
    Int a = a0.get_num() * a0.get_den(), b = b0.get_num() * b0.get_den();
    if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
    if (!is_prime_l(p)) throw std::invalid_argument("hilbert symbol needs a prime or 0");
    long al, be;
    Int u, v;
    split_p(a, p, al, u);
    split_p(b, p, be, v);
    if (p != 2) {
        int s = 1;
        if ((al * be) % 2 == 1 && p % 4 == 3) s = -s;
        if (be % 2 == 1) s *= legendre(u, p);
        if (al % 2 == 1) s *= legendre(v, p);
        return s;
    }
    auto eps = [](const Int& x) { return fmod(x, Int(4)) == 3 ? 1 : 0; };
    auto om = [](const Int& x) {
        Int r = fmod(x, Int(8));
        return (r == 3 || r == 5) ? 1 : 0;
    };
    int e = eps(u) * eps(v) + (al % 2) * om(v) + (be % 2) * om(u);
    return e % 2 ? -1 : 1;
}

LocalImage local_image(const QuadNumber& x, const QuadIdeal& P, int k)
{
    if (P.content() != 1) throw std::invalid_argument("local_image needs a degree-one prime");
    long p = P.a().get_si();
    long d = P.disc();
    if (kronecker_l(d, p) != 1) throw std::invalid_argument("local_image needs a split prime");
    if (x.is_zero()) throw std::domain_error("local_image of zero");
    Int n = lcm(x.omega_x().get_den(), x.omega_y().get_den());
    QuadNumber y = x * Rat(n);
    long vy = valuation(y, P);
    long M = vy + k;
    QuadIdeal PM = P.pow(M);
    Int pM = PM.a();
    Int root = fmod((Int(d) - PM.b()) / 2, pM);
    Int z = fmod(y.omega_x().get_num() + y.omega_y().get_num() * root, pM);
    LocalImage li;
    Int pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    for (long i = 0; i < vy; ++i) {
        if (z % p != 0) throw std::logic_error("local valuation mismatch");
        z /= p;
    }
    long vn = 0;
    Int nu = n;
    while (nu % p == 0) { nu /= p; ++vn; }
    li.valuation = vy - vn;
    Int inv;
    Int nm = fmod(nu, pk);
    mpz_invert(inv.get_mpz_t(), nm.get_mpz_t(), pk.get_mpz_t());
    li.unit = fmod(z * inv, pk);
    return li;
}

long cyclotomic_rec(const QuadNumber& x, const QuadIdeal& lambda)
{
    LocalImage li = local_image(x, lambda, 1);
    long l = lambda.a().get_si();
    return invmod_l(li.unit.get_si(), l);
}

long rec_quotient_log(long c, long ell, long order)
{
    if ((ell - 1) % order != 0) throw std::invalid_argument("quotient order must divide l - 1");
    if (mod_l(c, ell) == 0) throw std::domain_error("not a unit mod l");
    long g = primitive_root_l(ell), x = 1;
    for (long k = 0; k < ell - 1; ++k, x = x * g % ell)
        if (x == mod_l(c, ell)) return k % order;
    throw std::logic_error("discrete log failed");
}

} // namespace starkit
