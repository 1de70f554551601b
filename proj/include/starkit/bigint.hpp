#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace starkit {

using Int = mpz_class;
using Rat = mpq_class;

inline std::string to_dec(const Int& x) { return x.get_str(10); }

inline Int parse_int(const std::string& s)
{
    Int r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad integer literal: " + s);
    return r;
}

inline Rat make_rat(const Int& n, const Int& d)
{
    if (d == 0) throw std::domain_error("zero denominator");
    Rat q(n, d);
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rat& q) { return q.get_den() == 1; }

inline Int gcd(const Int& a, const Int& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b)
{
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/* floor division and nonnegative remainder */
inline Int fdiv(const Int& a, const Int& b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int fmod(const Int& a, const Int& b)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r < 0) r += abs(b);
    return r;
}

inline long gcd_l(long a, long b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { long t = a % b; a = b; b = t; }
    return a;
}

inline long lcm_l(long a, long b) { return a / gcd_l(a, b) * b; }

inline long mod_l(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

long powmod_l(long b, long e, long m);
long invmod_l(long a, long m);
bool is_prime_l(long n);
std::vector<std::pair<long, int>> factor_l(long n);
bool is_squarefree_l(long n);
long primitive_root_l(long p);
// Kronecker symbol (a/n), n > 0
int kronecker_l(long a, long n);
bool is_fundamental_discriminant(long d);
std::vector<long> prime_divisors_l(long n);

} // namespace starkit
