#include "starkit/bigint.hpp"

#include <stdexcept>

namespace starkit {

long powmod_l(long b, long e, long m)
{
    if (m == 1) return 0;
    __int128 r = 1, x = mod_l(b, m);
    while (e > 0) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return (long)r;
}

long invmod_l(long a, long m)
{
    long g = m, x = 0, x1 = 1, a1 = mod_l(a, m);
    while (a1) {
        long q = g / a1;
        long t = g - q * a1; g = a1; a1 = t;
        t = x - q * x1; x = x1; x1 = t;
    }
    if (g != 1) throw std::domain_error("not invertible mod " + std::to_string(m));
    return mod_l(x, m);
}

bool is_prime_l(long n)
{
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::vector<std::pair<long, int>> factor_l(long n)
{
    std::vector<std::pair<long, int>> f;
    if (n < 0) n = -n;
    for (long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) f.push_back({p, e});
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

bool is_squarefree_l(long n)
{
    for (auto& [p, e] : factor_l(n))
        if (e > 1) return false;
    return true;
}

long primitive_root_l(long p)
{
    auto fs = factor_l(p - 1);
    for (long g = 2; g < p; ++g) {
        bool ok = true;
        for (auto& [q, e] : fs)
            if (powmod_l(g, (p - 1) / q, p) == 1) { ok = false; break; }
        if (ok) return g;
    }
    return 1;
}

int kronecker_l(long a, long n)
{
    if (n <= 0) throw std::invalid_argument("kronecker: n must be positive");
    int r = 1;
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        long a8 = mod_l(a, 8);
        if (a8 == 3 || a8 == 5) r = -r;
    }
    // Jacobi symbol for odd n
    a = mod_l(a, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long n8 = n % 8;
            if (n8 == 3 || n8 == 5) r = -r;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) r = -r;
        a %= n;
    }
    return n == 1 ? r : 0;
}

bool is_fundamental_discriminant(long d)
{
    if (d == 0 || d == 1) return false;
    long m = mod_l(d, 4);
    if (m == 1) return is_squarefree_l(d);
    if (m != 0) return false;
    long e = d / 4;
    long em = mod_l(e, 4);
    return (em == 2 || em == 3) && is_squarefree_l(e);
}

std::vector<long> prime_divisors_l(long n)
{
    std::vector<long> out;
    for (auto& [p, e] : factor_l(n)) out.push_back(p);
    return out;
}

} // namespace starkit
