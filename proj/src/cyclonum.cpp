#include "starkit/cyclonum.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace starkit {

long euler_phi(long m)
{
    long r = m;
    for (auto& [p, e] : factor_l(m)) r = r / p * (p - 1);
    return r;
}

std::vector<Int> cyclotomic_poly(long m)
{
    static std::mutex mu;
    static std::map<long, std::vector<Int>> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
    }
    // x^m - 1 divided by Phi_d for proper divisors d
    std::vector<Int> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (long d = 1; d < m; ++d) {
        if (m % d) continue;
        std::vector<Int> den = cyclotomic_poly(d);
        std::size_t dn = den.size() - 1;
        std::vector<Int> q(num.size() - dn, 0);
        for (std::size_t i = num.size(); i-- > dn;) {
            Int c = num[i];
            if (c == 0) continue;
            q[i - dn] = c;
            for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
        }
        num = q;
    }
    std::lock_guard<std::mutex> lk(mu);
    cache[m] = num;
    return num;
}

struct CycloField {
    long m, phi;
    std::vector<std::vector<Int>> pw;   // zeta^k in the power basis, k in [0, m)
};

namespace {

std::shared_ptr<const CycloField> field(long m)
{
    static std::mutex mu;
    static std::map<long, std::shared_ptr<const CycloField>> cache;
    if (m < 1 || m > 240) throw std::invalid_argument("cyclotomic modulus out of range [1,240]: " + std::to_string(m));
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<CycloField>();
    f->m = m;
    std::vector<Int> phi = cyclotomic_poly(m);
    f->phi = (long)phi.size() - 1;
    std::vector<Int> cur(f->phi, 0);
    cur[0] = 1;
    for (long k = 0; k < m; ++k) {
        f->pw.push_back(cur);
        // multiply by zeta: shift, then reduce the overflow with the monic Phi_m
        Int top = cur[f->phi - 1];
        for (long i = f->phi - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (long i = 0; i < f->phi; ++i) cur[i] -= top * phi[i];
    }
    cache[m] = f;
    return f;
}

} // namespace

CycloNumber::CycloNumber(long m) : m_(m), f_(field(m)) { c_.assign(f_->phi, Rat(0)); }

CycloNumber::CycloNumber(long m, const Rat& q) : CycloNumber(m) { c_[0] = q; }

CycloNumber CycloNumber::zeta_pow(long m, long k)
{
    CycloNumber z(m);
    const auto& v = z.f_->pw[mod_l(k, m)];
    for (std::size_t i = 0; i < v.size(); ++i) z.c_[i] = v[i];
    return z;
}

bool CycloNumber::is_zero() const
{
    for (auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycloNumber::is_rational() const
{
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat CycloNumber::rational_value() const
{
    if (!is_rational()) throw std::domain_error("cyclotomic number is not rational");
    return c_[0];
}

static void check_same(const CycloNumber& a, const CycloNumber& b)
{
    if (a.modulus() != b.modulus()) throw std::invalid_argument("cyclotomic modulus mismatch");
}

CycloNumber CycloNumber::operator+(const CycloNumber& o) const
{
    check_same(*this, o);
    CycloNumber r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

CycloNumber CycloNumber::operator-(const CycloNumber& o) const
{
    check_same(*this, o);
    CycloNumber r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

CycloNumber CycloNumber::operator-() const
{
    CycloNumber r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

void CycloNumber::reduce_from(const std::vector<Rat>& full)
{
    for (std::size_t k = 0; k < full.size(); ++k) {
        if (full[k] == 0) continue;
        if ((long)k < f_->phi) { c_[k] += full[k]; continue; }
        const auto& v = f_->pw[k % m_];
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) c_[i] += full[k] * v[i];
    }
}

CycloNumber CycloNumber::operator*(const CycloNumber& o) const
{
    check_same(*this, o);
    std::size_t n = c_.size();
    std::vector<Rat> full(2 * n - 1, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (o.c_[j] != 0) full[i + j] += c_[i] * o.c_[j];
    }
    CycloNumber r(m_);
    r.reduce_from(full);
    return r;
}

CycloNumber CycloNumber::operator*(const Rat& q) const
{
    CycloNumber r = *this;
    for (auto& x : r.c_) x *= q;
    return r;
}

bool CycloNumber::operator==(const CycloNumber& o) const { return m_ == o.m_ && c_ == o.c_; }

CycloNumber CycloNumber::galois(long a) const
{
    if (gcd_l(a, m_) != 1) throw std::invalid_argument("galois exponent not a unit");
    std::vector<Rat> full(m_, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) full[mod_l(a * (long)i, m_)] += c_[i];
    CycloNumber r(m_);
    r.reduce_from(full);
    return r;
}

CycloNumber CycloNumber::lift(long M) const
{
    if (M % m_) throw std::invalid_argument("lift target not a multiple of the modulus");
    long s = M / m_;
    std::vector<Rat> full(M, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) full[(s * (long)i) % M] += c_[i];
    CycloNumber r(M);
    r.reduce_from(full);
    return r;
}

CycloNumber unify(const CycloNumber& x, long M) { return x.modulus() == M ? x : x.lift(M); }

std::complex<long double> CycloNumber::embed(long k) const
{
    const long double two_pi = 6.283185307179586476925286766559L;
    std::complex<long double> s = 0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        long double ang = two_pi * (long double)mod_l(k * (long)i, m_) / (long double)m_;
        s += (long double)c_[i].get_d() * std::complex<long double>(std::cos(ang), std::sin(ang));
    }
    return s;
}

std::string CycloNumber::str() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i].get_str();
        if (i) os << "*z" << m_ << '^' << i;
    }
    if (first) os << '0';
    return os.str();
}

} // namespace starkit
