#pragma once

#include "starkit/bigint.hpp"

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace starkit {

struct CycloField;

// element of Q(zeta_m), stored in the power basis 1, zeta, ..., zeta^(phi(m)-1)
class CycloNumber {
public:
    CycloNumber() : CycloNumber(1) {}
    explicit CycloNumber(long m);
    CycloNumber(long m, const Rat& q);

    static CycloNumber zeta_pow(long m, long k);

    long modulus() const { return m_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    std::size_t degree() const { return c_.size(); }

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_value() const;   // throws unless rational

    CycloNumber operator+(const CycloNumber& o) const;
    CycloNumber operator-(const CycloNumber& o) const;
    CycloNumber operator-() const;
    CycloNumber operator*(const CycloNumber& o) const;
    CycloNumber operator*(const Rat& q) const;
    CycloNumber& operator+=(const CycloNumber& o) { return *this = *this + o; }
    CycloNumber& operator-=(const CycloNumber& o) { return *this = *this - o; }
    CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }
    bool operator==(const CycloNumber& o) const;
    bool operator!=(const CycloNumber& o) const { return !(*this == o); }

    // sigma_a : zeta -> zeta^a, gcd(a, m) = 1
    CycloNumber galois(long a) const;
    CycloNumber conj() const { return galois(-1); }
    // the same number viewed in Q(zeta_M), m | M
    CycloNumber lift(long M) const;
    // image under zeta_m -> exp(2 pi i k / m)
    std::complex<long double> embed(long k = 1) const;

    std::string str() const;

private:
    long m_;
    std::vector<Rat> c_;
    std::shared_ptr<const CycloField> f_;
    void reduce_from(const std::vector<Rat>& full);
};

// x viewed in Q(zeta_M)
CycloNumber unify(const CycloNumber& x, long M);

long euler_phi(long m);
std::vector<Int> cyclotomic_poly(long m);

} // namespace starkit
