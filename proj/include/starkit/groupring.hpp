#pragma once

#include "starkit/bigint.hpp"
#include "starkit/cyclonum.hpp"
#include "starkit/group.hpp"

#include <map>
#include <type_traits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace starkit {

using GroupPtr = std::shared_ptr<const FiniteAbelianGroup>;

inline GroupPtr make_group(std::vector<long> orders)
{
    return std::make_shared<const FiniteAbelianGroup>(std::move(orders));
}

template <class C> struct Coeff;

template <> struct Coeff<Int> {
    static bool zero(const Int& x) { return x == 0; }
    static Int one_like(const Int&) { return 1; }
    static const char* tag() { return "Z"; }
};

template <> struct Coeff<Rat> {
    static bool zero(const Rat& x) { return x == 0; }
    static Rat one_like(const Rat&) { return 1; }
    static const char* tag() { return "Q"; }
};

template <> struct Coeff<CycloNumber> {
    static bool zero(const CycloNumber& x) { return x.is_zero(); }
    static CycloNumber one_like(const CycloNumber& x) { return CycloNumber(x.modulus(), 1); }
    static const char* tag() { return "Qzeta"; }
};

class CharacterOfG;

template <class C>
class GroupRingElement {
public:
    using Terms = std::map<int, C>;

    GroupRingElement() = default;
    explicit GroupRingElement(GroupPtr g) : G_(std::move(g)) {}
    GroupRingElement(GroupPtr g, int elem, const C& c) : G_(std::move(g)) { add_term(elem, c); }

    static GroupRingElement scalar(GroupPtr g, const C& c) { return GroupRingElement(g, 0, c); }

    const GroupPtr& group_ptr() const { return G_; }
    const FiniteAbelianGroup& group() const { return *G_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    C coeff(int g) const
    {
        auto it = t_.find(g);
        if (it != t_.end()) return it->second;
        return zero_coeff();
    }

    void add_term(int g, const C& c)
    {
        if (g < 0 || g >= G_->order()) throw std::invalid_argument("group element out of range");
        if (Coeff<C>::zero(c)) return;
        auto it = t_.find(g);
        if (it == t_.end()) { t_.emplace(g, c); return; }
        it->second += c;
        if (Coeff<C>::zero(it->second)) t_.erase(it);
    }

    GroupRingElement operator+(const GroupRingElement& o) const
    {
        check(o);
        GroupRingElement r = *this;
        for (auto& [g, c] : o.t_) r.add_term(g, c);
        return r;
    }

    GroupRingElement operator-() const
    {
        GroupRingElement r(G_);
        for (auto& [g, c] : t_) r.t_.emplace(g, -c);
        return r;
    }

    GroupRingElement operator-(const GroupRingElement& o) const { return *this + (-o); }

    GroupRingElement operator*(const GroupRingElement& o) const
    {
        check(o);
        GroupRingElement r(G_);
        if (t_.empty() || o.t_.empty()) return r;
        int n = G_->order();
        std::vector<C> acc;
        std::vector<char> used(n, 0);
        acc.resize(n, zero_like(t_.begin()->second));
        for (auto& [a, x] : t_)
            for (auto& [b, y] : o.t_) {
                int ab = G_->mul(a, b);
                if (!used[ab]) { acc[ab] = x * y; used[ab] = 1; }
                else acc[ab] += x * y;
            }
        for (int g = 0; g < n; ++g)
            if (used[g] && !Coeff<C>::zero(acc[g])) r.t_.emplace(g, acc[g]);
        return r;
    }

    GroupRingElement scale(const C& c) const
    {
        GroupRingElement r(G_);
        for (auto& [g, x] : t_) r.add_term(g, x * c);
        return r;
    }

    GroupRingElement& operator+=(const GroupRingElement& o) { return *this = *this + o; }
    GroupRingElement& operator-=(const GroupRingElement& o) { return *this = *this - o; }
    GroupRingElement& operator*=(const GroupRingElement& o) { return *this = *this * o; }

    bool operator==(const GroupRingElement& o) const { return *G_ == *o.G_ && t_ == o.t_; }
    bool operator!=(const GroupRingElement& o) const { return !(*this == o); }

    GroupRingElement sharp() const
    {
        GroupRingElement r(G_);
        for (auto& [g, c] : t_) r.t_.emplace(G_->inv(g), c);
        return r;
    }

    // g acting on the left: the product g * x
    GroupRingElement shift(int g) const
    {
        GroupRingElement r(G_);
        for (auto& [h, c] : t_) r.t_.emplace(G_->mul(g, h), c);
        return r;
    }

    C augmentation() const
    {
        if (t_.empty()) return zero_coeff();
        C s = zero_like(t_.begin()->second);
        for (auto& [g, c] : t_) s += c;
        return s;
    }

    // x over G -> image over G/H, coset coefficient = sum over representatives
    GroupRingElement deflate(const Quotient& q, GroupPtr qg) const
    {
        GroupRingElement r(std::move(qg));
        for (auto& [g, c] : t_) r.add_term(q.proj[g], c);
        return r;
    }

    // pull back along an injective group map (subgroup embedding), H-supported elements only
    static GroupRingElement induce(const GroupRingElement& x, const std::vector<int>& incl, GroupPtr G)
    {
        GroupRingElement r(std::move(G));
        for (auto& [h, c] : x.t_) r.add_term(incl[h], c);
        return r;
    }

    std::string str() const;

private:
    GroupPtr G_;
    Terms t_;

    void check(const GroupRingElement& o) const
    {
        if (!G_ || !o.G_ || !(*G_ == *o.G_)) throw std::invalid_argument("group mismatch");
    }

    static C zero_like(const C& sample)
    {
        C z = sample;
        z -= sample;
        return z;
    }

    C zero_coeff() const
    {
        if constexpr (std::is_same_v<C, CycloNumber>) {
            if (!t_.empty()) return zero_like(t_.begin()->second);
            return CycloNumber(1);
        } else {
            return C(0);
        }
    }
};

using ZG = GroupRingElement<Int>;
using QG = GroupRingElement<Rat>;
using CG = GroupRingElement<CycloNumber>;

ZG norm_element(GroupPtr G, const std::vector<int>& H);
QG to_rational(const ZG& x);
// throws when a coefficient is not integral
ZG to_integral(const QG& x);
bool is_integral(const QG& x);
CG to_cyclo(const QG& x, long modulus);
CG to_cyclo(const ZG& x, long modulus);
// rational coefficients of an element of Q(zeta)[G], throws if some coefficient is irrational
QG to_rational(const CG& x);
// element g - 1 style helpers
ZG group_elem(GroupPtr G, int g, long c = 1);

// chi(g_i) = zeta_{n_i}^{a_i} on the i-th cyclic factor
class CharacterOfG {
public:
    CharacterOfG(GroupPtr G, std::vector<long> value_orders);

    const GroupPtr& group_ptr() const { return G_; }
    const std::vector<long>& exponents() const { return a_; }
    long modulus() const { return G_->exponent(); }
    // chi(g) = zeta_modulus^{k(g)}
    long log_value(int g) const;
    CycloNumber value(int g) const;
    bool is_trivial() const;
    long order() const;
    CharacterOfG inverse() const;
    CharacterOfG operator*(const CharacterOfG& o) const;
    bool operator==(const CharacterOfG& o) const { return *G_ == *o.G_ && a_ == o.a_; }

    CycloNumber apply(const ZG& x) const;
    CycloNumber apply(const QG& x) const;
    CycloNumber apply(const CG& x) const;

    // e_chi = (1/|G|) sum chi(s) s^{-1}, coefficients in Q(zeta_M) with exp(G) | M
    CG idempotent(long M = 0) const;

private:
    GroupPtr G_;
    std::vector<long> a_;
};

std::vector<CharacterOfG> all_characters(GroupPtr G);

// JSON text for an element with integer or rational coefficients
std::string to_json(const ZG& x);
std::string to_json(const QG& x);
std::string to_json(const CG& x);
QG qg_from_json(const std::string& text);

} // namespace starkit
