#include "starkit/group.hpp"
#include "starkit/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace starkit {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<long> cyclic_orders) : orders_(std::move(cyclic_orders))
{
    long n = 1;
    for (long o : orders_) {
        if (o < 1) throw std::invalid_argument("cyclic order must be >= 1");
        n *= o;
        if (n > 100000) throw std::invalid_argument("group too large");
    }
    size_ = (int)n;
    mul_.resize((std::size_t)size_ * size_);
    inv_.resize(size_);
    std::vector<Exps> el(size_);
    for (int i = 0; i < size_; ++i) el[i] = element(i);
    for (int a = 0; a < size_; ++a) {
        Exps e(rank());
        for (std::size_t k = 0; k < rank(); ++k) e[k] = mod_l(-el[a][k], orders_[k]);
        inv_[a] = index(e);
        for (int b = 0; b < size_; ++b) {
            for (std::size_t k = 0; k < rank(); ++k) e[k] = (el[a][k] + el[b][k]) % orders_[k];
            mul_[(std::size_t)a * size_ + b] = index(e);
        }
    }
}

long FiniteAbelianGroup::exponent() const
{
    long e = 1;
    for (long o : orders_) e = lcm_l(e, o);
    return e;
}

int FiniteAbelianGroup::index(const Exps& e) const
{
    if (e.size() != rank()) throw std::invalid_argument("exponent vector length mismatch");
    long idx = 0;
    for (std::size_t k = 0; k < rank(); ++k) idx = idx * orders_[k] + mod_l(e[k], orders_[k]);
    return (int)idx;
}

Exps FiniteAbelianGroup::element(int idx) const
{
    Exps e(rank());
    for (std::size_t k = rank(); k-- > 0;) {
        e[k] = idx % orders_[k];
        idx /= orders_[k];
    }
    return e;
}

int FiniteAbelianGroup::pow(int a, long k) const
{
    Exps e = element(a);
    for (std::size_t i = 0; i < rank(); ++i) e[i] = mod_l(e[i] * (k % orders_[i]), orders_[i]);
    return index(e);
}

int FiniteAbelianGroup::generator(std::size_t i) const
{
    Exps e(rank(), 0);
    e.at(i) = 1 % orders_[i];
    return index(e);
}

long FiniteAbelianGroup::element_order(int a) const
{
    Exps e = element(a);
    long o = 1;
    for (std::size_t i = 0; i < rank(); ++i) o = lcm_l(o, orders_[i] / gcd_l(e[i], orders_[i]));
    return o;
}

std::vector<int> FiniteAbelianGroup::subgroup(const std::vector<int>& gens) const
{
    std::vector<char> in(size_, 0);
    std::vector<int> out{0};
    in[0] = 1;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (int g : gens) {
            if (g < 0 || g >= size_) throw std::invalid_argument("generator outside group");
            int x = mul(out[i], g);
            if (!in[x]) { in[x] = 1; out.push_back(x); }
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> all_subgroups(const FiniteAbelianGroup& G)
{
    std::set<std::vector<int>> seen{{0}};
    std::vector<std::vector<int>> out{{0}};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (int g = 1; g < G.order(); ++g) {
            if (std::binary_search(out[i].begin(), out[i].end(), g)) continue;
            std::vector<int> gens = out[i];
            gens.push_back(g);
            auto h = G.subgroup(gens);
            if (seen.insert(h).second) out.push_back(std::move(h));
        }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

std::string FiniteAbelianGroup::str() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rank(); ++i) os << (i ? "," : "") << orders_[i];
    os << ']';
    return os.str();
}

namespace {

IntVec to_intvec(const Exps& e)
{
    IntVec v;
    for (long x : e) v.push_back(x);
    return v;
}

// Z^k / rows  ->  product of cyclic factors
struct CyclicDecomp {
    std::vector<long> orders;
    std::vector<std::size_t> keep;   // SNF positions with d != 1
    SNF s;
};

CyclicDecomp decompose(const IntMatrix& rel)
{
    CyclicDecomp c;
    c.s = snf(rel);
    std::size_t k = rel.cols();
    for (std::size_t i = 0; i < k; ++i) {
        Int d = i < c.s.diag.size() ? c.s.diag[i] : Int(0);
        if (d == 0) throw std::logic_error("infinite quotient");
        if (d != 1) { c.keep.push_back(i); c.orders.push_back(d.get_si()); }
    }
    return c;
}

} // namespace

Quotient quotient(const FiniteAbelianGroup& G, const std::vector<int>& H)
{
    std::size_t k = G.rank();
    IntMatrix rel(0, k);
    for (std::size_t i = 0; i < k; ++i) {
        IntVec r(k, 0);
        r[i] = G.orders()[i];
        rel.append_row(r);
    }
    for (int h : H) rel.append_row(to_intvec(G.element(h)));
    if (k == 0) {
        Quotient q{FiniteAbelianGroup(std::vector<long>{}), {0}, {0}};
        return q;
    }
    CyclicDecomp c = decompose(rel);
    Quotient q;
    q.q = FiniteAbelianGroup(c.orders);
    q.proj.resize(G.order());
    for (int g = 0; g < G.order(); ++g) {
        IntMatrix x = IntMatrix::from_rows({to_intvec(G.element(g))}, k) * c.s.V;
        Exps e(c.keep.size());
        for (std::size_t j = 0; j < c.keep.size(); ++j) e[j] = fmod(x(0, c.keep[j]), Int(c.orders[j])).get_si();
        q.proj[g] = q.q.index(e);
    }
    q.section.assign(q.q.order(), -1);
    for (int g = 0; g < G.order(); ++g)
        if (q.section[q.proj[g]] < 0) q.section[q.proj[g]] = g;
    return q;
}

SubgroupEmbedding subgroup_as_group(const FiniteAbelianGroup& G, const std::vector<int>& H)
{
    std::vector<int> gens;
    for (int h : H)
        if (h != 0) gens.push_back(h);
    std::size_t s = gens.size(), k = G.rank();
    SubgroupEmbedding out;
    if (s == 0) {
        out.h = FiniteAbelianGroup(std::vector<long>{});
        out.incl = {0};
        return out;
    }
    // relation lattice of the generators: kernel of Z^s -> G
    IntMatrix m(s + k, k);
    for (std::size_t i = 0; i < s; ++i) {
        Exps e = G.element(gens[i]);
        for (std::size_t j = 0; j < k; ++j) m(i, j) = e[j];
    }
    for (std::size_t j = 0; j < k; ++j) m(s + j, j) = G.orders()[j];
    HNFLattice ker = left_kernel(m);
    IntMatrix rel(0, s);
    for (auto& v : ker.basis()) rel.append_row(IntVec(v.begin(), v.begin() + s));
    CyclicDecomp c = decompose(rel);
    out.h = FiniteAbelianGroup(c.orders);
    out.incl.resize(out.h.order());
    for (int y = 0; y < out.h.order(); ++y) {
        Exps e = out.h.element(y);
        IntVec full(s, 0);
        for (std::size_t j = 0; j < c.keep.size(); ++j) full[c.keep[j]] = e[j];
        IntMatrix x = IntMatrix::from_rows({full}, s) * c.s.Vinv;
        int g = 0;
        for (std::size_t i = 0; i < s; ++i) g = G.mul(g, G.pow(gens[i], fmod(x(0, i), Int(G.order())).get_si()));
        out.incl[y] = g;
    }
    return out;
}

} // namespace starkit
