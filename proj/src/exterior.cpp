#include "starkit/exterior.hpp"

#include <json.hpp>

#include <map>
#include <mutex>
#include <stdexcept>

namespace starkit {

namespace {

void build_subsets(std::size_t d, std::size_t r, std::size_t start, Subset& cur, std::vector<Subset>& out)
{
    if (cur.size() == r) { out.push_back(cur); return; }
    for (std::size_t i = start; i + (r - cur.size()) <= d; ++i) {
        cur.push_back(i);
        build_subsets(d, r, i + 1, cur, out);
        cur.pop_back();
    }
}

QG qg(const ZG& x) { return to_rational(x); }

QG qzero(const GroupPtr& G) { return QG(G); }
QG qone(const GroupPtr& G) { return QG::scalar(G, 1); }

QG inflate(const QG& x, const Quotient& q, const GroupPtr& G)
{
    QG r(G);
    for (int g = 0; g < G->order(); ++g) r.add_term(g, x.coeff(q.proj[g]));
    return r;
}

IntVec flat(const std::vector<ZG>& v, int n)
{
    IntVec out(v.size() * n);
    for (std::size_t j = 0; j < v.size(); ++j)
        for (auto& [g, c] : v[j].terms()) out[j * n + g] = c;
    return out;
}

std::vector<ZG> unflat(const GroupPtr& G, const IntVec& x, std::size_t len)
{
    int n = G->order();
    std::vector<ZG> out(len, ZG(G));
    for (std::size_t j = 0; j < len; ++j)
        for (int g = 0; g < n; ++g) out[j].add_term(g, x[j * n + g]);
    return out;
}

} // namespace

const std::vector<Subset>& subsets(std::size_t d, std::size_t r)
{
    static std::mutex mu;
    static std::map<std::pair<std::size_t, std::size_t>, std::vector<Subset>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(d, r);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Subset> out;
    if (r <= d) {
        Subset cur;
        build_subsets(d, r, 0, cur, out);
    }
    return cache.emplace(key, std::move(out)).first->second;
}

std::size_t subset_index(std::size_t d, const Subset& s)
{
    const auto& all = subsets(d, s.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        if (all[i] == s) return i;
    throw std::invalid_argument("not an increasing subset");
}

QG qg_determinant(const std::vector<std::vector<QG>>& m)
{
    std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("empty determinant");
    const GroupPtr& G = m[0][0].group_ptr();
    if (n == 1) return m[0][0];
    QG r = qzero(G);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<QG>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<QG> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        QG t = m[0][j] * qg_determinant(minor);
        r = (j % 2) ? r - t : r + t;
    }
    return r;
}

WedgeElement::WedgeElement(GroupPtr G, std::size_t d, std::size_t r) : G_(std::move(G)), d_(d), r_(r)
{
    if (r > d) throw std::invalid_argument("wedge degree exceeds rank");
    c_.assign(subsets(d, r).size(), qzero(G_));
}

WedgeElement WedgeElement::basis(GroupPtr G, std::size_t d, const Subset& s)
{
    WedgeElement w(G, d, s.size());
    w.c_[subset_index(d, s)] = qone(G);
    return w;
}

WedgeElement WedgeElement::scalar(const QG& x, std::size_t d)
{
    WedgeElement w(x.group_ptr(), d, 0);
    w.c_[0] = x;
    return w;
}

WedgeElement WedgeElement::from_vectors(GroupPtr G, std::size_t d, const std::vector<std::vector<QG>>& ms)
{
    std::size_t r = ms.size();
    WedgeElement w(G, d, r);
    if (r == 0) { w.c_[0] = qone(G); return w; }
    for (auto& m : ms)
        if (m.size() != d) throw std::invalid_argument("vector length differs from the rank");
    const auto& idx = subsets(d, r);
    for (std::size_t s = 0; s < idx.size(); ++s) {
        std::vector<std::vector<QG>> sub(r, std::vector<QG>(r));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) sub[i][j] = ms[i][idx[s][j]];
        w.c_[s] = qg_determinant(sub);
    }
    return w;
}

void WedgeElement::check(const WedgeElement& o) const
{
    if (!(*G_ == *o.G_) || d_ != o.d_ || r_ != o.r_) throw std::invalid_argument("incompatible wedge elements");
}

WedgeElement WedgeElement::operator+(const WedgeElement& o) const
{
    check(o);
    WedgeElement w = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) w.c_[i] += o.c_[i];
    return w;
}

WedgeElement WedgeElement::operator-(const WedgeElement& o) const
{
    check(o);
    WedgeElement w = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) w.c_[i] -= o.c_[i];
    return w;
}

WedgeElement WedgeElement::scale(const QG& x) const
{
    WedgeElement w = *this;
    for (auto& c : w.c_) c = c * x;
    return w;
}

WedgeElement WedgeElement::shift(int g) const
{
    WedgeElement w = *this;
    for (auto& c : w.c_) c = c.shift(g);
    return w;
}

bool WedgeElement::operator==(const WedgeElement& o) const
{
    return *G_ == *o.G_ && d_ == o.d_ && r_ == o.r_ && c_ == o.c_;
}

bool WedgeElement::is_zero() const
{
    for (auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

bool WedgeElement::is_integral() const
{
    for (auto& c : c_)
        if (!starkit::is_integral(c)) return false;
    return true;
}

RatVec WedgeElement::flatten() const
{
    int n = G_->order();
    RatVec v(c_.size() * n);
    for (std::size_t s = 0; s < c_.size(); ++s)
        for (auto& [g, x] : c_[s].terms()) v[s * n + g] = x;
    return v;
}

std::string WedgeElement::to_json() const
{
    nlohmann::json j;
    j["group"] = G_->orders();
    j["rank"] = d_;
    j["degree"] = r_;
    j["coords"] = nlohmann::json::array();
    const auto& idx = index();
    for (std::size_t s = 0; s < c_.size(); ++s) {
        if (c_[s].is_zero()) continue;
        j["coords"].push_back({{"subset", idx[s]}, {"value", nlohmann::json::parse(starkit::to_json(c_[s]))}});
    }
    return j.dump();
}

FreeDual dual_basis_vector(GroupPtr G, std::size_t d, std::size_t i)
{
    FreeDual f(d, ZG(G));
    f[i] = ZG::scalar(G, 1);
    return f;
}

QG dual_apply(const FreeDual& f, const std::vector<QG>& m)
{
    if (f.size() != m.size()) throw std::invalid_argument("functional and vector lengths differ");
    QG r = qzero(m.empty() ? f[0].group_ptr() : m[0].group_ptr());
    for (std::size_t j = 0; j < m.size(); ++j) r += qg(f[j]) * m[j];
    return r;
}

WedgeElement contract(const FreeDual& f, const WedgeElement& m)
{
    std::size_t d = m.rank(), r = m.degree();
    if (r == 0) throw std::invalid_argument("cannot contract a degree zero element");
    if (f.size() != d) throw std::invalid_argument("functional length differs from the rank");
    WedgeElement out(m.group_ptr(), d, r - 1);
    const auto& idx = m.index();
    for (std::size_t s = 0; s < idx.size(); ++s) {
        const QG& x = m.coord(s);
        if (x.is_zero()) continue;
        for (std::size_t i = 0; i < r; ++i) {
            if (f[idx[s][i]].is_zero()) continue;
            Subset rest = idx[s];
            rest.erase(rest.begin() + i);
            QG t = x * qg(f[idx[s][i]]);
            QG& c = out.coord(subset_index(d, rest));
            c = (i % 2) ? c - t : c + t;
        }
    }
    return out;
}

WedgeElement wedge_eval(const std::vector<FreeDual>& phi, const WedgeElement& m)
{
    if (phi.size() > m.degree()) throw std::invalid_argument("more functionals than the wedge degree");
    WedgeElement w = m;
    for (auto& f : phi) w = contract(f, w);
    return w;
}

QG wedge_value(const std::vector<FreeDual>& phi, const WedgeElement& m)
{
    if (phi.size() != m.degree()) throw std::invalid_argument("degree mismatch");
    return wedge_eval(phi, m).coord(0);
}

WedgeElement wedge_eval_formula(const std::vector<FreeDual>& phi, GroupPtr G, std::size_t d,
                                const std::vector<std::vector<QG>>& ms)
{
    std::size_t r = ms.size(), s = phi.size();
    if (s > r) throw std::invalid_argument("more functionals than vectors");
    WedgeElement out(G, d, r - s);
    for (const Subset& A : subsets(r, s)) {
        Subset B;
        std::size_t inv = 0;
        for (std::size_t i = 0, a = 0; i < r; ++i) {
            if (a < A.size() && A[a] == i) { inv += i - a; ++a; }
            else B.push_back(i);
        }
        QG det = qone(G);
        if (s > 0) {
            std::vector<std::vector<QG>> mat(s, std::vector<QG>(s));
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t j = 0; j < s; ++j) mat[i][j] = dual_apply(phi[i], ms[A[j]]);
            det = qg_determinant(mat);
        }
        if (det.is_zero()) continue;
        std::vector<std::vector<QG>> rest;
        for (auto b : B) rest.push_back(ms[b]);
        WedgeElement w = WedgeElement::from_vectors(G, d, rest).scale(det);
        out = (inv % 2) ? out - w : out + w;
    }
    return out;
}

GLattice GLattice::free(GroupPtr G, std::size_t d)
{
    std::vector<std::vector<ZG>> zb;
    for (std::size_t j = 0; j < d; ++j)
        for (int g = 0; g < G->order(); ++g) {
            std::vector<ZG> v(d, ZG(G));
            v[j] = ZG(G, g, Int(1));
            zb.push_back(std::move(v));
        }
    return embedded(G, d, zb);
}

GLattice GLattice::embedded(GroupPtr G, std::size_t d, const std::vector<std::vector<ZG>>& zbasis)
{
    int n = G->order();
    std::size_t k = zbasis.size();
    std::vector<IntVec> rows;
    for (auto& v : zbasis) {
        if (v.size() != d) throw std::invalid_argument("embedding vector length differs from the ambient rank");
        rows.push_back(flat(v, n));
    }
    IntMatrix E = IntMatrix::from_rows(rows, d * n);
    if (k > 0) {
        SNF s = snf(E);
        std::size_t ones = 0;
        for (auto& x : s.diag) {
            if (x == 1) ++ones;
            else if (x != 0) throw std::invalid_argument("cokernel of the embedding has Z-torsion");
        }
        if (ones != k) throw std::invalid_argument("embedding vectors are linearly dependent");
    }
    GLattice M;
    M.G_ = G;
    M.k_ = k;
    M.d_ = d;
    M.emb_ = zbasis;
    M.embedded_ = true;
    for (std::size_t t = 0; t < G->rank(); ++t) {
        int gen = G->generator(t);
        IntMatrix A(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<ZG> gv;
            for (auto& c : zbasis[i]) gv.push_back(c.shift(gen));
            IntVec x;
            if (!solve_left(E, flat(gv, n), x)) throw std::invalid_argument("embedded lattice is not G-stable");
            for (std::size_t j = 0; j < k; ++j) A(i, j) = x[j];
        }
        M.act_.push_back(std::move(A));
    }
    return M;
}

GLattice GLattice::from_action(GroupPtr G, std::vector<IntMatrix> action)
{
    if (action.size() != G->rank()) throw std::invalid_argument("one action matrix per generator required");
    std::size_t k = action.empty() ? 0 : action[0].rows();
    for (std::size_t t = 0; t < action.size(); ++t) {
        if (action[t].rows() != k || action[t].cols() != k) throw std::invalid_argument("action matrices must be square");
        IntMatrix p = IntMatrix::identity(k);
        for (long e = 0; e < G->orders()[t]; ++e) p = p * action[t];
        if (!(p == IntMatrix::identity(k))) throw std::invalid_argument("action matrix order differs from the generator");
        for (std::size_t u = 0; u < t; ++u)
            if (!(action[t] * action[u] == action[u] * action[t]))
                throw std::invalid_argument("action matrices do not commute");
    }
    GLattice M;
    M.G_ = G;
    M.k_ = k;
    M.act_ = std::move(action);
    return M;
}

GLattice augmentation_lattice(GroupPtr G)
{
    std::vector<std::vector<ZG>> zb;
    for (int g = 1; g < G->order(); ++g) zb.push_back({ZG(G, g, Int(1)) - ZG::scalar(G, 1)});
    return GLattice::embedded(G, 1, zb);
}

GLattice trivial_lattice(GroupPtr G)
{
    std::vector<int> all(G->order());
    for (int g = 0; g < G->order(); ++g) all[g] = g;
    return GLattice::embedded(G, 1, {{norm_element(G, all)}});
}

HomBasis hom_dual(const GLattice& M)
{
    const GroupPtr& G = M.group_ptr();
    int n = G->order();
    std::size_t k = M.zrank();
    std::size_t unknowns = k * n;
    std::size_t ncons = M.action().size() * k * n;
    HNFLattice ker;
    if (ncons == 0) {
        ker = hnf(IntMatrix::identity(unknowns));
    } else {
        IntMatrix C(unknowns, ncons);
        std::size_t col = 0;
        for (std::size_t t = 0; t < M.action().size(); ++t) {
            const IntMatrix& A = M.action()[t];
            int gamma = G->generator(t);
            for (std::size_t i = 0; i < k; ++i)
                for (int h = 0; h < n; ++h, ++col) {
                    // sum_j A_ij F_j[h] - F_i[gamma^{-1} h] = 0
                    for (std::size_t j = 0; j < k; ++j) C(j * n + h, col) += A(i, j);
                    C(i * n + G->mul(G->inv(gamma), h), col) -= 1;
                }
        }
        ker = left_kernel(C);
    }
    HomBasis hb;
    for (auto& v : ker.basis()) hb.maps.push_back(unflat(G, v, k));
    std::vector<IntVec> span;
    HNFLattice S(unknowns);
    for (std::size_t t = 0; t < hb.maps.size(); ++t) {
        if (S.contains(flat(hb.maps[t], n))) continue;
        hb.generators.push_back(t);
        for (int g = 0; g < n; ++g) {
            std::vector<ZG> gf;
            for (auto& x : hb.maps[t]) gf.push_back(x.shift(g));
            span.push_back(flat(gf, n));
        }
        S = hnf_rows(span, unknowns);
    }
    return hb;
}

FreeDual lift_to_free(const GLattice& M, const std::vector<ZG>& f)
{
    if (!M.has_embedding()) throw std::invalid_argument("lattice has no embedding into a free module");
    const GroupPtr& G = M.group_ptr();
    int n = G->order();
    std::size_t d = M.ambient_rank(), k = M.zrank();
    if (f.size() != k) throw std::invalid_argument("map length differs from the Z-rank");
    IntMatrix L(d * n, k * n);
    for (std::size_t j = 0; j < d; ++j)
        for (int h = 0; h < n; ++h)
            for (std::size_t i = 0; i < k; ++i)
                for (auto& [g, c] : M.embedding()[i][j].terms()) L(j * n + h, i * n + G->mul(g, h)) += c;
    IntVec x;
    if (!solve_left(L, flat(f, n), x)) throw std::invalid_argument("map does not extend to the free module");
    return unflat(G, x, d);
}

bool in_rational_wedge(const GLattice& M, const WedgeElement& m)
{
    if (!M.has_embedding()) throw std::invalid_argument("lattice has no embedding into a free module");
    const GroupPtr& G = M.group_ptr();
    if (m.rank() != M.ambient_rank()) throw std::invalid_argument("wedge element lives in a different free module");
    std::size_t r = m.degree();
    std::vector<std::vector<QG>> vecs;
    for (auto& v : M.embedding()) {
        std::vector<QG> q;
        for (auto& c : v) q.push_back(qg(c));
        vecs.push_back(std::move(q));
    }
    std::vector<RatVec> rows;
    for (const Subset& I : subsets(M.zrank(), r)) {
        std::vector<std::vector<QG>> ms;
        for (auto i : I) ms.push_back(vecs[i]);
        WedgeElement w = WedgeElement::from_vectors(G, m.rank(), ms);
        for (int g = 0; g < G->order(); ++g) rows.push_back(w.shift(g).flatten());
    }
    if (rows.empty()) return m.is_zero();
    return rational_span_contains(rational_echelon(std::move(rows)), m.flatten());
}

bool rubin_contains(const GLattice& M, const WedgeElement& m)
{
    return in_rational_wedge(M, m) && m.is_integral();
}

bool rubin_contains_by_duals(const GLattice& M, const WedgeElement& m)
{
    if (!in_rational_wedge(M, m)) return false;
    HomBasis hb = hom_dual(M);
    std::vector<FreeDual> lifts;
    for (auto& f : hb.maps) lifts.push_back(lift_to_free(M, f));
    for (const Subset& I : subsets(lifts.size(), m.degree())) {
        std::vector<FreeDual> phi;
        for (auto i : I) phi.push_back(lifts[i]);
        if (!starkit::is_integral(wedge_value(phi, m))) return false;
    }
    return true;
}

GroupPtr subgroup_group(const FiniteAbelianGroup& G, const std::vector<int>& H)
{
    return make_group(subgroup_as_group(G, H).h.orders());
}

HQuotient::HQuotient(GroupPtr G, std::vector<int> H, GStableIdeal J) : G_(std::move(G)), H_(std::move(H)), J_(std::move(J))
{
    SubgroupEmbedding emb = subgroup_as_group(*G_, H_);
    if (!(emb.h == *J_.group_ptr()))
        throw std::invalid_argument("ideal is not over the subgroup");
    incl_ = emb.incl;
    const GroupPtr& Hg = J_.group_ptr();
    std::vector<int> allH(Hg->order());
    for (int h = 0; h < Hg->order(); ++h) allH[h] = h;
    ihj_ = GStableIdeal::augmentation(Hg, allH) * J_;
    std::vector<ZG> gens;
    for (auto& b : J_.basis_elements()) gens.push_back(ZG::induce(b, incl_, G_));
    jg_ = GStableIdeal::from_generators(G_, gens);
    ihjg_ = GStableIdeal::augmentation(G_, H_) * jg_;
}

int HQuotient::h_index(int g) const
{
    for (std::size_t i = 0; i < incl_.size(); ++i)
        if (incl_[i] == g) return (int)i;
    throw std::invalid_argument("element not in the subgroup");
}

ZG HQuotient::reduce(const ZG& x) const
{
    return from_vec(h_group(), ihj_.lattice().reduce(to_vec(x)));
}

NormTensor norm_tensor(const WedgeElement& m, const HQuotient& Q)
{
    if (!m.is_integral()) throw std::invalid_argument("norm tensor needs an integral wedge element");
    const GroupPtr& G = m.group_ptr();
    const GroupPtr& Hg = Q.h_group();
    NormTensor t;
    t.d = m.rank();
    t.r = m.degree();
    for (std::size_t s = 0; s < m.size(); ++s) {
        ZG x = to_integral(m.coord(s));
        std::vector<ZG> row;
        for (int g = 0; g < G->order(); ++g) {
            ZG c(Hg);
            for (std::size_t hi = 0; hi < Q.incl().size(); ++hi) {
                int sigma = Q.incl()[hi];
                int sinv = G->inv(sigma);
                c.add_term(Q.h_index(sinv), x.coeff(G->mul(sinv, g)));
            }
            row.push_back(Q.reduce(c));
        }
        t.coeff.push_back(std::move(row));
    }
    return t;
}

std::optional<NuPreimage> nu_preimage(const NormTensor& t, const HQuotient& Q)
{
    const GroupPtr& G = Q.group_ptr();
    NuPreimage p{quotient(*G, Q.subgroup()), nullptr, {}};
    p.qg = make_group(p.q.q.orders());
    for (std::size_t s = 0; s < t.coeff.size(); ++s) {
        std::vector<ZG> row;
        for (int tau = 0; tau < p.qg->order(); ++tau) {
            const ZG& rep = t.coeff[s][p.q.section[tau]];
            for (int g = 0; g < G->order(); ++g)
                if (p.q.proj[g] == tau && t.coeff[s][g] != rep) return std::nullopt;
            if (!Q.in_J(rep)) return std::nullopt;
            row.push_back(rep);
        }
        p.y.push_back(std::move(row));
    }
    return p;
}

WedgeElement nu_map(const WedgeElement& alpha, GroupPtr G, const std::vector<int>& H)
{
    Quotient q = quotient(*G, H);
    if (!(q.q == *alpha.group_ptr())) throw std::invalid_argument("element is not over G/H");
    WedgeElement out(G, alpha.rank(), alpha.degree());
    for (std::size_t s = 0; s < alpha.size(); ++s) out.coord(s) = inflate(alpha.coord(s), q, G);
    return out;
}

WedgeElement xi_map(const WedgeElement& alpha, GroupPtr G, const std::vector<int>& H)
{
    Quotient q = quotient(*G, H);
    if (!(q.q == *alpha.group_ptr())) throw std::invalid_argument("element is not over G/H");
    if (alpha.degree() == 0) return nu_map(alpha, G, H);
    std::size_t d = alpha.rank();
    QG NH = qg(norm_element(G, H));
    WedgeElement out(G, d, alpha.degree());
    const auto& idx = alpha.index();
    for (std::size_t s = 0; s < idx.size(); ++s) {
        if (alpha.coord(s).is_zero()) continue;
        QG lift(G);
        for (auto& [tau, c] : alpha.coord(s).terms()) lift.add_term(q.section[tau], c);
        std::vector<std::vector<QG>> vs;
        for (auto j : idx[s]) {
            std::vector<QG> v(d, qzero(G));
            v[j] = NH;
            vs.push_back(std::move(v));
        }
        out = out + WedgeElement::from_vectors(G, d, vs).scale(lift);
    }
    return out;
}

WedgeElement norm_power(const WedgeElement& m, const Quotient& q, GroupPtr qg)
{
    WedgeElement out(qg, m.rank(), m.degree());
    for (std::size_t s = 0; s < m.size(); ++s) out.coord(s) = m.coord(s).deflate(q, qg);
    return out;
}

std::vector<FreeDual> phi_restrict(const std::vector<FreeDual>& phi, const Quotient& q, GroupPtr qg)
{
    std::vector<FreeDual> out;
    for (auto& f : phi) {
        FreeDual fh;
        for (auto& x : f) fh.push_back(x.deflate(q, qg));
        out.push_back(std::move(fh));
    }
    return out;
}

std::string Prop49Report::to_json() const
{
    nlohmann::json j{{"in_JP", in_JP}, {"NH_in_im_nu", NH_in_im_nu}, {"phi_integral", phi_integral},
                     {"identity_holds", identity_holds}};
    return j.dump();
}

Prop49Report prop49_check(const WedgeElement& a, const HQuotient& Q, const std::vector<FreeDual>& dual_basis)
{
    const GroupPtr& G = a.group_ptr();
    std::size_t d = a.rank(), r = a.degree();
    if (!a.is_integral()) throw std::invalid_argument("element is not in the integral exterior power");
    std::vector<FreeDual> fs = dual_basis;
    if (fs.empty())
        for (std::size_t i = 0; i < d; ++i) fs.push_back(dual_basis_vector(G, d, i));
    if (fs.size() != d) throw std::invalid_argument("dual basis has the wrong size");

    Prop49Report rep;
    rep.in_JP = true;
    for (std::size_t s = 0; s < a.size(); ++s)
        if (!Q.JG().contains(to_integral(a.coord(s)))) rep.in_JP = false;

    auto pre = nu_preimage(norm_tensor(a, Q), Q);
    rep.NH_in_im_nu = pre.has_value();

    std::vector<std::vector<FreeDual>> phis;
    for (const Subset& T : subsets(d, r)) {
        std::vector<FreeDual> phi;
        for (auto i : T) phi.push_back(fs[i]);
        phis.push_back(std::move(phi));
    }
    rep.phi_integral = true;
    std::vector<ZG> values;
    for (auto& phi : phis) {
        ZG v = to_integral(wedge_value(phi, a));
        if (!Q.JG().contains(v)) rep.phi_integral = false;
        values.push_back(std::move(v));
    }

    if (rep.in_JP && rep.NH_in_im_nu && rep.phi_integral) {
        rep.identity_holds = true;
        const Quotient& q = pre->q;
        for (std::size_t p = 0; p < phis.size(); ++p) {
            ZG rhs(G);
            const auto& idx = a.index();
            for (std::size_t s = 0; s < idx.size(); ++s) {
                ZG phiH = to_integral(wedge_value(phis[p], WedgeElement::basis(G, d, idx[s]))).deflate(q, pre->qg);
                for (int tau = 0; tau < pre->qg->order(); ++tau) {
                    const ZG& y = pre->y[s][tau];
                    if (y.is_zero()) continue;
                    ZG lifted_y = ZG::induce(y, Q.incl(), G);
                    ZG moved = phiH.shift(tau);
                    for (auto& [rho, c] : moved.terms())
                        rhs += lifted_y.shift(q.section[rho]).scale(c);
                }
            }
            if (!Q.IHJG().contains(values[p] - rhs)) rep.identity_holds = false;
        }
    }
    return rep;
}

} // namespace starkit
