#include "starkit/fitting.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>

namespace starkit {

PresentedModule::PresentedModule(GroupPtr G, std::size_t n, std::size_t m) : G_(std::move(G)), n_(n), m_(m)
{
    a_.assign(n * m, ZG(G_));
}

PresentedModule::PresentedModule(GroupPtr G, const std::vector<std::vector<ZG>>& rows, std::size_t m)
    : PresentedModule(G, rows.size(), m)
{
    for (std::size_t i = 0; i < n_; ++i) {
        if (rows[i].size() != m) throw std::invalid_argument("ragged relation matrix");
        for (std::size_t j = 0; j < m; ++j) {
            if (!(rows[i][j].group() == *G_)) throw std::invalid_argument("group mismatch");
            at(i, j) = rows[i][j];
        }
    }
}

void PresentedModule::set_block(std::size_t n1, std::size_t m1)
{
    if (n1 > n_ || m1 > m_) throw std::invalid_argument("block exceeds matrix");
    for (std::size_t i = n1; i < n_; ++i)
        for (std::size_t j = 0; j < m1; ++j)
            if (!at(i, j).is_zero()) throw std::invalid_argument("lower-left block is not zero");
    block_ = std::make_pair(n1, m1);
}

PresentedModule PresentedModule::with_extra_columns(const std::vector<std::vector<ZG>>& cols) const
{
    PresentedModule r(G_, n_, m_ + cols.size());
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < m_; ++j) r.at(i, j) = at(i, j);
        for (std::size_t k = 0; k < cols.size(); ++k) r.at(i, m_ + k) = cols[k].at(i);
    }
    if (block_) r.block_ = block_;
    return r;
}

PresentedModule PresentedModule::with_zero_columns(std::size_t k) const
{
    std::vector<std::vector<ZG>> cols(k, std::vector<ZG>(n_, ZG(G_)));
    return with_extra_columns(cols);
}

PresentedModule PresentedModule::quotient_by_block() const
{
    if (!block_) throw std::logic_error("submodule block not set");
    auto [n1, m1] = *block_;
    PresentedModule r(G_, n_ - n1, m_ - m1);
    for (std::size_t i = n1; i < n_; ++i)
        for (std::size_t j = m1; j < m_; ++j) r.at(i - n1, j - m1) = at(i, j);
    return r;
}

IntMatrix PresentedModule::z_relations() const
{
    int g = G_->order();
    IntMatrix R(m_ * g, n_ * g);
    for (std::size_t j = 0; j < m_; ++j)
        for (int h = 0; h < g; ++h) {
            std::size_t row = j * g + h;
            for (std::size_t i = 0; i < n_; ++i)
                for (auto& [e, c] : at(i, j).terms()) R(row, i * g + G_->mul(h, e)) += c;
        }
    return R;
}

std::string PresentedModule::to_json() const
{
    nlohmann::json j;
    j["group"] = G_->orders();
    j["matrix"] = nlohmann::json::array();
    for (std::size_t i = 0; i < n_; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < m_; ++k) row.push_back(nlohmann::json::parse(starkit::to_json(at(i, k))));
        j["matrix"].push_back(row);
    }
    j["rels"] = m_;
    if (block_) j["block"] = {block_->first, block_->second};
    return j.dump();
}

PresentedModule PresentedModule::from_json(const std::string& text)
{
    nlohmann::json j = nlohmann::json::parse(text);
    auto G = make_group(j.at("group").get<std::vector<long>>());
    std::vector<std::vector<ZG>> rows;
    std::size_t m = j.value("rels", std::size_t(0));
    for (auto& r : j.at("matrix")) {
        std::vector<ZG> row;
        for (auto& e : r) {
            nlohmann::json el = e;
            if (!el.contains("group")) el["group"] = j["group"];
            row.push_back(to_integral(qg_from_json(el.dump())));
            if (!(row.back().group() == *G)) throw std::invalid_argument("entry group mismatch");
        }
        m = row.size();
        rows.push_back(row);
    }
    PresentedModule M(G, rows, m);
    if (j.contains("block")) M.set_block(j["block"][0].get<std::size_t>(), j["block"][1].get<std::size_t>());
    return M;
}

/*{{{ determinants and minors */
namespace {

class MinorEngine {
public:
    MinorEngine(const GroupPtr& G, std::function<const ZG&(std::size_t, std::size_t)> entry)
        : G_(G), entry_(std::move(entry))
    {
    }

    const ZG& det(std::uint32_t rows, std::uint32_t cols)
    {
        std::uint64_t key = (std::uint64_t)rows << 32 | cols;
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        ZG d(G_);
        if (rows == 0) {
            d = group_elem(G_, 0);
        } else {
            std::size_t r = std::countr_zero(rows);
            std::uint32_t rest = rows & (rows - 1);
            int pos = 0;
            for (std::uint32_t c = cols; c; c &= c - 1, ++pos) {
                std::size_t j = std::countr_zero(c);
                const ZG& a = entry_(r, j);
                if (a.is_zero()) continue;
                ZG sub = a * det(rest, cols & ~(1u << j));
                if (pos & 1) d -= sub;
                else d += sub;
            }
        }
        return memo_.emplace(key, std::move(d)).first->second;
    }

private:
    GroupPtr G_;
    std::function<const ZG&(std::size_t, std::size_t)> entry_;
    std::unordered_map<std::uint64_t, ZG> memo_;
};

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(std::uint32_t)>& f)
{
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        std::uint32_t mask = 0;
        for (auto i : idx) mask |= 1u << i;
        f(mask);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

void check_dims(const PresentedModule& M)
{
    if (M.gens() > kMaxFittingDim || M.rels() > kMaxFittingDim)
        throw std::invalid_argument("relation matrix exceeds the " + std::to_string(kMaxFittingDim) +
                                    " x " + std::to_string(kMaxFittingDim) + " minor enumeration cap");
}

} // namespace

ZG zg_determinant(const std::vector<std::vector<ZG>>& m)
{
    std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("empty determinant");
    if (n > kMaxFittingDim) throw std::invalid_argument("determinant too large");
    for (auto& r : m)
        if (r.size() != n) throw std::invalid_argument("determinant of non-square matrix");
    MinorEngine eng(m[0][0].group_ptr(), [&](std::size_t i, std::size_t j) -> const ZG& { return m[i][j]; });
    std::uint32_t all = (n == 32) ? ~0u : ((1u << n) - 1);
    return eng.det(all, all);
}

GStableIdeal minors_ideal(const PresentedModule& M, const std::vector<std::size_t>& rows, std::size_t k)
{
    check_dims(M);
    const GroupPtr& G = M.group_ptr();
    if (k == 0) return GStableIdeal::unit(G);
    if (k > rows.size() || k > M.rels()) return GStableIdeal(G);
    MinorEngine eng(G, [&](std::size_t i, std::size_t j) -> const ZG& { return M.at(i, j); });
    std::vector<ZG> gens;
    for_each_subset(rows.size(), k, [&](std::uint32_t rsel) {
        std::uint32_t rmask = 0;
        for (std::uint32_t s = rsel; s; s &= s - 1) rmask |= 1u << rows[std::countr_zero(s)];
        for_each_subset(M.rels(), k, [&](std::uint32_t cmask) {
            const ZG& d = eng.det(rmask, cmask);
            if (!d.is_zero()) gens.push_back(d);
        });
    });
    return GStableIdeal::from_generators(G, gens);
}

GStableIdeal fitting_ideal(const PresentedModule& M, std::size_t i)
{
    if (i >= M.gens()) return GStableIdeal::unit(M.group_ptr());
    std::vector<std::size_t> rows(M.gens());
    for (std::size_t r = 0; r < rows.size(); ++r) rows[r] = r;
    return minors_ideal(M, rows, M.gens() - i);
}
/*}}}*/

/*{{{ relative Fitting ideals */
GStableIdeal relative_fitting_ideal(const PresentedModule& M, std::size_t a, std::size_t b, std::optional<std::size_t> nu)
{
    if (!M.block()) throw std::logic_error("relative Fitting ideal needs a submodule block");
    check_dims(M);
    auto [n1, m1] = *M.block();
    std::size_t n = M.gens();
    std::size_t limit = nu ? *nu : n1;
    if (b > limit) return fitting_ideal(M.quotient_by_block(), a);
    const GroupPtr& G = M.group_ptr();
    if (a + b >= n) return GStableIdeal::unit(G);
    std::size_t c = n - a - b;
    GStableIdeal acc(G);
    std::set<std::uint32_t> seen;
    for_each_subset(n1, b, [&](std::uint32_t bmask) {
        std::vector<std::size_t> left;
        for (std::size_t r = 0; r < n; ++r)
            if (!(bmask >> r & 1)) left.push_back(r);
        for_each_subset(left.size(), a, [&](std::uint32_t amask) {
            std::vector<std::size_t> keep;
            std::uint32_t key = 0;
            for (std::size_t t = 0; t < left.size(); ++t)
                if (!(amask >> t & 1)) { keep.push_back(left[t]); key |= 1u << left[t]; }
            if (!seen.insert(key).second) return;
            acc = acc + minors_ideal(M, keep, c);
        });
    });
    return acc;
}

namespace {

// M as a finite abelian group Z^N / relations, in Smith coordinates
struct FiniteModel {
    GroupPtr G;
    std::size_t n = 0;
    std::size_t N = 0;                 // n |G|
    std::vector<std::size_t> keep;     // Smith positions with d > 1
    std::vector<long> d;               // their orders
    SNF s;
    std::vector<std::vector<std::vector<long>>> act;   // act[g] : kept x kept action matrix
    std::size_t order = 1;

    std::vector<long> coords(const IntVec& x) const
    {
        std::vector<long> y(keep.size(), 0);
        for (std::size_t t = 0; t < keep.size(); ++t) {
            Int acc = 0;
            for (std::size_t i = 0; i < N; ++i)
                if (x[i] != 0) acc += x[i] * s.V(i, keep[t]);
            y[t] = fmod(acc, Int(d[t])).get_si();
        }
        return y;
    }

    IntVec lift(const std::vector<long>& y) const
    {
        IntVec x(N, 0);
        for (std::size_t t = 0; t < keep.size(); ++t)
            if (y[t])
                for (std::size_t i = 0; i < N; ++i) x[i] += Int(y[t]) * s.Vinv(keep[t], i);
        return x;
    }

    std::vector<long> apply(int g, const std::vector<long>& y) const
    {
        std::vector<long> z(keep.size(), 0);
        for (std::size_t a = 0; a < keep.size(); ++a)
            if (y[a])
                for (std::size_t b = 0; b < keep.size(); ++b) z[b] = (z[b] + y[a] * act[g][a][b]) % d[b];
        return z;
    }

    // canonical key of the submodule generated by the given elements
    std::vector<long> key(const std::vector<std::vector<long>>& gens) const
    {
        std::size_t k = keep.size();
        std::vector<IntVec> rows;
        for (std::size_t t = 0; t < k; ++t) {
            IntVec r(k, 0);
            r[t] = d[t];
            rows.push_back(r);
        }
        for (auto& y : gens)
            for (int g = 0; g < G->order(); ++g) {
                auto z = apply(g, y);
                rows.push_back(IntVec(z.begin(), z.end()));
            }
        HNFLattice L = hnf_rows(rows, k);
        std::vector<long> out;
        for (auto& b : L.basis())
            for (auto& x : b) out.push_back(x.get_si());
        return out;
    }

    std::vector<long> unrank(std::size_t idx) const
    {
        std::vector<long> y(keep.size());
        for (std::size_t t = keep.size(); t-- > 0;) {
            y[t] = (long)(idx % d[t]);
            idx /= d[t];
        }
        return y;
    }
};

FiniteModel model_of(const PresentedModule& M, std::size_t bound)
{
    FiniteModel f;
    f.G = M.group_ptr();
    f.n = M.gens();
    int g = f.G->order();
    f.N = f.n * g;
    IntMatrix R = M.z_relations();
    if (R.rows() == 0) throw std::invalid_argument("module is infinite");
    f.s = snf(R);
    for (std::size_t i = 0; i < f.N; ++i) {
        Int di = i < f.s.diag.size() ? f.s.diag[i] : Int(0);
        if (di == 0) throw std::invalid_argument("module is infinite");
        if (di == 1) continue;
        if (di > Int((long)bound) || f.order * di.get_ui() > bound)
            throw std::invalid_argument("module order exceeds enumeration bound");
        f.keep.push_back(i);
        f.d.push_back(di.get_si());
        f.order *= di.get_ui();
    }
    std::size_t k = f.keep.size();
    f.act.resize(g);
    for (int h = 0; h < g; ++h) {
        f.act[h].assign(k, std::vector<long>(k, 0));
        for (std::size_t a = 0; a < k; ++a) {
            std::vector<long> unit(k, 0);
            unit[a] = 1;
            IntVec x = f.lift(unit);
            IntVec hx(f.N, 0);
            for (std::size_t i = 0; i < f.n; ++i)
                for (int e = 0; e < g; ++e) hx[i * g + f.G->mul(h, e)] += x[i * g + e];
            auto y = f.coords(hx);
            for (std::size_t b = 0; b < k; ++b) f.act[h][a][b] = y[b];
        }
    }
    return f;
}

std::vector<ZG> as_column(const FiniteModel& f, const std::vector<long>& y)
{
    IntVec x = f.lift(y);
    int g = f.G->order();
    std::vector<ZG> col;
    for (std::size_t i = 0; i < f.n; ++i) {
        ZG e(f.G);
        for (int h = 0; h < g; ++h) e.add_term(h, x[i * g + h]);
        col.push_back(e);
    }
    return col;
}

std::vector<long> generator_coords(const FiniteModel& f, std::size_t i)
{
    IntVec x(f.N, 0);
    x[i * f.G->order()] = 1;
    return f.coords(x);
}

} // namespace

std::size_t minimal_block_generators(const PresentedModule& M)
{
    if (!M.block()) throw std::logic_error("submodule block not set");
    std::size_t n1 = M.block()->first;
    // compare Z[G]-spans inside Z^{n|G|} modulo the relation lattice
    int g = M.group_ptr()->order();
    std::size_t N = M.gens() * g;
    IntMatrix R = M.z_relations();
    std::vector<IntVec> rel;
    for (std::size_t r = 0; r < R.rows(); ++r) rel.push_back(R.row(r));
    auto span = [&](std::uint32_t mask) {
        std::vector<IntVec> rows = rel;
        for (std::size_t i = 0; i < n1; ++i)
            if (mask >> i & 1)
                for (int h = 0; h < g; ++h) {
                    IntVec v(N, 0);
                    v[i * g + h] = 1;
                    rows.push_back(v);
                }
        return hnf_rows(rows, N);
    };
    HNFLattice full = span(n1 >= 32 ? ~0u : (1u << n1) - 1);
    for (std::size_t k = 0; k <= n1; ++k) {
        bool found = false;
        for_each_subset(n1, k, [&](std::uint32_t mask) {
            if (!found && span(mask) == full) found = true;
        });
        if (found) return k;
    }
    return n1;
}

GStableIdeal relative_fitting_oracle(const PresentedModule& M, std::size_t a, std::size_t b, std::size_t bound,
                                     OracleStats* stats)
{
    if (!M.block()) throw std::logic_error("relative Fitting oracle needs a submodule block");
    check_dims(M);
    FiniteModel f = model_of(M, bound);
    std::size_t n1 = M.block()->first;

    // elements of M and of N, as Smith coordinates
    std::vector<std::vector<long>> Mel(f.order);
    for (std::size_t i = 0; i < f.order; ++i) Mel[i] = f.unrank(i);
    auto rank_of = [&](const std::vector<long>& y) {
        std::size_t idx = 0;
        for (std::size_t t = 0; t < y.size(); ++t) idx = idx * f.d[t] + y[t];
        return idx;
    };
    std::vector<char> inN(f.order, 0);
    {
        std::vector<std::size_t> queue{0};
        inN[0] = 1;
        std::vector<std::vector<long>> gens;
        for (std::size_t i = 0; i < n1; ++i)
            for (int h = 0; h < f.G->order(); ++h) gens.push_back(f.apply(h, generator_coords(f, i)));
        for (std::size_t q = 0; q < queue.size(); ++q)
            for (auto& y : gens) {
                auto z = Mel[queue[q]];
                for (std::size_t t = 0; t < z.size(); ++t) z[t] = (z[t] + y[t]) % f.d[t];
                std::size_t r = rank_of(z);
                if (!inN[r]) { inN[r] = 1; queue.push_back(r); }
            }
    }

    // distinct cyclic submodules, each with one generator
    std::map<std::vector<long>, std::vector<long>> cycM, cycN;
    for (std::size_t i = 0; i < f.order; ++i) {
        auto k = f.key({Mel[i]});
        cycM.emplace(k, Mel[i]);
        if (inN[i]) cycN.emplace(k, Mel[i]);
    }

    // level sets of submodules X with a generating tuple
    std::map<std::vector<long>, std::vector<std::vector<long>>> level;
    level.emplace(f.key({}), std::vector<std::vector<long>>{});
    for (std::size_t step = 0; step < a + b; ++step) {
        const auto& src = step < b ? cycN : cycM;
        std::map<std::vector<long>, std::vector<std::vector<long>>> next;
        for (auto& [k, tuple] : level)
            for (auto& [ck, x] : src) {
                auto t = tuple;
                t.push_back(x);
                auto nk = f.key(t);
                next.emplace(nk, t);
            }
        level.swap(next);
    }

    GStableIdeal acc(f.G);
    for (auto& [k, tuple] : level) {
        std::vector<std::vector<ZG>> cols;
        for (auto& x : tuple) cols.push_back(as_column(f, x));
        PresentedModule Q = M.with_extra_columns(cols);
        if (Q.rels() > kMaxFittingDim) {
            // columns beyond the cap: drop zero columns first
            std::vector<std::vector<ZG>> nz;
            for (auto& c : cols) {
                bool zero = true;
                for (auto& e : c) zero = zero && e.is_zero();
                if (!zero) nz.push_back(c);
            }
            Q = M.with_extra_columns(nz);
        }
        acc = acc + fitting_ideal(Q, 0);
        if (acc.is_unit()) break;
    }
    if (stats) {
        stats->module_order = f.order;
        stats->submodules = level.size();
    }
    return acc;
}
/*}}}*/

PresentedModule transpose_presentation(const PresentedModule& M)
{
    if (M.rels() > M.gens()) throw std::invalid_argument("presentation has more relations than generators");
    PresentedModule sq = M.rels() < M.gens() ? M.with_zero_columns(M.gens() - M.rels()) : M;
    std::size_t n = sq.gens();
    PresentedModule T(M.group_ptr(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) T.at(j, i) = sq.at(i, j).sharp();
    return T;
}

AbelianStructure module_structure(const PresentedModule& M)
{
    IntMatrix R = M.z_relations();
    if (R.rows() == 0) {
        AbelianStructure a;
        a.free_rank = M.gens() * M.group_ptr()->order();
        return a;
    }
    return cokernel_structure(R);
}

} // namespace starkit
