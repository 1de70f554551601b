#include "starkit/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace starkit {

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols)
{
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntVec IntMatrix::row(std::size_t i) const
{
    return IntVec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
}

void IntMatrix::append_row(const IntVec& v)
{
    if (r_ == 0 && c_ == 0) c_ = v.size();
    if (v.size() != c_) throw std::invalid_argument("row length mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++r_;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const
{
    if (c_ != o.r_) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix p(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const Int& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.c_; ++j) p(i, j) += x * o(k, j);
        }
    return p;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j)
{
    if (i == j) return;
    for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j)
{
    if (i == j) return;
    for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const Int& k)
{
    if (k == 0) return;
    for (std::size_t c = 0; c < c_; ++c) (*this)(i, c) += k * (*this)(j, c);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const Int& k)
{
    if (k == 0) return;
    for (std::size_t r = 0; r < r_; ++r) (*this)(r, i) += k * (*this)(r, j);
}

void IntMatrix::neg_row(std::size_t i)
{
    for (std::size_t c = 0; c < c_; ++c) (*this)(i, c) = -(*this)(i, c);
}

void IntMatrix::neg_col(std::size_t i)
{
    for (std::size_t r = 0; r < r_; ++r) (*this)(r, i) = -(*this)(r, i);
}

/*{{{ HNF */
namespace {

std::size_t lead(const IntVec& v)
{
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] != 0) return j;
    return v.size();
}

void axpy(IntVec& y, const Int& a, const IntVec& x)
{
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += a * x[j];
}

// extended gcd: g = s*a + t*b with g >= 0
void xgcd(const Int& a, const Int& b, Int& g, Int& s, Int& t)
{
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

struct Builder {
    std::size_t dim;
    std::vector<IntVec> rows;        // indexed by pivot column, empty if none
    std::size_t rank = 0;
    Int det_mult = 0;                // product of pivots once full rank

    explicit Builder(std::size_t n) : dim(n), rows(n) {}

    void reduce_mod(IntVec& v) const
    {
        if (det_mult == 0) return;
        for (auto& x : v) x = fmod(x, det_mult);
    }

    void insert(IntVec v)
    {
        reduce_mod(v);
        for (;;) {
            std::size_t j = lead(v);
            if (j == dim) return;
            IntVec& b = rows[j];
            if (b.empty()) {
                if (v[j] < 0) for (auto& x : v) x = -x;
                b = std::move(v);
                ++rank;
                if (rank == dim) {
                    det_mult = 1;
                    for (auto& r : rows) det_mult *= r[&r - &rows[0]];
                }
                return;
            }
            if (v[j] % b[j] == 0) {
                Int q = v[j] / b[j];
                axpy(v, -q, b);
            } else {
                Int g, s, t;
                xgcd(b[j], v[j], g, s, t);
                Int bj = b[j] / g, vj = v[j] / g;
                IntVec nb(dim), nv(dim);
                for (std::size_t k = 0; k < dim; ++k) {
                    nb[k] = s * b[k] + t * v[k];
                    nv[k] = bj * v[k] - vj * b[k];
                }
                b = std::move(nb);
                v = std::move(nv);
                if (det_mult != 0) {
                    det_mult = 1;
                    for (auto& r : rows) det_mult *= r[&r - &rows[0]];
                }
            }
            reduce_mod(v);
        }
    }

    void finish(std::vector<IntVec>& basis, std::vector<std::size_t>& piv)
    {
        basis.clear();
        piv.clear();
        for (std::size_t j = 0; j < dim; ++j)
            if (!rows[j].empty()) { piv.push_back(j); basis.push_back(std::move(rows[j])); }
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::size_t p = piv[i];
            for (std::size_t k = 0; k < i; ++k) {
                Int q = fdiv(basis[k][p], basis[i][p]);
                if (q != 0) axpy(basis[k], -q, basis[i]);
            }
        }
    }
};

} // namespace

HNFLattice hnf_rows(const std::vector<IntVec>& rows, std::size_t dim)
{
    Builder b(dim);
    for (auto& r : rows) {
        if (r.size() != dim) throw std::invalid_argument("vector length mismatch");
        b.insert(r);
    }
    HNFLattice L(dim);
    b.finish(L.basis_, L.piv_);
    return L;
}

HNFLattice hnf(const IntMatrix& m)
{
    std::vector<IntVec> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return hnf_rows(rows, m.cols());
}

bool HNFLattice::solve(const IntVec& v, IntVec& coords) const
{
    if (v.size() != dim_) throw std::invalid_argument("vector length mismatch");
    IntVec r = v;
    coords.assign(basis_.size(), 0);
    std::size_t bi = 0;
    for (std::size_t j = 0; j < dim_; ++j) {
        if (r[j] == 0) {
            if (bi < piv_.size() && piv_[bi] == j) ++bi;
            continue;
        }
        if (bi >= piv_.size() || piv_[bi] != j) return false;
        const IntVec& b = basis_[bi];
        if (r[j] % b[j] != 0) return false;
        Int q = r[j] / b[j];
        coords[bi] = q;
        axpy(r, -q, b);
        ++bi;
    }
    return true;
}

IntVec HNFLattice::reduce(const IntVec& v) const
{
    if (v.size() != dim_) throw std::invalid_argument("vector length mismatch");
    IntVec r = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        Int q = fdiv(r[piv_[i]], basis_[i][piv_[i]]);
        if (q != 0) axpy(r, -q, basis_[i]);
    }
    return r;
}

bool HNFLattice::contains(const IntVec& v) const
{
    IntVec c;
    return solve(v, c);
}

bool HNFLattice::contains(const HNFLattice& o) const
{
    for (auto& b : o.basis_)
        if (!contains(b)) return false;
    return true;
}

Int HNFLattice::index() const
{
    if (basis_.size() != dim_) return 0;
    Int d = 1;
    for (std::size_t i = 0; i < dim_; ++i) d *= basis_[i][i];
    return d;
}

HNFLattice lattice_sum(const HNFLattice& a, const HNFLattice& b)
{
    std::vector<IntVec> rows = a.basis();
    rows.insert(rows.end(), b.basis().begin(), b.basis().end());
    return hnf_rows(rows, a.dim());
}

IntMatrix hnf_with_transform(const IntMatrix& m0, IntMatrix& u)
{
    IntMatrix m = m0;
    std::size_t R = m.rows(), C = m.cols();
    u = IntMatrix::identity(R);
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        for (;;) {
            std::size_t best = R;
            for (std::size_t i = r; i < R; ++i)
                if (m(i, c) != 0 && (best == R || abs(m(i, c)) < abs(m(best, c)))) best = i;
            if (best == R) break;
            m.swap_rows(r, best);
            u.swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < R; ++i) {
                if (m(i, c) == 0) continue;
                Int q = fdiv(m(i, c), m(r, c));
                m.add_row(i, r, -q);
                u.add_row(i, r, -q);
                if (m(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (r < R && m(r, c) != 0) {
            if (m(r, c) < 0) { m.neg_row(r); u.neg_row(r); }
            for (std::size_t i = 0; i < r; ++i) {
                Int q = fdiv(m(i, c), m(r, c));
                m.add_row(i, r, -q);
                u.add_row(i, r, -q);
            }
            ++r;
        }
    }
    return m;
}

bool solve_left(const IntMatrix& m, const IntVec& v, IntVec& x)
{
    IntMatrix u;
    IntMatrix h = hnf_with_transform(m, u);
    std::vector<IntVec> rows;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        IntVec r = h.row(i);
        bool z = true;
        for (auto& e : r)
            if (e != 0) { z = false; break; }
        if (z) break;
        rows.push_back(std::move(r));
    }
    HNFLattice L = hnf_rows(rows, m.cols());
    IntVec c;
    if (!L.solve(v, c)) return false;
    x.assign(m.rows(), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0)
            for (std::size_t j = 0; j < m.rows(); ++j) x[j] += c[i] * u(i, j);
    return true;
}

HNFLattice left_kernel(const IntMatrix& m)
{
    IntMatrix u;
    IntMatrix h = hnf_with_transform(m, u);
    std::vector<IntVec> ker;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        bool z = true;
        for (std::size_t j = 0; j < h.cols(); ++j)
            if (h(i, j) != 0) { z = false; break; }
        if (z) ker.push_back(u.row(i));
    }
    return hnf_rows(ker, m.rows());
}

HNFLattice lattice_intersection(const HNFLattice& a, const HNFLattice& b)
{
    std::size_t n = a.dim();
    std::size_t ra = a.rank(), rb = b.rank();
    IntMatrix m(ra + rb, n);
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = a.basis()[i][j];
    for (std::size_t i = 0; i < rb; ++i)
        for (std::size_t j = 0; j < n; ++j) m(ra + i, j) = -b.basis()[i][j];
    HNFLattice k = left_kernel(m);
    std::vector<IntVec> rows;
    for (auto& x : k.basis()) {
        IntVec v(n);
        for (std::size_t i = 0; i < ra; ++i)
            if (x[i] != 0) axpy(v, x[i], a.basis()[i]);
        rows.push_back(v);
    }
    return hnf_rows(rows, n);
}
/*}}}*/

/*{{{ SNF */
SNF snf(const IntMatrix& m0)
{
    SNF s;
    IntMatrix m = m0;
    std::size_t R = m.rows(), C = m.cols();
    s.U = IntMatrix::identity(R);
    s.V = IntMatrix::identity(C);
    s.Vinv = IntMatrix::identity(C);

    auto col_add = [&](std::size_t i, std::size_t j, const Int& k) {
        m.add_col(i, j, k);
        s.V.add_col(i, j, k);
        s.Vinv.add_row(j, i, -k);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        m.swap_cols(i, j);
        s.V.swap_cols(i, j);
        s.Vinv.swap_rows(i, j);
    };

    std::size_t n = std::min(R, C);
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            std::size_t bi = R, bj = C;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j)
                    if (m(i, j) != 0 && (bi == R || abs(m(i, j)) < abs(m(bi, bj)))) { bi = i; bj = j; }
            if (bi == R) break;
            m.swap_rows(t, bi);
            s.U.swap_rows(t, bi);
            col_swap(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (m(i, t) == 0) continue;
                Int q = fdiv(m(i, t), m(t, t));
                m.add_row(i, t, -q);
                s.U.add_row(i, t, -q);
                if (m(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (m(t, j) == 0) continue;
                Int q = fdiv(m(t, j), m(t, t));
                col_add(j, t, -q);
                if (m(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            std::size_t bad = R;
            for (std::size_t i = t + 1; i < R && bad == R; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (m(i, j) % m(t, t) != 0) { bad = i; break; }
            if (bad == R) break;
            m.add_row(t, bad, 1);
            s.U.add_row(t, bad, 1);
        }
        if (m(t, t) < 0) {
            m.neg_row(t);
            s.U.neg_row(t);
        }
    }
    s.diag.resize(n);
    for (std::size_t t = 0; t < n; ++t) s.diag[t] = m(t, t);
    return s;
}

Int AbelianStructure::order() const
{
    if (free_rank) return 0;
    Int o = 1;
    for (auto& d : torsion) o *= d;
    return o;
}

AbelianStructure cokernel_structure(const IntMatrix& rel)
{
    AbelianStructure a;
    SNF s = snf(rel);
    std::size_t nz = 0;
    for (auto& d : s.diag) {
        if (d == 0) continue;
        ++nz;
        if (d != 1) a.torsion.push_back(d);
    }
    a.free_rank = rel.cols() - nz;
    return a;
}
/*}}}*/

Int determinant(const IntMatrix& m0)
{
    if (m0.rows() != m0.cols()) throw std::invalid_argument("determinant of non-square matrix");
    std::size_t n = m0.rows();
    if (n == 0) return 1;
    IntMatrix m = m0;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::string matrix_to_json(const IntMatrix& m)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ",\"" : "\"") << to_dec(m(i, j)) << '"';
        os << ']';
    }
    os << ']';
    return os.str();
}


std::vector<RatVec> rational_echelon(std::vector<RatVec> rows)
{
    std::vector<RatVec> out;
    if (rows.empty()) return out;
    std::size_t n = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        Rat inv = 1 / rows[r][c];
        for (auto& e : rows[r]) e *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rat f = rows[i][c];
            for (std::size_t j = c; j < n; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

bool rational_span_contains(const std::vector<RatVec>& echelon, RatVec v)
{
    for (auto& row : echelon) {
        std::size_t c = 0;
        while (row[c] == 0) ++c;
        if (v[c] == 0) continue;
        Rat f = v[c];
        for (std::size_t j = c; j < v.size(); ++j) v[j] -= f * row[j];
    }
    for (auto& e : v)
        if (e != 0) return false;
    return true;
}

std::size_t rational_rank(const std::vector<RatVec>& rows) { return rational_echelon(rows).size(); }

} // namespace starkit
