#pragma once

#include "starkit/bigint.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace starkit {

using IntVec = std::vector<Int>;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c) {}
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Int& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    IntVec row(std::size_t i) const;
    void append_row(const IntVec& v);
    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool is_zero() const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row_i += k * row_j
    void add_row(std::size_t i, std::size_t j, const Int& k);
    void add_col(std::size_t i, std::size_t j, const Int& k);
    void neg_row(std::size_t i);
    void neg_col(std::size_t i);

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Int> a_;
};

// row lattice in Z^n, basis in row-style Hermite normal form
class HNFLattice {
public:
    HNFLattice() = default;
    explicit HNFLattice(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return basis_.size(); }
    const std::vector<IntVec>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return piv_; }

    bool contains(const IntVec& v) const;
    bool contains(const HNFLattice& o) const;
    // coordinates of v in the basis, empty if v is not in the lattice
    bool solve(const IntVec& v, IntVec& coords) const;
    // canonical representative of v modulo the lattice
    IntVec reduce(const IntVec& v) const;
    // index in Z^dim for full rank lattices, 0 otherwise
    Int index() const;

    bool operator==(const HNFLattice& o) const { return dim_ == o.dim_ && basis_ == o.basis_; }
    bool operator!=(const HNFLattice& o) const { return !(*this == o); }

    friend HNFLattice hnf(const IntMatrix& m);
    friend HNFLattice hnf_rows(const std::vector<IntVec>& rows, std::size_t dim);

private:
    std::size_t dim_ = 0;
    std::vector<IntVec> basis_;
    std::vector<std::size_t> piv_;
};

HNFLattice hnf(const IntMatrix& m);
HNFLattice hnf_rows(const std::vector<IntVec>& rows, std::size_t dim);
HNFLattice lattice_sum(const HNFLattice& a, const HNFLattice& b);
HNFLattice lattice_intersection(const HNFLattice& a, const HNFLattice& b);

// row-style HNF of m together with the transform: u * m = h, u unimodular
IntMatrix hnf_with_transform(const IntMatrix& m, IntMatrix& u);

// some integer x with x*m = v
bool solve_left(const IntMatrix& m, const IntVec& v, IntVec& x);

// integer kernel of the row map x -> x*m, as a basis in HNF
HNFLattice left_kernel(const IntMatrix& m);

struct SNF {
    std::vector<Int> diag;   // min(rows, cols) entries, d_i | d_{i+1}, nonnegative
    IntMatrix U, V;          // U * M * V = D
    IntMatrix Vinv;
};

SNF snf(const IntMatrix& m);

// invariant factors > 1 and free rank of Z^cols / rowspan(m)
struct AbelianStructure {
    std::vector<Int> torsion;
    std::size_t free_rank = 0;
    Int order() const;   // 0 when infinite
};

AbelianStructure cokernel_structure(const IntMatrix& relations_as_rows);

Int determinant(const IntMatrix& m);

using RatVec = std::vector<Rat>;

// reduced row echelon basis of the Q-span of the rows
std::vector<RatVec> rational_echelon(std::vector<RatVec> rows);
bool rational_span_contains(const std::vector<RatVec>& echelon, RatVec v);
std::size_t rational_rank(const std::vector<RatVec>& rows);

std::string matrix_to_json(const IntMatrix& m);

} // namespace starkit
