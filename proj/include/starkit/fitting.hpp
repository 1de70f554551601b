#pragma once

#include "starkit/ideal.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace starkit {

// n x m relation matrix over Z[G]: rows are generators, columns are relations
class PresentedModule {
public:
    PresentedModule(GroupPtr G, std::size_t n, std::size_t m);
    PresentedModule(GroupPtr G, const std::vector<std::vector<ZG>>& rows, std::size_t m);

    const GroupPtr& group_ptr() const { return G_; }
    std::size_t gens() const { return n_; }
    std::size_t rels() const { return m_; }
    ZG& at(std::size_t i, std::size_t j) { return a_[i * m_ + j]; }
    const ZG& at(std::size_t i, std::size_t j) const { return a_[i * m_ + j]; }

    // mark the first n1 generators as generating N, presented by the top-left n1 x m1 block
    void set_block(std::size_t n1, std::size_t m1);
    const std::optional<std::pair<std::size_t, std::size_t>>& block() const { return block_; }

    PresentedModule with_extra_columns(const std::vector<std::vector<ZG>>& cols) const;
    PresentedModule with_zero_columns(std::size_t k) const;
    // generators n1.. with relations m1.. : the quotient M/N
    PresentedModule quotient_by_block() const;

    // Z-presentation: generators e_i * g, relations g * column_j, as rows of length n|G|
    IntMatrix z_relations() const;

    std::string to_json() const;
    static PresentedModule from_json(const std::string& text);

private:
    GroupPtr G_;
    std::size_t n_, m_;
    std::vector<ZG> a_;
    std::optional<std::pair<std::size_t, std::size_t>> block_;
};

constexpr std::size_t kMaxFittingDim = 12;

// determinant over Z[G] by cofactor expansion
ZG zg_determinant(const std::vector<std::vector<ZG>>& m);

// ideal of all k x k minors using the given rows
GStableIdeal minors_ideal(const PresentedModule& M, const std::vector<std::size_t>& rows, std::size_t k);

GStableIdeal fitting_ideal(const PresentedModule& M, std::size_t i);

// relative Fitting ideal of (M, N) for N given by the block; nu overrides the generator count of N
GStableIdeal relative_fitting_ideal(const PresentedModule& M, std::size_t a, std::size_t b,
                                    std::optional<std::size_t> nu = std::nullopt);

// minimal k such that k of the first n1 generators generate N
std::size_t minimal_block_generators(const PresentedModule& M);

struct OracleStats {
    std::size_t module_order = 0;
    std::size_t submodules = 0;
};

// sum of Fitt^0(M/X) over submodules X generated by a+b elements, the first b in N
GStableIdeal relative_fitting_oracle(const PresentedModule& M, std::size_t a, std::size_t b,
                                     std::size_t bound = 10000, OracleStats* stats = nullptr);

PresentedModule transpose_presentation(const PresentedModule& M);

AbelianStructure module_structure(const PresentedModule& M);

} // namespace starkit
