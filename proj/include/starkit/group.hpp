#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace starkit {

using Exps = std::vector<long>;

// G = Z/n_1 x ... x Z/n_k; elements are indexed by mixed radix of their exponent vector
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;
    explicit FiniteAbelianGroup(std::vector<long> cyclic_orders);

    const std::vector<long>& orders() const { return orders_; }
    std::size_t rank() const { return orders_.size(); }
    int order() const { return size_; }
    long exponent() const;

    int index(const Exps& e) const;
    Exps element(int idx) const;
    int identity() const { return 0; }
    int mul(int a, int b) const { return mul_[a * size_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int pow(int a, long k) const;
    int generator(std::size_t i) const;
    long element_order(int a) const;

    // subgroup closure of a generator list, as a sorted list of element indices
    std::vector<int> subgroup(const std::vector<int>& gens) const;

    bool operator==(const FiniteAbelianGroup& o) const { return orders_ == o.orders_; }
    bool operator!=(const FiniteAbelianGroup& o) const { return !(*this == o); }

    std::string str() const;

private:
    std::vector<long> orders_;
    int size_ = 1;
    std::vector<int> mul_, inv_;
};

// G/H realised as a product of cyclic groups via Smith form of the relation lattice
struct Quotient {
    FiniteAbelianGroup q;
    std::vector<int> proj;     // element of G -> element of G/H
    std::vector<int> section;  // element of G/H -> chosen representative in G
};

Quotient quotient(const FiniteAbelianGroup& G, const std::vector<int>& H);

// a subgroup H viewed as an abstract group, with the embedding into G
struct SubgroupEmbedding {
    FiniteAbelianGroup h;
    std::vector<int> incl;     // element of h -> element of G
};

// every subgroup, each as a sorted list of element indices
std::vector<std::vector<int>> all_subgroups(const FiniteAbelianGroup& G);

SubgroupEmbedding subgroup_as_group(const FiniteAbelianGroup& G, const std::vector<int>& H);

} // namespace starkit
