#pragma once

#include "starkit/groupring.hpp"
#include "starkit/lattice.hpp"

#include <string>
#include <vector>

namespace starkit {

// ideal of Z[G] stored as the HNF of its G-orbit closure in Z^{|G|}
class GStableIdeal {
public:
    GStableIdeal() = default;
    explicit GStableIdeal(GroupPtr G);   // zero ideal

    static GStableIdeal from_generators(GroupPtr G, const std::vector<ZG>& gens);
    static GStableIdeal unit(GroupPtr G);
    // augmentation ideal I(H) Z[G] of a subgroup H
    static GStableIdeal augmentation(GroupPtr G, const std::vector<int>& H);

    const GroupPtr& group_ptr() const { return G_; }
    const HNFLattice& lattice() const { return L_; }
    std::vector<ZG> basis_elements() const;

    bool contains(const ZG& x) const;
    bool contains(const GStableIdeal& o) const { return L_.contains(o.L_); }
    bool is_zero() const { return L_.rank() == 0; }
    bool is_unit() const;
    // [Z[G] : I] for full-rank ideals, 0 otherwise
    Int index() const { return L_.index(); }

    GStableIdeal operator+(const GStableIdeal& o) const;
    GStableIdeal operator*(const GStableIdeal& o) const;
    GStableIdeal intersect(const GStableIdeal& o) const;
    GStableIdeal sharp() const;
    GStableIdeal power(int k) const;

    bool operator==(const GStableIdeal& o) const { return *G_ == *o.G_ && L_ == o.L_; }
    bool operator!=(const GStableIdeal& o) const { return !(*this == o); }

    std::string to_json() const;

private:
    GroupPtr G_;
    HNFLattice L_;
    void check(const GStableIdeal& o) const;
};

IntVec to_vec(const ZG& x);
ZG from_vec(GroupPtr G, const IntVec& v);

} // namespace starkit
