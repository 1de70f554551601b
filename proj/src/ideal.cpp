#include "starkit/ideal.hpp"

#include <json.hpp>

namespace starkit {

IntVec to_vec(const ZG& x)
{
    IntVec v(x.group().order(), 0);
    for (auto& [g, c] : x.terms()) v[g] = c;
    return v;
}

ZG from_vec(GroupPtr G, const IntVec& v)
{
    ZG x(G);
    for (std::size_t g = 0; g < v.size(); ++g) x.add_term((int)g, v[g]);
    return x;
}

GStableIdeal::GStableIdeal(GroupPtr G) : G_(std::move(G)), L_(G_->order()) {}

GStableIdeal GStableIdeal::from_generators(GroupPtr G, const std::vector<ZG>& gens)
{
    std::vector<IntVec> rows;
    for (auto& x : gens) {
        if (!(x.group() == *G)) throw std::invalid_argument("group mismatch");
        if (x.is_zero()) continue;
        for (int g = 0; g < G->order(); ++g) rows.push_back(to_vec(x.shift(g)));
    }
    GStableIdeal I(G);
    I.L_ = hnf_rows(rows, G->order());
    return I;
}

GStableIdeal GStableIdeal::unit(GroupPtr G)
{
    return from_generators(G, {group_elem(G, 0)});
}

GStableIdeal GStableIdeal::augmentation(GroupPtr G, const std::vector<int>& H)
{
    std::vector<ZG> gens;
    for (int h : G->subgroup(H))
        if (h != 0) gens.push_back(group_elem(G, h) - group_elem(G, 0));
    return from_generators(G, gens);
}

std::vector<ZG> GStableIdeal::basis_elements() const
{
    std::vector<ZG> out;
    for (auto& b : L_.basis()) out.push_back(from_vec(G_, b));
    return out;
}

bool GStableIdeal::contains(const ZG& x) const
{
    if (!(x.group() == *G_)) throw std::invalid_argument("group mismatch");
    return L_.contains(to_vec(x));
}

bool GStableIdeal::is_unit() const { return L_.rank() == (std::size_t)G_->order() && L_.index() == 1; }

void GStableIdeal::check(const GStableIdeal& o) const
{
    if (!(*G_ == *o.G_)) throw std::invalid_argument("group mismatch");
}

GStableIdeal GStableIdeal::operator+(const GStableIdeal& o) const
{
    check(o);
    GStableIdeal r(G_);
    r.L_ = lattice_sum(L_, o.L_);
    return r;
}

GStableIdeal GStableIdeal::operator*(const GStableIdeal& o) const
{
    check(o);
    std::vector<IntVec> rows;
    auto a = basis_elements(), b = o.basis_elements();
    for (auto& x : a)
        for (auto& y : b) rows.push_back(to_vec(x * y));
    GStableIdeal r(G_);
    r.L_ = hnf_rows(rows, G_->order());
    return r;
}

GStableIdeal GStableIdeal::intersect(const GStableIdeal& o) const
{
    check(o);
    GStableIdeal r(G_);
    r.L_ = lattice_intersection(L_, o.L_);
    return r;
}

GStableIdeal GStableIdeal::sharp() const
{
    std::vector<IntVec> rows;
    for (auto& x : basis_elements()) rows.push_back(to_vec(x.sharp()));
    GStableIdeal r(G_);
    r.L_ = hnf_rows(rows, G_->order());
    return r;
}

GStableIdeal GStableIdeal::power(int k) const
{
    GStableIdeal r = unit(G_);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

std::string GStableIdeal::to_json() const
{
    nlohmann::json j;
    j["group"] = G_->orders();
    j["basis"] = nlohmann::json::array();
    for (auto& b : L_.basis()) {
        nlohmann::json row = nlohmann::json::array();
        for (auto& x : b) row.push_back(x.get_str());
        j["basis"].push_back(row);
    }
    return j.dump();
}

} // namespace starkit
