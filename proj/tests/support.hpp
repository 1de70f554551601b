#pragma once

#include "starkit/groupring.hpp"

#include <random>
#include <vector>

namespace testsupport {

using namespace starkit;

inline std::mt19937_64& rng()
{
    static std::mt19937_64 r(20240917);
    return r;
}

inline long rand_int(long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng());
}

inline ZG rand_zg(const GroupPtr& G, long height, double density = 0.7)
{
    ZG x(G);
    std::bernoulli_distribution keep(density);
    for (int g = 0; g < G->order(); ++g)
        if (keep(rng())) x.add_term(g, Int(rand_int(-height, height)));
    return x;
}

inline QG rand_qg(const GroupPtr& G, long height)
{
    QG x(G);
    for (int g = 0; g < G->order(); ++g) x.add_term(g, Rat(rand_int(-height, height), rand_int(1, 4)));
    return x;
}

// all groups of order <= n as products of cyclic groups, in a few presentations
inline std::vector<std::vector<long>> small_groups(int n)
{
    std::vector<std::vector<long>> out{{}};
    for (long a = 2; a <= n; ++a) out.push_back({a});
    for (long a = 2; a <= n; ++a)
        for (long b = 2; a * b <= n; ++b) out.push_back({a, b});
    for (long a = 2; a <= n; ++a)
        for (long b = 2; a * b <= n; ++b)
            for (long c = 2; a * b * c <= n; ++c) out.push_back({a, b, c});
    return out;
}

} // namespace testsupport
