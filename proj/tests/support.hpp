#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "qwreath/multimatrix.hpp"

namespace qwreath::test
{

inline constexpr double kTol = 1e-9;
inline constexpr std::uint64_t kSeed = 0x5eed;

inline MultiMatrixAlgebra algebra(std::vector<Block> blocks)
{
    return MultiMatrixAlgebra::make(std::move(blocks));
}

inline MultiMatrixAlgebra uniform_cn(int n)
{
    return algebra(std::vector<Block>(n, Block{1, {1.0 / n}}));
}

inline MultiMatrixAlgebra m2_trace() { return algebra({{2, {0.5, 0.5}}}); }
inline MultiMatrixAlgebra m3_trace() { return algebra({{3, {1.0 / 3, 1.0 / 3, 1.0 / 3}}}); }
inline MultiMatrixAlgebra m2_skew() { return algebra({{2, {2.0 / 3, 1.0 / 3}}}); }
inline MultiMatrixAlgebra c_m2_delta5() { return algebra({{1, {0.2}}, {2, {0.4, 0.4}}}); }
inline MultiMatrixAlgebra c_m2_uniform() { return algebra({{1, {1.0 / 3}}, {2, {1.0 / 3, 1.0 / 3}}}); }

inline AlgebraElement random_element(const MultiMatrixAlgebra& a, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    AlgebraElement x = zero_element(a);
    for (auto& m : x.blocks)
    {
        for (Eigen::Index i = 0; i < m.size(); ++i)
        {
            m(i) = Complex(d(rng), d(rng));
        }
    }
    return x;
}

inline Vector random_vector(Eigen::Index n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        v(i) = Complex(d(rng), d(rng));
    }
    return v;
}

/// Average over S_N of Π [σ(j) = i] for the given (i, j) pairs, by enumeration.
inline double sn_average(int n, const std::vector<std::pair<int, int>>& pairs)
{
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    long long hits = 0;
    long long total = 0;
    do
    {
        ++total;
        bool all = true;
        for (auto [i, j] : pairs)
        {
            all = all && sigma[j] == i;
        }
        hits += all;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return static_cast<double>(hits) / static_cast<double>(total);
}

} // namespace qwreath::test
