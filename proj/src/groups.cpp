#include "qwreath/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "qwreath/linalg.hpp"

namespace qwreath
{

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table, std::string name)
{
    const int n = static_cast<int>(table.size());
    if (n == 0)
    {
        throw Error(Errc::InvalidGroup, "empty multiplication table");
    }
    for (int g = 0; g < n; ++g)
    {
        if (static_cast<int>(table[g].size()) != n)
        {
            throw Error(Errc::InvalidGroup, "row " + std::to_string(g) + " has wrong length");
        }
        for (int x : table[g])
        {
            if (x < 0 || x >= n)
            {
                throw Error(Errc::InvalidGroup, "entry out of range in row " + std::to_string(g));
            }
        }
    }

    int e = -1;
    for (int g = 0; g < n && e < 0; ++g)
    {
        bool ok = true;
        for (int h = 0; h < n && ok; ++h)
        {
            ok = table[g][h] == h && table[h][g] == h;
        }
        if (ok)
        {
            e = g;
        }
    }
    if (e < 0)
    {
        throw Error(Errc::InvalidGroup, "no identity element");
    }

    for (int a = 0; a < n; ++a)
    {
        for (int b = 0; b < n; ++b)
        {
            for (int c = 0; c < n; ++c)
            {
                if (table[table[a][b]][c] != table[a][table[b][c]])
                {
                    throw Error(Errc::InvalidGroup, "associativity fails at (" + std::to_string(a) + "," +
                                                        std::to_string(b) + "," + std::to_string(c) + ")");
                }
            }
        }
    }

    std::vector<int> inv(n, -1);
    for (int g = 0; g < n; ++g)
    {
        for (int h = 0; h < n; ++h)
        {
            if (table[g][h] == e && table[h][g] == e)
            {
                inv[g] = h;
                break;
            }
        }
        if (inv[g] < 0)
        {
            throw Error(Errc::InvalidGroup, "element " + std::to_string(g) + " has no inverse");
        }
    }

    FiniteGroup out;
    out.table_ = std::move(table);
    out.inverse_ = std::move(inv);
    out.identity_ = e;
    out.name_ = std::move(name);
    return out;
}

FiniteGroup FiniteGroup::trivial()
{
    return from_table({{0}}, "1");
}

FiniteGroup FiniteGroup::cyclic(int n)
{
    if (n < 1)
    {
        throw Error(Errc::InvalidGroup, "cyclic group order must be positive");
    }
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
    {
        for (int b = 0; b < n; ++b)
        {
            t[a][b] = (a + b) % n;
        }
    }
    return from_table(std::move(t), "Z" + std::to_string(n));
}

FiniteGroup FiniteGroup::symmetric(int n)
{
    if (n < 1 || n > 6)
    {
        throw Error(Errc::InvalidGroup, "symmetric group degree must be in 1..6");
    }
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do
    {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    std::map<std::vector<int>, int> lookup;
    for (int i = 0; i < static_cast<int>(perms.size()); ++i)
    {
        lookup[perms[i]] = i;
    }
    const int order = static_cast<int>(perms.size());
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    std::vector<int> c(n);
    for (int g = 0; g < order; ++g)
    {
        for (int h = 0; h < order; ++h)
        {
            for (int i = 0; i < n; ++i)
            {
                c[i] = perms[g][perms[h][i]];
            }
            t[g][h] = lookup.at(c);
        }
    }
    FiniteGroup out = from_table(std::move(t), "S" + std::to_string(n));
    out.perms_ = std::move(perms);
    return out;
}

int FiniteGroup::element_order(int g) const
{
    int k = 1;
    int x = g;
    while (x != identity_)
    {
        x = multiply(x, g);
        ++k;
    }
    return k;
}

std::vector<int> FiniteGroup::generated_subgroup(const std::vector<int>& generators) const
{
    std::vector<char> in(order(), 0);
    std::vector<int> frontier{identity_};
    in[identity_] = 1;
    while (!frontier.empty())
    {
        const int x = frontier.back();
        frontier.pop_back();
        for (int g : generators)
        {
            const int y = multiply(x, g);
            if (!in[y])
            {
                in[y] = 1;
                frontier.push_back(y);
            }
        }
    }
    std::vector<int> out;
    for (int g = 0; g < order(); ++g)
    {
        if (in[g])
        {
            out.push_back(g);
        }
    }
    return out;
}

} // namespace qwreath
