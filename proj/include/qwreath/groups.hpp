#pragma once

#include <string>
#include <vector>

namespace qwreath
{

/// Finite group given by an explicit multiplication table over indices 0..n-1.
class FiniteGroup
{
public:
    /// Validates closure, associativity, identity and inverses.
    static FiniteGroup from_table(std::vector<std::vector<int>> table, std::string name = "G");

    static FiniteGroup trivial();
    static FiniteGroup cyclic(int n);

    /// S_N acting on {0..N-1}; elements are the permutations in lexicographic
    /// order (identity first) and (gh)(i) = g(h(i)).
    static FiniteGroup symmetric(int n);

    int order() const { return static_cast<int>(table_.size()); }
    int identity() const { return identity_; }
    int multiply(int g, int h) const { return table_.at(g).at(h); }
    int inverse(int g) const { return inverse_.at(g); }
    const std::vector<std::vector<int>>& table() const { return table_; }
    const std::string& name() const { return name_; }

    /// Permutation images for groups built by `symmetric`, empty otherwise.
    const std::vector<std::vector<int>>& permutations() const { return perms_; }

    int element_order(int g) const;

    /// Subgroup generated by the given elements, as a sorted index list.
    std::vector<int> generated_subgroup(const std::vector<int>& generators) const;

private:
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    std::vector<std::vector<int>> perms_;
    int identity_ = 0;
    std::string name_;
};

} // namespace qwreath
