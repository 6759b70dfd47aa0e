#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qwreath
{

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix
{
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    BigInt& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const BigInt& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    IntMatrix operator*(const IntMatrix& other) const;
    bool operator==(const IntMatrix& other) const = default;

    void append_row(const std::vector<BigInt>& row);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<BigInt> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
BigInt determinant(const IntMatrix& m);

struct SmithForm
{
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;
    std::vector<BigInt> diagonal; // non-negative, d_1 | d_2 | ...
};

/// D = U M V with U, V unimodular; the postconditions are checked before returning.
SmithForm smith_normal_form(const IntMatrix& m);

/// Abelian group ⟨generators | relation rows⟩.
class FgAbelianGroup
{
public:
    FgAbelianGroup() : FgAbelianGroup(0, IntMatrix(0, 0)) {}
    FgAbelianGroup(int generators, IntMatrix relations);

    static FgAbelianGroup free(int rank);
    /// Z^rank ⊕ Z_{t1} ⊕ ..., one generator per summand.
    static FgAbelianGroup from_invariants(int rank, const std::vector<BigInt>& torsion);

    int generator_count() const { return generators_; }
    const IntMatrix& relations() const { return relations_; }
    int free_rank() const { return free_rank_; }
    /// Invariant factors ≥ 2 in divisibility order.
    const std::vector<BigInt>& torsion() const { return torsion_; }

    /// "Z^2 + Z_3", "Z", "0".
    std::string to_string() const;

private:
    int generators_;
    IntMatrix relations_;
    int free_rank_ = 0;
    std::vector<BigInt> torsion_;
};

struct MarkedClass
{
    std::string label;
    std::vector<BigInt> coords;
};

FgAbelianGroup direct_sum(const FgAbelianGroup& a, const FgAbelianGroup& b);
FgAbelianGroup quotient_by(const FgAbelianGroup& g, const std::vector<MarkedClass>& classes);
std::vector<BigInt> invariant_factors(const FgAbelianGroup& g);
bool is_isomorphic(const FgAbelianGroup& a, const FgAbelianGroup& b);

/// K-theory of C(H) for a named quantum group, with its marked classes.
struct KTheoryData
{
    std::string name;
    FgAbelianGroup k0;
    FgAbelianGroup k1;
    std::vector<MarkedClass> marked;

    /// Block sizes of the algebra H acts on; empty when there is no action data.
    std::vector<int> block_sizes;
    /// beta[κ][γ] = [β_κ(e^γ_11)] in K0 coordinates.
    std::vector<std::vector<MarkedClass>> beta;
    /// N when beta carries an undetermined Z_N coordinate, 0 otherwise.
    int unknown_torsion_modulus = 0;

    const MarkedClass& find(std::string_view label) const;
};

/// Presets: "aut_plus:MN", "aut_plus:CN", "aut_plus:n1,n2,...", "s_n_plus:N",
/// "z_s:s", "free_dual:t", "trivial". `torsion` fixes the undetermined Z_N
/// coordinate of [β(e11)] for aut_plus:MN.
KTheoryData preset_k_data(std::string_view name, int torsion = 0);

enum class RelationSign
{
    Difference,
    Sum,
};

struct KGroups
{
    FgAbelianGroup k0;
    FgAbelianGroup k1;

    std::string summary() const;
};

struct BlockKGroups
{
    KGroups groups;
    int h_offset_k0 = 0; // first generator of the K0(C(H)) summand
    int h_offset_k1 = 0;
};

/// K-groups of M_{N_κ} ⊗ C_κ(G ≀ H) for trivial amalgam.
BlockKGroups block_k_groups(const KTheoryData& g, const KTheoryData& h, int kappa,
                            RelationSign sign = RelationSign::Difference);

/// K-groups of C(G ≀_* H) for trivial amalgam.
KGroups wreath_k_groups(const KTheoryData& g, const KTheoryData& h, RelationSign sign = RelationSign::Difference);

/// Runs the pipeline for every value of the undetermined torsion coordinate of
/// the H preset and throws InconsistentResult unless all outputs agree.
KGroups wreath_k_groups_all_torsion(const KTheoryData& g, std::string_view h_preset,
                                    RelationSign sign = RelationSign::Difference);

} // namespace qwreath
