#pragma once

#include <span>
#include <vector>

#include "qwreath/actions.hpp"

namespace qwreath
{

/// Coefficient u^{ij,κ}_{kl,γ} of the action's unitary: row (κ,i,j), column (γ,k,l).
/// With `conjugate` set it denotes the adjoint of that coefficient.
struct MomentIndex
{
    int i = 0;
    int j = 0;
    int kappa = 0;
    int k = 0;
    int l = 0;
    int gamma = 0;
    bool conjugate = false;
};

/// Row and column of an index in the b-coordinates of B.
int moment_row(const MultiMatrixAlgebra& a, const MomentIndex& idx);
int moment_col(const MultiMatrixAlgebra& a, const MomentIndex& idx);

/// Rewrites a conjugated coefficient through the adjoint rule
/// (u^{ij,κ}_{kl,ζ})* = (λ_κi/λ_ζk)^{-1/2} (λ_κj/λ_ζl)^{1/2} u^{ji,κ}_{lk,ζ}.
/// Returns the scalar factor; `idx` is replaced by the unconjugated index.
double resolve_conjugate(const MultiMatrixAlgebra& a, MomentIndex& idx);

/// The finite-dimensional Hopf algebra generated by the coefficients, with its Haar state.
///
/// Elements are vectors indexed by group elements: function values on G for a
/// classical action, coefficients of λ_g for a dual action. A "field" is a
/// matrix over this algebra, stored as one complex matrix per group element.
class HaarOracle
{
public:
    enum class Kind
    {
        Functions,
        GroupAlgebra,
    };

    explicit HaarOracle(const Action& action);

    Kind kind() const { return kind_; }
    const FiniteGroup& group() const { return group_; }
    int size() const { return group_.order(); }

    Vector unit() const;
    Vector multiply(const Vector& x, const Vector& y) const;
    Vector adjoint(const Vector& x) const;
    Complex haar(const Vector& x) const;

    Vector coefficient(const MomentIndex& idx) const;
    Vector coefficient(int row, int col) const;

    /// Product of a word of coefficients, left to right; the empty word is 1.
    Vector word(std::span<const MomentIndex> indices) const;

    /// u itself as a field.
    const std::vector<Matrix>& unitary() const { return components_; }

    std::vector<Matrix> field_identity(int n) const;
    std::vector<Matrix> field_multiply(const std::vector<Matrix>& x, const std::vector<Matrix>& y) const;
    std::vector<Matrix> field_adjoint(const std::vector<Matrix>& x) const;
    /// (id ⊗ h) of a field.
    Matrix field_haar(const std::vector<Matrix>& x) const;

private:
    Kind kind_;
    FiniteGroup group_;
    MultiMatrixAlgebra algebra_;
    std::vector<Matrix> components_;
};

struct CoefficientRelationReport
{
    double unitarity = 0.0; // u*u = uu* = 1
    double unit = 0.0;      // Σ λ^{1/2} u^{ij,κ}_{rr,γ} = δ_ij λ_κi^{1/2}, and the transposed sum
    double product = 0.0;   // m ∈ Mor(u⊗u, u) written on coefficients
    double adjoint = 0.0;   // the adjoint rule

    double max() const;
};

CoefficientRelationReport verify_coefficient_relations(const Action& action);

} // namespace qwreath
