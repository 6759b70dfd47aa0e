#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qwreath/coefficients.hpp"

namespace qwreath
{

/// The categorical data (η, m, m★) of the quantum automorphism group of a
/// δ-form (B, ψ), used where no concrete oracle exists.
struct CategoricalData
{
    MultiMatrixAlgebra algebra;
    double delta = 0.0;
};

/// Throws NotDeltaForm if ψ is not a δ-form.
CategoricalData aut_plus_data(const MultiMatrixAlgebra& a);

/// δ_ij δ_kl (λ_κi λ_γk)^{1/2}; conjugated indices go through the adjoint rule.
double haar_first_moment(const CategoricalData& data, const MomentIndex& idx);

/// Same closed form; refuses non-ergodic actions.
double haar_first_moment(const Action& action, const MomentIndex& idx);

/// The four-term closed form for h(u_a u_b) under 2-ergodicity.
double haar_second_moment(const CategoricalData& data, const MomentIndex& a, const MomentIndex& b);

/// Same closed form; refuses actions that are not 2-ergodic.
double haar_second_moment(const Action& action, const MomentIndex& a, const MomentIndex& b);

/// ηη★, the projection onto Mor(1, u); its entries are the first moments.
Matrix first_moment_projection(const MultiMatrixAlgebra& a);

/// p = ηη★⊗ηη★ + (δ-1)^{-1}(m★η - η⊗η)(m★η - η⊗η)★ on B⊗B.
Matrix haar_projection(const CategoricalData& data);
Matrix haar_projection(const Action& action);

/// Entry of a projection on B^{⊗k} at the row/column picked out by a word of k indices.
Complex projection_entry(const MultiMatrixAlgebra& a, const Matrix& p, std::span<const MomentIndex> word);

inline constexpr std::size_t kMaxBruteForceWord = 4;

/// Exhaustive Haar average of a product of coefficients (word length ≤ 4).
Complex brute_force_moment(const Action& action, std::span<const MomentIndex> word);

/// X = constant ⊗ 1 + Σ matrix ⊗ (product of coefficients), matrices in
/// matrix-unit coordinates of the block M_{N_κ}.
struct CoefficientPolynomial
{
    Matrix constant;
    std::vector<std::pair<Matrix, std::vector<MomentIndex>>> terms;
};

/// E_κ(b^κ_rs ⊗ a) = (δ λ_{κ,s}²)^{-1} Σ h((u^{rs,κ}_{kl,γ})* a) b^γ_kl.
///
/// The field overload takes X as one N_κ x N_κ matrix per group element in the
/// coefficient algebra of the action (any element is allowed there).
AlgebraElement cond_expectation(const Action& action, int kappa, const std::vector<Matrix>& field);
AlgebraElement cond_expectation(const Action& action, int kappa, const CoefficientPolynomial& x);

/// Categorical route: only constants and single coefficients are supported.
AlgebraElement cond_expectation(const CategoricalData& data, int kappa, const CoefficientPolynomial& x);

/// β_κ(x) as a field over the coefficient algebra, in matrix-unit coordinates.
std::vector<Matrix> beta_block(const Action& action, int kappa, const AlgebraElement& x);

/// Closed form against the projection (and optionally a brute-force oracle)
/// over every index word of the given degree.
struct MomentSweep
{
    int degree = 0;
    std::size_t count = 0;
    double projection_deviation = 0.0;
    std::optional<double> brute_force_deviation;
};

/// `oracle` must act on the same algebra as `data`; degree is 1 or 2.
MomentSweep sweep_moments(const CategoricalData& data, int degree, const Action* oracle = nullptr);

/// The field of a coefficient polynomial.
std::vector<Matrix> polynomial_field(const Action& action, int kappa, const CoefficientPolynomial& x);

} // namespace qwreath
