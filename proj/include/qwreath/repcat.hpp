#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "qwreath/actions.hpp"

namespace qwreath
{

/// A unitary representation stand-in: dimension, diagonal Q, and optionally
/// concrete matrices v(g) for a classical group.
struct RepData
{
    int dim = 1;
    std::vector<double> q;
    std::vector<Matrix> matrices;
    std::string label;
};

/// Validates Q > 0, Tr(Q) = Tr(Q^{-1}) when `standard`, and unitarity plus the
/// homomorphism law of the matrices when a group is given.
RepData make_rep(int dim, std::vector<double> q, std::vector<Matrix> matrices = {},
                 const FiniteGroup* group = nullptr, bool standard = false, double tolerance = kDefaultTolerance);

/// Irreducible unitary representations of a cyclic group or S_3 (Q = 1).
std::vector<RepData> irreducible_reps(const FiniteGroup& group);

/// Residuals of (s̄*⊗1)(1⊗s) = 1_Y and (s*⊗1)(1⊗s̄) = 1_X for s ∈ X⊗Y, s̄ ∈ Y⊗X.
struct ConjugateResiduals
{
    double left = 0.0;
    double right = 0.0;

    double max() const { return std::max(left, right); }
};

ConjugateResiduals conjugate_equation_residuals(const Vector& s, const Vector& s_bar, int dim_x, int dim_y);

/// Q from the antilinear map ⟨Jξ, η⟩ = ⟨s, ξ⊗η⟩, i.e. Q = J*J.
Matrix q_from_pair(const Vector& s, int dim_x, int dim_y);

struct ConjugateData
{
    Vector s;
    Vector s_bar;
    ConjugateResiduals residuals;
    Matrix q;                    // read off through the J-map
    double q_residual = 0.0;     // against the expected operator
    double dim_q = 0.0;          // ‖s‖²
    double dim_q_bar = 0.0;      // ‖s̄‖²
    std::optional<double> standardness; // max |φ(T) - ψ(T)| over a basis of End(u)
};

/// s_u = s_ū = m★η with Q_u = ∇_ψ and dim_q = δ. The standardness check runs
/// when an action on the same algebra is given.
ConjugateData conjugate_data_u(const MultiMatrixAlgebra& a, const Action* action = nullptr);

/// S_v, S_v̄ on (H_v⊗B)⊗(H_v̄⊗B); expected Q is Q_v ⊗ ∇_ψ.
ConjugateData wreath_conjugate(const RepData& v, const MultiMatrixAlgebra& a);

/// (S⊗m)Σ₂₃ : H_v⊗B⊗H_w⊗B → H_t⊗B, with S of shape d_t x (d_v d_w).
Matrix wreath_morphism(const Matrix& s, const RepData& v, const RepData& w, const RepData& t,
                       const MultiMatrixAlgebra& a);

struct MorphismCheckReport
{
    double intertwiner_residual = 0.0; // S (v⊗w)(g) - t(g) S
    double residual = 0.0;             // quotient-model identity
    int pairs_checked = 0;
};

/// Checks the morphism identity in the quotient model where a(r) becomes
/// r(g) ⊗ α_h. A necessary condition only.
MorphismCheckReport wreath_morphism_check(const Matrix& s, const RepData& v, const RepData& w, const RepData& t,
                                          const FiniteGroup& g, const ClassicalAction& h);

} // namespace qwreath
