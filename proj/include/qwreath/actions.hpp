#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qwreath/groups.hpp"
#include "qwreath/multimatrix.hpp"

namespace qwreath
{

/// Action of a classical finite group: α_g in b-coordinates, u(g) = α_g.
struct ClassicalAction
{
    MultiMatrixAlgebra algebra;
    FiniteGroup group;
    std::vector<Matrix> autos;
};

/// Action of the dual of a finite group Γ through a grading B = ⊕_g B_g.
///
/// Column c of `basis` (b-coordinates) is homogeneous of degree grading[c];
/// u = Σ_g P_g ⊗ λ_g with P_g the orthogonal projection onto B_g.
struct DualAction
{
    MultiMatrixAlgebra algebra;
    FiniteGroup group;
    std::vector<int> grading;
    Matrix basis;

    Matrix projection(int g) const;
};

using Action = std::variant<ClassicalAction, DualAction>;

const MultiMatrixAlgebra& algebra_of(const Action& action);
const FiniteGroup& group_of(const Action& action);

/// Validates *-automorphism, ψ-invariance and the homomorphism law, in that order.
ClassicalAction make_classical_action(MultiMatrixAlgebra algebra, FiniteGroup group, std::vector<Matrix> autos);

/// `basis` defaults to the identity (the b-basis itself is homogeneous).
DualAction make_dual_action(MultiMatrixAlgebra algebra, FiniteGroup group, std::vector<int> grading,
                            std::optional<Matrix> basis = std::nullopt);

/// Converts a map given on matrix-unit coordinates (x_ij) to b-coordinates.
Matrix autos_from_matrix_units(const MultiMatrixAlgebra& a, const Matrix& alpha_e);

/// α_g(e^κ_ij) = e^{g(κ)}_ij for a group acting on equal-size blocks.
std::vector<Matrix> block_permutation_autos(const MultiMatrixAlgebra& a, const FiniteGroup& group,
                                            const std::vector<std::vector<int>>& block_images);

/// α_g(x) = U_g x U_g* blockwise.
std::vector<Matrix> inner_autos(const MultiMatrixAlgebra& a, const std::vector<AlgebraElement>& unitaries);

/// Representation matrices indexed by group element: α_g^{⊗k} (classical) or
/// the degree-g projection of u^{⊗k} (dual).
std::vector<Matrix> tensor_representation(const Action& action, int k);

inline constexpr std::size_t kIntertwinerCap = 10000;

/// Orthonormal basis of Mor(u^{⊗k}, u^{⊗l}); each element is dim^l x dim^k.
std::vector<Matrix> intertwiner_space(const Action& action, int k, int l, std::size_t cap = kIntertwinerCap);

bool is_ergodic(const Action& action);
bool is_two_ergodic(const Action& action);
bool is_faithful(const Action& action);

enum class ZpClass
{
    Trivial,
    Regular,
};

const char* zp_class_name(ZpClass c);

ZpClass zp_dichotomy_check(const Action& action);

// fixtures

/// S_N permuting the coordinates of C^N with the uniform trace.
ClassicalAction symmetric_permutation_action(int n);

ClassicalAction trivial_classical_action(const MultiMatrixAlgebra& a);

/// Z_p on C^p graded by the characters w^k = Σ_j ξ^{jk} e_j.
DualAction zp_translation_action(int p);

/// Z_4 on C^2 through Z_4 → Z_2: 1 in degree 0 and (1,-1) in degree 2.
DualAction z4_quotient_action();

/// The one-dimensional algebra C with everything in degree e.
DualAction trivial_dual_action(const FiniteGroup& group);

/// The four ergodic actions of the dual of S_3: C, C², C³ and C*(S_3).
std::vector<DualAction> s3hat_fixtures();

/// Standard 2-dimensional representation of S_3 (permutations of 3 points).
Matrix s3_standard_rep(const std::vector<int>& perm);

} // namespace qwreath
