#pragma once

#include <optional>
#include <vector>

#include "qwreath/linalg.hpp"

namespace qwreath
{

/// One summand M_N(C) with the diagonal entries of its density matrix.
struct Block
{
    int size = 1;
    std::vector<double> weights;
};

/// A finite-dimensional C*-algebra ⊕_κ M_{N_κ}(C) with a faithful state
/// ψ = Σ_κ Tr(Q_κ ·), Q_κ = diag(weights).
///
/// Coordinates: the orthonormal basis b^κ_ij = λ_{κ,j}^{-1/2} e^κ_ij is laid
/// out block by block, row-major inside a block. B⊗B uses `x * dim + y`.
class MultiMatrixAlgebra
{
public:
    struct Coord
    {
        int block;
        int i;
        int j;
    };

    static MultiMatrixAlgebra make(std::vector<Block> blocks, double tolerance = kDefaultTolerance);

    const std::vector<Block>& blocks() const { return blocks_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    int block_size(int k) const { return blocks_.at(k).size; }
    double weight(int k, int i) const { return blocks_.at(k).weights.at(i); }
    double tolerance() const { return tolerance_; }

    /// dim(B) = Σ N_κ².
    int dim() const { return dim_; }
    int index(int k, int i, int j) const;
    Coord coord(int flat) const;
    int block_offset(int k) const { return offsets_.at(k); }

    double trace_weights(int k) const;
    double trace_inverse_weights(int k) const;

    MultiMatrixAlgebra with_tolerance(double tolerance) const;

private:
    std::vector<Block> blocks_;
    std::vector<int> offsets_;
    int dim_ = 0;
    double tolerance_ = kDefaultTolerance;
};

/// Element of B as one matrix per block, in matrix-unit (e) coordinates.
struct AlgebraElement
{
    std::vector<Matrix> blocks;

    AlgebraElement adjoint() const;
    AlgebraElement& operator+=(const AlgebraElement& other);
    AlgebraElement& operator-=(const AlgebraElement& other);
    AlgebraElement& operator*=(Complex s);
};

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(Complex s, AlgebraElement a);

AlgebraElement zero_element(const MultiMatrixAlgebra& a);
AlgebraElement unit_element(const MultiMatrixAlgebra& a);
AlgebraElement matrix_unit(const MultiMatrixAlgebra& a, int k, int i, int j);

/// b^κ_ij = λ_{κ,j}^{-1/2} e^κ_ij.
AlgebraElement onb_element(const MultiMatrixAlgebra& a, int k, int i, int j);

void check_shape(const MultiMatrixAlgebra& a, const AlgebraElement& x);

double max_abs(const AlgebraElement& x);

Complex state(const MultiMatrixAlgebra& a, const AlgebraElement& x);

/// ⟨x, y⟩ = ψ(x* y), linear in the second slot.
Complex gns_inner(const MultiMatrixAlgebra& a, const AlgebraElement& x, const AlgebraElement& y);

/// b-basis coordinates: x_ij ↦ λ_j^{1/2} x_ij.
Vector to_coordinates(const MultiMatrixAlgebra& a, const AlgebraElement& x);
AlgebraElement from_coordinates(const MultiMatrixAlgebra& a, const Eigen::Ref<const Vector>& c);

/// Matrix P of the involution in b-coordinates: coords(x*) = P · conj(coords(x)).
Matrix star_matrix(const MultiMatrixAlgebra& a);

struct StructureTensors
{
    Matrix m;      // dim x dim²
    Vector eta;    // unit, length dim
    Matrix m_star; // dim² x dim
};

StructureTensors structure_tensors(const MultiMatrixAlgebra& a);

/// m★η as a vector in B⊗B.
Vector comultiplied_unit(const MultiMatrixAlgebra& a);

/// m m★, diagonal with entry Tr(Q_κ^{-1}) on block κ.
Matrix mm_star(const MultiMatrixAlgebra& a);

/// δ when κ ↦ Tr(Q_κ^{-1}) is constant, otherwise empty.
std::optional<double> delta_form_check(const MultiMatrixAlgebra& a);

struct ErgodicSummand
{
    std::vector<int> blocks;           // indices into the parent algebra
    MultiMatrixAlgebra algebra;        // weights renormalized to a state
    double delta = 0.0;                // eigenvalue of mm★ on the summand
    double mass = 0.0;                 // ψ(1_{B_i})
    double renormalized_delta = 0.0;   // δ of the renormalized state, = mass * delta
};

/// Groups blocks by Tr(Q_κ^{-1}), sorted by δ ascending.
std::vector<ErgodicSummand> ergodic_decomposition(const MultiMatrixAlgebra& a);

/// ∇_ψ, diagonal with λ_{κ,k}/λ_{κ,l} on b^κ_kl.
Matrix modular_operator(const MultiMatrixAlgebra& a);

/// σ_t, diagonal with (λ_{κ,k}/λ_{κ,l})^{it} on b^κ_kl.
Matrix modular_group(const MultiMatrixAlgebra& a, double t);

/// Weights of ψ_κ^{-1}: λ_{κ,i}^{-1} normalized to sum 1.
std::vector<double> inverse_state(const MultiMatrixAlgebra& a, int k);

} // namespace qwreath
