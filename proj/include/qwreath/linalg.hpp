#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qwreath
{

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTolerance = 1e-9;

// Rank decisions keep singular values above this multiple of the tolerance
// (relative to the largest one).
inline constexpr double kRankThresholdFactor = 1e3;

enum class Errc
{
    NonPositiveWeight,
    NotNormalized,
    IndexOutOfRange,
    ShapeMismatch,
    InvalidGroup,
    NotHomomorphism,
    NotAutomorphism,
    NotStatePreserving,
    GradingNotMultiplicative,
    GradingNotInvolutive,
    UnitNotTrivial,
    StateSupportViolation,
    SizeCapExceeded,
    NotPrime,
    NotErgodic,
    NotTwoErgodic,
    ClassificationFailed,
    DegenerateDelta,
    UnsupportedActionKind,
    UnsupportedElement,
    NotDeltaForm,
    ConjugateEquationFailed,
    NotIntertwiner,
    ResidualTooLarge,
    InvalidRepresentation,
    MissingMarkedClass,
    UnknownPreset,
    InconsistentResult,
    ParseError,
    UsageError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error
{
public:
    Error(Errc code, const std::string& what);

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Kronecker product with the left factor as the slow (outer) index, so that
/// `kron(A, B)` acts on `x ⊗ y` stored at position `i * dim(y) + j`.
Matrix kron(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& b);

/// Kronecker product of a list of factors; the empty product is the 1x1 identity.
Matrix kron_all(std::span<const Matrix> factors);

/// k-fold tensor power; `tensor_power(A, 0)` is the 1x1 identity.
Matrix tensor_power(const Matrix& a, int k);

/// Permutation matrix moving legs of a tensor product.
///
/// The source space is `dims[0] ⊗ dims[1] ⊗ ...`. Output leg `p` carries
/// source leg `order[p]`, e.g. `order = {0, 2, 1, 3}` is the flip of the two
/// middle legs.
Matrix leg_permutation(std::span<const int> dims, std::span<const int> order);

/// Orthonormal basis of the common solution space of
/// `target[g] * T == T * source[g]` for all g, each T reshaped as a
/// (target dim) x (source dim) matrix.
///
/// Rank is decided on the singular values of the stacked constraint operator
/// with the threshold `kRankThresholdFactor * tolerance * max(1, sigma_max)`.
std::vector<Matrix> commutant_basis(std::span<const Matrix> source,
                                    std::span<const Matrix> target,
                                    double tolerance);

/// Largest absolute entry, the norm used for all residual reports.
double max_abs(const Eigen::Ref<const Matrix>& m);

inline bool approx_equal(double a, double b, double tolerance)
{
    return std::abs(a - b) <= tolerance * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

} // namespace qwreath
