#include "qwreath/linalg.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace qwreath
{

const char* errc_name(Errc code)
{
    switch (code)
    {
    case Errc::NonPositiveWeight: return "NonPositiveWeight";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::InvalidGroup: return "InvalidGroup";
    case Errc::NotHomomorphism: return "NotHomomorphism";
    case Errc::NotAutomorphism: return "NotAutomorphism";
    case Errc::NotStatePreserving: return "NotStatePreserving";
    case Errc::GradingNotMultiplicative: return "GradingNotMultiplicative";
    case Errc::GradingNotInvolutive: return "GradingNotInvolutive";
    case Errc::UnitNotTrivial: return "UnitNotTrivial";
    case Errc::StateSupportViolation: return "StateSupportViolation";
    case Errc::SizeCapExceeded: return "SizeCapExceeded";
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotErgodic: return "NotErgodic";
    case Errc::NotTwoErgodic: return "NotTwoErgodic";
    case Errc::ClassificationFailed: return "ClassificationFailed";
    case Errc::DegenerateDelta: return "DegenerateDelta";
    case Errc::UnsupportedActionKind: return "UnsupportedActionKind";
    case Errc::UnsupportedElement: return "UnsupportedElement";
    case Errc::NotDeltaForm: return "NotDeltaForm";
    case Errc::ConjugateEquationFailed: return "ConjugateEquationFailed";
    case Errc::NotIntertwiner: return "NotIntertwiner";
    case Errc::ResidualTooLarge: return "ResidualTooLarge";
    case Errc::InvalidRepresentation: return "InvalidRepresentation";
    case Errc::MissingMarkedClass: return "MissingMarkedClass";
    case Errc::UnknownPreset: return "UnknownPreset";
    case Errc::InconsistentResult: return "InconsistentResult";
    case Errc::ParseError: return "ParseError";
    case Errc::UsageError: return "UsageError";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
{
}

Matrix kron(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
    {
        for (Eigen::Index j = 0; j < a.cols(); ++j)
        {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix kron_all(std::span<const Matrix> factors)
{
    Matrix out = Matrix::Identity(1, 1);
    for (const auto& f : factors)
    {
        out = kron(out, f);
    }
    return out;
}

Matrix tensor_power(const Matrix& a, int k)
{
    Matrix out = Matrix::Identity(1, 1);
    for (int i = 0; i < k; ++i)
    {
        out = kron(out, a);
    }
    return out;
}

Matrix leg_permutation(std::span<const int> dims, std::span<const int> order)
{
    const auto legs = dims.size();
    if (order.size() != legs)
    {
        throw Error(Errc::ShapeMismatch, "leg permutation length differs from leg count");
    }
    std::vector<int> seen(legs, 0);
    for (int o : order)
    {
        if (o < 0 || static_cast<std::size_t>(o) >= legs || seen[o]++)
        {
            throw Error(Errc::ShapeMismatch, "leg order is not a permutation");
        }
    }
    const int total = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());

    std::vector<int> out_dims(legs);
    for (std::size_t p = 0; p < legs; ++p)
    {
        out_dims[p] = dims[order[p]];
    }

    Matrix perm = Matrix::Zero(total, total);
    std::vector<int> index(legs, 0);
    for (int src = 0; src < total; ++src)
    {
        // decode src into multi-index, slow leg first
        int rem = src;
        for (int l = static_cast<int>(legs) - 1; l >= 0; --l)
        {
            index[l] = rem % dims[l];
            rem /= dims[l];
        }
        int dst = 0;
        for (std::size_t p = 0; p < legs; ++p)
        {
            dst = dst * out_dims[p] + index[order[p]];
        }
        perm(dst, src) = 1.0;
    }
    return perm;
}

std::vector<Matrix> commutant_basis(std::span<const Matrix> source,
                                    std::span<const Matrix> target,
                                    double tolerance)
{
    if (source.size() != target.size() || source.empty())
    {
        throw Error(Errc::ShapeMismatch, "commutant_basis needs one source and target matrix per element");
    }
    const Eigen::Index ds = source.front().rows();
    const Eigen::Index dt = target.front().rows();
    const Eigen::Index n = ds * dt;

    const Matrix id_s = Matrix::Identity(ds, ds);
    const Matrix id_t = Matrix::Identity(dt, dt);
    Matrix gram = Matrix::Zero(n, n);
    for (std::size_t g = 0; g < source.size(); ++g)
    {
        if (source[g].rows() != ds || source[g].cols() != ds || target[g].rows() != dt || target[g].cols() != dt)
        {
            throw Error(Errc::ShapeMismatch, "inconsistent representation matrix shapes");
        }
        // column-major vec: vec(A T B) = (B^T (x) A) vec(T)
        const Matrix c = kron(id_s, target[g]) - kron(source[g].transpose(), id_t);
        gram.noalias() += c.adjoint() * c;
    }

    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
    const RealVector& evals = solver.eigenvalues();
    const double sigma_max = std::sqrt(std::max(0.0, evals.maxCoeff()));
    const double cut = kRankThresholdFactor * tolerance * std::max(1.0, sigma_max);

    std::vector<Matrix> basis;
    for (Eigen::Index k = 0; k < n; ++k)
    {
        const double sigma = std::sqrt(std::max(0.0, evals(k)));
        if (sigma > cut)
        {
            continue;
        }
        Vector v = solver.eigenvectors().col(k);
        // fix the phase: largest entry real and positive
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        v *= std::conj(v(arg)) / std::abs(v(arg));
        basis.emplace_back(Eigen::Map<const Matrix>(v.data(), dt, ds));
    }
    return basis;
}

double max_abs(const Eigen::Ref<const Matrix>& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

} // namespace qwreath
