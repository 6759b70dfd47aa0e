#include "qwreath/coefficients.hpp"

#include <algorithm>
#include <cmath>

namespace qwreath
{

int moment_row(const MultiMatrixAlgebra& a, const MomentIndex& idx)
{
    return a.index(idx.kappa, idx.i, idx.j);
}

int moment_col(const MultiMatrixAlgebra& a, const MomentIndex& idx)
{
    return a.index(idx.gamma, idx.k, idx.l);
}

double resolve_conjugate(const MultiMatrixAlgebra& a, MomentIndex& idx)
{
    moment_row(a, idx);
    moment_col(a, idx);
    if (!idx.conjugate)
    {
        return 1.0;
    }
    const double f = std::sqrt(a.weight(idx.gamma, idx.k) / a.weight(idx.kappa, idx.i)) *
                     std::sqrt(a.weight(idx.kappa, idx.j) / a.weight(idx.gamma, idx.l));
    idx = MomentIndex{idx.j, idx.i, idx.kappa, idx.l, idx.k, idx.gamma, false};
    return f;
}

HaarOracle::HaarOracle(const Action& action)
    : kind_(std::holds_alternative<ClassicalAction>(action) ? Kind::Functions : Kind::GroupAlgebra),
      group_(group_of(action)),
      algebra_(algebra_of(action))
{
    if (const auto* c = std::get_if<ClassicalAction>(&action))
    {
        components_ = c->autos;
    }
    else
    {
        const auto& d = std::get<DualAction>(action);
        for (int g = 0; g < group_.order(); ++g)
        {
            components_.push_back(d.projection(g));
        }
    }
}

Vector HaarOracle::unit() const
{
    if (kind_ == Kind::Functions)
    {
        return Vector::Ones(size());
    }
    Vector e = Vector::Zero(size());
    e(group_.identity()) = 1.0;
    return e;
}

Vector HaarOracle::multiply(const Vector& x, const Vector& y) const
{
    if (kind_ == Kind::Functions)
    {
        return x.cwiseProduct(y);
    }
    Vector out = Vector::Zero(size());
    for (int g = 0; g < size(); ++g)
    {
        if (x(g) == 0.0)
        {
            continue;
        }
        for (int h = 0; h < size(); ++h)
        {
            out(group_.multiply(g, h)) += x(g) * y(h);
        }
    }
    return out;
}

Vector HaarOracle::adjoint(const Vector& x) const
{
    if (kind_ == Kind::Functions)
    {
        return x.conjugate();
    }
    Vector out(size());
    for (int g = 0; g < size(); ++g)
    {
        out(g) = std::conj(x(group_.inverse(g)));
    }
    return out;
}

Complex HaarOracle::haar(const Vector& x) const
{
    if (kind_ == Kind::Functions)
    {
        // fixed summation order
        Complex s = 0.0;
        for (int g = 0; g < size(); ++g)
        {
            s += x(g);
        }
        return s / static_cast<double>(size());
    }
    return x(group_.identity());
}

Vector HaarOracle::coefficient(int row, int col) const
{
    if (row < 0 || row >= algebra_.dim() || col < 0 || col >= algebra_.dim())
    {
        throw Error(Errc::IndexOutOfRange, "coefficient position out of range");
    }
    Vector c(size());
    for (int g = 0; g < size(); ++g)
    {
        c(g) = components_[g](row, col);
    }
    return c;
}

Vector HaarOracle::coefficient(const MomentIndex& idx) const
{
    const Vector c = coefficient(moment_row(algebra_, idx), moment_col(algebra_, idx));
    return idx.conjugate ? adjoint(c) : c;
}

Vector HaarOracle::word(std::span<const MomentIndex> indices) const
{
    Vector out = unit();
    for (const auto& idx : indices)
    {
        out = multiply(out, coefficient(idx));
    }
    return out;
}

std::vector<Matrix> HaarOracle::field_identity(int n) const
{
    std::vector<Matrix> out(size(), Matrix::Zero(n, n));
    for (int g = 0; g < size(); ++g)
    {
        if (kind_ == Kind::Functions || g == group_.identity())
        {
            out[g] = Matrix::Identity(n, n);
        }
    }
    return out;
}

std::vector<Matrix> HaarOracle::field_multiply(const std::vector<Matrix>& x, const std::vector<Matrix>& y) const
{
    if (static_cast<int>(x.size()) != size() || static_cast<int>(y.size()) != size())
    {
        throw Error(Errc::ShapeMismatch, "field needs one matrix per group element");
    }
    std::vector<Matrix> out(size(), Matrix::Zero(x.front().rows(), y.front().cols()));
    for (int g = 0; g < size(); ++g)
    {
        if (kind_ == Kind::Functions)
        {
            out[g] = x[g] * y[g];
            continue;
        }
        for (int h = 0; h < size(); ++h)
        {
            out[group_.multiply(g, h)] += x[g] * y[h];
        }
    }
    return out;
}

std::vector<Matrix> HaarOracle::field_adjoint(const std::vector<Matrix>& x) const
{
    std::vector<Matrix> out;
    for (int g = 0; g < size(); ++g)
    {
        out.push_back(kind_ == Kind::Functions ? Matrix(x.at(g).adjoint()) : Matrix(x.at(group_.inverse(g)).adjoint()));
    }
    return out;
}

Matrix HaarOracle::field_haar(const std::vector<Matrix>& x) const
{
    if (kind_ == Kind::GroupAlgebra)
    {
        return x.at(group_.identity());
    }
    Matrix s = Matrix::Zero(x.front().rows(), x.front().cols());
    for (const auto& m : x)
    {
        s += m;
    }
    return s / static_cast<double>(size());
}

double CoefficientRelationReport::max() const
{
    return std::max({unitarity, unit, product, adjoint});
}

CoefficientRelationReport verify_coefficient_relations(const Action& action)
{
    const auto& a = algebra_of(action);
    const HaarOracle h(action);
    const int d = a.dim();
    CoefficientRelationReport rep;

    const auto& u = h.unitary();
    const auto one = h.field_identity(d);
    auto deviation = [&](const std::vector<Matrix>& x) {
        double r = 0.0;
        for (int g = 0; g < h.size(); ++g)
        {
            r = std::max(r, max_abs(x[g] - one[g]));
        }
        return r;
    };
    rep.unitarity = std::max(deviation(h.field_multiply(h.field_adjoint(u), u)),
                             deviation(h.field_multiply(u, h.field_adjoint(u))));

    const Vector e = h.unit();
    for (int row = 0; row < d; ++row)
    {
        const auto c = a.coord(row);
        // Σ_{γ,r} λ_{γ,r}^{1/2} u^{ij,κ}_{rr,γ} = δ_ij λ_{κ,i}^{1/2}
        Vector lhs = Vector::Zero(h.size());
        Vector rhs = Vector::Zero(h.size());
        for (int g = 0; g < a.block_count(); ++g)
        {
            for (int r = 0; r < a.block_size(g); ++r)
            {
                lhs += std::sqrt(a.weight(g, r)) * h.coefficient(row, a.index(g, r, r));
            }
        }
        if (c.i == c.j)
        {
            rhs = std::sqrt(a.weight(c.block, c.i)) * e;
        }
        rep.unit = std::max(rep.unit, (lhs - rhs).cwiseAbs().maxCoeff());

        // Σ_{κ,r} λ_{κ,r}^{1/2} u^{rr,κ}_{kl,γ} = δ_kl λ_{γ,k}^{1/2}, with (γ,k,l) = coord(row)
        lhs.setZero();
        for (int k = 0; k < a.block_count(); ++k)
        {
            for (int r = 0; r < a.block_size(k); ++r)
            {
                lhs += std::sqrt(a.weight(k, r)) * h.coefficient(a.index(k, r, r), row);
            }
        }
        rep.unit = std::max(rep.unit, (lhs - rhs).cwiseAbs().maxCoeff());
    }

    // Σ_r λ_{γ,r}^{-1/2} u^{ir,γ}_{kp,κ} u^{rj,γ}_{ql,ζ} = δ_κζ δ_pq λ_{κ,p}^{-1/2} u^{ij,γ}_{kl,κ}
    for (int out = 0; out < d; ++out)
    {
        const auto o = a.coord(out);
        for (int left = 0; left < d; ++left)
        {
            const auto x = a.coord(left);
            for (int right = 0; right < d; ++right)
            {
                const auto y = a.coord(right);
                Vector lhs = Vector::Zero(h.size());
                for (int r = 0; r < a.block_size(o.block); ++r)
                {
                    lhs += h.multiply(h.coefficient(a.index(o.block, o.i, r), left),
                                      h.coefficient(a.index(o.block, r, o.j), right)) /
                           std::sqrt(a.weight(o.block, r));
                }
                Vector rhs = Vector::Zero(h.size());
                if (x.block == y.block && x.j == y.i)
                {
                    rhs = h.coefficient(out, a.index(x.block, x.i, y.j)) / std::sqrt(a.weight(x.block, x.j));
                }
                rep.product = std::max(rep.product, (lhs - rhs).cwiseAbs().maxCoeff());
            }
        }
    }

    for (int row = 0; row < d; ++row)
    {
        for (int col = 0; col < d; ++col)
        {
            const auto r = a.coord(row);
            const auto c = a.coord(col);
            MomentIndex idx{r.i, r.j, r.block, c.i, c.j, c.block, true};
            const Vector lhs = h.coefficient(idx);
            const double f = resolve_conjugate(a, idx);
            const Vector rhs = f * h.coefficient(idx);
            rep.adjoint = std::max(rep.adjoint, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    }
    return rep;
}

} // namespace qwreath
