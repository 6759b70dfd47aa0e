#include "qwreath/repcat.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qwreath
{

namespace
{

void require_conjugate(const ConjugateResiduals& r, double tol)
{
    if (r.max() > tol)
    {
        std::ostringstream os;
        os << "conjugate equation residuals " << r.left << ", " << r.right;
        throw Error(Errc::ConjugateEquationFailed, os.str());
    }
}

bool is_cyclic_table(const FiniteGroup& g)
{
    for (int a = 0; a < g.order(); ++a)
    {
        for (int b = 0; b < g.order(); ++b)
        {
            if (g.multiply(a, b) != (a + b) % g.order())
            {
                return false;
            }
        }
    }
    return true;
}

} // namespace

RepData make_rep(int dim, std::vector<double> q, std::vector<Matrix> matrices, const FiniteGroup* group,
                 bool standard, double tolerance)
{
    if (dim < 1)
    {
        throw Error(Errc::InvalidRepresentation, "dimension must be positive");
    }
    if (q.empty())
    {
        q.assign(dim, 1.0);
    }
    if (static_cast<int>(q.size()) != dim)
    {
        throw Error(Errc::InvalidRepresentation, "Q needs " + std::to_string(dim) + " entries");
    }
    double tr = 0.0;
    double tr_inv = 0.0;
    for (double x : q)
    {
        if (!(x > 0.0))
        {
            throw Error(Errc::InvalidRepresentation, "Q entries must be positive");
        }
        tr += x;
        tr_inv += 1.0 / x;
    }
    if (standard && !approx_equal(tr, tr_inv, tolerance))
    {
        throw Error(Errc::InvalidRepresentation, "standard Q needs Tr(Q) = Tr(Q^-1)");
    }
    if (group)
    {
        if (static_cast<int>(matrices.size()) != group->order())
        {
            throw Error(Errc::InvalidRepresentation, "expected one matrix per group element");
        }
        for (int g = 0; g < group->order(); ++g)
        {
            const Matrix& m = matrices[g];
            if (m.rows() != dim || m.cols() != dim)
            {
                throw Error(Errc::InvalidRepresentation, "matrix shape differs from the dimension");
            }
            if (max_abs(m.adjoint() * m - Matrix::Identity(dim, dim)) > tolerance)
            {
                throw Error(Errc::InvalidRepresentation, "v(" + std::to_string(g) + ") is not unitary");
            }
            for (int h = 0; h < group->order(); ++h)
            {
                if (max_abs(matrices[group->multiply(g, h)] - m * matrices[h]) > tolerance)
                {
                    throw Error(Errc::InvalidRepresentation, "v is not a homomorphism");
                }
            }
        }
    }
    return {dim, std::move(q), std::move(matrices), {}};
}

std::vector<RepData> irreducible_reps(const FiniteGroup& group)
{
    std::vector<RepData> out;
    if (is_cyclic_table(group))
    {
        const int n = group.order();
        for (int k = 0; k < n; ++k)
        {
            std::vector<Matrix> mats;
            for (int g = 0; g < n; ++g)
            {
                mats.push_back(Matrix::Constant(1, 1, std::polar(1.0, 2.0 * std::numbers::pi * ((k * g) % n) / n)));
            }
            auto r = make_rep(1, {}, std::move(mats), &group);
            r.label = "chi" + std::to_string(k);
            out.push_back(std::move(r));
        }
        return out;
    }
    const auto& perms = group.permutations();
    if (group.order() == 6 && perms.size() == 6 && perms.front().size() == 3)
    {
        std::vector<Matrix> triv;
        std::vector<Matrix> sign;
        std::vector<Matrix> std2;
        for (const auto& p : perms)
        {
            int s = 1;
            for (int i = 0; i < 3; ++i)
            {
                for (int j = i + 1; j < 3; ++j)
                {
                    s = p[i] > p[j] ? -s : s;
                }
            }
            triv.push_back(Matrix::Identity(1, 1));
            sign.push_back(Matrix::Constant(1, 1, double(s)));
            std2.push_back(s3_standard_rep(p));
        }
        out.push_back(make_rep(1, {}, std::move(triv), &group));
        out.back().label = "trivial";
        out.push_back(make_rep(1, {}, std::move(sign), &group));
        out.back().label = "sign";
        out.push_back(make_rep(2, {}, std::move(std2), &group));
        out.back().label = "standard";
        return out;
    }
    throw Error(Errc::InvalidGroup, "irreducible representations are tabulated for cyclic groups and S3 only");
}

ConjugateResiduals conjugate_equation_residuals(const Vector& s, const Vector& s_bar, int dim_x, int dim_y)
{
    if (s.size() != dim_x * dim_y || s_bar.size() != dim_x * dim_y)
    {
        throw Error(Errc::ShapeMismatch, "conjugate vectors must have length dim_x * dim_y");
    }
    const Matrix ix = Matrix::Identity(dim_x, dim_x);
    const Matrix iy = Matrix::Identity(dim_y, dim_y);
    // Y → Y⊗X⊗Y → Y and X → X⊗Y⊗X → X
    const Matrix left = kron(s_bar.adjoint(), iy) * kron(iy, s);
    const Matrix right = kron(s.adjoint(), ix) * kron(ix, s_bar);
    return {max_abs(left - iy), max_abs(right - ix)};
}

Matrix q_from_pair(const Vector& s, int dim_x, int dim_y)
{
    if (s.size() != dim_x * dim_y)
    {
        throw Error(Errc::ShapeMismatch, "vector length must be dim_x * dim_y");
    }
    // s = Σ S_ab x_a ⊗ y_b with row-major flattening; J ξ = S^T conj(ξ)
    Matrix sm(dim_x, dim_y);
    for (int a = 0; a < dim_x; ++a)
    {
        for (int b = 0; b < dim_y; ++b)
        {
            sm(a, b) = s(a * dim_y + b);
        }
    }
    return sm * sm.adjoint();
}

ConjugateData conjugate_data_u(const MultiMatrixAlgebra& a, const Action* action)
{
    if (!delta_form_check(a))
    {
        throw Error(Errc::NotDeltaForm, "the state is not a delta-form");
    }
    const int n = a.dim();
    ConjugateData out;
    out.s = comultiplied_unit(a);
    out.s_bar = out.s;
    out.residuals = conjugate_equation_residuals(out.s, out.s_bar, n, n);
    require_conjugate(out.residuals, a.tolerance());
    out.q = q_from_pair(out.s, n, n);
    out.q_residual = max_abs(out.q - modular_operator(a));
    out.dim_q = out.s.squaredNorm();
    out.dim_q_bar = out.s_bar.squaredNorm();

    if (action)
    {
        const Matrix id = Matrix::Identity(n, n);
        double worst = 0.0;
        for (const auto& t : intertwiner_space(*action, 1, 1))
        {
            const Complex phi = out.s.dot(kron(t, id) * out.s);
            const Complex psi = out.s_bar.dot(kron(id, t) * out.s_bar);
            worst = std::max(worst, std::abs(phi - psi));
        }
        out.standardness = worst;
    }
    return out;
}

ConjugateData wreath_conjugate(const RepData& v, const MultiMatrixAlgebra& a)
{
    if (!delta_form_check(a))
    {
        throw Error(Errc::NotDeltaForm, "the state is not a delta-form");
    }
    const int n = a.dim();
    const int d = v.dim * n;
    ConjugateData out;
    out.s = Vector::Zero(d * d);
    out.s_bar = Vector::Zero(d * d);
    for (int i = 0; i < v.dim; ++i)
    {
        for (int k = 0; k < a.block_count(); ++k)
        {
            for (int p = 0; p < a.block_size(k); ++p)
            {
                for (int r = 0; r < a.block_size(k); ++r)
                {
                    // e_i ⊗ b_pr ⊗ ē_i ⊗ b_rp
                    const int x = i * n + a.index(k, p, r);
                    const int y = i * n + a.index(k, r, p);
                    const double ratio = a.weight(k, p) / a.weight(k, r);
                    out.s(x * d + y) = std::sqrt(v.q[i] * ratio);
                    out.s_bar(x * d + y) = std::sqrt(ratio / v.q[i]);
                }
            }
        }
    }
    out.residuals = conjugate_equation_residuals(out.s, out.s_bar, d, d);
    require_conjugate(out.residuals, a.tolerance());
    out.q = q_from_pair(out.s, d, d);
    Matrix qv = Matrix::Zero(v.dim, v.dim);
    for (int i = 0; i < v.dim; ++i)
    {
        qv(i, i) = v.q[i];
    }
    out.q_residual = max_abs(out.q - kron(qv, modular_operator(a)));
    out.dim_q = out.s.squaredNorm();
    out.dim_q_bar = out.s_bar.squaredNorm();
    return out;
}

Matrix wreath_morphism(const Matrix& s, const RepData& v, const RepData& w, const RepData& t,
                       const MultiMatrixAlgebra& a)
{
    if (s.rows() != t.dim || s.cols() != v.dim * w.dim)
    {
        throw Error(Errc::ShapeMismatch, "S must be d_t x (d_v d_w)");
    }
    const int n = a.dim();
    const std::vector<int> dims{v.dim, n, w.dim, n};
    const std::vector<int> flip{0, 2, 1, 3};
    return kron(s, structure_tensors(a).m) * leg_permutation(dims, flip);
}

MorphismCheckReport wreath_morphism_check(const Matrix& s, const RepData& v, const RepData& w, const RepData& t,
                                          const FiniteGroup& g, const ClassicalAction& h)
{
    const double tol = h.algebra.tolerance();
    if (!is_ergodic(Action(h)))
    {
        throw Error(Errc::NotErgodic, "the H-action must be ergodic");
    }
    for (const auto* r : {&v, &w, &t})
    {
        if (static_cast<int>(r->matrices.size()) != g.order())
        {
            throw Error(Errc::InvalidRepresentation, "representations need one matrix per element of G");
        }
    }
    MorphismCheckReport rep;
    for (int x = 0; x < g.order(); ++x)
    {
        rep.intertwiner_residual = std::max(
            rep.intertwiner_residual, max_abs(s * kron(v.matrices[x], w.matrices[x]) - t.matrices[x] * s));
    }
    if (rep.intertwiner_residual > tol)
    {
        std::ostringstream os;
        os << "S is not an intertwiner v (x) w -> t (residual " << rep.intertwiner_residual << ")";
        throw Error(Errc::NotIntertwiner, os.str());
    }

    const Matrix m = wreath_morphism(s, v, w, t, h.algebra);
    for (int y = 0; y < h.group.order(); ++y)
    {
        const Matrix& alpha = h.autos[y];
        for (int x = 0; x < g.order(); ++x)
        {
            const Matrix xv = kron(v.matrices[x], alpha);
            const Matrix xw = kron(w.matrices[x], alpha);
            const Matrix xt = kron(t.matrices[x], alpha);
            rep.residual = std::max(rep.residual, max_abs(m * kron(xv, xw) - xt * m));
            ++rep.pairs_checked;
        }
    }
    if (rep.residual > tol)
    {
        std::ostringstream os;
        os << "quotient-model morphism identity fails (residual " << rep.residual << ")";
        throw Error(Errc::ResidualTooLarge, os.str());
    }
    return rep;
}

} // namespace qwreath
