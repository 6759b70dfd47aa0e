#include "qwreath/actions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qwreath
{

namespace
{

std::string residual_text(const char* what, int g, double residual)
{
    std::ostringstream os;
    os << what << " fails for group element " << g << " (residual " << residual << ")";
    return os.str();
}

// Matrix of a linear map on B in b-coordinates, built column by column.
template <typename F>
Matrix map_matrix(const MultiMatrixAlgebra& a, F&& f)
{
    Matrix out(a.dim(), a.dim());
    for (int c = 0; c < a.dim(); ++c)
    {
        const auto x = a.coord(c);
        out.col(c) = to_coordinates(a, f(onb_element(a, x.block, x.i, x.j)));
    }
    return out;
}

int permutation_sign(const std::vector<int>& p)
{
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
    {
        for (std::size_t j = i + 1; j < p.size(); ++j)
        {
            if (p[i] > p[j])
            {
                s = -s;
            }
        }
    }
    return s;
}

MultiMatrixAlgebra uniform_commutative(int n)
{
    return MultiMatrixAlgebra::make(std::vector<Block>(n, Block{1, {1.0 / n}}));
}

Matrix character_basis(int n, const std::vector<int>& frequencies)
{
    Matrix w(n, static_cast<int>(frequencies.size()));
    for (int c = 0; c < static_cast<int>(frequencies.size()); ++c)
    {
        for (int j = 0; j < n; ++j)
        {
            const double angle = 2.0 * std::numbers::pi * j * frequencies[c] / n;
            w(j, c) = std::polar(1.0 / std::sqrt(double(n)), angle);
        }
    }
    return w;
}

bool is_prime(int p)
{
    if (p < 2)
    {
        return false;
    }
    for (int d = 2; d * d <= p; ++d)
    {
        if (p % d == 0)
        {
            return false;
        }
    }
    return true;
}

} // namespace

Matrix DualAction::projection(int g) const
{
    Matrix p = Matrix::Zero(basis.rows(), basis.rows());
    for (int c = 0; c < static_cast<int>(grading.size()); ++c)
    {
        if (grading[c] == g)
        {
            p.noalias() += basis.col(c) * basis.col(c).adjoint();
        }
    }
    return p;
}

const MultiMatrixAlgebra& algebra_of(const Action& action)
{
    return std::visit([](const auto& a) -> const MultiMatrixAlgebra& { return a.algebra; }, action);
}

const FiniteGroup& group_of(const Action& action)
{
    return std::visit([](const auto& a) -> const FiniteGroup& { return a.group; }, action);
}

ClassicalAction make_classical_action(MultiMatrixAlgebra algebra, FiniteGroup group, std::vector<Matrix> autos)
{
    const int d = algebra.dim();
    const double tol = algebra.tolerance();
    if (static_cast<int>(autos.size()) != group.order())
    {
        throw Error(Errc::ShapeMismatch, "expected one automorphism per group element");
    }
    for (const auto& m : autos)
    {
        if (m.rows() != d || m.cols() != d)
        {
            throw Error(Errc::ShapeMismatch, "automorphism matrix must be " + std::to_string(d) + "x" + std::to_string(d));
        }
    }

    const auto st = structure_tensors(algebra);
    const Matrix star = star_matrix(algebra);
    for (int g = 0; g < group.order(); ++g)
    {
        const Matrix& a = autos[g];
        const double mult = max_abs(a * st.m - st.m * kron(a, a));
        const double inv = max_abs(a * star - star * a.conjugate());
        const double unit = max_abs(a * st.eta - st.eta);
        const double r = std::max({mult, inv, unit});
        Eigen::FullPivLU<Matrix> lu(a);
        lu.setThreshold(kRankThresholdFactor * tol);
        if (r > tol || !lu.isInvertible())
        {
            throw Error(Errc::NotAutomorphism, residual_text("unital *-automorphism", g, r));
        }
    }
    for (int g = 0; g < group.order(); ++g)
    {
        const double r = max_abs(st.eta.adjoint() * autos[g] - st.eta.adjoint());
        if (r > tol)
        {
            throw Error(Errc::NotStatePreserving, residual_text("state invariance", g, r));
        }
    }
    for (int g = 0; g < group.order(); ++g)
    {
        double worst = 0.0;
        for (int h = 0; h < group.order(); ++h)
        {
            worst = std::max(worst, max_abs(autos[group.multiply(g, h)] - autos[g] * autos[h]));
        }
        if (worst > tol)
        {
            throw Error(Errc::NotHomomorphism, residual_text("alpha_gh = alpha_g alpha_h", g, worst));
        }
    }
    return {std::move(algebra), std::move(group), std::move(autos)};
}

DualAction make_dual_action(MultiMatrixAlgebra algebra, FiniteGroup group, std::vector<int> grading,
                            std::optional<Matrix> basis)
{
    const int d = algebra.dim();
    const double tol = algebra.tolerance();
    if (static_cast<int>(grading.size()) != d)
    {
        throw Error(Errc::ShapeMismatch, "grading needs " + std::to_string(d) + " entries");
    }
    for (int g : grading)
    {
        if (g < 0 || g >= group.order())
        {
            throw Error(Errc::InvalidGroup, "grading refers to group element " + std::to_string(g));
        }
    }
    DualAction act{std::move(algebra), std::move(group), std::move(grading), basis ? *basis : Matrix(Matrix::Identity(d, d))};
    if (act.basis.rows() != d || act.basis.cols() != d)
    {
        throw Error(Errc::ShapeMismatch, "homogeneous basis must be " + std::to_string(d) + "x" + std::to_string(d));
    }
    const double ortho = max_abs(act.basis.adjoint() * act.basis - Matrix::Identity(d, d));
    if (ortho > tol)
    {
        std::ostringstream os;
        os << "homogeneous basis is not orthonormal for the state (residual " << ortho << ")";
        throw Error(Errc::StateSupportViolation, os.str());
    }

    const auto& grp = act.group;
    std::vector<Matrix> proj;
    for (int g = 0; g < grp.order(); ++g)
    {
        proj.push_back(act.projection(g));
    }
    const auto st = structure_tensors(act.algebra);

    const int e = grp.identity();
    const double unit = (proj[e] * st.eta - st.eta).norm();
    if (unit > tol)
    {
        std::ostringstream os;
        os << "unit is not homogeneous of degree e (residual " << unit << ")";
        throw Error(Errc::UnitNotTrivial, os.str());
    }

    for (int g = 0; g < grp.order(); ++g)
    {
        for (int h = 0; h < grp.order(); ++h)
        {
            const Matrix prod = st.m * kron(proj[g], proj[h]);
            const double r = max_abs(prod - proj[grp.multiply(g, h)] * prod);
            if (r > tol)
            {
                throw Error(Errc::GradingNotMultiplicative,
                            residual_text("B_g B_h in B_gh", g * grp.order() + h, r));
            }
        }
    }

    const Matrix star = star_matrix(act.algebra);
    for (int g = 0; g < grp.order(); ++g)
    {
        const Matrix image = star * proj[g].conjugate();
        const double r = max_abs(image - proj[grp.inverse(g)] * image);
        if (r > tol)
        {
            throw Error(Errc::GradingNotInvolutive, residual_text("(B_g)* = B_{g^-1}", g, r));
        }
    }

    for (int g = 0; g < grp.order(); ++g)
    {
        if (g == e)
        {
            continue;
        }
        const double r = max_abs(st.eta.adjoint() * proj[g]);
        if (r > tol)
        {
            throw Error(Errc::StateSupportViolation, residual_text("state vanishing on B_g", g, r));
        }
    }
    return act;
}

Matrix autos_from_matrix_units(const MultiMatrixAlgebra& a, const Matrix& alpha_e)
{
    if (alpha_e.rows() != a.dim() || alpha_e.cols() != a.dim())
    {
        throw Error(Errc::ShapeMismatch, "map on matrix units has the wrong size");
    }
    // b-coordinates are D times e-coordinates
    Vector dvec(a.dim());
    for (int f = 0; f < a.dim(); ++f)
    {
        const auto c = a.coord(f);
        dvec(f) = std::sqrt(a.weight(c.block, c.j));
    }
    return dvec.asDiagonal() * alpha_e * dvec.cwiseInverse().asDiagonal();
}

std::vector<Matrix> block_permutation_autos(const MultiMatrixAlgebra& a, const FiniteGroup& group,
                                            const std::vector<std::vector<int>>& block_images)
{
    if (static_cast<int>(block_images.size()) != group.order())
    {
        throw Error(Errc::ShapeMismatch, "expected one block permutation per group element");
    }
    std::vector<Matrix> autos;
    for (const auto& img : block_images)
    {
        if (static_cast<int>(img.size()) != a.block_count())
        {
            throw Error(Errc::ShapeMismatch, "block permutation has the wrong length");
        }
        autos.push_back(map_matrix(a, [&](const AlgebraElement& x) {
            AlgebraElement y = zero_element(a);
            for (int k = 0; k < a.block_count(); ++k)
            {
                const int t = img[k];
                if (t < 0 || t >= a.block_count() || a.block_size(t) != a.block_size(k))
                {
                    throw Error(Errc::ShapeMismatch, "block permutation must map blocks to blocks of equal size");
                }
                y.blocks[t] = x.blocks[k];
            }
            return y;
        }));
    }
    return autos;
}

std::vector<Matrix> inner_autos(const MultiMatrixAlgebra& a, const std::vector<AlgebraElement>& unitaries)
{
    std::vector<Matrix> autos;
    for (const auto& u : unitaries)
    {
        check_shape(a, u);
        autos.push_back(map_matrix(a, [&](const AlgebraElement& x) { return u * x * u.adjoint(); }));
    }
    return autos;
}

std::vector<Matrix> tensor_representation(const Action& action, int k)
{
    if (k < 0)
    {
        throw Error(Errc::UsageError, "tensor power must be non-negative");
    }
    if (const auto* c = std::get_if<ClassicalAction>(&action))
    {
        std::vector<Matrix> out;
        for (const auto& a : c->autos)
        {
            out.push_back(tensor_power(a, k));
        }
        return out;
    }
    const auto& dual = std::get<DualAction>(action);
    const auto& grp = dual.group;
    std::vector<Matrix> proj;
    for (int g = 0; g < grp.order(); ++g)
    {
        proj.push_back(dual.projection(g));
    }
    std::vector<Matrix> cur(grp.order(), Matrix::Zero(1, 1));
    cur[grp.identity()](0, 0) = 1.0;
    for (int step = 0; step < k; ++step)
    {
        const Eigen::Index n = cur.front().rows() * dual.algebra.dim();
        std::vector<Matrix> next(grp.order(), Matrix::Zero(n, n));
        for (int h = 0; h < grp.order(); ++h)
        {
            if (cur[h].isZero(0.0))
            {
                continue;
            }
            for (int g = 0; g < grp.order(); ++g)
            {
                next[g] += kron(cur[h], proj[grp.multiply(grp.inverse(h), g)]);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

std::vector<Matrix> intertwiner_space(const Action& action, int k, int l, std::size_t cap)
{
    if (k < 0 || l < 0)
    {
        throw Error(Errc::UsageError, "tensor powers must be non-negative");
    }
    const auto& a = algebra_of(action);
    double size = std::pow(static_cast<double>(a.dim()), k + l);
    if (size > static_cast<double>(cap))
    {
        std::ostringstream os;
        os << "dim(B)^(k+l) = " << size << " exceeds the cap " << cap;
        throw Error(Errc::SizeCapExceeded, os.str());
    }
    const auto source = tensor_representation(action, k);
    const auto target = tensor_representation(action, l);
    return commutant_basis(source, target, a.tolerance());
}

bool is_ergodic(const Action& action)
{
    return intertwiner_space(action, 0, 1).size() == 1;
}

bool is_two_ergodic(const Action& action)
{
    return intertwiner_space(action, 1, 1).size() == 2;
}

bool is_faithful(const Action& action)
{
    if (const auto* c = std::get_if<ClassicalAction>(&action))
    {
        const double tol = c->algebra.tolerance();
        for (int g = 0; g < c->group.order(); ++g)
        {
            for (int h = g + 1; h < c->group.order(); ++h)
            {
                if (max_abs(c->autos[g] - c->autos[h]) <= tol)
                {
                    return false;
                }
            }
        }
        return true;
    }
    const auto& dual = std::get<DualAction>(action);
    return static_cast<int>(dual.group.generated_subgroup(dual.grading).size()) == dual.group.order();
}

const char* zp_class_name(ZpClass c)
{
    return c == ZpClass::Trivial ? "Trivial" : "Regular";
}

ZpClass zp_dichotomy_check(const Action& action)
{
    const auto* dual = std::get_if<DualAction>(&action);
    if (!dual)
    {
        throw Error(Errc::UnsupportedActionKind, "the Z_p dichotomy applies to dual actions");
    }
    const int p = dual->group.order();
    if (!is_prime(p))
    {
        throw Error(Errc::NotPrime, "group order " + std::to_string(p) + " is not prime");
    }
    if (!is_ergodic(action))
    {
        throw Error(Errc::NotErgodic, "the Z_p action is not ergodic");
    }
    const auto& a = dual->algebra;
    if (a.dim() == 1)
    {
        return ZpClass::Trivial;
    }
    if (a.dim() != p)
    {
        throw Error(Errc::ClassificationFailed, "dim(B) is neither 1 nor p");
    }
    for (const auto& b : a.blocks())
    {
        if (b.size != 1)
        {
            throw Error(Errc::ClassificationFailed, "B is not commutative");
        }
    }
    std::vector<int> count(p, 0);
    for (int g : dual->grading)
    {
        ++count[g];
    }
    for (int g = 0; g < p; ++g)
    {
        if (count[g] != 1)
        {
            throw Error(Errc::ClassificationFailed, "degree " + std::to_string(g) + " is not one-dimensional");
        }
    }

    const auto& grp = dual->group;
    const int gen = grp.identity() == 0 ? 1 : 0;
    int col = 0;
    while (dual->grading[col] != gen)
    {
        ++col;
    }
    const AlgebraElement w = from_coordinates(a, dual->basis.col(col));
    const double tol = a.tolerance();
    if (max_abs(w.adjoint() * w - unit_element(a)) > 1e3 * tol)
    {
        throw Error(Errc::ClassificationFailed, "the degree-one generator is not unitary");
    }
    AlgebraElement power = unit_element(a);
    int degree = grp.identity();
    for (int k = 1; k < p; ++k)
    {
        power = power * w;
        degree = grp.multiply(degree, gen);
        const Vector c = to_coordinates(a, power);
        if (std::abs(c.norm() - 1.0) > 1e3 * tol || (dual->projection(degree) * c - c).norm() > 1e3 * tol)
        {
            throw Error(Errc::ClassificationFailed, "power " + std::to_string(k) + " of the generator leaves its degree");
        }
    }
    return ZpClass::Regular;
}

ClassicalAction symmetric_permutation_action(int n)
{
    auto a = uniform_commutative(n);
    auto g = FiniteGroup::symmetric(n);
    auto autos = block_permutation_autos(a, g, g.permutations());
    return make_classical_action(std::move(a), std::move(g), std::move(autos));
}

ClassicalAction trivial_classical_action(const MultiMatrixAlgebra& a)
{
    return make_classical_action(a, FiniteGroup::trivial(), {Matrix::Identity(a.dim(), a.dim())});
}

DualAction zp_translation_action(int p)
{
    std::vector<int> freq(p);
    for (int k = 0; k < p; ++k)
    {
        freq[k] = k;
    }
    return make_dual_action(uniform_commutative(p), FiniteGroup::cyclic(p), freq, character_basis(p, freq));
}

DualAction z4_quotient_action()
{
    return make_dual_action(uniform_commutative(2), FiniteGroup::cyclic(4), {0, 2}, character_basis(2, {0, 1}));
}

DualAction trivial_dual_action(const FiniteGroup& group)
{
    return make_dual_action(uniform_commutative(1), group, {group.identity()});
}

Matrix s3_standard_rep(const std::vector<int>& perm)
{
    if (perm.size() != 3)
    {
        throw Error(Errc::ShapeMismatch, "S_3 permutation must have 3 entries");
    }
    Matrix p = Matrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i)
    {
        p(perm[i], i) = 1.0;
    }
    Matrix f(3, 2);
    f << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),
        -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),
        0.0, -2.0 / std::sqrt(6.0);
    return f.adjoint() * p * f;
}

std::vector<DualAction> s3hat_fixtures()
{
    const auto s3 = FiniteGroup::symmetric(3);
    std::vector<DualAction> out;
    out.push_back(trivial_dual_action(s3));

    // transposition (1 2) is element 1, the 3-cycles are 3 and 4
    out.push_back(make_dual_action(uniform_commutative(2), s3, {0, 1}, character_basis(2, {0, 1})));
    out.push_back(make_dual_action(uniform_commutative(3), s3, {0, 3, 4}, character_basis(3, {0, 1, 2})));

    auto group_algebra = MultiMatrixAlgebra::make({{1, {1.0 / 6}}, {1, {1.0 / 6}}, {2, {1.0 / 3, 1.0 / 3}}});
    Matrix basis(6, 6);
    std::vector<int> grading(6);
    for (int g = 0; g < 6; ++g)
    {
        const auto& perm = s3.permutations()[g];
        AlgebraElement x;
        x.blocks.push_back(Matrix::Identity(1, 1));
        x.blocks.push_back(Matrix::Constant(1, 1, double(permutation_sign(perm))));
        x.blocks.push_back(s3_standard_rep(perm));
        basis.col(g) = to_coordinates(group_algebra, x);
        grading[g] = g;
    }
    out.push_back(make_dual_action(std::move(group_algebra), s3, std::move(grading), basis));
    return out;
}

} // namespace qwreath
