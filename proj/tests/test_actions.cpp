#include <gtest/gtest.h>

#include "qwreath/coefficients.hpp"

#include "support.hpp"

using namespace qwreath;
using namespace qwreath::test;

namespace
{

Errc code_of(const std::function<void()>& f)
{
    try
    {
        f();
    }
    catch (const Error& e)
    {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return Errc::UsageError;
}

std::vector<Action> fixture_grid()
{
    std::vector<Action> out;
    for (int n = 2; n <= 4; ++n)
    {
        out.emplace_back(symmetric_permutation_action(n));
    }
    out.emplace_back(trivial_classical_action(m2_skew()));
    for (int p : {2, 3, 5})
    {
        out.emplace_back(zp_translation_action(p));
    }
    out.emplace_back(z4_quotient_action());
    for (auto& f : s3hat_fixtures())
    {
        out.emplace_back(f);
    }
    return out;
}

Matrix permutation_matrix(const std::vector<int>& p)
{
    Matrix m = Matrix::Zero(p.size(), p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
    {
        m(p[i], i) = 1.0;
    }
    return m;
}

} // namespace

TEST(Actions, ClassicalFixturesValidate)
{
    for (int n = 2; n <= 5; ++n)
    {
        const auto s = symmetric_permutation_action(n);
        EXPECT_EQ(s.group.order(), std::tgamma(n + 1));
    }
    const auto t = trivial_classical_action(c_m2_uniform());
    EXPECT_EQ(t.group.order(), 1);
}

TEST(Actions, ClassicalValidationErrors)
{
    const auto c2 = algebra({{1, {1.0 / 3}}, {1, {2.0 / 3}}});
    const auto swap = FiniteGroup::symmetric(2);
    EXPECT_EQ(code_of([&] { make_classical_action(c2, swap, block_permutation_autos(c2, swap, {{0, 1}, {1, 0}})); }),
              Errc::NotStatePreserving);

    const auto u2 = uniform_cn(2);
    const Matrix id = Matrix::Identity(2, 2);
    Matrix flip(2, 2);
    flip << 0, 1, 1, 0;
    EXPECT_EQ(code_of([&] { make_classical_action(u2, FiniteGroup::cyclic(3), {id, flip, flip}); }),
              Errc::NotHomomorphism);

    Matrix hadamard(2, 2);
    hadamard << 1, 1, 1, -1;
    hadamard /= std::sqrt(2.0);
    EXPECT_EQ(code_of([&] { make_classical_action(u2, FiniteGroup::cyclic(2), {id, hadamard}); }),
              Errc::NotAutomorphism);
    EXPECT_EQ(code_of([&] { make_classical_action(u2, FiniteGroup::cyclic(2), {id}); }), Errc::ShapeMismatch);
}

TEST(Actions, DualFixturesValidate)
{
    for (int p : {2, 3, 5, 7})
    {
        const auto z = zp_translation_action(p);
        EXPECT_EQ(z.algebra.dim(), p);
    }
    const auto fx = s3hat_fixtures();
    ASSERT_EQ(fx.size(), 4u);
    const auto& b4 = fx[3];
    EXPECT_EQ(b4.algebra.dim(), 6);
    // canonical trace of C*(S_3) = C + C + M_2
    EXPECT_NEAR(b4.algebra.weight(0, 0), 1.0 / 6, kTol);
    EXPECT_NEAR(b4.algebra.weight(1, 0), 1.0 / 6, kTol);
    EXPECT_NEAR(b4.algebra.weight(2, 0), 1.0 / 3, kTol);
    EXPECT_NEAR(b4.algebra.weight(2, 1), 1.0 / 3, kTol);
}

TEST(Actions, DualValidationErrors)
{
    const auto z2 = FiniteGroup::cyclic(2);
    EXPECT_EQ(code_of([&] { make_dual_action(uniform_cn(2), z2, {0, 1}); }), Errc::UnitNotTrivial);

    const double r2 = std::sqrt(2.0);
    const double r3 = std::sqrt(3.0);
    const double r6 = std::sqrt(6.0);
    Matrix w(3, 3);
    w << 1 / r3, 1 / r2, 1 / r6, //
        1 / r3, -1 / r2, 1 / r6, //
        1 / r3, 0, -2 / r6;
    EXPECT_EQ(code_of([&] { make_dual_action(uniform_cn(3), z2, {0, 1, 1}, w); }), Errc::GradingNotMultiplicative);

    Matrix skew = Matrix::Identity(2, 2);
    skew(0, 1) = 0.5;
    EXPECT_EQ(code_of([&] { make_dual_action(uniform_cn(2), z2, {0, 0}, skew); }), Errc::StateSupportViolation);
    EXPECT_EQ(code_of([&] { make_dual_action(uniform_cn(2), z2, {0, 2}); }), Errc::InvalidGroup);
}

TEST(Actions, IntertwinerSpaces)
{
    for (int n = 2; n <= 5; ++n)
    {
        const Action s = symmetric_permutation_action(n);
        const auto fixed = intertwiner_space(s, 0, 1);
        ASSERT_EQ(fixed.size(), 1u);
        const Vector eta = structure_tensors(algebra_of(s)).eta;
        EXPECT_NEAR(std::abs(eta.norm() - 1.0), 0.0, kTol);
        EXPECT_NEAR(std::abs(fixed[0].col(0).dot(eta)), 1.0, kTol);

        const auto two = intertwiner_space(s, 0, 2);
        ASSERT_EQ(two.size(), 2u);
        // η⊗η and m★η lie in the span
        Matrix basis(two[0].rows(), 2);
        basis << two[0], two[1];
        const Matrix proj = basis * basis.adjoint();
        const Vector ee = kron(eta, eta);
        const Vector s2 = comultiplied_unit(algebra_of(s));
        EXPECT_LT((proj * ee - ee).norm(), 1e-8);
        EXPECT_LT((proj * s2 - s2).norm(), 1e-8);
    }
    EXPECT_EQ(intertwiner_space(Action(s3hat_fixtures()[3]), 0, 2).size(), 6u);
}

TEST(Actions, SizeCap)
{
    const Action s = symmetric_permutation_action(5);
    EXPECT_EQ(code_of([&] { intertwiner_space(s, 3, 3); }), Errc::SizeCapExceeded);
}

TEST(Actions, ErgodicityFlags)
{
    for (int n = 2; n <= 5; ++n)
    {
        const Action s = symmetric_permutation_action(n);
        EXPECT_TRUE(is_ergodic(s));
        EXPECT_TRUE(is_two_ergodic(s));
        EXPECT_TRUE(is_faithful(s));
    }
    const Action z4 = z4_quotient_action();
    EXPECT_TRUE(is_ergodic(z4));
    EXPECT_FALSE(is_faithful(z4));
    EXPECT_FALSE(is_ergodic(Action(trivial_classical_action(m2_trace()))));

    const auto fx = s3hat_fixtures();
    for (const auto& f : fx)
    {
        EXPECT_TRUE(is_ergodic(Action(f)));
    }
    EXPECT_TRUE(is_two_ergodic(Action(fx[1])));
    EXPECT_FALSE(is_two_ergodic(Action(fx[3])));
}

TEST(Actions, ErgodicImpliesDeltaFormProperty)
{
    for (const auto& a : fixture_grid())
    {
        if (is_ergodic(a))
        {
            EXPECT_TRUE(delta_form_check(algebra_of(a)).has_value());
        }
    }
}

TEST(Actions, UnitaryAndStructureIntertwinersProperty)
{
    for (const auto& a : fixture_grid())
    {
        const auto& alg = algebra_of(a);
        const auto st = structure_tensors(alg);
        const auto u1 = tensor_representation(a, 1);
        const auto u2 = tensor_representation(a, 2);
        if (std::holds_alternative<ClassicalAction>(a))
        {
            for (const auto& m : u1)
            {
                EXPECT_LT(max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())), kTol);
            }
        }
        for (std::size_t g = 0; g < u1.size(); ++g)
        {
            EXPECT_LT(max_abs(st.m * u2[g] - u1[g] * st.m), kTol);
            // η ∈ Mor(1, u): u(g) η equals the trivial representation applied to η
            const Vector trivial = (g == static_cast<std::size_t>(group_of(a).identity())) ? st.eta : Vector::Zero(alg.dim());
            if (std::holds_alternative<ClassicalAction>(a))
            {
                EXPECT_LT((u1[g] * st.eta - st.eta).cwiseAbs().maxCoeff(), kTol);
            }
            else
            {
                EXPECT_LT((u1[g] * st.eta - trivial).cwiseAbs().maxCoeff(), kTol);
            }
        }
        const auto rel = verify_coefficient_relations(a);
        EXPECT_LT(rel.max(), kTol);
    }
}

TEST(Actions, SelfConjugacyDimensionProperty)
{
    for (const auto& a : fixture_grid())
    {
        EXPECT_EQ(intertwiner_space(a, 1, 1).size(), intertwiner_space(a, 0, 2).size());
    }
}

TEST(Actions, IntertwinerDimensionConjugationInvarianceProperty)
{
    std::mt19937_64 rng(kSeed);
    for (int n = 2; n <= 4; ++n)
    {
        const auto s = symmetric_permutation_action(n);
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        const Matrix pm = permutation_matrix(p);
        std::vector<Matrix> conj;
        for (const auto& m : s.autos)
        {
            conj.push_back(pm * m * pm.transpose());
        }
        const Action c = make_classical_action(s.algebra, s.group, conj);
        for (auto [k, l] : {std::pair{0, 1}, {1, 1}, {0, 2}, {1, 2}})
        {
            EXPECT_EQ(intertwiner_space(c, k, l).size(), intertwiner_space(Action(s), k, l).size());
        }
    }
}

TEST(Actions, CoefficientRelations)
{
    const Action s3 = symmetric_permutation_action(3);
    const auto& a = algebra_of(s3);
    const HaarOracle h(s3);
    for (int i = 0; i < 3; ++i)
    {
        Vector sum = Vector::Zero(h.size());
        for (int r = 0; r < 3; ++r)
        {
            sum += std::sqrt(a.weight(r, 0)) * h.coefficient(MomentIndex{0, 0, i, 0, 0, r});
        }
        EXPECT_LT((sum - std::sqrt(a.weight(i, 0)) * h.unit()).cwiseAbs().maxCoeff(), kTol);
    }
    const auto triv = verify_coefficient_relations(Action(trivial_classical_action(m2_skew())));
    EXPECT_LT(triv.max(), 1e-14);
    EXPECT_LT(verify_coefficient_relations(Action(s3hat_fixtures()[3])).adjoint, kTol);
}

TEST(Actions, ZpDichotomy)
{
    for (int p : {2, 3, 5})
    {
        EXPECT_EQ(zp_dichotomy_check(Action(zp_translation_action(p))), ZpClass::Regular);
    }
    EXPECT_EQ(zp_dichotomy_check(Action(trivial_dual_action(FiniteGroup::cyclic(5)))), ZpClass::Trivial);
    EXPECT_EQ(code_of([] { zp_dichotomy_check(Action(trivial_dual_action(FiniteGroup::cyclic(4)))); }),
              Errc::NotPrime);
    EXPECT_EQ(code_of([] { zp_dichotomy_check(Action(symmetric_permutation_action(2))); }),
              Errc::UnsupportedActionKind);
    const auto lazy = make_dual_action(uniform_cn(2), FiniteGroup::cyclic(3), {0, 0});
    EXPECT_EQ(code_of([&] { zp_dichotomy_check(Action(lazy)); }), Errc::NotErgodic);
}

TEST(Groups, TablesAndErrors)
{
    const auto s3 = FiniteGroup::symmetric(3);
    EXPECT_EQ(s3.order(), 6);
    EXPECT_EQ(s3.element_order(3), 3);
    EXPECT_EQ(s3.element_order(1), 2);
    EXPECT_EQ(s3.generated_subgroup({3}).size(), 3u);
    EXPECT_EQ(code_of([] { FiniteGroup::from_table({{0, 1}, {0, 1}}); }), Errc::InvalidGroup);
    EXPECT_EQ(code_of([] { FiniteGroup::from_table({{0, 2}, {1, 0}}); }), Errc::InvalidGroup);
}
