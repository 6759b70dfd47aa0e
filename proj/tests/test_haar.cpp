#include <gtest/gtest.h>

#include "qwreath/haar.hpp"

#include "support.hpp"

using namespace qwreath;
using namespace qwreath::test;

namespace
{

// u_ij on C^K: row block i, column block j
MomentIndex cn(int i, int j, bool conjugate = false)
{
    return {0, 0, i, 0, 0, j, conjugate};
}

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

CoefficientPolynomial single(int n, const MomentIndex& idx, Complex c = 1.0)
{
    return {Matrix::Zero(n, n), {{Matrix::Constant(n, n, c), {idx}}}};
}

} // namespace

TEST(Haar, FirstMomentsOnSn)
{
    for (int n = 2; n <= 5; ++n)
    {
        const Action s = symmetric_permutation_action(n);
        for (int i = 0; i < n; ++i)
        {
            for (int j = 0; j < n; ++j)
            {
                EXPECT_NEAR(haar_first_moment(s, cn(i, j)), 1.0 / n, kTol);
            }
        }
    }
    const Action s3 = symmetric_permutation_action(3);
    const std::vector<MomentIndex> w{cn(0, 1)};
    EXPECT_NEAR(std::abs(brute_force_moment(s3, w) - 1.0 / 3), 0.0, kTol);
    EXPECT_NEAR(sn_average(3, {{0, 1}}), 1.0 / 3, kTol);
}

TEST(Haar, FirstMomentCategorical)
{
    const auto m2 = aut_plus_data(m2_trace());
    EXPECT_NEAR(haar_first_moment(m2, MomentIndex{0, 0, 0, 0, 0, 0}), 0.5, kTol);
    EXPECT_NEAR(haar_first_moment(m2, MomentIndex{0, 1, 0, 0, 0, 0}), 0.0, kTol);
    EXPECT_EQ(code_of([] { aut_plus_data(c_m2_uniform()); }), Errc::NotDeltaForm);
}

TEST(Haar, SecondMomentTableOnCk)
{
    for (int k = 2; k <= 5; ++k)
    {
        const auto data = aut_plus_data(uniform_cn(k));
        for (int i = 0; i < k; ++i)
        {
            for (int j = 0; j < k; ++j)
            {
                for (int a = 0; a < k; ++a)
                {
                    for (int b = 0; b < k; ++b)
                    {
                        double expected = 0.0;
                        if (i == a && j == b)
                        {
                            expected = 1.0 / k;
                        }
                        else if (i != a && j != b)
                        {
                            expected = 1.0 / (k * (k - 1.0));
                        }
                        EXPECT_NEAR(haar_second_moment(data, cn(i, j), cn(a, b)), expected, kTol);
                        EXPECT_NEAR(sn_average(k, {{i, j}, {a, b}}), expected, kTol);
                    }
                }
            }
        }
    }
    const Action s3 = symmetric_permutation_action(3);
    const std::vector<MomentIndex> w{cn(0, 1), cn(1, 0)};
    EXPECT_NEAR(std::abs(brute_force_moment(s3, w) - 1.0 / 6), 0.0, kTol);
}

TEST(Haar, OneThirdOnM2)
{
    const auto data = aut_plus_data(m2_trace());
    const MomentIndex u{0, 0, 0, 0, 0, 0, false};
    EXPECT_NEAR(haar_second_moment(data, u, u), 1.0 / 3, kTol);
    const std::vector<MomentIndex> w{u, u};
    EXPECT_NEAR(std::abs(projection_entry(data.algebra, haar_projection(data), w) - 1.0 / 3), 0.0, kTol);
}

TEST(Haar, ProjectionAxioms)
{
    for (int n = 2; n <= 5; ++n)
    {
        const Matrix p = haar_projection(aut_plus_data(uniform_cn(n)));
        EXPECT_LT(max_abs(p * p - p), kTol);
        EXPECT_LT(max_abs(p - p.adjoint()), kTol);
        const Eigen::SelfAdjointEigenSolver<Matrix> es(p);
        int rank = 0;
        for (Eigen::Index x = 0; x < es.eigenvalues().size(); ++x)
        {
            rank += es.eigenvalues()(x) > 0.5;
        }
        EXPECT_EQ(rank, 2);
    }
}

TEST(Haar, ProjectionEquivalenceProperty)
{
    for (const auto& a : {m2_trace(), m3_trace(), c_m2_delta5(), m2_skew(), uniform_cn(4)})
    {
        const auto s = sweep_moments(aut_plus_data(a), 2);
        EXPECT_LT(s.projection_deviation, kTol);
        EXPECT_EQ(s.count, static_cast<std::size_t>(a.dim()) * a.dim() * a.dim() * a.dim());
        EXPECT_LT(sweep_moments(aut_plus_data(a), 1).projection_deviation, kTol);
    }
}

TEST(Haar, BruteForceWords)
{
    const Action s4 = symmetric_permutation_action(4);
    EXPECT_NEAR(std::abs(brute_force_moment(s4, {}) - 1.0), 0.0, kTol);
    const std::vector<MomentIndex> w{cn(0, 0), cn(1, 1)};
    EXPECT_NEAR(std::abs(brute_force_moment(s4, w) - 1.0 / 12), 0.0, kTol);
    EXPECT_NEAR(sn_average(4, {{0, 0}, {1, 1}}), 1.0 / 12, kTol);
    const std::vector<MomentIndex> long_word(5, cn(0, 0));
    EXPECT_EQ(code_of([&] { brute_force_moment(s4, long_word); }), Errc::UsageError);
}

TEST(Haar, OracleEquivalenceProperty)
{
    for (int n = 2; n <= 5; ++n)
    {
        const Action s = symmetric_permutation_action(n);
        const auto data = aut_plus_data(algebra_of(s));
        for (int degree : {1, 2})
        {
            const auto sweep = sweep_moments(data, degree, &s);
            ASSERT_TRUE(sweep.brute_force_deviation);
            EXPECT_LT(*sweep.brute_force_deviation, kTol);
        }
        // independent enumeration on a few conjugated words
        for (int i = 0; i < n; ++i)
        {
            for (int j = 0; j < n; ++j)
            {
                EXPECT_NEAR(haar_second_moment(data, cn(i, j, true), cn(j, i)), sn_average(n, {{i, j}, {j, i}}),
                            kTol);
            }
        }
    }
}

TEST(Haar, UnitalityConsistencyProperty)
{
    for (const auto& a : {m2_trace(), m2_skew(), c_m2_delta5(), uniform_cn(3)})
    {
        const auto data = aut_plus_data(a);
        for (int x = 0; x < a.dim(); ++x)
        {
            const auto c = a.coord(x);
            double sum = 0.0;
            for (int g = 0; g < a.block_count(); ++g)
            {
                for (int r = 0; r < a.block_size(g); ++r)
                {
                    sum += std::sqrt(a.weight(g, r)) *
                           haar_first_moment(data, MomentIndex{c.i, c.j, c.block, r, r, g, false});
                }
            }
            const double expected = c.i == c.j ? std::sqrt(a.weight(c.block, c.i)) : 0.0;
            EXPECT_NEAR(sum, expected, kTol);
        }
    }
}

TEST(Haar, HaarOfUnitaryIsFirstMomentProjectionProperty)
{
    std::vector<Action> grid;
    for (int n = 2; n <= 5; ++n)
    {
        grid.emplace_back(symmetric_permutation_action(n));
    }
    for (auto& f : s3hat_fixtures())
    {
        grid.emplace_back(f);
    }
    for (const auto& a : grid)
    {
        const HaarOracle h(a);
        EXPECT_LT(max_abs(h.field_haar(h.unitary()) - first_moment_projection(algebra_of(a))), kTol);
    }
}

TEST(Haar, Refusals)
{
    const Action triv = trivial_classical_action(m2_trace());
    EXPECT_EQ(code_of([&] { haar_first_moment(triv, MomentIndex{}); }), Errc::NotErgodic);
    const Action b4 = s3hat_fixtures()[3];
    EXPECT_EQ(code_of([&] { haar_second_moment(b4, MomentIndex{}, MomentIndex{}); }), Errc::NotTwoErgodic);
    EXPECT_EQ(code_of([&] { haar_projection(b4); }), Errc::NotTwoErgodic);
    const auto c = aut_plus_data(algebra({{1, {1.0}}}));
    EXPECT_EQ(code_of([&] { haar_second_moment(c, MomentIndex{}, MomentIndex{}); }), Errc::DegenerateDelta);
    EXPECT_EQ(code_of([&] { haar_projection(c); }), Errc::DegenerateDelta);
}

TEST(Haar, ConditionalExpectationOfMatrixUnits)
{
    for (const auto& a : {m2_trace(), m2_skew(), c_m2_delta5(), uniform_cn(4)})
    {
        const auto data = aut_plus_data(a);
        for (int k = 0; k < a.block_count(); ++k)
        {
            const int n = a.block_size(k);
            for (int r = 0; r < n; ++r)
            {
                for (int s = 0; s < n; ++s)
                {
                    CoefficientPolynomial x{Matrix::Zero(n, n), {}};
                    x.constant(r, s) = 1.0;
                    const auto e = cond_expectation(data, k, x);
                    const double scale = r == s ? 1.0 / (data.delta * a.weight(k, r)) : 0.0;
                    EXPECT_LT(max_abs(e - Complex(scale) * unit_element(a)), kTol);
                }
            }
        }
    }
}

TEST(Haar, ConditionalExpectationCkTable)
{
    for (int k = 3; k <= 5; ++k)
    {
        const auto data = aut_plus_data(uniform_cn(k));
        const Action sk = symmetric_permutation_action(k);
        for (int i = 0; i < k; ++i)
        {
            for (int j = 0; j < k; ++j)
            {
                for (int c = 0; c < k; ++c)
                {
                    AlgebraElement expected = zero_element(data.algebra);
                    for (int l = 0; l < k; ++l)
                    {
                        if (i == j)
                        {
                            expected.blocks[l](0, 0) = l == c ? 1.0 : 0.0;
                        }
                        else
                        {
                            expected.blocks[l](0, 0) = l == c ? 0.0 : 1.0 / (k - 1.0);
                        }
                    }
                    EXPECT_LT(max_abs(cond_expectation(data, i, single(1, cn(j, c))) - expected), kTol);
                    EXPECT_LT(max_abs(cond_expectation(sk, i, single(1, cn(j, c))) - expected), kTol);
                }
            }
        }
    }
}

TEST(Haar, ConditionalExpectationInvertsBetaProperty)
{
    std::mt19937_64 rng(kSeed);
    std::vector<Action> grid{Action(symmetric_permutation_action(3)), Action(symmetric_permutation_action(4)),
                             Action(s3hat_fixtures()[3]), Action(zp_translation_action(3))};
    for (const auto& act : grid)
    {
        const auto& a = algebra_of(act);
        for (int trial = 0; trial < 50; ++trial)
        {
            const auto x = random_element(a, rng);
            const int k = trial % a.block_count();
            EXPECT_LT(max_abs(cond_expectation(act, k, beta_block(act, k, x)) - x), kTol);
        }
    }
}

TEST(Haar, ConditionalExpectationRoutesAgree)
{
    std::mt19937_64 rng(kSeed + 3);
    const Action s4 = symmetric_permutation_action(4);
    const auto data = aut_plus_data(algebra_of(s4));
    for (int trial = 0; trial < 20; ++trial)
    {
        CoefficientPolynomial x{random_vector(1, rng), {}};
        for (int t = 0; t < 3; ++t)
        {
            const auto idx = cn(static_cast<int>(rng() % 4), static_cast<int>(rng() % 4), rng() % 2 == 0);
            x.terms.push_back({random_vector(1, rng), {idx}});
        }
        const int k = trial % 4;
        EXPECT_LT(max_abs(cond_expectation(data, k, x) - cond_expectation(s4, k, x)), kTol);
    }
}

TEST(Haar, ConditionalExpectationStateProperty)
{
    // ψ∘E_κ = ψ_κ^{-1}⊗h on the supported span
    std::mt19937_64 rng(kSeed + 4);
    for (const auto& a : {m2_skew(), c_m2_delta5(), m2_trace()})
    {
        const auto data = aut_plus_data(a);
        for (int k = 0; k < a.block_count(); ++k)
        {
            const int n = a.block_size(k);
            const auto inv = inverse_state(a, k);
            for (int trial = 0; trial < 10; ++trial)
            {
                CoefficientPolynomial x{Matrix::Zero(n, n), {}};
                const Vector c0 = random_vector(n * n, rng);
                x.constant = Eigen::Map<const Matrix>(c0.data(), n, n);
                const auto ci = a.coord(static_cast<int>(rng() % a.dim()));
                const auto cj = a.coord(static_cast<int>(rng() % a.dim()));
                const MomentIndex idx{ci.i, ci.j, ci.block, cj.i, cj.j, cj.block, false};
                const Vector c1 = random_vector(n * n, rng);
                x.terms.push_back({Eigen::Map<const Matrix>(c1.data(), n, n), {idx}});

                Complex expected = 0.0;
                for (int r = 0; r < n; ++r)
                {
                    expected += inv[r] * (x.constant(r, r) + x.terms[0].first(r, r) * haar_first_moment(data, idx));
                }
                EXPECT_NEAR(std::abs(state(a, cond_expectation(data, k, x)) - expected), 0.0, kTol);
            }
        }
    }
}

TEST(Haar, ConditionalExpectationPositivityProperty)
{
    std::mt19937_64 rng(kSeed + 5);
    const Action s4 = symmetric_permutation_action(4);
    const auto& a = algebra_of(s4);
    const HaarOracle h(s4);
    for (int trial = 0; trial < 50; ++trial)
    {
        CoefficientPolynomial x{random_vector(1, rng), {}};
        for (int t = 0; t < 3; ++t)
        {
            x.terms.push_back({random_vector(1, rng), {cn(static_cast<int>(rng() % 4), static_cast<int>(rng() % 4))}});
        }
        const int k = trial % 4;
        const auto f = polynomial_field(s4, k, x);
        const auto e = cond_expectation(s4, k, h.field_multiply(h.field_adjoint(f), f));
        for (const auto& b : e.blocks)
        {
            EXPECT_LT(max_abs(b - b.adjoint()), kTol);
            const Eigen::SelfAdjointEigenSolver<Matrix> es(b);
            EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
        }
    }
}

TEST(Haar, ConditionalExpectationErrors)
{
    const auto data = aut_plus_data(m2_trace());
    const MomentIndex u{};
    CoefficientPolynomial deg2{Matrix::Zero(2, 2), {{Matrix::Identity(2, 2), {u, u}}}};
    EXPECT_EQ(code_of([&] { cond_expectation(data, 0, deg2); }), Errc::UnsupportedElement);
    EXPECT_EQ(code_of([&] { cond_expectation(data, 1, deg2); }), Errc::IndexOutOfRange);
    const Action s3 = symmetric_permutation_action(3);
    EXPECT_EQ(code_of([&] { cond_expectation(s3, 0, std::vector<Matrix>(2, Matrix::Zero(1, 1))); }),
              Errc::UnsupportedElement);
    EXPECT_EQ(code_of([&] { cond_expectation(Action(trivial_classical_action(uniform_cn(2))), 0,
                                             std::vector<Matrix>(1, Matrix::Zero(1, 1))); }),
              Errc::NotErgodic);
}
