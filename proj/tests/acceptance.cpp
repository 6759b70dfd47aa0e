// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>

#include "qwreath/haar.hpp"
#include "qwreath/ktheory.hpp"
#include "qwreath/repcat.hpp"

using namespace qwreath;

namespace
{

constexpr double kTol = 1e-9;

struct Outcome
{
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t)
{
    return std::chrono::duration<double>(Clock::now() - t).count();
}

MultiMatrixAlgebra alg(std::vector<Block> b)
{
    return MultiMatrixAlgebra::make(std::move(b));
}

AlgebraElement random_element(const MultiMatrixAlgebra& a, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    AlgebraElement x = zero_element(a);
    for (auto& m : x.blocks)
    {
        for (Eigen::Index i = 0; i < m.size(); ++i)
        {
            m(i) = Complex(d(rng), d(rng));
        }
    }
    return x;
}

std::string fmt(const char* f, double x)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// 1. S_N Haar moments against exhaustive enumeration of permutations.
Outcome criterion1()
{
    const auto start = Clock::now();
    double worst = 0.0;
    for (int n = 2; n <= 5; ++n)
    {
        const Action sn = symmetric_permutation_action(n);
        if (!is_two_ergodic(sn))
        {
            return {false, "S_" + std::to_string(n) + " not 2-ergodic"};
        }
        const auto data = aut_plus_data(algebra_of(sn));
        std::vector<std::vector<int>> perms;
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        do
        {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        auto avg = [&](std::initializer_list<std::pair<int, int>> pairs) {
            int hits = 0;
            for (const auto& s : perms)
            {
                bool all = true;
                for (auto [i, j] : pairs)
                {
                    all = all && s[j] == i;
                }
                hits += all;
            }
            return static_cast<double>(hits) / perms.size();
        };
        for (int i = 0; i < n; ++i)
        {
            for (int j = 0; j < n; ++j)
            {
                const MomentIndex a{0, 0, i, 0, 0, j, false};
                worst = std::max(worst, std::abs(haar_first_moment(data, a) - avg({{i, j}})));
                for (int k = 0; k < n; ++k)
                {
                    for (int l = 0; l < n; ++l)
                    {
                        const MomentIndex b{0, 0, k, 0, 0, l, false};
                        worst = std::max(worst, std::abs(haar_second_moment(data, a, b) - avg({{i, j}, {k, l}})));
                    }
                }
            }
        }
        const auto sweep = sweep_moments(data, 2, &sn);
        worst = std::max({worst, *sweep.brute_force_deviation, sweep.projection_deviation});
    }
    const double t = seconds_since(start);
    return {worst < kTol && t < 5.0, fmt("max dev %.2e", worst) + fmt(", %.2f s", t)};
}

// 2. Projection against the closed form on categorical data.
Outcome criterion2()
{
    double worst = 0.0;
    for (const auto& a : {alg({{2, {0.5, 0.5}}}), alg({{3, {1.0 / 3, 1.0 / 3, 1.0 / 3}}}),
                          alg({{1, {0.2}}, {2, {0.4, 0.4}}})})
    {
        worst = std::max(worst, sweep_moments(aut_plus_data(a), 2).projection_deviation);
    }
    const auto m2 = aut_plus_data(alg({{2, {0.5, 0.5}}}));
    const MomentIndex u{};
    const std::vector<MomentIndex> w{u, u};
    const double closed = haar_second_moment(m2, u, u);
    const double proj = std::real(projection_entry(m2.algebra, haar_projection(m2), w));
    const double third = std::max(std::abs(closed - 1.0 / 3), std::abs(proj - 1.0 / 3));
    return {worst < kTol && third < kTol, fmt("max dev %.2e", worst) + fmt(", |h(u^2)-1/3| %.2e", third)};
}

// 3. Conjugate equations, modular operator and quantum dimensions.
Outcome criterion3()
{
    double worst = 0.0;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> pos(0.25, 4.0);
    for (const auto& a : {alg(std::vector<Block>(3, Block{1, {1.0 / 3}})), alg({{2, {0.5, 0.5}}}),
                          alg({{1, {0.2}}, {2, {0.4, 0.4}}})})
    {
        const double delta = *delta_form_check(a);
        const auto u = conjugate_data_u(a);
        worst = std::max({worst, u.residuals.max(), max_abs(u.q - modular_operator(a)), std::abs(u.dim_q - delta)});
        for (int d = 1; d <= 3; ++d)
        {
            std::vector<double> q(d);
            for (auto& x : q)
            {
                x = pos(rng);
            }
            const double trq = std::accumulate(q.begin(), q.end(), 0.0);
            const auto w = wreath_conjugate(make_rep(d, q), a);
            worst = std::max({worst, w.residuals.max(), w.q_residual, std::abs(w.s.squaredNorm() - trq * delta) / trq});
        }
    }
    return {worst < kTol, fmt("max residual %.2e", worst)};
}

// 4. Conditional expectations.
Outcome criterion4()
{
    double worst = 0.0;
    std::mt19937_64 rng(4);
    const Action s3 = symmetric_permutation_action(3);
    const auto& a3 = algebra_of(s3);
    for (int trial = 0; trial < 50; ++trial)
    {
        const auto x = random_element(a3, rng);
        const int k = trial % 3;
        worst = std::max(worst, max_abs(cond_expectation(s3, k, beta_block(s3, k, x)) - x));
    }
    // ψ∘E_κ = ψ_κ^{-1}⊗h on constants and single coefficients
    for (const auto& a : {alg({{2, {0.25, 0.75}}}), alg({{1, {0.2}}, {2, {0.4, 0.4}}})})
    {
        const auto data = aut_plus_data(a);
        for (int k = 0; k < a.block_count(); ++k)
        {
            const int n = a.block_size(k);
            const auto inv = inverse_state(a, k);
            for (int x = 0; x < a.dim(); ++x)
            {
                const auto c = a.coord(x);
                const MomentIndex idx{c.i, c.j, c.block, c.j, c.i, c.block, false};
                CoefficientPolynomial p{Matrix::Identity(n, n), {{Matrix::Identity(n, n), {idx}}}};
                double expected = 0.0;
                for (int r = 0; r < n; ++r)
                {
                    expected += inv[r] * (1.0 + haar_first_moment(data, idx));
                }
                worst = std::max(worst, std::abs(state(a, cond_expectation(data, k, p)) - expected));
            }
            for (int r = 0; r < n; ++r)
            {
                for (int s = 0; s < n; ++s)
                {
                    CoefficientPolynomial e{Matrix::Zero(n, n), {}};
                    e.constant(r, s) = 1.0;
                    const double scale = r == s ? 1.0 / (data.delta * a.weight(k, r)) : 0.0;
                    worst = std::max(worst, max_abs(cond_expectation(data, k, e) - Complex(scale) * unit_element(a)));
                }
            }
        }
    }
    // C^K table
    for (int kk = 3; kk <= 5; ++kk)
    {
        const auto data = aut_plus_data(alg(std::vector<Block>(kk, Block{1, {1.0 / kk}})));
        for (int i = 0; i < kk; ++i)
        {
            for (int j = 0; j < kk; ++j)
            {
                for (int c = 0; c < kk; ++c)
                {
                    CoefficientPolynomial p{Matrix::Zero(1, 1), {{Matrix::Ones(1, 1), {MomentIndex{0, 0, j, 0, 0, c}}}}};
                    const auto e = cond_expectation(data, i, p);
                    for (int l = 0; l < kk; ++l)
                    {
                        const double expected = i == j ? (l == c ? 1.0 : 0.0) : (l == c ? 0.0 : 1.0 / (kk - 1));
                        worst = std::max(worst, std::abs(e.blocks[l](0, 0) - expected));
                    }
                }
            }
        }
    }
    return {worst < kTol, fmt("max residual %.2e", worst)};
}

// 5. Classification fixtures.
Outcome criterion5()
{
    const auto start = Clock::now();
    bool ok = true;
    std::string why;
    for (int p : {2, 3, 5})
    {
        if (zp_dichotomy_check(Action(zp_translation_action(p))) != ZpClass::Regular)
        {
            ok = false;
            why += " Z" + std::to_string(p);
        }
    }
    const Action z4 = z4_quotient_action();
    if (!is_ergodic(z4) || is_faithful(z4))
    {
        ok = false;
        why += " Z4";
    }
    const auto fx = s3hat_fixtures();
    for (const auto& f : fx)
    {
        ok = ok && is_ergodic(Action(f));
    }
    const auto mor = intertwiner_space(Action(fx[3]), 0, 2).size();
    const bool b2 = is_two_ergodic(Action(fx[1]));
    ok = ok && fx.size() == 4 && mor == 6 && b2;
    const double t = seconds_since(start);
    return {ok && t < 1.0, "dim Mor(1,u⊗u) for beta4 = " + std::to_string(mor) + fmt(", %.3f s", t) + why};
}

// 6. Quotient-model morphism identity on the grid.
Outcome criterion6()
{
    const auto start = Clock::now();
    double worst = 0.0;
    int checked = 0;
    const std::vector<ClassicalAction> hs{symmetric_permutation_action(2), symmetric_permutation_action(3)};
    for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::symmetric(3)})
    {
        const auto irr = irreducible_reps(g);
        for (const auto& v : irr)
        {
            for (const auto& w : irr)
            {
                if (v.dim * w.dim > 6)
                {
                    continue;
                }
                for (const auto& t : irr)
                {
                    std::vector<Matrix> src;
                    for (int x = 0; x < g.order(); ++x)
                    {
                        src.push_back(kron(v.matrices[x], w.matrices[x]));
                    }
                    for (const auto& s : commutant_basis(src, t.matrices, kTol))
                    {
                        for (const auto& h : hs)
                        {
                            const auto r = wreath_morphism_check(s, v, w, t, g, h);
                            worst = std::max({worst, r.residual, r.intertwiner_residual});
                            ++checked;
                        }
                    }
                }
            }
        }
    }
    const double t = seconds_since(start);
    return {checked > 0 && worst < kTol && t < 10.0,
            std::to_string(checked) + " cases" + fmt(", max residual %.2e", worst) + fmt(", %.2f s", t)};
}

// 7. K-theory of the free wreath products, exact.
Outcome criterion7()
{
    const auto start = Clock::now();
    int mismatches = 0;
    int runs = 0;
    for (int s : {1, 2, 3, 5})
    {
        for (int n : {2, 3, 4})
        {
            const auto zn = FgAbelianGroup::from_invariants(0, {BigInt(n)});
            const auto k0_zs = direct_sum(FgAbelianGroup::free(s), zn);
            const auto k0_ft = direct_sum(FgAbelianGroup::free(1), zn);
            const std::string h = "aut_plus:M" + std::to_string(n);
            for (auto sign : {RelationSign::Difference, RelationSign::Sum})
            {
                for (int t = 0; t < n; ++t)
                {
                    const auto hd = preset_k_data(h, t);
                    const auto a = wreath_k_groups(preset_k_data("z_s:" + std::to_string(s)), hd, sign);
                    const auto b = wreath_k_groups(preset_k_data("free_dual:" + std::to_string(s)), hd, sign);
                    mismatches += !is_isomorphic(a.k0, k0_zs) || !is_isomorphic(a.k1, FgAbelianGroup::free(1));
                    mismatches += !is_isomorphic(b.k0, k0_ft) || !is_isomorphic(b.k1, FgAbelianGroup::free(s + 1));
                    runs += 2;
                }
            }
        }
    }
    const double t = seconds_since(start);
    return {mismatches == 0 && t < 1.0,
            std::to_string(runs) + " runs, " + std::to_string(mismatches) + " mismatches" + fmt(", %.3f s", t)};
}

// 8. Smith normal form postconditions on random matrices.
Outcome criterion8()
{
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> dim(1, 8);
    std::uniform_int_distribution<int> entry(-20, 20);
    int bad = 0;
    for (int trial = 0; trial < 200; ++trial)
    {
        IntMatrix m(dim(rng), dim(rng));
        for (int r = 0; r < m.rows(); ++r)
        {
            for (int c = 0; c < m.cols(); ++c)
            {
                m(r, c) = entry(rng);
            }
        }
        try
        {
            const auto s = smith_normal_form(m);
            bool ok = s.u * m * s.v == s.d;
            ok = ok && abs(determinant(s.u)) == 1 && abs(determinant(s.v)) == 1;
            for (int r = 0; r < s.d.rows(); ++r)
            {
                for (int c = 0; c < s.d.cols(); ++c)
                {
                    ok = ok && (r == c || s.d(r, c) == 0);
                }
            }
            for (std::size_t k = 0; k + 1 < s.diagonal.size(); ++k)
            {
                const auto& a = s.diagonal[k];
                const auto& b = s.diagonal[k + 1];
                ok = ok && a >= 0 && (a == 0 ? b == 0 : b % a == 0);
            }
            bad += !ok;
        }
        catch (const Error&)
        {
            ++bad;
        }
    }
    return {bad == 0, "200 matrices, " + std::to_string(bad) + " failures"};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 Haar oracle equivalence on S_N, N=2..5", criterion1},
        {"2 projection vs closed form on categorical data", criterion2},
        {"3 conjugate equations and quantum dimensions", criterion3},
        {"4 conditional expectation suite", criterion4},
        {"5 classification fixtures", criterion5},
        {"6 quotient-model morphism grid", criterion6},
        {"7 K-theory of free wreath products", criterion7},
        {"8 Smith normal form property suite", criterion8},
    };
    bool all = true;
    for (const auto& [name, check] : criteria)
    {
        Outcome o;
        try
        {
            o = check();
        }
        catch (const std::exception& e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    }
    return all ? 0 : 1;
}
