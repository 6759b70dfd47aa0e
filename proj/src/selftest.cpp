#include <algorithm>
#include <functional>
#include <random>

#include "qwreath/cli.hpp"
#include "qwreath/haar.hpp"
#include "qwreath/ktheory.hpp"
#include "qwreath/repcat.hpp"

namespace qwreath
{

namespace
{

using ojson = nlohmann::ordered_json;

MultiMatrixAlgebra algebra(std::vector<Block> blocks, double tol)
{
    return MultiMatrixAlgebra::make(std::move(blocks), tol);
}

Check run_check(const std::string& name, const std::function<std::pair<bool, ojson>()>& body)
{
    try
    {
        auto [ok, value] = body();
        return {name, ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(value)};
    }
    catch (const std::exception& e)
    {
        return {name, CheckStatus::Fail, e.what()};
    }
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

} // namespace

std::vector<Check> run_selftest(double tol, std::uint64_t seed)
{
    std::vector<Check> out;
    std::mt19937_64 rng(seed);

    out.push_back(run_check("actions.s3hat_ergodic", [&] {
        const auto fx = s3hat_fixtures();
        bool ok = fx.size() == 4;
        for (const auto& f : fx)
        {
            ok = ok && is_ergodic(Action(f));
        }
        return std::pair{ok, ojson(fx.size())};
    }));

    out.push_back(run_check("actions.z4_quotient", [&] {
        const Action z4 = z4_quotient_action();
        const bool erg = is_ergodic(z4);
        const bool faithful = is_faithful(z4);
        return std::pair{erg && !faithful, ojson{{"ergodic", erg}, {"faithful", faithful}}};
    }));

    out.push_back(run_check("actions.zp_regular", [&] {
        bool ok = true;
        for (int p : {2, 3, 5})
        {
            ok = ok && zp_dichotomy_check(Action(zp_translation_action(p))) == ZpClass::Regular;
        }
        return std::pair{ok, ojson("p in {2,3,5}")};
    }));

    out.push_back(run_check("haar.cond_expectation", [&] {
        const Action s3 = symmetric_permutation_action(3);
        const auto& a = algebra_of(s3);
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial)
        {
            const auto x = random_element(a, rng);
            const int kappa = trial % a.block_count();
            const auto y = cond_expectation(s3, kappa, beta_block(s3, kappa, x));
            worst = std::max(worst, max_abs(y - x));
        }
        return std::pair{worst <= tol, ojson(worst)};
    }));

    out.push_back(run_check("haar.projection", [&] {
        const std::vector<MultiMatrixAlgebra> algs = {
            algebra({{2, {0.5, 0.5}}}, tol),
            algebra({{3, {1.0 / 3, 1.0 / 3, 1.0 / 3}}}, tol),
            algebra({{1, {0.2}}, {2, {0.4, 0.4}}}, tol),
        };
        double worst = 0.0;
        for (const auto& a : algs)
        {
            worst = std::max(worst, sweep_moments(aut_plus_data(a), 2).projection_deviation);
        }
        const auto m2 = aut_plus_data(algs[0]);
        const MomentIndex u{0, 0, 0, 0, 0, 0, false};
        const double third = std::abs(haar_second_moment(m2, u, u) - 1.0 / 3.0);
        return std::pair{worst <= tol && third <= tol, ojson{{"max_deviation", worst}, {"one_third", third}}};
    }));

    out.push_back(run_check("haar.sn_oracle", [&] {
        double worst = 0.0;
        for (int n = 2; n <= 4; ++n)
        {
            const Action sn = symmetric_permutation_action(n);
            const auto data = aut_plus_data(algebra_of(sn));
            for (int degree : {1, 2})
            {
                if (degree == 2 && !is_two_ergodic(sn))
                {
                    return std::pair{false, ojson("S_" + std::to_string(n) + " is not 2-ergodic")};
                }
                const auto s = sweep_moments(data, degree, &sn);
                worst = std::max({worst, s.projection_deviation, *s.brute_force_deviation});
            }
        }
        return std::pair{worst <= tol, ojson(worst)};
    }));

    out.push_back(run_check("ktheory.snf", [&] {
        std::uniform_int_distribution<int> dim(1, 6);
        std::uniform_int_distribution<int> entry(-20, 20);
        for (int trial = 0; trial < 50; ++trial)
        {
            IntMatrix m(dim(rng), dim(rng));
            for (int r = 0; r < m.rows(); ++r)
            {
                for (int c = 0; c < m.cols(); ++c)
                {
                    m(r, c) = entry(rng);
                }
            }
            smith_normal_form(m);
        }
        return std::pair{true, ojson(50)};
    }));

    out.push_back(run_check("ktheory.wreath_grid", [&] {
        bool ok = true;
        for (int s : {1, 2, 3, 5})
        {
            for (int n : {2, 3, 4})
            {
                const std::string h = "aut_plus:M" + std::to_string(n);
                const auto zs = wreath_k_groups_all_torsion(preset_k_data("z_s:" + std::to_string(s)), h);
                ok = ok && is_isomorphic(zs.k0, FgAbelianGroup::from_invariants(s, {BigInt(n)})) &&
                     is_isomorphic(zs.k1, FgAbelianGroup::free(1));
                const auto ft = wreath_k_groups_all_torsion(preset_k_data("free_dual:" + std::to_string(s)), h);
                ok = ok && is_isomorphic(ft.k0, FgAbelianGroup::from_invariants(1, {BigInt(n)})) &&
                     is_isomorphic(ft.k1, FgAbelianGroup::free(s + 1));
            }
        }
        return std::pair{ok, ojson(24)};
    }));

    out.push_back(run_check("repcat.conjugate", [&] {
        const std::vector<MultiMatrixAlgebra> algs = {
            algebra({{2, {0.5, 0.5}}}, tol),
            algebra({{2, {0.25, 0.75}}}, tol),
            algebra({{1, {0.2}}, {2, {0.4, 0.4}}}, tol),
        };
        const std::vector<std::vector<double>> qs = {{1.0}, {0.5, 2.0}, {1.0, 2.0, 3.0}};
        double worst = 0.0;
        for (const auto& a : algs)
        {
            const double delta = *delta_form_check(a);
            const auto u = conjugate_data_u(a);
            worst = std::max({worst, u.residuals.max(), u.q_residual, std::abs(u.dim_q - delta)});
            for (const auto& q : qs)
            {
                const auto v = make_rep(static_cast<int>(q.size()), q);
                const auto w = wreath_conjugate(v, a);
                double trq = 0.0;
                for (double x : q)
                {
                    trq += x;
                }
                worst = std::max({worst, w.residuals.max(), w.q_residual, std::abs(w.dim_q - trq * delta) / trq});
            }
        }
        return std::pair{worst <= tol, ojson(worst)};
    }));

    out.push_back(run_check("repcat.morphism", [&] {
        const auto z2 = FiniteGroup::cyclic(2);
        const auto irr = irreducible_reps(z2);
        const auto s3 = symmetric_permutation_action(3);
        const auto& sign = irr[1];
        const auto& triv = irr[0];
        std::vector<Matrix> src;
        for (int g = 0; g < z2.order(); ++g)
        {
            src.push_back(kron(sign.matrices[g], sign.matrices[g]));
        }
        const auto basis = commutant_basis(src, triv.matrices, tol);
        double worst = 0.0;
        for (const auto& s : basis)
        {
            worst = std::max(worst, wreath_morphism_check(s, sign, sign, triv, z2, s3).residual);
        }
        return std::pair{basis.size() == 1 && worst <= tol, ojson(worst)};
    }));

    std::sort(out.begin(), out.end(), [](const Check& x, const Check& y) { return x.name < y.name; });
    return out;
}

} // namespace qwreath
