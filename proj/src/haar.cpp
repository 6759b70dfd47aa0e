#include "qwreath/haar.hpp"

#include <cmath>
#include <sstream>

namespace qwreath
{

namespace
{

double require_delta(const MultiMatrixAlgebra& a)
{
    const auto d = delta_form_check(a);
    if (!d)
    {
        throw Error(Errc::NotDeltaForm, "the state is not a delta-form");
    }
    return *d;
}

void require_nondegenerate(const CategoricalData& data)
{
    if (data.delta <= 1.0 + kRankThresholdFactor * data.algebra.tolerance())
    {
        std::ostringstream os;
        os << "delta = " << data.delta << " is too close to 1";
        throw Error(Errc::DegenerateDelta, os.str());
    }
}

double lam(const MultiMatrixAlgebra& a, int k, int i)
{
    return a.weight(k, i);
}

} // namespace

CategoricalData aut_plus_data(const MultiMatrixAlgebra& a)
{
    return {a, require_delta(a)};
}

double haar_first_moment(const CategoricalData& data, const MomentIndex& idx)
{
    MomentIndex x = idx;
    const double f = resolve_conjugate(data.algebra, x);
    if (x.i != x.j || x.k != x.l)
    {
        return 0.0;
    }
    return f * std::sqrt(lam(data.algebra, x.kappa, x.i) * lam(data.algebra, x.gamma, x.k));
}

double haar_first_moment(const Action& action, const MomentIndex& idx)
{
    if (!is_ergodic(action))
    {
        throw Error(Errc::NotErgodic, "first moments need an ergodic action");
    }
    return haar_first_moment(aut_plus_data(algebra_of(action)), idx);
}

double haar_second_moment(const CategoricalData& data, const MomentIndex& first, const MomentIndex& second)
{
    require_nondegenerate(data);
    const auto& A = data.algebra;
    MomentIndex a = first;
    MomentIndex b = second;
    const double f = resolve_conjugate(A, a) * resolve_conjugate(A, b);

    // a = (i,j,α ; k,l,γ), b = (r,s,κ ; v,w,ζ)
    const int i = a.i, j = a.j, al = a.kappa, k = a.k, l = a.l, ga = a.gamma;
    const int r = b.i, s = b.j, ka = b.kappa, v = b.k, w = b.l, ze = b.gamma;
    const double d = data.delta;
    auto L = [&](int blk, int x) { return lam(A, blk, x); };

    double t = 0.0;
    if (i == j && k == l && r == s && v == w)
    {
        t += d / (d - 1.0) * std::sqrt(L(al, i) * L(ga, k) * L(ka, r) * L(ze, v));
    }
    if (al == ka && j == r && i == s && ga == ze && k == w && l == v)
    {
        t += std::sqrt(L(al, i) * L(ga, k) / (L(al, j) * L(ga, l))) / (d - 1.0);
    }
    if (i == j && r == s && ga == ze && k == w && l == v)
    {
        t -= std::sqrt(L(al, i) * L(ka, r) * L(ga, k) / L(ga, l)) / (d - 1.0);
    }
    if (al == ka && i == s && j == r && k == l && v == w)
    {
        t -= std::sqrt(L(al, i) * L(ga, k) * L(ze, v) / L(al, j)) / (d - 1.0);
    }
    return f * t;
}

double haar_second_moment(const Action& action, const MomentIndex& a, const MomentIndex& b)
{
    const CategoricalData data = aut_plus_data(algebra_of(action));
    require_nondegenerate(data);
    if (!is_two_ergodic(action))
    {
        throw Error(Errc::NotTwoErgodic, "second moments need a 2-ergodic action");
    }
    return haar_second_moment(data, a, b);
}

Matrix first_moment_projection(const MultiMatrixAlgebra& a)
{
    const auto st = structure_tensors(a);
    return st.eta * st.eta.adjoint();
}

Matrix haar_projection(const CategoricalData& data)
{
    require_nondegenerate(data);
    const auto st = structure_tensors(data.algebra);
    const Vector ee = kron(st.eta, st.eta);
    const Vector diff = st.m_star * st.eta - ee;
    return ee * ee.adjoint() + diff * diff.adjoint() / (data.delta - 1.0);
}

Matrix haar_projection(const Action& action)
{
    const CategoricalData data = aut_plus_data(algebra_of(action));
    require_nondegenerate(data);
    if (!is_two_ergodic(action))
    {
        throw Error(Errc::NotTwoErgodic, "the projection formula needs a 2-ergodic action");
    }
    return haar_projection(data);
}

Complex projection_entry(const MultiMatrixAlgebra& a, const Matrix& p, std::span<const MomentIndex> word)
{
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    double f = 1.0;
    for (const auto& idx : word)
    {
        MomentIndex x = idx;
        f *= resolve_conjugate(a, x);
        row = row * a.dim() + moment_row(a, x);
        col = col * a.dim() + moment_col(a, x);
    }
    if (row >= p.rows() || col >= p.cols())
    {
        throw Error(Errc::ShapeMismatch, "word length does not match the projection size");
    }
    return f * p(row, col);
}

Complex brute_force_moment(const Action& action, std::span<const MomentIndex> word)
{
    if (word.size() > kMaxBruteForceWord)
    {
        throw Error(Errc::UsageError, "brute-force words are limited to length 4");
    }
    const HaarOracle h(action);
    return h.haar(h.word(word));
}

std::vector<Matrix> polynomial_field(const Action& action, int kappa, const CoefficientPolynomial& x)
{
    const auto& a = algebra_of(action);
    const int n = a.block_size(kappa);
    const HaarOracle h(action);
    auto check = [&](const Matrix& m) {
        if (m.rows() != n || m.cols() != n)
        {
            throw Error(Errc::ShapeMismatch, "coefficient matrices must be " + std::to_string(n) + "x" + std::to_string(n));
        }
    };
    check(x.constant);
    std::vector<Matrix> field(h.size(), Matrix::Zero(n, n));
    const Vector one = h.unit();
    for (int g = 0; g < h.size(); ++g)
    {
        field[g] += one(g) * x.constant;
    }
    for (const auto& [m, w] : x.terms)
    {
        check(m);
        const Vector c = h.word(w);
        for (int g = 0; g < h.size(); ++g)
        {
            field[g] += c(g) * m;
        }
    }
    return field;
}

std::vector<Matrix> beta_block(const Action& action, int kappa, const AlgebraElement& x)
{
    const auto& a = algebra_of(action);
    const Vector c = to_coordinates(a, x);
    const HaarOracle h(action);
    const int n = a.block_size(kappa);
    std::vector<Matrix> field;
    for (int g = 0; g < h.size(); ++g)
    {
        const Vector img = h.unitary()[g] * c;
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
        {
            for (int j = 0; j < n; ++j)
            {
                m(i, j) = img(a.index(kappa, i, j)) / std::sqrt(a.weight(kappa, j));
            }
        }
        field.push_back(std::move(m));
    }
    return field;
}

AlgebraElement cond_expectation(const Action& action, int kappa, const std::vector<Matrix>& field)
{
    const auto& a = algebra_of(action);
    a.index(kappa, 0, 0);
    const double delta = require_delta(a);
    if (!is_ergodic(action))
    {
        throw Error(Errc::NotErgodic, "conditional expectations need an ergodic action");
    }
    const HaarOracle h(action);
    const int n = a.block_size(kappa);
    if (static_cast<int>(field.size()) != h.size())
    {
        throw Error(Errc::UnsupportedElement, "element must have one component per group element");
    }
    for (const auto& m : field)
    {
        if (m.rows() != n || m.cols() != n)
        {
            throw Error(Errc::UnsupportedElement, "components must be " + std::to_string(n) + "x" + std::to_string(n));
        }
    }

    Vector out = Vector::Zero(a.dim());
    Vector coef(h.size());
    for (int r = 0; r < n; ++r)
    {
        for (int s = 0; s < n; ++s)
        {
            for (int g = 0; g < h.size(); ++g)
            {
                coef(g) = field[g](r, s);
            }
            if (coef.isZero(0.0))
            {
                continue;
            }
            // e_rs = λ_s^{1/2} b_rs
            const double ls = a.weight(kappa, s);
            const double scale = std::sqrt(ls) / (delta * ls * ls);
            const int row = a.index(kappa, r, s);
            for (int col = 0; col < a.dim(); ++col)
            {
                out(col) += scale * h.haar(h.multiply(h.adjoint(h.coefficient(row, col)), coef));
            }
        }
    }
    return from_coordinates(a, out);
}

AlgebraElement cond_expectation(const Action& action, int kappa, const CoefficientPolynomial& x)
{
    return cond_expectation(action, kappa, polynomial_field(action, kappa, x));
}

AlgebraElement cond_expectation(const CategoricalData& data, int kappa, const CoefficientPolynomial& x)
{
    const auto& a = data.algebra;
    a.index(kappa, 0, 0);
    const int n = a.block_size(kappa);
    for (const auto& [m, w] : x.terms)
    {
        if (w.size() > 1)
        {
            throw Error(Errc::UnsupportedElement, "only coefficients of degree at most one are supported");
        }
        if (m.rows() != n || m.cols() != n)
        {
            throw Error(Errc::ShapeMismatch, "coefficient matrices must be " + std::to_string(n) + "x" + std::to_string(n));
        }
    }
    if (x.constant.rows() != n || x.constant.cols() != n)
    {
        throw Error(Errc::ShapeMismatch, "constant must be " + std::to_string(n) + "x" + std::to_string(n));
    }

    Vector out = Vector::Zero(a.dim());
    for (int r = 0; r < n; ++r)
    {
        for (int s = 0; s < n; ++s)
        {
            const double ls = a.weight(kappa, s);
            const double scale = std::sqrt(ls) / (data.delta * ls * ls);
            for (int col = 0; col < a.dim(); ++col)
            {
                const auto c = a.coord(col);
                const MomentIndex adj{r, s, kappa, c.i, c.j, c.block, true};
                Complex hv = x.constant(r, s) * haar_first_moment(data, adj);
                for (const auto& [m, w] : x.terms)
                {
                    if (m(r, s) == 0.0)
                    {
                        continue;
                    }
                    hv += m(r, s) * (w.empty() ? haar_first_moment(data, adj) : haar_second_moment(data, adj, w.front()));
                }
                out(col) += scale * hv;
            }
        }
    }
    return from_coordinates(a, out);
}

MomentSweep sweep_moments(const CategoricalData& data, int degree, const Action* oracle)
{
    if (degree != 1 && degree != 2)
    {
        throw Error(Errc::UsageError, "moment degree must be 1 or 2");
    }
    const auto& a = data.algebra;
    const int n = a.dim();
    const Matrix p = degree == 1 ? first_moment_projection(a) : haar_projection(data);
    std::optional<HaarOracle> h;
    if (oracle)
    {
        h.emplace(*oracle);
    }
    auto index = [&](int row, int col) {
        const auto r = a.coord(row);
        const auto c = a.coord(col);
        return MomentIndex{r.i, r.j, r.block, c.i, c.j, c.block, false};
    };

    MomentSweep out;
    out.degree = degree;
    if (h)
    {
        out.brute_force_deviation = 0.0;
    }
    const long long words = degree == 1 ? 1LL * n * n : 1LL * n * n * n * n;
    std::vector<MomentIndex> w(degree);
    for (long long x = 0; x < words; ++x)
    {
        long long rest = x;
        for (int d = degree - 1; d >= 0; --d)
        {
            const int col = static_cast<int>(rest % n);
            rest /= n;
            const int row = static_cast<int>(rest % n);
            rest /= n;
            w[d] = index(row, col);
        }
        const double closed = degree == 1 ? haar_first_moment(data, w[0]) : haar_second_moment(data, w[0], w[1]);
        out.projection_deviation = std::max(out.projection_deviation, std::abs(projection_entry(a, p, w) - closed));
        if (h)
        {
            const double dev = std::abs(h->haar(h->word(w)) - closed);
            out.brute_force_deviation = std::max(*out.brute_force_deviation, dev);
        }
        ++out.count;
    }
    return out;
}

} // namespace qwreath
