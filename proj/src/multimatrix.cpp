#include "qwreath/multimatrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qwreath
{

MultiMatrixAlgebra MultiMatrixAlgebra::make(std::vector<Block> blocks, double tolerance)
{
    if (!(tolerance > 0.0))
    {
        throw Error(Errc::UsageError, "tolerance must be positive");
    }
    if (blocks.empty())
    {
        throw Error(Errc::ShapeMismatch, "an algebra needs at least one block");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < blocks.size(); ++k)
    {
        const auto& b = blocks[k];
        if (b.size < 1)
        {
            throw Error(Errc::ShapeMismatch, "block " + std::to_string(k) + " has size < 1");
        }
        if (static_cast<int>(b.weights.size()) != b.size)
        {
            throw Error(Errc::ShapeMismatch, "block " + std::to_string(k) + " needs " + std::to_string(b.size) + " weights");
        }
        for (std::size_t i = 0; i < b.weights.size(); ++i)
        {
            if (!(b.weights[i] > 0.0) || !std::isfinite(b.weights[i]))
            {
                std::ostringstream os;
                os << "weight " << i << " of block " << k << " is " << b.weights[i];
                throw Error(Errc::NonPositiveWeight, os.str());
            }
            total += b.weights[i];
        }
    }
    if (std::abs(total - 1.0) > tolerance)
    {
        std::ostringstream os;
        os.precision(17);
        os << "weights sum to " << total;
        throw Error(Errc::NotNormalized, os.str());
    }

    MultiMatrixAlgebra a;
    a.blocks_ = std::move(blocks);
    a.tolerance_ = tolerance;
    for (const auto& b : a.blocks_)
    {
        a.offsets_.push_back(a.dim_);
        a.dim_ += b.size * b.size;
    }
    return a;
}

MultiMatrixAlgebra MultiMatrixAlgebra::with_tolerance(double tolerance) const
{
    return make(blocks_, tolerance);
}

int MultiMatrixAlgebra::index(int k, int i, int j) const
{
    if (k < 0 || k >= block_count())
    {
        throw Error(Errc::IndexOutOfRange, "block index " + std::to_string(k));
    }
    const int n = blocks_[k].size;
    if (i < 0 || i >= n || j < 0 || j >= n)
    {
        throw Error(Errc::IndexOutOfRange,
                    "matrix index (" + std::to_string(i) + "," + std::to_string(j) + ") in block " + std::to_string(k));
    }
    return offsets_[k] + i * n + j;
}

MultiMatrixAlgebra::Coord MultiMatrixAlgebra::coord(int flat) const
{
    if (flat < 0 || flat >= dim_)
    {
        throw Error(Errc::IndexOutOfRange, "coordinate " + std::to_string(flat));
    }
    int k = block_count() - 1;
    while (offsets_[k] > flat)
    {
        --k;
    }
    const int n = blocks_[k].size;
    const int r = flat - offsets_[k];
    return {k, r / n, r % n};
}

double MultiMatrixAlgebra::trace_weights(int k) const
{
    double s = 0.0;
    for (double w : blocks_.at(k).weights)
    {
        s += w;
    }
    return s;
}

double MultiMatrixAlgebra::trace_inverse_weights(int k) const
{
    double s = 0.0;
    for (double w : blocks_.at(k).weights)
    {
        s += 1.0 / w;
    }
    return s;
}

AlgebraElement AlgebraElement::adjoint() const
{
    AlgebraElement out;
    for (const auto& b : blocks)
    {
        out.blocks.push_back(b.adjoint());
    }
    return out;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other)
{
    if (other.blocks.size() != blocks.size())
    {
        throw Error(Errc::ShapeMismatch, "block count differs");
    }
    for (std::size_t k = 0; k < blocks.size(); ++k)
    {
        blocks[k] += other.blocks[k];
    }
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other)
{
    if (other.blocks.size() != blocks.size())
    {
        throw Error(Errc::ShapeMismatch, "block count differs");
    }
    for (std::size_t k = 0; k < blocks.size(); ++k)
    {
        blocks[k] -= other.blocks[k];
    }
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex s)
{
    for (auto& b : blocks)
    {
        b *= s;
    }
    return *this;
}

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b)
{
    return a += b;
}

AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b)
{
    return a -= b;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b)
{
    if (a.blocks.size() != b.blocks.size())
    {
        throw Error(Errc::ShapeMismatch, "block count differs");
    }
    AlgebraElement out;
    for (std::size_t k = 0; k < a.blocks.size(); ++k)
    {
        out.blocks.push_back(a.blocks[k] * b.blocks[k]);
    }
    return out;
}

AlgebraElement operator*(Complex s, AlgebraElement a)
{
    return a *= s;
}

AlgebraElement zero_element(const MultiMatrixAlgebra& a)
{
    AlgebraElement x;
    for (const auto& b : a.blocks())
    {
        x.blocks.push_back(Matrix::Zero(b.size, b.size));
    }
    return x;
}

AlgebraElement unit_element(const MultiMatrixAlgebra& a)
{
    AlgebraElement x;
    for (const auto& b : a.blocks())
    {
        x.blocks.push_back(Matrix::Identity(b.size, b.size));
    }
    return x;
}

AlgebraElement matrix_unit(const MultiMatrixAlgebra& a, int k, int i, int j)
{
    a.index(k, i, j);
    AlgebraElement x = zero_element(a);
    x.blocks[k](i, j) = 1.0;
    return x;
}

AlgebraElement onb_element(const MultiMatrixAlgebra& a, int k, int i, int j)
{
    AlgebraElement x = matrix_unit(a, k, i, j);
    x.blocks[k](i, j) = 1.0 / std::sqrt(a.weight(k, j));
    return x;
}

void check_shape(const MultiMatrixAlgebra& a, const AlgebraElement& x)
{
    if (static_cast<int>(x.blocks.size()) != a.block_count())
    {
        throw Error(Errc::ShapeMismatch, "element has " + std::to_string(x.blocks.size()) + " blocks, algebra has " +
                                             std::to_string(a.block_count()));
    }
    for (int k = 0; k < a.block_count(); ++k)
    {
        const int n = a.block_size(k);
        if (x.blocks[k].rows() != n || x.blocks[k].cols() != n)
        {
            throw Error(Errc::ShapeMismatch, "block " + std::to_string(k) + " is not " + std::to_string(n) + "x" +
                                                 std::to_string(n));
        }
    }
}

double max_abs(const AlgebraElement& x)
{
    double m = 0.0;
    for (const auto& b : x.blocks)
    {
        m = std::max(m, max_abs(b));
    }
    return m;
}

Complex state(const MultiMatrixAlgebra& a, const AlgebraElement& x)
{
    check_shape(a, x);
    Complex s = 0.0;
    for (int k = 0; k < a.block_count(); ++k)
    {
        for (int i = 0; i < a.block_size(k); ++i)
        {
            s += a.weight(k, i) * x.blocks[k](i, i);
        }
    }
    return s;
}

Complex gns_inner(const MultiMatrixAlgebra& a, const AlgebraElement& x, const AlgebraElement& y)
{
    check_shape(a, x);
    check_shape(a, y);
    return state(a, x.adjoint() * y);
}

Vector to_coordinates(const MultiMatrixAlgebra& a, const AlgebraElement& x)
{
    check_shape(a, x);
    Vector c(a.dim());
    for (int k = 0; k < a.block_count(); ++k)
    {
        const int n = a.block_size(k);
        for (int i = 0; i < n; ++i)
        {
            for (int j = 0; j < n; ++j)
            {
                c(a.index(k, i, j)) = std::sqrt(a.weight(k, j)) * x.blocks[k](i, j);
            }
        }
    }
    return c;
}

AlgebraElement from_coordinates(const MultiMatrixAlgebra& a, const Eigen::Ref<const Vector>& c)
{
    if (c.size() != a.dim())
    {
        throw Error(Errc::ShapeMismatch, "coordinate vector has length " + std::to_string(c.size()));
    }
    AlgebraElement x = zero_element(a);
    for (int k = 0; k < a.block_count(); ++k)
    {
        const int n = a.block_size(k);
        for (int i = 0; i < n; ++i)
        {
            for (int j = 0; j < n; ++j)
            {
                x.blocks[k](i, j) = c(a.index(k, i, j)) / std::sqrt(a.weight(k, j));
            }
        }
    }
    return x;
}

Matrix star_matrix(const MultiMatrixAlgebra& a)
{
    Matrix p = Matrix::Zero(a.dim(), a.dim());
    for (int k = 0; k < a.block_count(); ++k)
    {
        const int n = a.block_size(k);
        for (int i = 0; i < n; ++i)
        {
            for (int j = 0; j < n; ++j)
            {
                // (b_ij)* = (λ_i/λ_j)^{1/2} b_ji
                p(a.index(k, j, i), a.index(k, i, j)) = std::sqrt(a.weight(k, i) / a.weight(k, j));
            }
        }
    }
    return p;
}

StructureTensors structure_tensors(const MultiMatrixAlgebra& a)
{
    const int d = a.dim();
    StructureTensors t;
    t.m = Matrix::Zero(d, d * d);
    t.eta = Vector::Zero(d);
    for (int k = 0; k < a.block_count(); ++k)
    {
        const int n = a.block_size(k);
        for (int i = 0; i < n; ++i)
        {
            t.eta(a.index(k, i, i)) = std::sqrt(a.weight(k, i));
            for (int p = 0; p < n; ++p)
            {
                const double f = 1.0 / std::sqrt(a.weight(k, p));
                for (int j = 0; j < n; ++j)
                {
                    t.m(a.index(k, i, j), a.index(k, i, p) * d + a.index(k, p, j)) = f;
                }
            }
        }
    }
    t.m_star = t.m.adjoint();
    return t;
}

Vector comultiplied_unit(const MultiMatrixAlgebra& a)
{
    const auto t = structure_tensors(a);
    return t.m_star * t.eta;
}

Matrix mm_star(const MultiMatrixAlgebra& a)
{
    const auto t = structure_tensors(a);
    return t.m * t.m_star;
}

std::optional<double> delta_form_check(const MultiMatrixAlgebra& a)
{
    const double d0 = a.trace_inverse_weights(0);
    for (int k = 1; k < a.block_count(); ++k)
    {
        if (!approx_equal(a.trace_inverse_weights(k), d0, a.tolerance()))
        {
            return std::nullopt;
        }
    }
    return d0;
}

std::vector<ErgodicSummand> ergodic_decomposition(const MultiMatrixAlgebra& a)
{
    std::vector<int> order(a.block_count());
    for (int k = 0; k < a.block_count(); ++k)
    {
        order[k] = k;
    }
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return a.trace_inverse_weights(x) < a.trace_inverse_weights(y);
    });

    std::vector<std::vector<int>> groups;
    for (int k : order)
    {
        if (!groups.empty() &&
            approx_equal(a.trace_inverse_weights(groups.back().front()), a.trace_inverse_weights(k), a.tolerance()))
        {
            groups.back().push_back(k);
        }
        else
        {
            groups.push_back({k});
        }
    }

    std::vector<ErgodicSummand> out;
    for (auto& g : groups)
    {
        std::sort(g.begin(), g.end());
        double mass = 0.0;
        double delta = 0.0;
        for (int k : g)
        {
            mass += a.trace_weights(k);
            delta += a.trace_inverse_weights(k);
        }
        delta /= static_cast<double>(g.size());
        std::vector<Block> sub;
        for (int k : g)
        {
            Block b = a.blocks()[k];
            for (auto& w : b.weights)
            {
                w /= mass;
            }
            sub.push_back(std::move(b));
        }
        out.push_back({g, MultiMatrixAlgebra::make(std::move(sub), a.tolerance()), delta, mass, mass * delta});
    }
    return out;
}

Matrix modular_operator(const MultiMatrixAlgebra& a)
{
    Matrix n = Matrix::Zero(a.dim(), a.dim());
    for (int f = 0; f < a.dim(); ++f)
    {
        const auto c = a.coord(f);
        n(f, f) = a.weight(c.block, c.i) / a.weight(c.block, c.j);
    }
    return n;
}

Matrix modular_group(const MultiMatrixAlgebra& a, double t)
{
    Matrix s = Matrix::Zero(a.dim(), a.dim());
    for (int f = 0; f < a.dim(); ++f)
    {
        const auto c = a.coord(f);
        const double ratio = a.weight(c.block, c.i) / a.weight(c.block, c.j);
        s(f, f) = std::exp(Complex(0.0, t * std::log(ratio)));
    }
    return s;
}

std::vector<double> inverse_state(const MultiMatrixAlgebra& a, int k)
{
    if (k < 0 || k >= a.block_count())
    {
        throw Error(Errc::IndexOutOfRange, "block index " + std::to_string(k));
    }
    std::vector<double> w;
    const double total = a.trace_inverse_weights(k);
    for (double x : a.blocks()[k].weights)
    {
        w.push_back((1.0 / x) / total);
    }
    return w;
}

} // namespace qwreath
