#include "qwreath/ktheory.hpp"

#include <charconv>
#include <numeric>
#include <sstream>

#include "qwreath/linalg.hpp"

namespace qwreath
{

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : rows_(static_cast<int>(rows.size())), cols_(rows.size() ? static_cast<int>(rows.begin()->size()) : 0)
{
    for (const auto& r : rows)
    {
        if (static_cast<int>(r.size()) != cols_)
        {
            throw Error(Errc::ShapeMismatch, "ragged integer matrix");
        }
        for (long long x : r)
        {
            data_.emplace_back(x);
        }
    }
}

IntMatrix IntMatrix::identity(int n)
{
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
    {
        m(i, i) = 1;
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const
{
    if (cols_ != other.rows_)
    {
        throw Error(Errc::ShapeMismatch, "integer matrix product shapes differ");
    }
    IntMatrix out(rows_, other.cols_);
    for (int i = 0; i < rows_; ++i)
    {
        for (int k = 0; k < cols_; ++k)
        {
            const BigInt& a = (*this)(i, k);
            if (a == 0)
            {
                continue;
            }
            for (int j = 0; j < other.cols_; ++j)
            {
                out(i, j) += a * other(k, j);
            }
        }
    }
    return out;
}

void IntMatrix::append_row(const std::vector<BigInt>& row)
{
    if (static_cast<int>(row.size()) != cols_)
    {
        throw Error(Errc::ShapeMismatch, "row length " + std::to_string(row.size()) + " differs from " +
                                             std::to_string(cols_) + " generators");
    }
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

BigInt determinant(const IntMatrix& m)
{
    if (m.rows() != m.cols())
    {
        throw Error(Errc::ShapeMismatch, "determinant of a non-square matrix");
    }
    const int n = m.rows();
    if (n == 0)
    {
        return 1;
    }
    IntMatrix a = m;
    BigInt sign = 1;
    BigInt prev = 1;
    for (int k = 0; k < n - 1; ++k)
    {
        if (a(k, k) == 0)
        {
            int p = k + 1;
            while (p < n && a(p, k) == 0)
            {
                ++p;
            }
            if (p == n)
            {
                return 0;
            }
            for (int j = 0; j < n; ++j)
            {
                std::swap(a(k, j), a(p, j));
            }
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
        {
            for (int j = k + 1; j < n; ++j)
            {
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

SmithForm smith_normal_form(const IntMatrix& m)
{
    const int rows = m.rows();
    const int cols = m.cols();
    IntMatrix d = m;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);

    auto swap_rows = [&](int a, int b) {
        if (a == b)
        {
            return;
        }
        for (int j = 0; j < cols; ++j)
        {
            std::swap(d(a, j), d(b, j));
        }
        for (int j = 0; j < rows; ++j)
        {
            std::swap(u(a, j), u(b, j));
        }
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b)
        {
            return;
        }
        for (int i = 0; i < rows; ++i)
        {
            std::swap(d(i, a), d(i, b));
        }
        for (int i = 0; i < cols; ++i)
        {
            std::swap(v(i, a), v(i, b));
        }
    };
    // row dst += q * row src
    auto add_row = [&](int dst, int src, const BigInt& q) {
        for (int j = 0; j < cols; ++j)
        {
            d(dst, j) += q * d(src, j);
        }
        for (int j = 0; j < rows; ++j)
        {
            u(dst, j) += q * u(src, j);
        }
    };
    auto add_col = [&](int dst, int src, const BigInt& q) {
        for (int i = 0; i < rows; ++i)
        {
            d(i, dst) += q * d(i, src);
        }
        for (int i = 0; i < cols; ++i)
        {
            v(i, dst) += q * v(i, src);
        }
    };

    const int steps = std::min(rows, cols);
    for (int t = 0; t < steps; ++t)
    {
        int pi = -1;
        int pj = -1;
        for (int i = t; i < rows; ++i)
        {
            for (int j = t; j < cols; ++j)
            {
                if (d(i, j) != 0 && (pi < 0 || abs(d(i, j)) < abs(d(pi, pj))))
                {
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi < 0)
        {
            break;
        }
        swap_rows(t, pi);
        swap_cols(t, pj);

        for (;;)
        {
            // smallest nonzero of row t and column t becomes the pivot
            int bi = t;
            int bj = t;
            for (int i = t + 1; i < rows; ++i)
            {
                if (d(i, t) != 0 && abs(d(i, t)) < abs(d(bi, bj)))
                {
                    bi = i;
                    bj = t;
                }
            }
            for (int j = t + 1; j < cols; ++j)
            {
                if (d(t, j) != 0 && abs(d(t, j)) < abs(d(bi, bj)))
                {
                    bi = t;
                    bj = j;
                }
            }
            swap_rows(t, bi);
            swap_cols(t, bj);

            bool dirty = false;
            for (int i = t + 1; i < rows; ++i)
            {
                const BigInt q = d(i, t) / d(t, t);
                if (q != 0)
                {
                    add_row(i, t, -q);
                }
                dirty = dirty || d(i, t) != 0;
            }
            for (int j = t + 1; j < cols; ++j)
            {
                const BigInt q = d(t, j) / d(t, t);
                if (q != 0)
                {
                    add_col(j, t, -q);
                }
                dirty = dirty || d(t, j) != 0;
            }
            if (dirty)
            {
                continue;
            }
            int bad = -1;
            for (int i = t + 1; i < rows && bad < 0; ++i)
            {
                for (int j = t + 1; j < cols; ++j)
                {
                    if (d(i, j) % d(t, t) != 0)
                    {
                        bad = i;
                        break;
                    }
                }
            }
            if (bad < 0)
            {
                break;
            }
            add_row(t, bad, 1);
        }
        if (d(t, t) < 0)
        {
            for (int j = 0; j < cols; ++j)
            {
                d(t, j) = -d(t, j);
            }
            for (int j = 0; j < rows; ++j)
            {
                u(t, j) = -u(t, j);
            }
        }
    }

    SmithForm out{std::move(u), std::move(d), std::move(v), {}};
    for (int t = 0; t < steps; ++t)
    {
        out.diagonal.push_back(out.d(t, t));
    }

    if (out.u * m * out.v != out.d || abs(determinant(out.u)) != 1 || abs(determinant(out.v)) != 1)
    {
        throw Error(Errc::InconsistentResult, "Smith normal form postcondition failed");
    }
    for (std::size_t t = 1; t < out.diagonal.size(); ++t)
    {
        const BigInt& a = out.diagonal[t - 1];
        const BigInt& b = out.diagonal[t];
        if ((a == 0 && b != 0) || (a != 0 && b % a != 0))
        {
            throw Error(Errc::InconsistentResult, "Smith normal form divisibility chain broken");
        }
    }
    return out;
}

FgAbelianGroup::FgAbelianGroup(int generators, IntMatrix relations)
    : generators_(generators), relations_(std::move(relations))
{
    if (generators < 0)
    {
        throw Error(Errc::ShapeMismatch, "negative generator count");
    }
    if (relations_.rows() == 0)
    {
        relations_ = IntMatrix(0, generators);
    }
    if (relations_.cols() != generators)
    {
        throw Error(Errc::ShapeMismatch, "relation matrix needs one column per generator");
    }
    int rank = 0;
    if (relations_.rows() > 0 && generators > 0)
    {
        for (const auto& x : smith_normal_form(relations_).diagonal)
        {
            if (x != 0)
            {
                ++rank;
                if (x > 1)
                {
                    torsion_.push_back(x);
                }
            }
        }
    }
    free_rank_ = generators - rank;
}

FgAbelianGroup FgAbelianGroup::free(int rank)
{
    return FgAbelianGroup(rank, IntMatrix(0, rank));
}

FgAbelianGroup FgAbelianGroup::from_invariants(int rank, const std::vector<BigInt>& torsion)
{
    const int n = rank + static_cast<int>(torsion.size());
    IntMatrix rel(0, n);
    for (std::size_t i = 0; i < torsion.size(); ++i)
    {
        std::vector<BigInt> row(n);
        row[rank + i] = torsion[i];
        rel.append_row(row);
    }
    return FgAbelianGroup(n, std::move(rel));
}

std::string FgAbelianGroup::to_string() const
{
    std::vector<std::string> parts;
    if (free_rank_ == 1)
    {
        parts.emplace_back("Z");
    }
    else if (free_rank_ > 1)
    {
        parts.push_back("Z^" + std::to_string(free_rank_));
    }
    for (const auto& t : torsion_)
    {
        parts.push_back("Z_" + t.str());
    }
    if (parts.empty())
    {
        return "0";
    }
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
    {
        out += " + " + parts[i];
    }
    return out;
}

FgAbelianGroup direct_sum(const FgAbelianGroup& a, const FgAbelianGroup& b)
{
    const int na = a.generator_count();
    const int nb = b.generator_count();
    IntMatrix rel(0, na + nb);
    for (int r = 0; r < a.relations().rows(); ++r)
    {
        std::vector<BigInt> row(na + nb);
        for (int c = 0; c < na; ++c)
        {
            row[c] = a.relations()(r, c);
        }
        rel.append_row(row);
    }
    for (int r = 0; r < b.relations().rows(); ++r)
    {
        std::vector<BigInt> row(na + nb);
        for (int c = 0; c < nb; ++c)
        {
            row[na + c] = b.relations()(r, c);
        }
        rel.append_row(row);
    }
    return FgAbelianGroup(na + nb, std::move(rel));
}

FgAbelianGroup quotient_by(const FgAbelianGroup& g, const std::vector<MarkedClass>& classes)
{
    IntMatrix rel = g.relations();
    for (const auto& c : classes)
    {
        if (static_cast<int>(c.coords.size()) != g.generator_count())
        {
            throw Error(Errc::ShapeMismatch, "class " + c.label + " has " + std::to_string(c.coords.size()) +
                                                 " coordinates, group has " + std::to_string(g.generator_count()) +
                                                 " generators");
        }
        rel.append_row(c.coords);
    }
    return FgAbelianGroup(g.generator_count(), std::move(rel));
}

std::vector<BigInt> invariant_factors(const FgAbelianGroup& g)
{
    return g.torsion();
}

bool is_isomorphic(const FgAbelianGroup& a, const FgAbelianGroup& b)
{
    return a.free_rank() == b.free_rank() && a.torsion() == b.torsion();
}

const MarkedClass& KTheoryData::find(std::string_view label) const
{
    for (const auto& c : marked)
    {
        if (c.label == label)
        {
            return c;
        }
    }
    throw Error(Errc::MissingMarkedClass, name + " has no marked class " + std::string(label));
}

namespace
{

int parse_count(std::string_view text, std::string_view preset)
{
    int value = 0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (text.empty() || res.ec != std::errc() || res.ptr != end)
    {
        throw Error(Errc::UnknownPreset, "cannot read a number in preset " + std::string(preset));
    }
    return value;
}

MarkedClass unit_vector(std::string label, int n, int at)
{
    std::vector<BigInt> c(n);
    c[at] = 1;
    return {std::move(label), std::move(c)};
}

KTheoryData quantum_permutation(int n, std::string name)
{
    if (n < 4)
    {
        throw Error(Errc::UnknownPreset, name + ": quantum permutation data needs N >= 4");
    }
    const int m = n - 1;
    const int gens = m * m + 1;
    const int one = gens - 1;
    KTheoryData k{std::move(name), FgAbelianGroup::free(gens), FgAbelianGroup::free(1), {}, std::vector<int>(n, 1), {}, 0};
    k.marked.push_back(unit_vector("[1]", gens, one));

    // [u_ij] for i, j < N-1 are generators; the last row and column follow from Σ_j u_ij = 1
    auto u = [&](int i, int j) {
        std::vector<BigInt> c(gens);
        if (i < m && j < m)
        {
            c[i * m + j] = 1;
        }
        else if (i < m)
        {
            c[one] = 1;
            for (int q = 0; q < m; ++q)
            {
                c[i * m + q] -= 1;
            }
        }
        else if (j < m)
        {
            c[one] = 1;
            for (int p = 0; p < m; ++p)
            {
                c[p * m + j] -= 1;
            }
        }
        else
        {
            c[one] = 2 - n;
            for (int p = 0; p < m * m; ++p)
            {
                c[p] += 1;
            }
        }
        return c;
    };
    k.beta.assign(n, {});
    for (int i = 0; i < n; ++i)
    {
        for (int j = 0; j < n; ++j)
        {
            const std::string label = "[u_" + std::to_string(i + 1) + std::to_string(j + 1) + "]";
            k.marked.push_back({label, u(i, j)});
            k.beta[i].push_back({label, u(i, j)});
        }
    }
    return k;
}

KTheoryData matrix_automorphisms(int n, int torsion, std::string name)
{
    if (n < 2)
    {
        throw Error(Errc::UnknownPreset, name + ": needs N >= 2");
    }
    KTheoryData k{std::move(name), FgAbelianGroup::from_invariants(1, {BigInt(n)}), FgAbelianGroup::free(1), {}, {n}, {}, n};
    const int t = ((torsion % n) + n) % n;
    k.beta = {{{"[beta(e11)]", {BigInt(1), BigInt(t)}}}};
    return k;
}

} // namespace

KTheoryData preset_k_data(std::string_view name, int torsion)
{
    const std::string full(name);
    const auto colon = name.find(':');
    const std::string_view head = name.substr(0, colon);
    const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : name.substr(colon + 1);

    if (head == "trivial" && colon == std::string_view::npos)
    {
        KTheoryData k{full, FgAbelianGroup::free(1), FgAbelianGroup::free(0), {}, {1}, {}, 0};
        k.marked.push_back(unit_vector("[1]", 1, 0));
        k.beta = {{unit_vector("[1]", 1, 0)}};
        return k;
    }
    if (head == "z_s")
    {
        const int s = parse_count(arg, name);
        if (s < 1)
        {
            throw Error(Errc::UnknownPreset, full + ": s must be positive");
        }
        KTheoryData k{full, FgAbelianGroup::free(s), FgAbelianGroup::free(0), {}, {}, {}, 0};
        k.marked.push_back({"[1]", std::vector<BigInt>(s, BigInt(1))});
        for (int i = 0; i < s; ++i)
        {
            k.marked.push_back(unit_vector("[e_" + std::to_string(i + 1) + "]", s, i));
        }
        return k;
    }
    if (head == "free_dual")
    {
        const int t = parse_count(arg, name);
        if (t < 0)
        {
            throw Error(Errc::UnknownPreset, full + ": t must be non-negative");
        }
        KTheoryData k{full, FgAbelianGroup::free(1), FgAbelianGroup::free(t), {}, {}, {}, 0};
        k.marked.push_back(unit_vector("[1]", 1, 0));
        return k;
    }
    if (head == "s_n_plus")
    {
        return quantum_permutation(parse_count(arg, name), full);
    }
    if (head == "aut_plus" && !arg.empty())
    {
        if (arg.front() == 'M')
        {
            return matrix_automorphisms(parse_count(arg.substr(1), name), torsion, full);
        }
        if (arg.front() == 'C')
        {
            return quantum_permutation(parse_count(arg.substr(1), name), full);
        }
        std::vector<int> sizes;
        std::size_t pos = 0;
        while (pos <= arg.size())
        {
            const auto comma = arg.find(',', pos);
            const auto piece = arg.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
            sizes.push_back(parse_count(piece, name));
            if (sizes.back() < 1)
            {
                throw Error(Errc::UnknownPreset, full + ": block sizes must be positive");
            }
            if (comma == std::string_view::npos)
            {
                break;
            }
            pos = comma + 1;
        }
        int dim = 0;
        int d = 0;
        for (int s : sizes)
        {
            dim += s * s;
            d = std::gcd(d, s);
        }
        if (dim < 4)
        {
            throw Error(Errc::UnknownPreset, full + ": needs dim(B) >= 4");
        }
        const int kk = static_cast<int>(sizes.size());
        std::vector<BigInt> tors;
        if (d > 1)
        {
            tors.assign(2 * kk - 1, BigInt(d));
        }
        KTheoryData k{full, FgAbelianGroup::from_invariants(kk * kk - 2 * kk + 2, tors), FgAbelianGroup::free(1),
                      {}, sizes, {}, 0};
        return k;
    }
    throw Error(Errc::UnknownPreset, "unknown preset " + full);
}

std::string KGroups::summary() const
{
    return "K0 = " + k0.to_string() + ", K1 = " + k1.to_string();
}

BlockKGroups block_k_groups(const KTheoryData& g, const KTheoryData& h, int kappa, RelationSign sign)
{
    const int blocks = static_cast<int>(h.block_sizes.size());
    if (blocks == 0)
    {
        throw Error(Errc::MissingMarkedClass, h.name + " carries no action data");
    }
    if (kappa < 0 || kappa >= blocks)
    {
        throw Error(Errc::IndexOutOfRange, "block " + std::to_string(kappa) + " of " + h.name);
    }
    if (static_cast<int>(h.beta.size()) != blocks || static_cast<int>(h.beta[kappa].size()) != blocks)
    {
        throw Error(Errc::MissingMarkedClass, h.name + " has no classes [beta_k(e^g_11)]");
    }
    const MarkedClass& one = g.find("[1]");

    // K0(B ⊗ C(G)) = K0(C(G))^K by stability, then the H summand
    FgAbelianGroup k0;
    FgAbelianGroup k1;
    for (int c = 0; c < blocks; ++c)
    {
        k0 = direct_sum(k0, g.k0);
        k1 = direct_sum(k1, g.k1);
    }
    BlockKGroups out;
    out.h_offset_k0 = k0.generator_count();
    out.h_offset_k1 = k1.generator_count();
    k0 = direct_sum(k0, h.k0);
    k1 = direct_sum(k1, h.k1);

    const int ng = g.k0.generator_count();
    std::vector<MarkedClass> rel;
    for (int c = 0; c < blocks; ++c)
    {
        const MarkedClass& b = h.beta[kappa][c];
        if (static_cast<int>(b.coords.size()) != h.k0.generator_count())
        {
            throw Error(Errc::ShapeMismatch, "class " + b.label + " does not fit K0 of " + h.name);
        }
        std::vector<BigInt> coords(k0.generator_count());
        for (int x = 0; x < ng; ++x)
        {
            coords[c * ng + x] = one.coords[x];
        }
        for (int x = 0; x < h.k0.generator_count(); ++x)
        {
            coords[out.h_offset_k0 + x] = sign == RelationSign::Difference ? BigInt(-b.coords[x]) : b.coords[x];
        }
        rel.push_back({"[e11] - " + b.label, std::move(coords)});
    }
    out.groups = {quotient_by(k0, rel), k1};
    return out;
}

KGroups wreath_k_groups(const KTheoryData& g, const KTheoryData& h, RelationSign sign)
{
    const int blocks = static_cast<int>(h.block_sizes.size());
    if (blocks == 0)
    {
        throw Error(Errc::MissingMarkedClass, h.name + " carries no action data");
    }
    FgAbelianGroup k0;
    FgAbelianGroup k1;
    std::vector<int> h0;
    std::vector<int> h1;
    for (int kappa = 0; kappa < blocks; ++kappa)
    {
        const auto b = block_k_groups(g, h, kappa, sign);
        h0.push_back(k0.generator_count() + b.h_offset_k0);
        h1.push_back(k1.generator_count() + b.h_offset_k1);
        k0 = direct_sum(k0, b.groups.k0);
        k1 = direct_sum(k1, b.groups.k1);
    }

    // ι_κ(x) = ι_{κ-1}(x) for every generator x of K_i(C(H)); consecutive blocks suffice
    auto identify = [&](const FgAbelianGroup& sum, const std::vector<int>& offsets, int gens) {
        std::vector<MarkedClass> rel;
        for (int kappa = 1; kappa < blocks; ++kappa)
        {
            for (int x = 0; x < gens; ++x)
            {
                std::vector<BigInt> c(sum.generator_count());
                c[offsets[kappa] + x] = 1;
                c[offsets[kappa - 1] + x] = -1;
                rel.push_back({"iota", std::move(c)});
            }
        }
        return quotient_by(sum, rel);
    };
    return {identify(k0, h0, h.k0.generator_count()), identify(k1, h1, h.k1.generator_count())};
}

KGroups wreath_k_groups_all_torsion(const KTheoryData& g, std::string_view h_preset, RelationSign sign)
{
    const KTheoryData first = preset_k_data(h_preset, 0);
    KGroups out = wreath_k_groups(g, first, sign);
    for (int t = 1; t < first.unknown_torsion_modulus; ++t)
    {
        const KGroups other = wreath_k_groups(g, preset_k_data(h_preset, t), sign);
        if (!is_isomorphic(out.k0, other.k0) || !is_isomorphic(out.k1, other.k1))
        {
            throw Error(Errc::InconsistentResult, "output depends on the undetermined torsion coordinate (t = " +
                                                      std::to_string(t) + ")");
        }
    }
    return out;
}

} // namespace qwreath
