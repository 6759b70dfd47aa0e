#include "qwreath/descriptors.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace qwreath
{

using nlohmann::json;

namespace
{

using Rational = boost::multiprecision::cpp_rational;

[[noreturn]] void fail(const std::string& pointer, const std::string& what)
{
    throw Error(Errc::ParseError, (pointer.empty() ? std::string("/") : pointer) + ": " + what);
}

std::string child(const std::string& pointer, const std::string& key)
{
    return pointer + "/" + key;
}

std::string child(const std::string& pointer, std::size_t index)
{
    return pointer + "/" + std::to_string(index);
}

void expect_object(const json& j, const std::string& pointer, std::initializer_list<const char*> allowed,
                   std::initializer_list<const char*> required = {})
{
    if (!j.is_object())
    {
        fail(pointer, "expected an object");
    }
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items())
    {
        if (!ok.count(key))
        {
            fail(child(pointer, key), "unknown key \"" + key + "\"");
        }
    }
    for (const char* key : required)
    {
        if (!j.contains(key))
        {
            fail(pointer, std::string("missing key \"") + key + "\"");
        }
    }
}

const json& expect_array(const json& j, const std::string& pointer)
{
    if (!j.is_array())
    {
        fail(pointer, "expected an array");
    }
    return j;
}

long long expect_integer(const json& j, const std::string& pointer)
{
    if (!j.is_number_integer())
    {
        fail(pointer, "expected an integer");
    }
    return j.get<long long>();
}

double expect_number(const json& j, const std::string& pointer)
{
    if (!j.is_number())
    {
        fail(pointer, "expected a number");
    }
    return j.get<double>();
}

std::vector<int> int_list(const json& j, const std::string& pointer)
{
    std::vector<int> out;
    for (std::size_t i = 0; i < expect_array(j, pointer).size(); ++i)
    {
        out.push_back(static_cast<int>(expect_integer(j[i], child(pointer, i))));
    }
    return out;
}

BigInt big_integer(const json& j, const std::string& pointer)
{
    if (j.is_number_integer())
    {
        return BigInt(j.get<long long>());
    }
    if (j.is_string())
    {
        static const std::regex pattern(R"(^[+-]?\d+$)");
        const auto s = j.get<std::string>();
        if (std::regex_match(s, pattern))
        {
            return BigInt(s);
        }
    }
    fail(pointer, "expected an integer");
}

Rational parse_rational(const std::string& text, const std::string& pointer)
{
    static const std::regex fraction(R"(^\s*([+-]?\d+)\s*/\s*(\d+)\s*$)");
    static const std::regex decimal(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, fraction))
    {
        const BigInt den(m[2].str());
        if (den == 0)
        {
            fail(pointer, "zero denominator in \"" + text + "\"");
        }
        return Rational(BigInt(m[1].str()), den);
    }
    if (std::regex_match(text, m, decimal) && (m[2].length() + m[3].length()) > 0)
    {
        std::string digits = m[2].str() + m[3].str();
        digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
        Rational r{BigInt(digits)};
        long long exponent = m[4].matched ? std::stoll(m[4].str()) : 0;
        exponent -= static_cast<long long>(m[3].length());
        if (exponent > 400 || exponent < -400)
        {
            fail(pointer, "exponent out of range in \"" + text + "\"");
        }
        const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::llabs(exponent)));
        if (exponent >= 0)
        {
            r *= scale;
        }
        else
        {
            r /= scale;
        }
        if (m[1].str() == "-")
        {
            r = -r;
        }
        return r;
    }
    fail(pointer, "cannot read \"" + text + "\" as a number or p/q");
}

Complex parse_complex(const json& j, const std::string& pointer)
{
    if (j.is_number())
    {
        return j.get<double>();
    }
    if (j.is_array() && j.size() == 2)
    {
        return {expect_number(j[0], child(pointer, 0)), expect_number(j[1], child(pointer, 1))};
    }
    fail(pointer, "expected a number or [re, im]");
}

RepData parse_rep(const json& j, const FiniteGroup& g, double tolerance, const std::string& pointer)
{
    expect_object(j, pointer, {"irrep", "matrices", "q"});
    if (j.contains("irrep"))
    {
        if (j.contains("matrices"))
        {
            fail(pointer, "give either \"irrep\" or \"matrices\"");
        }
        if (!j["irrep"].is_string())
        {
            fail(child(pointer, "irrep"), "expected a label");
        }
        const auto label = j["irrep"].get<std::string>();
        for (auto& r : irreducible_reps(g))
        {
            if (r.label == label)
            {
                return r;
            }
        }
        fail(child(pointer, "irrep"), "no irreducible representation \"" + label + "\"");
    }
    if (!j.contains("matrices"))
    {
        fail(pointer, "missing key \"matrices\"");
    }
    const auto mp = child(pointer, "matrices");
    std::vector<Matrix> mats;
    for (std::size_t i = 0; i < expect_array(j["matrices"], mp).size(); ++i)
    {
        mats.push_back(parse_matrix(j["matrices"][i], child(mp, i)));
    }
    if (mats.empty())
    {
        fail(mp, "expected one matrix per group element");
    }
    std::vector<double> q;
    if (j.contains("q"))
    {
        const auto qp = child(pointer, "q");
        for (std::size_t i = 0; i < expect_array(j["q"], qp).size(); ++i)
        {
            q.push_back(parse_weight(j["q"][i], child(qp, i)));
        }
    }
    const int dim = static_cast<int>(mats.front().rows());
    try
    {
        return make_rep(dim, std::move(q), std::move(mats), &g, false, tolerance);
    }
    catch (const Error& e)
    {
        fail(pointer, e.what());
    }
}

FgAbelianGroup parse_fg_group(const json& j, const std::string& pointer)
{
    expect_object(j, pointer, {"free_rank", "torsion"});
    const long long r = j.contains("free_rank") ? expect_integer(j["free_rank"], child(pointer, "free_rank")) : 0;
    if (r < 0)
    {
        fail(child(pointer, "free_rank"), "must be non-negative");
    }
    std::vector<BigInt> tors;
    if (j.contains("torsion"))
    {
        const auto tp = child(pointer, "torsion");
        for (std::size_t i = 0; i < expect_array(j["torsion"], tp).size(); ++i)
        {
            tors.push_back(big_integer(j["torsion"][i], child(tp, i)));
            if (tors.back() < 1)
            {
                fail(child(tp, i), "torsion orders must be positive");
            }
        }
    }
    return FgAbelianGroup::from_invariants(static_cast<int>(r), tors);
}

MarkedClass parse_class(const json& j, int generators, const std::string& pointer)
{
    expect_object(j, pointer, {"label", "coords"}, {"label", "coords"});
    if (!j["label"].is_string())
    {
        fail(child(pointer, "label"), "expected a string");
    }
    MarkedClass c{j["label"].get<std::string>(), {}};
    const auto cp = child(pointer, "coords");
    for (std::size_t i = 0; i < expect_array(j["coords"], cp).size(); ++i)
    {
        c.coords.push_back(big_integer(j["coords"][i], child(cp, i)));
    }
    if (static_cast<int>(c.coords.size()) != generators)
    {
        fail(cp, "expected " + std::to_string(generators) + " coordinates");
    }
    return c;
}

} // namespace

json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw Error(Errc::ParseError, path + ": cannot open file");
    }
    try
    {
        return json::parse(in);
    }
    catch (const json::parse_error& e)
    {
        throw Error(Errc::ParseError, path + ": " + e.what());
    }
}

double parse_weight(const json& node, const std::string& pointer)
{
    double w = 0.0;
    if (node.is_number())
    {
        w = node.get<double>();
    }
    else if (node.is_string())
    {
        w = parse_rational(node.get<std::string>(), pointer).convert_to<double>();
    }
    else
    {
        fail(pointer, "expected a number, a decimal string or \"p/q\"");
    }
    if (!(w > 0.0))
    {
        fail(pointer, "weight must be positive");
    }
    return w;
}

MultiMatrixAlgebra parse_algebra(const json& j, std::optional<double> tolerance_override, const std::string& pointer)
{
    expect_object(j, pointer, {"blocks", "tolerance"}, {"blocks"});
    double tol = kDefaultTolerance;
    if (j.contains("tolerance"))
    {
        tol = expect_number(j["tolerance"], child(pointer, "tolerance"));
        if (!(tol > 0.0))
        {
            fail(child(pointer, "tolerance"), "must be positive");
        }
    }
    if (tolerance_override)
    {
        tol = *tolerance_override;
    }
    const auto bp = child(pointer, "blocks");
    std::vector<Block> blocks;
    Rational exact_sum = 0;
    bool exact = true;
    for (std::size_t k = 0; k < expect_array(j["blocks"], bp).size(); ++k)
    {
        const auto kp = child(bp, k);
        const json& b = j["blocks"][k];
        expect_object(b, kp, {"size", "weights"}, {"size", "weights"});
        const long long n = expect_integer(b["size"], child(kp, "size"));
        if (n < 1)
        {
            fail(child(kp, "size"), "block size must be at least 1");
        }
        const auto wp = child(kp, "weights");
        if (static_cast<long long>(expect_array(b["weights"], wp).size()) != n)
        {
            fail(wp, "expected " + std::to_string(n) + " weights");
        }
        Block blk{static_cast<int>(n), {}};
        for (std::size_t i = 0; i < b["weights"].size(); ++i)
        {
            const auto ip = child(wp, i);
            blk.weights.push_back(parse_weight(b["weights"][i], ip));
            if (b["weights"][i].is_string())
            {
                exact_sum += parse_rational(b["weights"][i].get<std::string>(), ip);
            }
            else
            {
                exact = false;
            }
        }
        blocks.push_back(std::move(blk));
    }
    if (blocks.empty())
    {
        fail(bp, "at least one block is required");
    }
    if (exact && exact_sum != 1)
    {
        std::ostringstream os;
        os << "weights sum to " << exact_sum << " exactly";
        throw Error(Errc::NotNormalized, os.str());
    }
    return MultiMatrixAlgebra::make(std::move(blocks), tol);
}

FiniteGroup parse_group(const json& j, const std::string& pointer)
{
    expect_object(j, pointer, {"table", "symmetric", "cyclic", "trivial"});
    if (j.size() != 1)
    {
        fail(pointer, "give exactly one of table, symmetric, cyclic, trivial");
    }
    try
    {
        if (j.contains("symmetric"))
        {
            return FiniteGroup::symmetric(static_cast<int>(expect_integer(j["symmetric"], child(pointer, "symmetric"))));
        }
        if (j.contains("cyclic"))
        {
            return FiniteGroup::cyclic(static_cast<int>(expect_integer(j["cyclic"], child(pointer, "cyclic"))));
        }
        if (j.contains("trivial"))
        {
            return FiniteGroup::trivial();
        }
        const auto tp = child(pointer, "table");
        std::vector<std::vector<int>> table;
        for (std::size_t r = 0; r < expect_array(j["table"], tp).size(); ++r)
        {
            table.push_back(int_list(j["table"][r], child(tp, r)));
        }
        return FiniteGroup::from_table(std::move(table));
    }
    catch (const Error& e)
    {
        if (e.code() == Errc::ParseError)
        {
            throw;
        }
        fail(pointer, e.what());
    }
}

Matrix parse_matrix(const json& j, const std::string& pointer)
{
    expect_array(j, pointer);
    if (j.empty())
    {
        fail(pointer, "empty matrix");
    }
    const std::size_t cols = expect_array(j[0], child(pointer, 0)).size();
    Matrix m(j.size(), cols);
    for (std::size_t r = 0; r < j.size(); ++r)
    {
        const auto rp = child(pointer, r);
        if (expect_array(j[r], rp).size() != cols)
        {
            fail(rp, "row length differs from the first row");
        }
        for (std::size_t c = 0; c < cols; ++c)
        {
            m(r, c) = parse_complex(j[r][c], child(rp, c));
        }
    }
    return m;
}

Action parse_action(const json& j, std::optional<double> tolerance_override, const std::string& pointer)
{
    expect_object(j, pointer, {"kind", "group", "algebra", "autos", "permutations", "grading", "basis"},
                  {"kind", "group", "algebra"});
    if (!j["kind"].is_string())
    {
        fail(child(pointer, "kind"), "expected \"classical\" or \"dual\"");
    }
    const auto kind = j["kind"].get<std::string>();
    auto group = parse_group(j["group"], child(pointer, "group"));
    auto algebra = parse_algebra(j["algebra"], tolerance_override, child(pointer, "algebra"));

    if (kind == "classical")
    {
        for (const char* k : {"grading", "basis"})
        {
            if (j.contains(k))
            {
                fail(child(pointer, k), "not allowed for classical actions");
            }
        }
        if (j.contains("autos") == j.contains("permutations"))
        {
            fail(pointer, "give exactly one of \"autos\" or \"permutations\"");
        }
        std::vector<Matrix> autos;
        if (j.contains("autos"))
        {
            const auto ap = child(pointer, "autos");
            for (std::size_t g = 0; g < expect_array(j["autos"], ap).size(); ++g)
            {
                autos.push_back(parse_matrix(j["autos"][g], child(ap, g)));
            }
        }
        else
        {
            const auto pp = child(pointer, "permutations");
            std::vector<std::vector<int>> images;
            for (std::size_t g = 0; g < expect_array(j["permutations"], pp).size(); ++g)
            {
                images.push_back(int_list(j["permutations"][g], child(pp, g)));
            }
            autos = block_permutation_autos(algebra, group, images);
        }
        return make_classical_action(std::move(algebra), std::move(group), std::move(autos));
    }
    if (kind == "dual")
    {
        for (const char* k : {"autos", "permutations"})
        {
            if (j.contains(k))
            {
                fail(child(pointer, k), "not allowed for dual actions");
            }
        }
        if (!j.contains("grading"))
        {
            fail(pointer, "missing key \"grading\"");
        }
        auto grading = int_list(j["grading"], child(pointer, "grading"));
        std::optional<Matrix> basis;
        if (j.contains("basis"))
        {
            basis = parse_matrix(j["basis"], child(pointer, "basis"));
        }
        return make_dual_action(std::move(algebra), std::move(group), std::move(grading), std::move(basis));
    }
    fail(child(pointer, "kind"), "expected \"classical\" or \"dual\"");
}

MorphismCase parse_morphism_case(const json& j, std::optional<double> tolerance_override)
{
    expect_object(j, "", {"group", "h", "v", "w", "t", "s"}, {"group", "h", "v", "w", "t"});
    auto g = parse_group(j["group"], "/group");
    Action h = parse_action(j["h"], tolerance_override, "/h");
    auto* ch = std::get_if<ClassicalAction>(&h);
    if (!ch)
    {
        fail("/h/kind", "the H-action must be classical");
    }
    const double tol = ch->algebra.tolerance();
    MorphismCase c{g, *ch, parse_rep(j["v"], g, tol, "/v"), parse_rep(j["w"], g, tol, "/w"),
                   parse_rep(j["t"], g, tol, "/t"), {}};
    if (j.contains("s"))
    {
        c.s.push_back(parse_matrix(j["s"], "/s"));
    }
    else
    {
        std::vector<Matrix> source;
        for (int x = 0; x < g.order(); ++x)
        {
            source.push_back(kron(c.v.matrices[x], c.w.matrices[x]));
        }
        c.s = commutant_basis(source, c.t.matrices, tol);
    }
    return c;
}

KTheoryData parse_k_data(const json& j, const std::string& name)
{
    expect_object(j, "", {"name", "k0", "group", "k1", "marked", "block_sizes", "beta"});
    if (j.contains("k0") == j.contains("group"))
    {
        fail("", "give exactly one of \"k0\" or \"group\"");
    }
    KTheoryData k;
    k.name = name;
    if (j.contains("name"))
    {
        if (!j["name"].is_string())
        {
            fail("/name", "expected a string");
        }
        k.name = j["name"].get<std::string>();
    }
    const std::string k0key = j.contains("k0") ? "k0" : "group";
    k.k0 = parse_fg_group(j[k0key], "/" + k0key);
    k.k1 = j.contains("k1") ? parse_fg_group(j["k1"], "/k1") : FgAbelianGroup::free(0);
    const int n = k.k0.generator_count();
    if (j.contains("marked"))
    {
        if (j["marked"].is_object())
        {
            k.marked.push_back(parse_class(j["marked"], n, "/marked"));
        }
        else
        {
            for (std::size_t i = 0; i < expect_array(j["marked"], "/marked").size(); ++i)
            {
                k.marked.push_back(parse_class(j["marked"][i], n, child("/marked", i)));
            }
        }
    }
    if (j.contains("block_sizes"))
    {
        k.block_sizes = int_list(j["block_sizes"], "/block_sizes");
    }
    if (j.contains("beta"))
    {
        for (std::size_t a = 0; a < expect_array(j["beta"], "/beta").size(); ++a)
        {
            const auto ap = child("/beta", a);
            std::vector<MarkedClass> row;
            for (std::size_t b = 0; b < expect_array(j["beta"][a], ap).size(); ++b)
            {
                row.push_back(parse_class(j["beta"][a][b], n, child(ap, b)));
            }
            k.beta.push_back(std::move(row));
        }
    }
    return k;
}

} // namespace qwreath
