#include "qwreath/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qwreath/descriptors.hpp"
#include "qwreath/haar.hpp"

namespace qwreath
{

using ojson = nlohmann::ordered_json;

namespace
{

struct Options
{
    std::optional<double> tolerance;
    std::string format = "json";
    std::uint64_t seed = kDefaultSeed;
    bool timings = false;
};

struct Report
{
    std::string command;
    ojson body = ojson::object();
    std::vector<Check> checks;
    std::string summary;
    bool summary_only_table = false;

    void add(std::string name, bool ok, ojson value)
    {
        checks.push_back({std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(value)});
    }
    void info(std::string name, ojson value)
    {
        checks.push_back({std::move(name), CheckStatus::Pass, std::move(value)});
    }
    bool passed() const
    {
        for (const auto& c : checks)
        {
            if (c.status == CheckStatus::Fail)
            {
                return false;
            }
        }
        return true;
    }
};

const char* status_name(CheckStatus s)
{
    switch (s)
    {
    case CheckStatus::Pass:
        return "pass";
    case CheckStatus::Fail:
        return "fail";
    case CheckStatus::Skip:
        return "skip";
    }
    return "?";
}

bool is_input_error(Errc c)
{
    switch (c)
    {
    case Errc::ParseError:
    case Errc::UsageError:
    case Errc::NonPositiveWeight:
    case Errc::NotNormalized:
    case Errc::IndexOutOfRange:
    case Errc::ShapeMismatch:
    case Errc::InvalidGroup:
    case Errc::InvalidRepresentation:
    case Errc::UnknownPreset:
    case Errc::SizeCapExceeded:
        return true;
    default:
        return false;
    }
}

bool is_action_validation(Errc c)
{
    switch (c)
    {
    case Errc::NotHomomorphism:
    case Errc::NotAutomorphism:
    case Errc::NotStatePreserving:
    case Errc::GradingNotMultiplicative:
    case Errc::GradingNotInvolutive:
    case Errc::UnitNotTrivial:
    case Errc::StateSupportViolation:
        return true;
    default:
        return false;
    }
}

ojson big_to_json(const BigInt& x)
{
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    {
        return x.convert_to<long long>();
    }
    return x.str();
}

ojson group_json(const FgAbelianGroup& g)
{
    ojson t = ojson::array();
    for (const auto& d : g.torsion())
    {
        t.push_back(big_to_json(d));
    }
    return {{"free_rank", g.free_rank()}, {"torsion", t}, {"canonical", g.to_string()}};
}

ojson index_json(const MomentIndex& m)
{
    ojson j = {m.i, m.j, m.kappa, m.k, m.l, m.gamma};
    if (m.conjugate)
    {
        j.push_back("*");
    }
    return j;
}

ojson complex_json(Complex z)
{
    if (z.imag() == 0.0)
    {
        return z.real();
    }
    return {z.real(), z.imag()};
}

MomentIndex parse_index(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
    {
        parts.push_back(tok);
    }
    MomentIndex m;
    if (!parts.empty() && parts.back() == "*")
    {
        m.conjugate = true;
        parts.pop_back();
    }
    if (parts.size() != 6)
    {
        throw Error(Errc::UsageError, "--index expects i,j,kappa,k,l,gamma (optionally followed by ,*)");
    }
    int v[6];
    for (int x = 0; x < 6; ++x)
    {
        try
        {
            std::size_t used = 0;
            v[x] = std::stoi(parts[x], &used);
            if (used != parts[x].size())
            {
                throw std::invalid_argument(parts[x]);
            }
        }
        catch (const std::exception&)
        {
            throw Error(Errc::UsageError, "--index entry \"" + parts[x] + "\" is not an integer");
        }
    }
    m.i = v[0];
    m.j = v[1];
    m.kappa = v[2];
    m.k = v[3];
    m.l = v[4];
    m.gamma = v[5];
    return m;
}

void check_index(const MultiMatrixAlgebra& a, const MomentIndex& m)
{
    a.index(m.kappa, m.i, m.j);
    a.index(m.gamma, m.k, m.l);
}

double tolerance_of(const Options& o)
{
    return o.tolerance.value_or(kDefaultTolerance);
}

bool is_prime(int n)
{
    if (n < 2)
    {
        return false;
    }
    for (int d = 2; d * d <= n; ++d)
    {
        if (n % d == 0)
        {
            return false;
        }
    }
    return true;
}

// commands

Report algebra_check(const std::string& path, const Options& o)
{
    Report r;
    const auto a = parse_algebra(load_json(path), o.tolerance);
    const double tol = a.tolerance();
    const auto st = structure_tensors(a);
    const int n = a.dim();
    const Matrix id = Matrix::Identity(n, n);

    ojson blocks = ojson::array();
    for (const auto& b : a.blocks())
    {
        blocks.push_back({{"size", b.size}, {"weights", b.weights}});
    }
    r.body["dim"] = n;
    r.body["blocks"] = blocks;
    const auto delta = delta_form_check(a);
    r.body["delta"] = delta ? ojson(*delta) : ojson(nullptr);
    ojson dec = ojson::array();
    for (const auto& s : ergodic_decomposition(a))
    {
        dec.push_back({{"blocks", s.blocks},
                       {"delta", s.delta},
                       {"mass", s.mass},
                       {"renormalized_delta", s.renormalized_delta}});
    }
    r.body["ergodic_decomposition"] = dec;

    const Matrix p = star_matrix(a);
    const double star = max_abs(p * p.conjugate() - id);
    r.add("star_involution", star <= tol, star);
    const double unit = std::max(max_abs(st.m * kron(st.eta, id) - id), max_abs(st.m * kron(id, st.eta) - id));
    r.add("unit", unit <= tol, unit);
    if (n <= 12)
    {
        const double assoc = max_abs(st.m * kron(st.m, id) - st.m * kron(id, st.m));
        r.add("associativity", assoc <= tol, assoc);
    }
    else
    {
        r.checks.push_back({"associativity", CheckStatus::Skip, "dim > 12"});
    }
    const double norm = std::abs(state(a, unit_element(a)) - 1.0);
    r.add("normalized", norm <= tol, norm);
    if (delta)
    {
        const double res = max_abs(mm_star(a) - *delta * id);
        r.add("delta_form", res <= tol, res);
    }
    else
    {
        r.checks.push_back({"delta_form", CheckStatus::Skip, "not a delta-form"});
    }
    return r;
}

Report action_verify(const std::string& path, const Options& o)
{
    Report r;
    std::optional<Action> act;
    try
    {
        act = parse_action(load_json(path), o.tolerance);
    }
    catch (const Error& e)
    {
        if (!is_action_validation(e.code()))
        {
            throw;
        }
        r.body["error"] = errc_name(e.code());
        r.add("validation", false, e.what());
        r.summary = std::string("invalid action: ") + errc_name(e.code());
        return r;
    }
    const Action& action = *act;
    const auto& a = algebra_of(action);
    const double tol = a.tolerance();
    r.body["kind"] = std::holds_alternative<ClassicalAction>(action) ? "classical" : "dual";
    r.body["group_order"] = group_of(action).order();
    r.body["dim"] = a.dim();
    r.add("validation", true, "ok");

    const auto rel = verify_coefficient_relations(action);
    r.add("coefficient_relations", rel.max() <= tol,
          ojson{{"unitarity", rel.unitarity}, {"unit", rel.unit}, {"product", rel.product}, {"adjoint", rel.adjoint}});

    const bool ergodic = is_ergodic(action);
    r.body["ergodic"] = ergodic;
    r.body["two_ergodic"] = is_two_ergodic(action);
    r.body["faithful"] = is_faithful(action);
    if (ergodic)
    {
        const HaarOracle h(action);
        const double res = max_abs(h.field_haar(h.unitary()) - first_moment_projection(a));
        r.add("haar_of_u", res <= tol, res);
    }
    if (std::holds_alternative<DualAction>(action) && ergodic && is_prime(group_of(action).order()))
    {
        try
        {
            r.body["zp_class"] = zp_class_name(zp_dichotomy_check(action));
            r.add("zp_dichotomy", true, r.body["zp_class"]);
        }
        catch (const Error& e)
        {
            r.add("zp_dichotomy", false, e.what());
        }
    }
    return r;
}

Report haar_moments(const std::string& path, int degree, bool oracle, const std::vector<std::string>& index_args,
                    const Options& o)
{
    if (degree != 1 && degree != 2)
    {
        throw Error(Errc::UsageError, "--degree must be 1 or 2");
    }
    Report r;
    const auto j = load_json(path);
    std::optional<Action> action;
    std::optional<MultiMatrixAlgebra> alg;
    if (j.is_object() && j.contains("kind"))
    {
        action = parse_action(j, o.tolerance);
    }
    else
    {
        alg = parse_algebra(j, o.tolerance);
    }
    if (oracle && !action)
    {
        throw Error(Errc::UsageError, "--oracle needs an action file");
    }
    const auto& a = action ? algebra_of(*action) : *alg;
    const double tol = a.tolerance();
    const CategoricalData data = aut_plus_data(a);
    if (action)
    {
        if (degree == 1 && !is_ergodic(*action))
        {
            throw Error(Errc::NotErgodic, "first moments need an ergodic action");
        }
        if (degree == 2 && !is_two_ergodic(*action))
        {
            throw Error(Errc::NotTwoErgodic, "second moments need a 2-ergodic action");
        }
    }
    r.body["source"] = action ? "action" : "categorical";
    r.body["delta"] = data.delta;

    if (!index_args.empty())
    {
        if (static_cast<int>(index_args.size()) != degree)
        {
            throw Error(Errc::UsageError, "give one --index per degree");
        }
        std::vector<MomentIndex> w;
        ojson idx = ojson::array();
        for (const auto& s : index_args)
        {
            w.push_back(parse_index(s));
            check_index(a, w.back());
            idx.push_back(index_json(w.back()));
        }
        const double closed = degree == 1 ? haar_first_moment(data, w[0]) : haar_second_moment(data, w[0], w[1]);
        const Matrix p = degree == 1 ? first_moment_projection(a) : haar_projection(data);
        const Complex proj = projection_entry(a, p, w);
        std::optional<Complex> brute;
        if (oracle)
        {
            brute = brute_force_moment(*action, w);
        }
        r.body["moment"] = {{"degree", degree},
                            {"indices", idx},
                            {"closed_form", closed},
                            {"projection", complex_json(proj)},
                            {"brute_force", brute ? complex_json(*brute) : ojson(nullptr)}};
        const double dp = std::abs(proj - closed);
        r.add("projection", dp <= tol, dp);
        if (brute)
        {
            const double db = std::abs(*brute - closed);
            r.add("brute_force", db <= tol, db);
        }
        r.summary = "closed form " + ojson(closed).dump();
        return r;
    }

    const auto sweep = sweep_moments(data, degree, oracle ? &*action : nullptr);
    r.body["sweep"] = {{"degree", degree},
                       {"count", sweep.count},
                       {"max_deviation_projection", sweep.projection_deviation},
                       {"max_deviation_brute_force",
                        sweep.brute_force_deviation ? ojson(*sweep.brute_force_deviation) : ojson(nullptr)}};
    r.add("projection", sweep.projection_deviation <= tol, sweep.projection_deviation);
    if (sweep.brute_force_deviation)
    {
        r.add("brute_force", *sweep.brute_force_deviation <= tol, *sweep.brute_force_deviation);
    }
    return r;
}

ojson conjugate_json(const ConjugateData& c)
{
    ojson j = {{"residual_left", c.residuals.left},
               {"residual_right", c.residuals.right},
               {"dim_q", c.dim_q},
               {"dim_q_bar", c.dim_q_bar},
               {"q_residual", c.q_residual}};
    if (c.standardness)
    {
        j["standardness"] = *c.standardness;
    }
    return j;
}

Report rep_conjugate(const std::string& path, std::optional<int> repdim, const std::vector<std::string>& q_args,
                     const Options& o)
{
    Report r;
    const auto a = parse_algebra(load_json(path), o.tolerance);
    const double tol = a.tolerance();
    const auto delta = delta_form_check(a);
    r.body["delta"] = delta ? ojson(*delta) : ojson(nullptr);

    const auto u = conjugate_data_u(a);
    r.body["u"] = conjugate_json(u);
    r.add("u.conjugate_equations", u.residuals.max() <= tol, u.residuals.max());
    r.add("u.q_equals_modular_operator", u.q_residual <= tol, u.q_residual);
    if (delta)
    {
        const double dev = std::abs(u.dim_q - *delta);
        r.add("u.dim_q_equals_delta", dev <= tol * std::max(1.0, *delta), dev);
    }

    if (!repdim && q_args.empty())
    {
        return r;
    }
    std::vector<double> q;
    for (std::size_t x = 0; x < q_args.size(); ++x)
    {
        q.push_back(parse_weight(nlohmann::json(q_args[x]), "/q/" + std::to_string(x)));
    }
    const int d = repdim.value_or(static_cast<int>(q.size()));
    if (d < 1)
    {
        throw Error(Errc::UsageError, "--repdim must be positive");
    }
    if (q.empty())
    {
        q.assign(d, 1.0);
    }
    const auto v = make_rep(d, q, {}, nullptr, false, tol);
    const auto w = wreath_conjugate(v, a);
    double trq = 0.0;
    for (double x : v.q)
    {
        trq += x;
    }
    const double expected = trq * delta.value_or(0.0);
    ojson wj = conjugate_json(w);
    wj["repdim"] = d;
    wj["q"] = v.q;
    wj["expected_dim_q"] = expected;
    r.body["wreath"] = wj;
    r.add("wreath.conjugate_equations", w.residuals.max() <= tol, w.residuals.max());
    r.add("wreath.q_compatibility", w.q_residual <= tol, w.q_residual);
    const double dev = std::abs(w.dim_q - expected);
    r.add("wreath.dim_q", dev <= tol * std::max(1.0, expected), dev);
    return r;
}

Report rep_morphism_check(const std::string& path, const Options& o)
{
    Report r;
    const auto c = parse_morphism_case(load_json(path), o.tolerance);
    r.body["v"] = c.v.label;
    r.body["w"] = c.w.label;
    r.body["t"] = c.t.label;
    r.body["intertwiners"] = c.s.size();
    if (c.s.empty())
    {
        r.checks.push_back({"morphism", CheckStatus::Skip, "Mor(v⊗w, t) = 0"});
        r.summary = "no intertwiners to check";
        return r;
    }
    for (std::size_t x = 0; x < c.s.size(); ++x)
    {
        const std::string name = "morphism." + std::to_string(x);
        try
        {
            const auto rep = wreath_morphism_check(c.s[x], c.v, c.w, c.t, c.g, c.h);
            r.add(name, true,
                  {{"intertwiner_residual", rep.intertwiner_residual},
                   {"residual", rep.residual},
                   {"pairs_checked", rep.pairs_checked}});
        }
        catch (const Error& e)
        {
            if (e.code() != Errc::NotIntertwiner && e.code() != Errc::ResidualTooLarge)
            {
                throw;
            }
            r.add(name, false, e.what());
        }
    }
    return r;
}

KTheoryData k_data(const std::string& source, int torsion)
{
    if (source.size() > 5 && source.ends_with(".json"))
    {
        return parse_k_data(load_json(source), source);
    }
    return preset_k_data(source, torsion);
}

RelationSign parse_sign(const std::string& s)
{
    if (s == "difference" || s == "-")
    {
        return RelationSign::Difference;
    }
    if (s == "sum" || s == "+")
    {
        return RelationSign::Sum;
    }
    throw Error(Errc::UsageError, "--sign must be difference or sum");
}

void k_body(Report& r, const KGroups& k)
{
    r.body["k0"] = group_json(k.k0);
    r.body["k1"] = group_json(k.k1);
    r.summary = k.summary();
    r.summary_only_table = true;
}

Report ktheory_wreath(const std::string& g, const std::string& h, const std::string& sign,
                      std::optional<int> torsion)
{
    Report r;
    const auto s = parse_sign(sign);
    r.body["g"] = g;
    r.body["h"] = h;
    r.body["sign"] = sign;
    const auto gd = k_data(g, 0);
    const auto hd = k_data(h, torsion.value_or(0));
    KGroups k;
    if (hd.unknown_torsion_modulus > 0 && !torsion && !h.ends_with(".json"))
    {
        k = wreath_k_groups_all_torsion(gd, h, s);
        r.body["torsion"] = "all";
        r.info("torsion_invariance", hd.unknown_torsion_modulus);
    }
    else
    {
        k = wreath_k_groups(gd, hd, s);
        r.body["torsion"] = torsion ? ojson(*torsion) : ojson(nullptr);
    }
    k_body(r, k);
    r.info("exact_sequence", "ok");
    return r;
}

Report ktheory_block(const std::string& g, const std::string& h, const std::string& sign, std::optional<int> torsion,
                     int block)
{
    Report r;
    const auto s = parse_sign(sign);
    r.body["g"] = g;
    r.body["h"] = h;
    r.body["sign"] = sign;
    r.body["block"] = block;
    const auto gd = k_data(g, 0);
    const auto hd = k_data(h, torsion.value_or(0));
    if (block < 0 || block >= static_cast<int>(hd.block_sizes.size()))
    {
        throw Error(Errc::IndexOutOfRange, "block " + std::to_string(block) + " does not exist for " + hd.name);
    }
    const auto b = block_k_groups(gd, hd, block, s);
    k_body(r, b.groups);
    r.info("exact_sequence", "ok");
    return r;
}

Report selftest(const Options& o)
{
    Report r;
    r.checks = run_selftest(tolerance_of(o), o.seed);
    r.body["seed"] = o.seed;
    return r;
}

std::string value_text(const ojson& v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

void emit(const Report& r, const Options& o, double elapsed_ms, std::ostream& out)
{
    std::size_t passed = 0;
    for (const auto& c : r.checks)
    {
        passed += c.status != CheckStatus::Fail;
    }
    const std::string summary =
        r.summary.empty() ? std::to_string(passed) + "/" + std::to_string(r.checks.size()) + " checks passed" : r.summary;

    if (o.format == "table")
    {
        if (r.summary_only_table)
        {
            out << summary << "\n";
            return;
        }
        for (const auto& c : r.checks)
        {
            out << std::left << std::setw(36) << c.name << std::setw(6) << status_name(c.status) << value_text(c.value)
                << "\n";
        }
        out << summary << "\n";
        if (o.timings)
        {
            out << "total_ms " << elapsed_ms << "\n";
        }
        return;
    }

    ojson j;
    j["command"] = r.command;
    for (const auto& [k, v] : r.body.items())
    {
        j[k] = v;
    }
    ojson checks = ojson::array();
    for (const auto& c : r.checks)
    {
        checks.push_back({{"name", c.name}, {"status", status_name(c.status)}, {"value", c.value}});
    }
    j["checks"] = checks;
    j["status"] = r.passed() ? "pass" : "fail";
    j["summary"] = summary;
    if (o.timings)
    {
        j["timings"] = {{"total_ms", elapsed_ms}};
    }
    out << j.dump(2) << "\n";
}

std::optional<double> env_tolerance()
{
    const char* env = std::getenv("QWREATH_TOLERANCE");
    if (!env || !*env)
    {
        return std::nullopt;
    }
    try
    {
        std::size_t used = 0;
        const double t = std::stod(env, &used);
        if (used == std::string(env).size() && t > 0.0)
        {
            return t;
        }
    }
    catch (const std::exception&)
    {
    }
    throw Error(Errc::UsageError, std::string("QWREATH_TOLERANCE=\"") + env + "\" is not a positive number");
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Finite-dimensional computations for free wreath products of quantum groups", "qwreath"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    std::optional<double> tol_flag;
    app.add_option("--tolerance", tol_flag, "Numerical tolerance (default 1e-9, env QWREATH_TOLERANCE)");
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--seed", o.seed, "Seed for randomized checks");
    app.add_flag("--timings", o.timings, "Include wall-clock timings");

    std::string file;
    int degree = 2;
    bool oracle = false;
    std::vector<std::string> indices;
    std::optional<int> repdim;
    std::vector<std::string> q;
    std::string g, h, sign = "difference";
    std::optional<int> torsion;
    int block = 0;

    auto* algebra = app.add_subcommand("algebra", "Multimatrix algebra checks")->require_subcommand(1);
    auto* algebra_check_cmd = algebra->add_subcommand("check", "Validate an algebra descriptor");
    algebra_check_cmd->add_option("file", file, "Algebra JSON")->required();

    auto* action = app.add_subcommand("action", "Quantum group actions")->require_subcommand(1);
    auto* action_verify_cmd = action->add_subcommand("verify", "Validate an action descriptor");
    action_verify_cmd->add_option("file", file, "Action JSON")->required();

    auto* haar = app.add_subcommand("haar", "Haar moments")->require_subcommand(1);
    auto* moments = haar->add_subcommand("moments", "Closed-form moments against the projection and oracle");
    moments->add_option("file", file, "Action or algebra JSON")->required();
    moments->add_option("--degree", degree, "1 or 2");
    moments->add_flag("--oracle", oracle, "Compare with the exhaustive Haar average");
    moments->add_option("--index", indices, "i,j,kappa,k,l,gamma[,*]; one per degree")->take_all();

    auto* rep = app.add_subcommand("rep", "Representation category")->require_subcommand(1);
    auto* conj = rep->add_subcommand("conjugate", "Conjugate equations for u and a(v)");
    conj->add_option("file", file, "Algebra JSON")->required();
    conj->add_option("--repdim", repdim, "Dimension of v");
    conj->add_option("--q", q, "Diagonal of Q_v")->delimiter(',');
    auto* morph = rep->add_subcommand("morphism-check", "Quotient-model morphism identity");
    morph->add_option("file", file, "Case JSON")->required();

    auto* kt = app.add_subcommand("ktheory", "K-theory of free wreath products")->require_subcommand(1);
    auto* wreath = kt->add_subcommand("wreath", "K-groups of the free wreath product");
    auto* blk = kt->add_subcommand("block", "K-groups of one block algebra");
    for (auto* sc : {wreath, blk})
    {
        sc->set_help_flag("--help", "Print this help message and exit");
        sc->add_option("--g", g, "Preset or K-data JSON for G")->required();
        sc->add_option("--h", h, "Preset or K-data JSON for H")->required();
        sc->add_option("--sign", sign, "Relation sign: difference or sum");
        sc->add_option("--torsion", torsion, "Fix the undetermined torsion coordinate");
    }
    blk->add_option("--block", block, "Block index (0-based)")->required();

    auto* self = app.add_subcommand("selftest", "Run the built-in fixture grid");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e, err, err);
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    Report r;
    try
    {
        if (tol_flag)
        {
            if (!(*tol_flag > 0.0))
            {
                throw Error(Errc::UsageError, "--tolerance must be positive");
            }
            o.tolerance = tol_flag;
        }
        else
        {
            o.tolerance = env_tolerance();
        }

        if (algebra_check_cmd->parsed())
        {
            r = algebra_check(file, o);
            r.command = "algebra check";
        }
        else if (action_verify_cmd->parsed())
        {
            r = action_verify(file, o);
            r.command = "action verify";
        }
        else if (moments->parsed())
        {
            r = haar_moments(file, degree, oracle, indices, o);
            r.command = "haar moments";
        }
        else if (conj->parsed())
        {
            r = rep_conjugate(file, repdim, q, o);
            r.command = "rep conjugate";
        }
        else if (morph->parsed())
        {
            r = rep_morphism_check(file, o);
            r.command = "rep morphism-check";
        }
        else if (wreath->parsed())
        {
            r = ktheory_wreath(g, h, sign, torsion);
            r.command = "ktheory wreath";
        }
        else if (blk->parsed())
        {
            r = ktheory_block(g, h, sign, torsion, block);
            r.command = "ktheory block";
        }
        else if (self->parsed())
        {
            r = selftest(o);
            r.command = "selftest";
        }
    }
    catch (const Error& e)
    {
        const bool input = is_input_error(e.code());
        err << "error: " << e.what() << "\n";
        if (e.code() == Errc::UsageError)
        {
            err << app.help();
        }
        if (o.format == "json")
        {
            ojson j = {{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}};
            out << j.dump(2) << "\n";
        }
        return input ? 2 : 1;
    }

    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(r, o, ms, out);
    return r.passed() ? 0 : 1;
}

} // namespace qwreath
