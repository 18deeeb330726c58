// Command-line front end: one verb per stage of the pipeline.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mahler/mahler.hpp"

namespace {

using namespace mahler;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct CommonOptions {
    long long ell = 2;
    std::string op_text;
    std::string op_file;
    std::string exponents_text;
    long long height = 0;
    bool json = false;
    bool trace = false;
    std::size_t budget = kDefaultElementBudget;
};

void add_operator_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--ell", opts.ell, "Mahler exponent ell (>= 2)")->capture_default_str();
    auto* op = cmd->add_option("--op", opts.op_text, "operator expression in z and M");
    auto* file = cmd->add_option("--op-file", opts.op_file, "operator JSON file");
    op->excludes(file);
}

void add_exponent_options(CLI::App* cmd, CommonOptions& opts) {
    auto* exp = cmd->add_option("--exponents", opts.exponents_text,
                                "comma-separated rational exponents e1,e2,...");
    auto* height = cmd->add_option("--height", opts.height,
                                   "use all rationals of naive height <= N as exponents");
    exp->excludes(height);
}

MahlerOperator<Rational> load_operator(const CommonOptions& opts) {
    if (!opts.op_file.empty()) {
        std::ifstream in(opts.op_file);
        if (!in) throw std::runtime_error("cannot open operator file " + opts.op_file);
        OrderedJson j;
        in >> j;
        return operator_from_json(j);
    }
    if (opts.op_text.empty())
        throw std::runtime_error("an operator is required: pass --op or --op-file");
    return parse_operator({Int(opts.ell), opts.op_text});
}

std::vector<Rational> parse_exponent_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const auto begin = item.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        const auto end = item.find_last_not_of(" \t");
        const auto value = parse_rational(item.substr(begin, end - begin + 1));
        if (!value) throw std::runtime_error("bad rational '" + item + "' in --exponents");
        out.push_back(*value);
    }
    return out;
}

SortedRationalSet load_exponents(const CommonOptions& opts, bool required) {
    if (!opts.exponents_text.empty())
        return SortedRationalSet(parse_exponent_list(opts.exponents_text));
    if (opts.height > 0) return naive_height_set(opts.height);
    if (required) throw std::runtime_error("an exponent set is required: pass --exponents or --height");
    return SortedRationalSet{};
}

FiniteHahnSeries<Rational> load_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open series file " + path);
    OrderedJson j;
    in >> j;
    return series_from_json(j);
}

void emit(const OrderedJson& j, bool as_json, const std::string& text) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

OrderedJson theta_json(const EpsilonContext& ctx) {
    OrderedJson theta;
    for (const auto& [k, t] : ctx.theta) theta[std::to_string(k)] = to_string(t);
    return theta;
}

int run_info(const CommonOptions& opts) {
    const auto op = load_operator(opts);
    const auto nd = build_polygon(op);
    OrderedJson j;
    j["ell"] = static_cast<long long>(nd.ell);
    j["order"] = nd.n;
    OrderedJson points = OrderedJson::array();
    for (const auto& p : nd.points) points.push_back({static_cast<long long>(p.scale), p.ordinate});
    j["points"] = std::move(points);
    OrderedJson vertices = OrderedJson::array();
    for (std::size_t k = 0; k < nd.alpha.size(); ++k)
        vertices.push_back({static_cast<long long>(nd.vertex_scales[k]), nd.beta[k]});
    j["vertices"] = std::move(vertices);
    OrderedJson slopes = OrderedJson::array();
    for (const auto& mu : nd.slopes) slopes.push_back(to_string(mu));
    j["slopes"] = std::move(slopes);
    j["d"] = static_cast<long long>(nd.d);

    std::ostringstream text;
    text << "operator: " << print_operator(op) << "\n";
    text << "ell = " << nd.ell << ", order n = " << nd.n << "\n";
    text << "vertices:";
    for (std::size_t k = 0; k < nd.alpha.size(); ++k)
        text << " (" << nd.vertex_scales[k] << "," << nd.beta[k] << ")";
    text << "\nslopes:";
    for (const auto& mu : nd.slopes) text << " " << to_string(mu);
    text << "\ncommon denominator d = " << nd.d << "\n";
    emit(j, opts.json, text.str());
    return kExitOk;
}

int run_membership(const CommonOptions& opts) {
    const auto op = load_operator(opts);
    const auto nd = build_polygon(op);
    const auto values = load_exponents(opts, true);
    const MembershipOracle oracle(nd, opts.budget);

    OrderedJson results = OrderedJson::array();
    std::ostringstream text;
    for (const auto& v : values) {
        OrderedJson entry;
        entry["v"] = to_string(v);
        const bool inside = oracle.contains(v);
        entry["in_V"] = inside;
        const auto iota = oracle.iota(v);
        if (iota)
            entry["iota"] = *iota;
        else
            entry["iota"] = nullptr;
        results.push_back(std::move(entry));
        text << to_string(v) << (inside ? " is in V" : " is not in V");
        if (iota) text << " (iota = " << *iota << ")";
        text << "\n";
    }
    emit(results.size() == 1 ? results[0] : results, opts.json, text.str());
    return kExitOk;
}

EpsilonContext make_cli_context(const NewtonData& nd, const CommonOptions& opts) {
    EpsilonContext ctx;
    ctx.newton = &nd;
    if (opts.trace) ctx.trace = &std::cerr;
    for (int k = nd.kappa(); k >= 1; --k) ctx.theta.emplace(k, epsilon_lb_param(ctx, k, -nd.mu(k)));
    return ctx;
}

int run_epsilon(const CommonOptions& opts) {
    const auto op = load_operator(opts);
    const auto nd = build_polygon(op);
    const auto values = load_exponents(opts, true);
    if (values.size() != 1)
        throw std::runtime_error("epsilon expects exactly one exponent in --exponents");
    const Rational v = values.min();
    EpsilonContext ctx = make_cli_context(nd, opts);
    const Rational bound = epsilon_lb_param(ctx, 0, v);
    OrderedJson j;
    j["value"] = to_string(bound);
    j["theta"] = theta_json(ctx);
    std::ostringstream text;
    text << "epsilon lower bound at " << to_string(v) << ": " << to_string(bound) << "\n";
    emit(j, opts.json, text.str());
    return kExitOk;
}

int run_tau(const CommonOptions& opts) {
    const auto op = load_operator(opts);
    const auto nd = build_polygon(op);
    const EpsilonContext ctx = make_cli_context(nd, opts);
    const Rational tau = tau_lower_bound_from(ctx);
    OrderedJson j;
    j["value"] = to_string(tau);
    j["theta"] = theta_json(ctx);
    std::ostringstream text;
    text << "tau lower bound: " << to_string(tau) << "\n";
    emit(j, opts.json, text.str());
    return kExitOk;
}

OrderedJson rset_json(const RsetRun& run) {
    OrderedJson j;
    j["R"] = rational_set_to_json(run.final);
    j["levels"] = run.levels.size();
    j["M"] = run.receptacle_depth;
    j["H"] = run.height_h;
    j["N"] = to_string(run.bound_n);
    j["tau_lb"] = to_string(run.tau_lb);
    return j;
}

int run_rset(const CommonOptions& opts) {
    const auto op = load_operator(opts);
    const auto nd = build_polygon(op);
    const auto run = compute_rset(nd, load_exponents(opts, true), opts.budget);
    std::ostringstream text;
    text << "R has " << run.final.size() << " elements (levels " << run.levels.size()
         << ", M = " << run.receptacle_depth << ", H = " << run.height_h
         << ", N = " << to_string(run.bound_n) << ", tau_lb = " << to_string(run.tau_lb) << "):\n";
    for (const auto& r : run.final) text << "  " << to_string(r) << "\n";
    emit(rset_json(run), opts.json, text.str());
    return kExitOk;
}

int run_solve(const CommonOptions& opts) {
    const auto op = load_operator(opts);
    const auto exponents = load_exponents(opts, true);
    const auto result = solve_truncations(op, exponents, opts.budget);
    OrderedJson j;
    j["dimension"] = result.dimension();
    j["restricted_rank"] = result.restricted_rank();
    j["R"] = rational_set_to_json(result.rset.final);
    OrderedJson basis = OrderedJson::array();
    for (const auto& f : result.basis_full) basis.push_back(series_to_json(f));
    j["basis"] = std::move(basis);
    OrderedJson restricted = OrderedJson::array();
    for (const auto& f : result.basis_restricted) restricted.push_back(series_to_json(f));
    j["restricted_basis"] = std::move(restricted);

    std::ostringstream text;
    text << "solution space dimension: " << result.dimension()
         << " (restricted family rank: " << result.restricted_rank() << ")\n";
    for (std::size_t i = 0; i < result.dimension(); ++i)
        text << "basis[" << i << "] restricted to E: " << print_series(result.basis_restricted[i])
             << "\n";
    emit(j, opts.json, text.str());
    return kExitOk;
}

int run_verify(const CommonOptions& opts, const std::string& series_path) {
    const auto op = load_operator(opts);
    const auto series = load_series(series_path);
    auto exponents = load_exponents(opts, false);
    if (exponents.empty()) exponents = series.support();

    const auto nd = build_polygon(op);
    const auto run = compute_rset(nd, exponents, opts.budget);
    std::vector<Rational> coupled_elems;
    for (const auto& r : run.final) coupled_elems.push_back(psi_min(nd, r));
    const SortedRationalSet coupled = SortedRationalSet::from_sorted(std::move(coupled_elems));

    const auto residual = apply_operator(op, series);
    const auto bad = residual.support().set_intersection(coupled);

    OrderedJson j;
    j["R"] = rational_set_to_json(run.final);
    j["residual_in_psi_R"] = rational_set_to_json(bad);
    j["ok"] = bad.empty();
    std::ostringstream text;
    if (bad.empty()) {
        text << "ok: the residual avoids all coupled exponents\n";
    } else {
        text << "residual terms at coupled exponents:\n";
        for (const auto& e : bad) text << "  " << to_string(e) << "\n";
    }
    emit(j, opts.json, text.str());
    return kExitOk;
}

int run_extend(const CommonOptions& opts, const std::string& series_path, const std::string& bound_text,
               std::size_t max_steps) {
    const auto op = load_operator(opts);
    const auto initial = load_series(series_path);
    const auto bound = parse_rational(bound_text);
    if (!bound) throw std::runtime_error("bad rational for --bound");
    const auto run = greedy_extend_run(op, initial, *bound, max_steps, opts.json ? nullptr : &std::cerr);
    OrderedJson j;
    j["series"] = series_to_json(run.series);
    j["steps"] = run.steps;
    j["hit_step_cap"] = run.hit_step_cap;
    std::ostringstream text;
    text << "extended by " << run.steps << " terms" << (run.hit_step_cap ? " (step cap reached)" : "")
         << ":\n"
         << print_series(run.series) << "\n";
    emit(j, opts.json, text.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Hahn-series solver for linear Mahler equations"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string series_path;
    std::string bound_text;
    std::size_t max_steps = 100000;

    auto* info = app.add_subcommand("info", "Newton polygon, slopes and vertices");
    auto* membership = app.add_subcommand("membership", "decide membership in the receptacle V");
    auto* epsilon = app.add_subcommand("epsilon", "certified lower bound on the gap at v");
    auto* tau = app.add_subcommand("tau", "certified uniform gap lower bound");
    auto* rset = app.add_subcommand("rset", "finite solving support R for an exponent set");
    auto* solve = app.add_subcommand("solve", "basis of solution truncations on an exponent set");
    auto* verify = app.add_subcommand("verify", "re-apply L to a series file and check residuals");
    auto* extend = app.add_subcommand("extend", "greedy extension of initial data on -S(L)");

    for (auto* cmd : {info, membership, epsilon, tau, rset, solve, verify, extend}) {
        add_operator_options(cmd, opts);
        cmd->add_flag("--json", opts.json, "machine-readable output");
        cmd->add_option("--budget", opts.budget, "receptacle element budget")->capture_default_str();
    }
    for (auto* cmd : {membership, epsilon, rset, solve, verify}) add_exponent_options(cmd, opts);
    for (auto* cmd : {epsilon, tau})
        cmd->add_flag("--trace", opts.trace, "log the bound recursion to stderr");

    verify->add_option("--series", series_path, "series JSON file")->required();
    extend->add_option("--series", series_path, "initial data JSON file")->required();
    extend->add_option("--bound", bound_text, "extend while exponents stay at or below this")
        ->required();
    extend->add_option("--max-steps", max_steps, "greedy step cap")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (info->parsed()) return run_info(opts);
        if (membership->parsed()) return run_membership(opts);
        if (epsilon->parsed()) return run_epsilon(opts);
        if (tau->parsed()) return run_tau(opts);
        if (rset->parsed()) return run_rset(opts);
        if (solve->parsed()) return run_solve(opts);
        if (verify->parsed()) return run_verify(opts, series_path);
        if (extend->parsed()) return run_extend(opts, series_path, bound_text, max_steps);
    } catch (const budget_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
