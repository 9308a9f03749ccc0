#include "idealfunc/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "idealfunc/analytic.hpp"
#include "idealfunc/arith.hpp"
#include "idealfunc/field.hpp"
#include "idealfunc/format.hpp"
#include "idealfunc/ideals.hpp"
#include "idealfunc/parallel.hpp"
#include "idealfunc/summatory.hpp"
#include "idealfunc/verify.hpp"

namespace idealfunc::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

enum class Format { csv, json, plain };

Format parse_format(const std::string& s)
{
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    return Format::plain;
}

const std::vector<std::string> format_names = {"csv", "json", "plain"};

// `a:b:points`
std::vector<double> parse_grid(const std::string& spec)
{
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("--grid expects a:b:points");
    try {
        size_t pos = 0;
        double a = std::stod(parts[0], &pos);
        if (pos != parts[0].size()) throw UsageError("bad grid start");
        double b = std::stod(parts[1], &pos);
        if (pos != parts[1].size()) throw UsageError("bad grid end");
        int n = std::stoi(parts[2], &pos);
        if (pos != parts[2].size()) throw UsageError("bad grid point count");
        return geometric_grid(a, b, n);
    } catch (const std::logic_error& e) {
        throw UsageError(std::string("bad --grid: ") + e.what());
    }
}

// `<norm>` or `<norm>:<index>`
IdealFactorization parse_ideal(const FieldSpec& field, const std::string& spec)
{
    uint64_t norm = 0, index = 0;
    try {
        auto colon = spec.find(':');
        size_t pos = 0;
        norm = std::stoull(spec.substr(0, colon), &pos);
        if (pos != spec.substr(0, colon).size()) throw UsageError("bad --ideal");
        if (colon != std::string::npos) {
            auto rest = spec.substr(colon + 1);
            index = std::stoull(rest, &pos);
            if (pos != rest.size()) throw UsageError("bad --ideal");
        }
    } catch (const std::logic_error&) {
        throw UsageError("--ideal expects <norm> or <norm>:<index>");
    }
    auto list = ideals_of_norm(field, norm);
    if (index >= list.size())
        throw UsageError("no ideal " + spec + " (" + std::to_string(list.size()) + " ideals of norm " +
                         std::to_string(norm) + ")");
    return list[index];
}

json analytic_json(const AnalyticValue& v)
{
    return json{{"value", v.value}, {"tail_bound", v.tail_bound}, {"method", to_string(v.method)}};
}

void emit_analytic(std::ostream& out, const AnalyticValue& v, Format f)
{
    switch (f) {
    case Format::json:  out << analytic_json(v).dump() << '\n'; break;
    case Format::csv:   out << "value,tail_bound,method\n" << format_number(v.value) << ',' << format_number(v.tail_bound) << ',' << to_string(v.method) << '\n'; break;
    case Format::plain: out << format_number(v.value) << '\n'; break;
    }
}

void emit_value(std::ostream& out, Format f, const std::vector<std::pair<std::string, std::string>>& keys,
                const std::string& value)
{
    switch (f) {
    case Format::plain: out << value << '\n'; break;
    case Format::csv: {
        for (const auto& [k, v] : keys) out << k << ',';
        out << "value\n";
        for (const auto& [k, v] : keys) out << v << ',';
        out << value << '\n';
        break;
    }
    case Format::json: {
        json j;
        for (const auto& [k, v] : keys) j[k] = v;
        j["value"] = value;
        out << j.dump() << '\n';
        break;
    }
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Order-k Moebius and Liouville functions over ideals of number fields", "idealfunc"};
    app.require_subcommand(1);
    const unsigned threads = threads_from_environment();

    std::string field_spec = "q", fn_name, ideal_spec, grid_spec, suite, method = "auto";
    std::string format_name;
    int order = 1, theorem = 1, kmax = 4;
    double x = 0, s = 2, tol = 1e-9, primes = 0;
    uint64_t xmax = 5000;
    bool fast = false;

    auto add_field = [&](CLI::App* c) { c->add_option("--field", field_spec, "q, q:<m> or table:<path>")->required(); };
    auto add_format = [&](CLI::App* c, const std::string& def) {
        format_name = def;
        c->add_option("--format", format_name, "output format")->check(CLI::IsMember(format_names));
    };

    auto* field_cmd = app.add_subcommand("field", "describe a field and its small prime ideals");
    add_field(field_cmd);
    field_cmd->add_option("--primes", primes, "list prime ideals of norm <= X");

    auto* enum_cmd = app.add_subcommand("enumerate", "list every ideal of norm <= X");
    add_field(enum_cmd);
    enum_cmd->add_option("--x", x, "norm bound")->required();

    auto* eval_cmd = app.add_subcommand("eval", "evaluate an arithmetic function at one ideal");
    add_field(eval_cmd);
    eval_cmd->add_option("--fn", fn_name)->required()->check(CLI::IsMember({"mobius", "liouville", "qfree", "jordan"}));
    eval_cmd->add_option("--order", order)->required();
    eval_cmd->add_option("--ideal", ideal_spec, "<norm>[:<index>] in enumeration order")->required();

    auto* sum_cmd = app.add_subcommand("sum", "partial sum over ideals of norm <= X");
    add_field(sum_cmd);
    sum_cmd->add_option("--fn", fn_name)->required()->check(CLI::IsMember({"mobius", "liouville", "qfree"}));
    sum_cmd->add_option("--order", order)->required();
    sum_cmd->add_option("--x", x)->required();
    sum_cmd->add_flag("--fast", fast, "qfree only: count through mu_1 and [x]_F");

    auto* report_cmd = app.add_subcommand("report", "remainder reports on a geometric grid");
    report_cmd->add_option("--theorem", theorem)->required()->check(CLI::IsMember({1, 2, 3}));
    add_field(report_cmd);
    report_cmd->add_option("--order", order)->required();
    report_cmd->add_option("--grid", grid_spec, "a:b:points")->required();

    auto* verify_cmd = app.add_subcommand("verify", "run an invariant suite");
    verify_cmd->add_option("--suite", suite)->required();
    add_field(verify_cmd);
    verify_cmd->add_option("--xmax", xmax);
    verify_cmd->add_option("--kmax", kmax);

    auto* zeta_cmd = app.add_subcommand("zeta", "Dedekind zeta at real s > 1");
    add_field(zeta_cmd);
    zeta_cmd->add_option("--s", s)->required();
    zeta_cmd->add_option("--tol", tol);
    zeta_cmd->add_option("--method", method)
        ->check(CLI::IsMember({"auto", "euler-product", "series", "character-sum"}));

    auto* const_cmd = app.add_subcommand("constant", "the main-term constant of M_k");
    add_field(const_cmd);
    const_cmd->add_option("--order", order)->required();
    for (auto* c : {field_cmd, enum_cmd, eval_cmd, sum_cmd, report_cmd, verify_cmd, zeta_cmd, const_cmd}) {
        const bool analytic = c == zeta_cmd || c == const_cmd;
        const bool tabular = c == enum_cmd || c == report_cmd;
        add_format(c, analytic ? "json" : (tabular ? "csv" : "plain"));
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    // each subcommand registered its own default
    std::string chosen_format = format_name;
    for (auto* c : app.get_subcommands()) {
        if (c->count("--format") == 0) {
            const bool analytic = c == zeta_cmd || c == const_cmd;
            const bool tabular = c == enum_cmd || c == report_cmd;
            chosen_format = analytic ? "json" : (tabular ? "csv" : "plain");
        }
    }
    const Format fmt = parse_format(chosen_format);
    std::ostringstream buf;

    try {
        const FieldSpec field = parse_field(field_spec);
        EvalOptions opts;
        opts.threads = threads;

        if (*field_cmd) {
            json j{{"label", field.label()}, {"designation", field.designation()}, {"degree", field.degree()},
                   {"discriminant", field.discriminant()}};
            if (field.radicand()) j["radicand"] = *field.radicand();
            std::vector<PrimeIdealLabel> ps;
            if (primes > 0) ps = primes_with_norm_up_to(field, primes);
            if (fmt == Format::json) {
                json arr = json::array();
                for (const auto& p : ps) arr.push_back({{"p", p.p}, {"f", p.f}, {"index", p.index}, {"norm", p.norm}});
                if (primes > 0) j["primes"] = arr;
                buf << j.dump() << '\n';
            } else if (fmt == Format::csv) {
                buf << "p,f,index,norm\n";
                for (const auto& p : ps) buf << p.p << ',' << p.f << ',' << p.index << ',' << p.norm << '\n';
            } else {
                buf << "label " << field.label() << "\ndegree " << field.degree() << "\ndiscriminant "
                    << field.discriminant() << '\n';
                if (field.radicand()) buf << "radicand " << *field.radicand() << '\n';
                for (const auto& p : ps) buf << "prime " << p.p << '^' << p.f << '[' << p.index << "] norm " << p.norm << '\n';
            }
        } else if (*enum_cmd) {
            IdealStream stream(field, x);
            json arr = json::array();
            if (fmt == Format::csv) buf << "norm,factorization\n";
            while (auto a = stream.next()) {
                if (fmt == Format::json)
                    arr.push_back({{"norm", a->norm()}, {"factorization", a->to_string()}});
                else
                    buf << a->norm() << (fmt == Format::csv ? ',' : ' ') << a->to_string() << '\n';
            }
            if (fmt == Format::json) buf << arr.dump() << '\n';
        } else if (*eval_cmd) {
            const auto a = parse_ideal(field, ideal_spec);
            if (order < 1) throw UsageError("--order must be >= 1");
            int64_t v = 0;
            if (fn_name == "mobius") v = mu_k(order, a);
            else if (fn_name == "liouville") v = lambda_k(order, a);
            else if (fn_name == "qfree") {
                if (order < 2) throw UsageError("qfree needs --order >= 2");
                v = q_k(order, a);
            } else v = jordan_totient(order, a);
            emit_value(buf, fmt,
                       {{"field", field.designation()}, {"fn", fn_name}, {"k", std::to_string(order)},
                        {"ideal", a.to_string()}},
                       std::to_string(v));
        } else if (*sum_cmd) {
            if (order < 1) throw UsageError("--order must be >= 1");
            if (fn_name == "qfree" && order < 2) throw UsageError("qfree needs --order >= 2");
            if (fast && fn_name != "qfree") throw UsageError("--fast applies to --fn qfree only");
            if (!(x >= 1)) throw UsageError("--x must be >= 1");
            int64_t v = fast ? qfree_count_fast(field, order, x, threads)
                             : summatory(field, parse_sum_function(fn_name), order, x, threads);
            emit_value(buf, fmt,
                       {{"field", field.designation()}, {"fn", fn_name}, {"k", std::to_string(order)},
                        {"x", format_number(x)}},
                       std::to_string(v));
        } else if (*report_cmd) {
            const auto grid = parse_grid(grid_spec);
            const ReportKind kind = theorem == 1 ? ReportKind::theorem1
                                  : theorem == 2 ? ReportKind::theorem2
                                                 : ReportKind::theorem3;
            if (order < 1 || (kind != ReportKind::theorem2 && order < 2))
                throw UsageError("--order must be >= 2 for --theorem 1 and 3, >= 1 for --theorem 2");
            const auto reports = sweep(kind, field, order, grid, opts);
            if (fmt == Format::json) {
                json arr = json::array();
                for (const auto& r : reports) {
                    for (const auto& n : r.normalizations) {
                        arr.push_back({{"field", r.field}, {"fn", std::string(1, r.fn)}, {"k", r.k}, {"x", r.x},
                                       {"raw", r.raw}, {"main", r.main}, {"remainder", r.remainder},
                                       {"normalizer", n.tag}, {"normalized", n.value}});
                    }
                }
                buf << arr.dump() << '\n';
            } else {
                if (fmt == Format::csv) buf << report_csv_header << '\n';
                for (const auto& r : reports) buf << report_csv_rows(r);
            }
        } else if (*verify_cmd) {
            if (kmax < 2) throw UsageError("--kmax must be >= 2");
            if (suite != "identities" && suite != "counting")
                throw UsageError("unknown suite `" + suite + "` (expected identities or counting)");
            const auto result = run_suite(suite, field, xmax, kmax, threads);
            if (fmt == Format::json) {
                json checks = json::array();
                for (const auto& c : result.checks)
                    checks.push_back({{"name", c.name}, {"tested", c.tested}, {"failures", c.failures},
                                      {"first_failure", c.first_failure}});
                buf << json{{"suite", result.suite}, {"field", result.field}, {"passed", result.passed()},
                            {"checks", checks}}
                           .dump()
                    << '\n';
            } else {
                buf << result.summary() << (result.passed() ? "PASS" : "FAIL") << " suite=" << result.suite
                    << " field=" << result.field << '\n';
            }
            out << buf.str();
            return result.passed() ? 0 : 2;
        } else if (*zeta_cmd) {
            if (!(tol > 0)) throw UsageError("--tol must be positive");
            opts.rel_tol = tol;
            AnalyticValue v;
            if (method == "auto") v = dedekind_zeta(field, s, opts);
            else if (method == "euler-product") v = zeta_euler_product(field, s, opts.prime_cutoff, tol);
            else if (method == "series") v = zeta_coefficient_series(field, s, opts.series_cutoff, threads);
            else v = zeta_character_route(field, s);
            emit_analytic(buf, v, fmt);
        } else if (*const_cmd) {
            if (order < 2) throw UsageError("--order must be >= 2");
            emit_analytic(buf, theorem1_constant(field, order, opts), fmt);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    out << buf.str();
    return 0;
}

} // namespace idealfunc::cli
