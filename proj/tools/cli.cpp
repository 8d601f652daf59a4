#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <functional>
#include <ostream>

#include "json_io.hpp"
#include "metab/errors.hpp"
#include "metab/folner.hpp"
#include "metab/residue.hpp"
#include "metab/text.hpp"
#include "metab/verify.hpp"

namespace metab::cli {

namespace {

using json_io::json;

struct Options {
    std::string format = "json";

    std::size_t rank = 0;
    std::string first, second;
    std::vector<std::string> inputs;

    std::vector<std::size_t> vars;

    ResidueSpec spec;
    bool explain = false;

    std::string g_word;
    std::int64_t side = 0;
    std::string mode = "witness";
    std::uint64_t search_limit = 1'000'000;

    std::string suite = "all";
    std::uint64_t trials = 100;
    std::uint64_t seed = 0;
};

void emit(std::ostream& out, const Options& o, json body, const std::string& text) {
    if (o.format == "json") {
        json doc = {{"schema", 1}};
        for (auto& [key, value] : body.items())
            doc[key] = std::move(value);
        out << doc.dump() << "\n";
    } else {
        out << text;
    }
}

std::string render_group(const GroupElement& g) {
    return "(" + render_q(g.q) + ", " + render_nelement(g.f) + ")";
}

int cmd_reduce(const Options& o, std::ostream& out) {
    const auto g = reduce(parse_word(o.first, o.rank));
    emit(out, o, json_io::group_element(g), render_group(g) + "\n");
    return ok;
}

int cmd_eq(const Options& o, std::ostream& out) {
    const auto a = reduce(parse_word(o.first, o.rank));
    const auto b = reduce(parse_word(o.second, o.rank));
    const bool same = eq(a, b);
    emit(out, o, {{"equal", same}}, same ? "true\n" : "false\n");
    return same ? ok : negative;
}

int cmd_comm(const Options& o, std::ostream& out) {
    const auto a = reduce(parse_word(o.first, o.rank));
    const auto b = reduce(parse_word(o.second, o.rank));
    const auto c = commutator(a, b);
    emit(out, o, json_io::group_element(GroupElement::from_n(c)), render_nelement(c) + "\n");
    return ok;
}

int cmd_divrem(const Options& o, std::ostream& out) {
    if (o.inputs.size() < 2)
        throw DomainError("divrem needs a dividend and at least one divisor");
    if (o.vars.size() != o.inputs.size() - 1)
        throw DomainError("--vars must name one variable per divisor");
    const auto psi = parse_poly(o.inputs[0], o.rank);
    std::vector<Divisor> divs;
    for (std::size_t k = 0; k < o.vars.size(); ++k)
        divs.push_back({parse_poly(o.inputs[k + 1], o.rank), o.vars[k]});
    const auto res = div_rem_multi(psi, divs);

    json quotients = json::array();
    std::string text;
    for (std::size_t k = 0; k < res.quotients.size(); ++k) {
        quotients.push_back(json_io::poly(res.quotients[k]));
        text += "quotient " + std::to_string(k + 1) + ": " + render_poly(res.quotients[k]) + "\n";
    }
    text += "remainder: " + render_poly(res.remainder) + "\n";
    emit(out, o, {{"quotients", quotients}, {"remainder", json_io::poly(res.remainder)}}, text);
    return ok;
}

std::string render_window(const Window& w) {
    std::string s = "(";
    for (std::size_t k = 1; k <= w.rank(); ++k) {
        if (k > 1)
            s += ", ";
        s += w.bound(k) ? std::to_string(*w.bound(k)) : "inf";
    }
    return s + ")";
}

int cmd_residue(Options o, std::ostream& out) {
    o.spec.d = o.rank;
    o.spec.validate();
    const auto f = normalize(parse_nelement(o.first, o.rank));
    const auto r = residue(f, o.spec);
    const bool o_member = r.is_zero();
    const bool m_member = in_M(f, o.spec);

    json body = {{"spec", json_io::spec(o.spec)},
                 {"residue", json_io::nelement(r)},
                 {"in_O", o_member},
                 {"in_M", m_member}};
    std::string text = render_nelement(r) + "\n";
    text += std::string("in_O: ") + (o_member ? "true" : "false") + "\n";
    text += std::string("in_M: ") + (m_member ? "true" : "false") + "\n";

    if (o.explain) {
        json pairs = json::array();
        text += "m: " + std::to_string(o.spec.m()) + "\n";
        for (const auto& p : basic_pairs(o.spec.d)) {
            const auto w = m_window(o.spec, p.i, p.j);
            json gens = json::array();
            std::string gtext;
            for (const auto& g : o_generators(o.spec, p.i, p.j)) {
                gens.push_back({{"var", g.var}, {"poly", json_io::poly(g.poly)}});
                gtext += (gtext.empty() ? "" : "; ") + render_poly(g.poly);
            }
            pairs.push_back({{"i", p.i}, {"j", p.j}, {"window", json_io::window(w)}, {"generators", gens}});
            text += "x[" + std::to_string(p.i) + "," + std::to_string(p.j) + "] window " + render_window(w) +
                    " generators " + (gtext.empty() ? "none" : gtext) + "\n";
        }
        body["explain"] = {{"m", o.spec.m()}, {"pairs", pairs}};
    }
    emit(out, o, body, text);
    return ok;
}

json ratio_json(const Rational& r) { return {{"ratio", json_io::rational(r)}, {"decimal", json_io::decimal(r)}}; }

std::string ratio_text(const Rational& r) { return r.get_str() + " (" + json_io::decimal(r) + ")"; }

int cmd_folner_stats(Options o, std::ostream& out) {
    o.spec.d = o.rank;
    o.spec.validate();
    const auto& spec = o.spec;
    if (o.mode != "witness" && o.mode != "exact")
        throw DomainError("--mode must be witness or exact");
    const auto y = lattice_basis(spec);
    const auto window = i_window(spec);

    std::int64_t side = o.side;
    if (side == 0) {
        // smallest box that is (1/n)-invariant under every conjugation defect in the lattice
        std::vector<NElement> probes{NElement(spec.d)};
        for (std::size_t i = 1; i <= spec.d; ++i)
            for (const auto& q : window) {
                auto f = conj_defect(i, q);
                if (try_coords_in_basis(f, y))
                    probes.push_back(std::move(f));
            }
        side = min_side_for_invariance(spec, Rational(1, spec.n), probes);
    }

    json params = json_io::spec(spec);
    params["side"] = side;
    json body = {{"params", params},
                 {"i_size", window.size()},
                 {"z_size", y.z.elements.size()},
                 {"lattice_rank", y.rank()}};
    std::string text = "I: " + std::to_string(window.size()) + "\n";
    text += "Z: " + std::to_string(y.z.elements.size()) + "\n";
    text += "lattice rank: " + std::to_string(y.rank()) + "\n";
    text += "side: " + std::to_string(side) + "\n";

    if (!o.g_word.empty()) {
        const auto g = reduce(parse_word(o.g_word, spec.d));
        const std::vector<WitnessedN> phi{{NElement(spec.d), {}}};
        const auto r = adaptedness_ratio(g, phi, spec, o.mode == "exact" ? TMode::exact : TMode::witness,
                                         o.search_limit);
        body["ratio"] = json_io::rational(r);
        body["decimal"] = json_io::decimal(r);
        body["g"] = render_word(parse_word(o.g_word, spec.d));
        text += "adaptedness: " + ratio_text(r) + "\n";
    }

    json bounds = json::array();
    for (std::size_t i = 1; i <= spec.d; ++i) {
        const auto b = folner_ratio_bound(i, spec, side);
        json entry = ratio_json(b);
        entry["generator"] = i;
        bounds.push_back(entry);
        text += "folner bound a" + std::to_string(i) + ": " + ratio_text(b) + "\n";
    }
    body["folner_bounds"] = bounds;
    emit(out, o, body, text);
    return ok;
}

int cmd_verify(const Options& o, std::ostream& out) {
    if (o.suite != "all" && std::find(suite_names().begin(), suite_names().end(), o.suite) == suite_names().end())
        throw DomainError("unknown suite '" + o.suite + "'");
    const auto report = verify(o.suite, o.trials, o.seed);

    json suites = json::array();
    for (const auto& s : report.suites) {
        json props = json::array();
        for (const auto& p : s.properties) {
            json pj = {{"name", p.name}, {"checks", p.checks}, {"failures", p.failures}};
            if (p.first_failure)
                pj["first_failure"] = *p.first_failure;
            props.push_back(pj);
        }
        suites.push_back(
            {{"name", s.name}, {"checks", s.checks()}, {"failures", s.failures()}, {"properties", props}});
    }
    emit(out, o,
         {{"seed", report.seed}, {"trials", report.trials}, {"suites", suites}, {"failures", report.failures()},
          {"ok", report.ok()}},
         render_report(report));
    return report.ok() ? ok : negative;
}

void add_rank(CLI::App* sub, Options& o) { sub->add_option("-d,--rank", o.rank, "rank d")->required(); }

void add_spec(CLI::App* sub, Options& o) {
    add_rank(sub, o);
    sub->add_option("-c,--split-c", o.spec.c, "split index c")->required();
    sub->add_option("-n,--n", o.spec.n, "ball parameter n")->required();
    sub->add_option("-t,--index-t", o.spec.t, "subgroup index t")->default_val(1);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact computations in free metabelian groups", "metab"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->default_val("json");

    std::function<int()> action;

    auto* reduce_cmd = app.add_subcommand("reduce", "normal form of a word");
    add_rank(reduce_cmd, o);
    reduce_cmd->add_option("word", o.first)->required();
    reduce_cmd->callback([&] { action = [&] { return cmd_reduce(o, out); }; });

    auto* eq_cmd = app.add_subcommand("eq", "equality of two words");
    add_rank(eq_cmd, o);
    eq_cmd->add_option("w1", o.first)->required();
    eq_cmd->add_option("w2", o.second)->required();
    eq_cmd->callback([&] { action = [&] { return cmd_eq(o, out); }; });

    auto* comm_cmd = app.add_subcommand("comm", "commutator [w1, w2] in the derived subgroup");
    add_rank(comm_cmd, o);
    comm_cmd->add_option("w1", o.first)->required();
    comm_cmd->add_option("w2", o.second)->required();
    comm_cmd->callback([&] { action = [&] { return cmd_comm(o, out); }; });

    auto* div_cmd = app.add_subcommand("divrem", "division by monic univariate divisors");
    add_rank(div_cmd, o);
    div_cmd->add_option("--vars", o.vars, "variable index of each divisor")->required()->delimiter(',')->allow_extra_args(false);
    div_cmd->add_option("polys", o.inputs, "dividend followed by divisors")->required()->expected(2, 64);
    div_cmd->callback([&] { action = [&] { return cmd_divrem(o, out); }; });

    auto* res_cmd = app.add_subcommand("residue", "canonical residue modulo O");
    add_spec(res_cmd, o);
    res_cmd->add_flag("--explain", o.explain, "echo windows and generators");
    res_cmd->add_option("element", o.first)->required();
    res_cmd->callback([&] { action = [&] { return cmd_residue(o, out); }; });

    auto* folner_cmd = app.add_subcommand("folner", "Folner set statistics");
    folner_cmd->require_subcommand(1);
    auto* stats_cmd = folner_cmd->add_subcommand("stats", "adaptedness and overlap bounds");
    add_spec(stats_cmd, o);
    stats_cmd->add_option("--g", o.g_word, "group element for the adaptedness ratio");
    stats_cmd->add_option("--side", o.side, "box side; chosen automatically when omitted")
        ->check(CLI::PositiveNumber);
    stats_cmd->add_option("--mode", o.mode, "membership test")->check(CLI::IsMember({"witness", "exact"}));
    stats_cmd->add_option("--search-limit", o.search_limit, "node budget for exact membership");
    stats_cmd->callback([&] { action = [&] { return cmd_folner_stats(o, out); }; });

    auto* verify_cmd = app.add_subcommand("verify", "seeded property checks");
    verify_cmd->add_option("--suite", o.suite, "suite name or all");
    verify_cmd->add_option("--trials", o.trials, "random instances per property");
    verify_cmd->add_option("--seed", o.seed, "master seed");
    verify_cmd->callback([&] { action = [&] { return cmd_verify(o, out); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return parse_error;
    }

    try {
        return action();
    } catch (const metab::ParseError& e) {
        err << e.what() << "\n";
        return parse_error;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return domain_error;
    }
}

}  // namespace metab::cli
