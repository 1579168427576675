#pragma once

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ca/instance.hpp"
#include "ca/oracle.hpp"
#include "ca/solver_counting.hpp"
#include "ca/solver_decision.hpp"
#include "ca/solver_finding.hpp"

namespace ca {

namespace detail {

inline Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return parse_instance(in);
}

inline SimpleGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return parse_graph(in);
}

inline long long ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace detail

// Exit codes: 0 solved (whatever the answer), 1 usage or input problems,
// 2 file format errors, 3 oracle budget exceeded.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact solver for bounded channel assignment", "casolve"};
    app.require_subcommand(1);

    std::string file;
    int span = 1;
    int threads = 1;
    bool oracle = false;
    bool json = false;

    auto* cd = app.add_subcommand("decide", "test whether span s suffices");
    cd->add_option("--span", span, "channel budget")->required()->check(CLI::Range(1, 1000000000));
    cd->add_flag("--oracle", oracle, "answer by exhaustive search");
    cd->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));
    cd->add_flag("--json", json, "single-line JSON report");
    cd->add_option("file", file, "instance file")->required();

    auto* cc = app.add_subcommand("count", "count proper assignments with span s");
    cc->add_option("--span", span, "channel budget")->required()->check(CLI::Range(1, 1000000000));
    cc->add_flag("--oracle", oracle, "answer by exhaustive search");
    cc->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));
    cc->add_flag("--json", json, "single-line JSON report");
    cc->add_option("file", file, "instance file")->required();

    auto* cm = app.add_subcommand("minspan", "smallest feasible span");
    cm->add_flag("--oracle", oracle, "answer by exhaustive search");
    cm->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));
    cm->add_flag("--json", json, "single-line JSON report");
    cm->add_option("file", file, "instance file")->required();

    auto* cf = app.add_subcommand("find", "extract one optimal-order assignment for span s");
    cf->add_option("--span", span, "channel budget")->required()->check(CLI::Range(1, 1000000000));
    cf->add_flag("--json", json, "single-line JSON report");
    cf->add_option("file", file, "instance file")->required();

    int lp = 0, lq = 0;
    bool lminspan = false, lemit = false;
    auto* cl = app.add_subcommand("lpq", "labeling with separations p and q on a graph");
    cl->add_option("--p", lp, "separation of adjacent pairs")->required()->check(CLI::Range(0, 1000000000));
    cl->add_option("--q", lq, "separation of pairs with a common neighbour")
        ->required()
        ->check(CLI::Range(0, 1000000000));
    auto* lspan = cl->add_option("--span", span, "channel budget")->check(CLI::Range(1, 1000000000));
    cl->add_flag("--minspan", lminspan, "report the smallest feasible span");
    cl->add_flag("--emit-instance", lemit, "print the reduced instance");
    cl->add_flag("--json", json, "single-line JSON report");
    cl->add_option("file", file, "graph file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    using clock = std::chrono::steady_clock;
    try {
        if (app.got_subcommand(cd)) {
            const Instance inst = detail::load_instance_file(file);
            const auto t0 = clock::now();
            const bool ans =
                oracle ? brute_decide(inst, span) : decide_span(inst, span, threads);
            const long long ms = detail::ms_since(t0);
            if (json) {
                nlohmann::json j{{"command", "decide"}, {"n", inst.n()},  {"ell", inst.ell()},
                                 {"s", span},           {"answer", ans}, {"elapsed_ms", ms}};
                out << j.dump() << "\n";
            } else {
                out << (ans ? "yes" : "no") << "\n";
            }
        } else if (app.got_subcommand(cc)) {
            const Instance inst = detail::load_instance_file(file);
            const auto t0 = clock::now();
            const BigInt ans =
                oracle ? brute_count(inst, span) : count_assignments(inst, span, threads);
            const long long ms = detail::ms_since(t0);
            if (json) {
                nlohmann::json j{{"command", "count"},      {"n", inst.n()},
                                 {"ell", inst.ell()},       {"s", span},
                                 {"answer", ans.str()},     {"elapsed_ms", ms}};
                out << j.dump() << "\n";
            } else {
                out << ans.str() << "\n";
            }
        } else if (app.got_subcommand(cm)) {
            const Instance inst = detail::load_instance_file(file);
            const auto t0 = clock::now();
            const int ans = oracle ? brute_min_span(inst) : min_span(inst, threads);
            const long long ms = detail::ms_since(t0);
            if (json) {
                nlohmann::json j{{"command", "minspan"},
                                 {"n", inst.n()},
                                 {"ell", inst.ell()},
                                 {"s", ans},
                                 {"answer", std::to_string(ans)},
                                 {"elapsed_ms", ms}};
                out << j.dump() << "\n";
            } else {
                out << ans << "\n";
            }
        } else if (app.got_subcommand(cf)) {
            const Instance inst = detail::load_instance_file(file);
            const auto t0 = clock::now();
            const auto a = find_assignment(inst, span);
            const long long ms = detail::ms_since(t0);
            if (json) {
                nlohmann::json ans;
                if (a) {
                    ans = nlohmann::json::array();
                    for (int v = 0; v < inst.n(); ++v)
                        ans.push_back(nlohmann::json::array({v, a->channels[v]}));
                } else {
                    ans = nullptr;
                }
                nlohmann::json j{{"command", "find"}, {"n", inst.n()},  {"ell", inst.ell()},
                                 {"s", span},         {"answer", ans}, {"elapsed_ms", ms}};
                out << j.dump() << "\n";
            } else if (a) {
                for (int v = 0; v < inst.n(); ++v) out << "v " << v << ' ' << a->channels[v] << "\n";
            } else {
                out << "infeasible\n";
            }
        } else if (app.got_subcommand(cl)) {
            const bool span_given = lspan->count() > 0;
            if (span_given == lminspan) {
                err << "error: lpq needs exactly one of --span or --minspan\n";
                return 1;
            }
            const SimpleGraph g = detail::load_graph_file(file);
            const Instance inst = lpq_reduce(g, lp, lq);
            const std::string pre = lemit ? serialize_instance(inst) : std::string{};
            const auto t0 = clock::now();
            nlohmann::json ans;
            int sval = 0;
            std::string text;
            if (span_given) {
                const bool ok = decide_span(inst, span);
                sval = span;
                ans = ok;
                text = ok ? "yes" : "no";
            } else {
                const int v = min_span(inst);
                sval = v;
                ans = std::to_string(v);
                text = std::to_string(v);
            }
            const long long ms = detail::ms_since(t0);
            if (json) {
                nlohmann::json j{{"command", "lpq"}, {"n", inst.n()},  {"ell", inst.ell()},
                                 {"s", sval},        {"answer", ans}, {"elapsed_ms", ms}};
                if (lemit) j["instance"] = pre;
                out << j.dump() << "\n";
            } else {
                out << pre << text << "\n";
            }
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace ca
