#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bsep/addressing.hpp"
#include "bsep/bounds.hpp"
#include "bsep/errors.hpp"
#include "bsep/exact.hpp"
#include "bsep/graph.hpp"
#include "bsep/lee.hpp"
#include "bsep/lp.hpp"
#include "bsep/product.hpp"
#include "bsep/rational.hpp"

namespace bsep::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read file " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline WeightedGraph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

// Every command assembles one ordered key/value list; both output modes
// render from it so they always carry identical values.
using KvList = std::vector<std::pair<std::string, std::string>>;

inline void print_kv(const KvList& kv) {
    for (const auto& [k, v] : kv) std::cout << k << "=" << v << "\n";
}

inline std::string pad(const std::string& s, size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
}

inline void print_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> width;
    for (const auto& row : rows)
        for (size_t c = 0; c < row.size(); ++c) {
            if (width.size() <= c) width.resize(c + 1, 0);
            width[c] = std::max(width[c], row[c].size());
        }
    for (const auto& row : rows) {
        std::string line;
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) line += "  ";
            line += c + 1 == row.size() ? row[c] : pad(row[c], width[c]);
        }
        std::cout << line << "\n";
    }
}

struct Caps {
    uint64_t node_limit = kDefaultNodeLimit;
    int primal_cap = kDefaultPrimalCap;
    int subset_cap = kDefaultSubsetCap;
    int held_karp_cap = kDefaultHeldKarpCap;
    long long lambda_max = kDefaultLambdaMax;

    SearchConfig search() const {
        SearchConfig cfg;
        cfg.node_limit = node_limit;
        return cfg;
    }
};

inline void add_cap_options(CLI::App* sub, Caps& caps) {
    sub->add_option("--node-limit", caps.node_limit, "search node budget")
        ->envname("BSEP_NODE_LIMIT");
    sub->add_option("--primal-cap", caps.primal_cap, "max vertices for the cut LP")
        ->envname("BSEP_PRIMAL_CAP");
    sub->add_option("--subset-cap", caps.subset_cap, "max subset size for Plotkin bounds")
        ->envname("BSEP_SUBSET_CAP");
    sub->add_option("--held-karp-cap", caps.held_karp_cap, "max vertices for Hamilton bounds")
        ->envname("BSEP_HELD_KARP_CAP");
    sub->add_option("--lambda-max", caps.lambda_max, "stretch range for Lee bounds")
        ->envname("BSEP_LAMBDA_MAX");
}

inline Addressing scheme_addressing(const std::string& scheme, const WeightedGraph& g,
                                    long long lambda) {
    auto scaled = [&](const std::vector<long long>& w) {
        std::vector<long long> out(w.size());
        for (size_t i = 0; i < w.size(); ++i) out[i] = w[i] * lambda;
        return out;
    };
    auto repeat = [&](const Addressing& a, long long times) {
        Addressing acc = a;
        for (long long t = 1; t < times; ++t) acc = append_columns(acc, a);
        return acc;
    };
    if (scheme == "path") {
        auto order = path_order(g);
        std::vector<long long> weights;
        for (size_t i = 0; i + 1 < order.size(); ++i)
            weights.push_back(edge_weight(g, order[i], order[i + 1]));
        return bsep::detail::remap_rows(path_addressing(scaled(weights)), order);
    }
    if (scheme == "cycle") {
        auto order = cycle_order(g);
        std::vector<long long> weights;
        for (size_t i = 0; i < order.size(); ++i)
            weights.push_back(edge_weight(g, order[i], order[(i + 1) % order.size()]));
        return bsep::detail::remap_rows(cycle_addressing(scaled(weights)), order);
    }
    if (scheme == "tree") {
        WeightedGraph h = g;
        for (auto& e : h.edges) e.w *= lambda;
        return tree_addressing(h);
    }
    if (scheme == "clique") {
        if (!is_complete_graph(g) || !has_unit_weights(g))
            throw ValidationError("clique scheme needs a unit complete graph");
        return repeat(complete_graph_addressing(g.n), lambda);
    }
    if (scheme == "k4") {
        DistanceMatrix dm = all_pairs_distances(g);
        for (auto& v : dm.d) v *= lambda;
        return k4_addressing(dm);
    }
    if (scheme == "hadamard") return hadamard_addressing(all_pairs_distances(g), lambda);
    if (scheme == "auto") {
        if (g.n == 1) return Addressing(1, 0);
        if (is_path_graph(g)) return scheme_addressing("path", g, lambda);
        if (is_cycle_graph(g) && is_weight_minimal(g)) return scheme_addressing("cycle", g, lambda);
        if (is_complete_graph(g) && has_unit_weights(g))
            return scheme_addressing("clique", g, lambda);
        if (is_tree_graph(g)) return scheme_addressing("tree", g, lambda);
        if (g.n == 4 && is_weight_minimal(g)) return scheme_addressing("k4", g, lambda);
        return scheme_addressing("hadamard", g, lambda);
    }
    throw ValidationError("unknown scheme " + scheme);
}

}  // namespace detail

/// Entry point used by the bsep binary: parses argv, runs one subcommand.
/// Returns 0 on success, 2 on validation errors, 3 when a budget or size cap
/// is exceeded.
inline int run(int argc, const char* const* argv) {
    CLI::App app{"binary stretch embeddings of weighted graphs"};
    app.require_subcommand(1);

    std::string format = "table";
    detail::Caps caps;

    std::string graph_path, addr_path, scheme = "auto", method = "auto";
    long long lambda = 1, lambda2 = 0;
    bool with_gap = false, certify = false, with_addr = false;
    std::vector<std::string> factor_paths;
    std::vector<long long> lee_args;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format: table or kv")
            ->check(CLI::IsMember({"table", "kv"}));
    };

    auto* bounds_cmd = app.add_subcommand("bounds", "closed-form lower and upper bounds");
    bounds_cmd->add_option("--graph", graph_path, "graph file")->required();
    add_format(bounds_cmd);
    detail::add_cap_options(bounds_cmd, caps);

    auto* exact_cmd = app.add_subcommand("exact", "exact c or c_lambda with witness");
    exact_cmd->add_option("--graph", graph_path, "graph file")->required();
    exact_cmd->add_option("--lambda", lambda, "stretch factor")->check(CLI::PositiveNumber);
    exact_cmd->add_option("--method", method, "auto, oracle, or bb")
        ->check(CLI::IsMember({"auto", "oracle", "bb"}));
    add_format(exact_cmd);
    detail::add_cap_options(exact_cmd, caps);

    auto* beta_cmd = app.add_subcommand("beta", "exact LP value of the asymptotic stretch");
    beta_cmd->add_option("--graph", graph_path, "graph file")->required();
    beta_cmd->add_flag("--gap", with_gap, "also solve exactly and report c / beta");
    add_format(beta_cmd);
    detail::add_cap_options(beta_cmd, caps);

    auto* addr_cmd = app.add_subcommand("address", "constructive addressing");
    addr_cmd->add_option("--graph", graph_path, "graph file")->required();
    addr_cmd->add_option("--scheme", scheme, "path|cycle|tree|clique|hadamard|k4|auto")
        ->check(CLI::IsMember({"path", "cycle", "tree", "clique", "hadamard", "k4", "auto"}));
    addr_cmd->add_option("--lambda", lambda, "stretch factor")->check(CLI::PositiveNumber);
    add_format(addr_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "check an addressing against a graph");
    verify_cmd->add_option("--graph", graph_path, "graph file")->required();
    verify_cmd->add_option("--addr", addr_path, "addressing file")->required();
    verify_cmd->add_option("--lambda", lambda, "stretch factor")->check(CLI::PositiveNumber);
    add_format(verify_cmd);

    auto* lee_cmd = app.add_subcommand("lee", "upper bound on a Lee code size");
    lee_cmd->add_option("params", lee_args, "q n d")->expected(3);
    add_format(lee_cmd);
    detail::add_cap_options(lee_cmd, caps);

    auto* table_cmd = app.add_subcommand("lee-table", "reproduce the improved Lee bound table");
    add_format(table_cmd);
    detail::add_cap_options(table_cmd, caps);

    auto* product_cmd = app.add_subcommand("product", "Cartesian product analysis");
    product_cmd->add_option("--factors", factor_paths, "factor graph files")
        ->required()
        ->expected(-1);
    product_cmd->add_flag("--certify", certify, "try to certify exactness");
    product_cmd->add_flag("--addr", with_addr, "print the concatenation addressing");
    add_format(product_cmd);
    detail::add_cap_options(product_cmd, caps);

    (void)lambda2;
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    bool kv = format == "kv";
    try {
        if (bounds_cmd->parsed()) {
            WeightedGraph g = detail::load_graph(graph_path);
            BoundReport r = bounds_report(g, caps.subset_cap, caps.held_karp_cap);
            auto sorted = [](std::vector<BoundEntry> v) {
                std::sort(v.begin(), v.end(),
                          [](const BoundEntry& a, const BoundEntry& b) { return a.rule < b.rule; });
                return v;
            };
            detail::KvList kvl;
            std::vector<std::vector<std::string>> rows = {{"kind", "rule", "value"}};
            for (const auto& e : sorted(r.lower)) {
                kvl.push_back({"lower." + e.rule, rat_to_string(e.value)});
                rows.push_back({"lower", e.rule, rat_to_string(e.value)});
            }
            for (const auto& e : sorted(r.beta_lower)) {
                kvl.push_back({"beta_lower." + e.rule, rat_to_string(e.value)});
                rows.push_back({"beta_lower", e.rule, rat_to_string(e.value)});
            }
            for (const auto& e : sorted(r.upper)) {
                kvl.push_back({"upper." + e.rule, rat_to_string(e.value)});
                rows.push_back({"upper", e.rule, rat_to_string(e.value)});
            }
            kvl.push_back({"best.lower", std::to_string(r.best_lower())});
            kvl.push_back({"best.upper", std::to_string(r.best_upper())});
            rows.push_back({"best", "lower", std::to_string(r.best_lower())});
            rows.push_back({"best", "upper", std::to_string(r.best_upper())});
            if (kv)
                detail::print_kv(kvl);
            else
                detail::print_table(rows);
            return 0;
        }
        if (exact_cmd->parsed()) {
            WeightedGraph g = detail::load_graph(graph_path);
            DistanceMatrix dm = all_pairs_distances(g);
            ExactResult r;
            try {
                if (method == "oracle" || (method == "auto" && g.n <= 6))
                    r = brute_force_c(dm, lambda, caps.search());
                else
                    r = branch_and_bound_c(dm, lambda, caps.search(), caps.primal_cap);
            } catch (const BudgetExceeded&) {
                auto [lo, lo_rule] = closed_form_lower(dm, lambda);
                Addressing fallback = hadamard_addressing(dm, lambda);
                if (kv) {
                    detail::print_kv({{"proven", "false"},
                                      {"partial.lower", std::to_string(lo)},
                                      {"partial.lower_rule", lo_rule},
                                      {"partial.upper", std::to_string(fallback.length)}});
                } else {
                    std::cout << "not proven: node budget exceeded (partial results)\n"
                              << "partial: lower bound " << lo << " (rule = " << lo_rule
                              << "), upper bound " << fallback.length << "\n";
                }
                return 3;
            }
            if (kv) {
                detail::KvList kvl = {{"c", std::to_string(r.value)},
                                      {"proven", "true"},
                                      {"lower_bound_rule", r.lower_rule},
                                      {"witness_length", std::to_string(r.witness.length)}};
                for (int i = 0; i < r.witness.n; ++i)
                    kvl.push_back({"witness_row_" + std::to_string(i), r.witness.row_string(i)});
                detail::print_kv(kvl);
            } else {
                std::cout << "c = " << r.value << " (proven; lower bound rule = " << r.lower_rule
                          << ")\n";
                std::cout << "witness:\n" << format_addressing(r.witness);
            }
            return 0;
        }
        if (beta_cmd->parsed()) {
            WeightedGraph g = detail::load_graph(graph_path);
            DistanceMatrix dm = all_pairs_distances(g);
            LpSolution sol = solve_exact(build_primal(dm, 1, caps.primal_cap));
            if (sol.status != LpStatus::Optimal)
                throw SolverSelfCheckError("LP_1 must have an optimum");
            long long mu = candidate_mu(sol);
            detail::KvList kvl = {{"beta", rat_to_string(sol.value)},
                                  {"candidate_mu", std::to_string(mu)},
                                  {"lp_pivots", std::to_string(sol.pivots)}};
            std::optional<Rational> gap;
            if (with_gap) {
                ExactResult r = g.n <= 6 ? brute_force_c(dm, 1, caps.search())
                                         : branch_and_bound_c(dm, 1, caps.search(),
                                                              caps.primal_cap);
                gap = integrality_gap(dm, r.value, caps.primal_cap);
                kvl.push_back({"c", std::to_string(r.value)});
                kvl.push_back({"integrality_gap", rat_to_string(*gap)});
            }
            if (kv) {
                detail::print_kv(kvl);
            } else {
                std::cout << "beta = " << rat_to_string(sol.value) << ", candidate mu = " << mu
                          << "\n";
                if (gap)
                    std::cout << "integrality gap = " << rat_to_string(*gap) << "\n";
            }
            return 0;
        }
        if (addr_cmd->parsed()) {
            WeightedGraph g = detail::load_graph(graph_path);
            Addressing a = detail::scheme_addressing(scheme, g, lambda);
            SlackReport rep = slack_report(a, all_pairs_distances(g), lambda);
            if (!rep.valid) throw SolverSelfCheckError("constructed addressing failed to verify");
            if (kv) {
                detail::KvList kvl = {{"scheme", scheme},
                                      {"length", std::to_string(a.length)},
                                      {"min_slack",
                                       rep.has_pairs ? std::to_string(rep.min_slack) : "none"}};
                for (int i = 0; i < a.n; ++i)
                    kvl.push_back({"row_" + std::to_string(i), a.row_string(i)});
                detail::print_kv(kvl);
            } else {
                std::cout << "# scheme = " << scheme << ", length = " << a.length
                          << ", min slack = "
                          << (rep.has_pairs ? std::to_string(rep.min_slack) : "none") << "\n";
                std::cout << format_addressing(a);
            }
            return 0;
        }
        if (verify_cmd->parsed()) {
            WeightedGraph g = detail::load_graph(graph_path);
            Addressing a = parse_addressing(detail::read_file(addr_path));
            SlackReport rep = slack_report(a, all_pairs_distances(g), lambda);
            if (kv) {
                detail::KvList kvl = {{"valid", rep.valid ? "true" : "false"}};
                if (rep.has_pairs) {
                    kvl.push_back({"min_slack", std::to_string(rep.min_slack)});
                    kvl.push_back({"worst_pair", std::to_string(rep.worst_i) + "," +
                                                     std::to_string(rep.worst_j)});
                }
                detail::print_kv(kvl);
            } else if (!rep.has_pairs) {
                std::cout << "VALID (single vertex, no pairs)\n";
            } else {
                std::cout << (rep.valid ? "VALID" : "INVALID") << " (min slack = " << rep.min_slack
                          << " at pair (" << rep.worst_i << ", " << rep.worst_j << "))\n";
            }
            return rep.valid ? 0 : 2;
        }
        if (lee_cmd->parsed()) {
            LeeQuery q{lee_args[0], lee_args[1], lee_args[2]};
            LeeBound b = lee_upper(q, caps.lambda_max);
            if (kv) {
                detail::print_kv({{"bound", std::to_string(b.value)},
                                  {"lambda", std::to_string(b.lambda)},
                                  {"binary_n", std::to_string(b.bin_n)},
                                  {"binary_d", std::to_string(b.bin_d)}});
            } else {
                std::cout << "A^L(" << q.q << "," << q.n << "," << q.d << ") <= " << b.value
                          << " via A_2(" << b.bin_n << "," << b.bin_d << "), lambda = " << b.lambda
                          << "\n";
            }
            return 0;
        }
        if (table_cmd->parsed()) {
            auto rows = reproduce_table(caps.lambda_max);
            int matched = 0;
            detail::KvList kvl;
            std::vector<std::vector<std::string>> tab = {
                {"q", "n", "d", "lambda", "previous", "bound", "computed", "match", "tight"}};
            int flagged = 0;
            for (size_t i = 0; i < rows.size(); ++i) {
                const auto& r = rows[i];
                matched += r.matches;
                flagged += r.lambda_differs;
                // a trailing * marks rows whose smallest achieving stretch
                // is not the listed one
                std::string lam = std::to_string(r.computed.lambda) + (r.lambda_differs ? "*" : "");
                std::string prefix = "row" + std::to_string(i) + ".";
                kvl.push_back({prefix + "q", std::to_string(r.query.q)});
                kvl.push_back({prefix + "n", std::to_string(r.query.n)});
                kvl.push_back({prefix + "d", std::to_string(r.query.d)});
                kvl.push_back({prefix + "lambda", std::to_string(r.computed.lambda)});
                kvl.push_back({prefix + "lambda_differs", r.lambda_differs ? "true" : "false"});
                kvl.push_back({prefix + "previous", std::to_string(r.previous_best)});
                kvl.push_back({prefix + "bound", std::to_string(r.listed_bound)});
                kvl.push_back({prefix + "computed", std::to_string(r.computed.value)});
                kvl.push_back({prefix + "match", r.matches ? "true" : "false"});
                kvl.push_back({prefix + "tight", r.tight ? "true" : "false"});
                tab.push_back({std::to_string(r.query.q), std::to_string(r.query.n),
                               std::to_string(r.query.d), lam, std::to_string(r.previous_best),
                               std::to_string(r.listed_bound), std::to_string(r.computed.value),
                               r.matches ? "yes" : "no", r.tight ? "yes" : "no"});
            }
            kvl.push_back({"rows", std::to_string(rows.size())});
            kvl.push_back({"matched", std::to_string(matched)});
            kvl.push_back({"lambda_flags", std::to_string(flagged)});
            if (kv) {
                detail::print_kv(kvl);
            } else {
                detail::print_table(tab);
                std::cout << matched << "/" << rows.size() << " rows reproduced\n";
                if (flagged > 0)
                    std::cout << flagged << " rows achieve their bound at a different stretch "
                              << "than listed (*)\n";
            }
            return 0;
        }
        if (product_cmd->parsed()) {
            std::vector<WeightedGraph> factors;
            for (const auto& p : factor_paths) factors.push_back(detail::load_graph(p));
            WeightedGraph product = factors[0];
            for (size_t i = 1; i < factors.size(); ++i)
                product = cartesian_product(product, factors[i]);
            if (certify) {
                ProductCertificate cert = certify_product_exact(factors, caps.search());
                if (kv) {
                    detail::KvList kvl = {
                        {"certified", cert.certified ? "true" : "false"},
                        {"rule", cert.rule},
                        {"upper", std::to_string(cert.upper)},
                    };
                    if (cert.certified) {
                        kvl.push_back({"c", std::to_string(cert.product_c)});
                        kvl.push_back({"lower_value", rat_to_string(cert.lower_value)});
                    }
                    for (size_t i = 0; i < cert.factors.size(); ++i) {
                        kvl.push_back({"factor" + std::to_string(i) + ".c",
                                       std::to_string(cert.factors[i].c)});
                        kvl.push_back(
                            {"factor" + std::to_string(i) + ".method", cert.factors[i].method});
                    }
                    detail::print_kv(kvl);
                } else {
                    if (cert.certified)
                        std::cout << "certified: c = " << cert.product_c
                                  << " via " << cert.rule << " (value "
                                  << rat_to_string(cert.lower_value) << ")\n";
                    else
                        std::cout << "not certified: concatenation upper bound " << cert.upper
                                  << "\n";
                    for (size_t i = 0; i < cert.factors.size(); ++i)
                        std::cout << "factor " << i << ": c = " << cert.factors[i].c << " ("
                                  << cert.factors[i].method << ")\n";
                }
                return 0;
            }
            if (with_addr) {
                std::vector<Addressing> addrs;
                for (const auto& f : factors) addrs.push_back(factor_exact(f, caps.search()).addressing);
                Addressing a = product_upper(addrs);
                if (!verify(a, all_pairs_distances(product), 1))
                    throw SolverSelfCheckError("concatenation addressing failed to verify");
                if (kv) {
                    detail::KvList kvl = {{"length", std::to_string(a.length)}};
                    for (int i = 0; i < a.n; ++i)
                        kvl.push_back({"row_" + std::to_string(i), a.row_string(i)});
                    detail::print_kv(kvl);
                } else {
                    std::cout << "# concatenation addressing, length = " << a.length << "\n"
                              << format_addressing(a);
                }
                return 0;
            }
            std::cout << format_graph(product);
            return 0;
        }
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const SizeLimit& e) {
        std::cerr << "size cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace bsep::cli
