#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bsep/addressing.hpp"
#include "bsep/bounds.hpp"
#include "bsep/errors.hpp"
#include "bsep/graph.hpp"
#include "bsep/lp.hpp"
#include "bsep/rational.hpp"

namespace bsep {

constexpr uint64_t kDefaultNodeLimit = 10000000;

struct SearchConfig {
    uint64_t node_limit = kDefaultNodeLimit;
    // Symmetry breaking: pin the first row to all-zeros (addressings are
    // translation invariant) and search canonical column multisets instead of
    // ordered columns (hamming distance is column-order invariant).
    bool fix_first_row = true;
    bool canonical_columns = true;
};

struct ExactResult {
    long long value = 0;
    Addressing witness;
    std::string lower_rule;  // certificate: the lower bound meeting the witness
    uint64_t nodes = 0;
};

/// Best closed-form lower bound on c_lambda and the rule realizing it.
inline std::pair<long long, std::string> closed_form_lower(const DistanceMatrix& dm,
                                                           long long lambda) {
    std::pair<long long, std::string> best = {0, "trivial"};
    auto consider = [&](long long v, const std::string& rule) {
        if (v > best.first) best = {v, rule};
    };
    consider(lambda * diameter(dm), "diameter");
    consider(log2_ceil(dm.n), "log2_vertices");
    for (int i = 0; i < dm.n; ++i)
        for (int j = i + 1; j < dm.n; ++j)
            for (int k = j + 1; k < dm.n; ++k)
                consider((lambda * (dm.at(i, j) + dm.at(i, k) + dm.at(j, k)) + 1) / 2,
                         "triangle_halfsum");
    if (dm.n >= 2 && dm.n <= 16)
        consider(ceil_to_int64(Rational(lambda) * subset_plotkin_bound(dm)), "subset_plotkin");
    return best;
}

namespace detail {

struct SearchContext {
    uint64_t nodes = 0;
    uint64_t limit = 0;
    bool exhausted = false;

    // Returns false when the budget is gone; callers unwind and report.
    bool tick() {
        if (++nodes > limit) {
            exhausted = true;
            return false;
        }
        return true;
    }
};

// Fast SAT finder: assign whole rows in decreasing constraint order. Not
// exhaustive over column symmetry, so only its successes are used.
struct RowSearch {
    int n, l;
    std::vector<int> order;
    std::vector<std::vector<long long>> req;
    std::vector<uint64_t> rows;
    SearchContext* ctx;
    bool fix_first;

    bool dfs(int k) {
        if (k == n) return true;
        uint64_t end = (k == 0 && fix_first) ? 1 : (1ULL << l);
        for (uint64_t a = 0; a < end; ++a) {
            if (!ctx->tick()) return false;
            bool ok = true;
            for (int t = 0; t < k && ok; ++t)
                if (__builtin_popcountll(a ^ rows[t]) < req[k][t]) ok = false;
            if (!ok) continue;
            rows[k] = a;
            if (dfs(k + 1)) return true;
            if (ctx->exhausted) return false;
        }
        return false;
    }
};

inline std::optional<Addressing> row_search(const DistanceMatrix& dm, long long lambda, int l,
                                            bool fix_first, SearchContext& ctx) {
    if (l > 62) return std::nullopt;
    RowSearch rs;
    rs.n = dm.n;
    rs.l = l;
    rs.ctx = &ctx;
    rs.fix_first = fix_first;
    rs.order.resize(dm.n);
    std::vector<long long> mass(dm.n, 0);
    for (int i = 0; i < dm.n; ++i)
        for (int j = 0; j < dm.n; ++j) mass[i] += dm.at(i, j);
    for (int i = 0; i < dm.n; ++i) rs.order[i] = i;
    std::sort(rs.order.begin(), rs.order.end(),
              [&](int a, int b) { return mass[a] != mass[b] ? mass[a] > mass[b] : a < b; });
    rs.req.assign(dm.n, std::vector<long long>(dm.n, 0));
    for (int a = 0; a < dm.n; ++a)
        for (int b = 0; b < dm.n; ++b) rs.req[a][b] = lambda * dm.at(rs.order[a], rs.order[b]);
    rs.rows.assign(dm.n, 0);
    if (!rs.dfs(0)) return std::nullopt;
    Addressing addr(dm.n, l);
    for (int k = 0; k < dm.n; ++k)
        for (int j = 0; j < l; ++j) addr.set_bit(rs.order[k], j, (rs.rows[k] >> j) & 1);
    return addr;
}

// Complete search over canonical column multisets: counts per nonempty
// subset of {1..n-1}. Column permutations and complements are factored out,
// and row 0 is all-zeros by construction.
struct ColumnSearch {
    int n = 0;
    long long budget = 0;
    std::vector<uint32_t> masks;              // search order
    std::vector<std::vector<int>> pair_ids;   // pairs separated by masks[t]
    std::vector<int> last_cover;              // per pair: last t covering it
    std::vector<long long> res;               // residual requirement per pair
    std::vector<std::array<int, 3>> triangles;
    std::vector<long long> counts;            // per masks[] index
    int unsat = 0;
    long long total_res = 0;
    long long cap_pairs_per_column = 1;
    SearchContext* ctx = nullptr;

    bool prune(int t, long long left) const {
        long long worst = 0;
        for (int p = 0; p < static_cast<int>(last_cover.size()); ++p) {
            if (res[p] <= 0) continue;
            if (last_cover[p] < t) return true;
            worst = std::max(worst, res[p]);
        }
        if (worst > left) return true;
        if (total_res > left * cap_pairs_per_column) return true;
        for (const auto& tri : triangles) {
            long long s = std::max(0LL, res[tri[0]]) + std::max(0LL, res[tri[1]]) +
                          std::max(0LL, res[tri[2]]);
            if ((s + 1) / 2 > left) return true;
        }
        return false;
    }

    bool dfs(int t, long long left) {
        if (!ctx->tick()) return false;
        if (unsat == 0) return true;
        if (t == static_cast<int>(masks.size())) return false;
        if (prune(t, left)) return false;
        long long maxc = 0;
        for (int p : pair_ids[t]) maxc = std::max(maxc, res[p]);
        maxc = std::min(maxc, left);
        for (long long cnt = maxc; cnt >= 0; --cnt) {
            if (cnt > 0) {
                counts[t] = cnt;
                for (int p : pair_ids[t]) {
                    if (res[p] > 0) {
                        long long drop = std::min(res[p], cnt);
                        total_res -= drop;
                    }
                    res[p] -= cnt;
                    if (res[p] <= 0 && res[p] + cnt > 0) --unsat;
                }
            }
            bool found = dfs(t + 1, left - cnt);
            if (cnt > 0) {
                for (int p : pair_ids[t]) {
                    if (res[p] + cnt > 0 && res[p] <= 0) ++unsat;
                    res[p] += cnt;
                    if (res[p] > 0) total_res += std::min(res[p], cnt);
                }
                counts[t] = 0;
            }
            if (found) return true;
            if (ctx->exhausted) return false;
        }
        return false;
    }
};

inline std::optional<Addressing> column_search(const DistanceMatrix& dm, long long lambda, int l,
                                               SearchContext& ctx) {
    int n = dm.n;
    if (n > 20) throw SizeLimit("column multiset search limited to 20 vertices");
    ColumnSearch cs;
    cs.n = n;
    cs.ctx = &ctx;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    uint32_t nsubsets = (1u << (n - 1)) - 1;
    std::vector<std::pair<int, uint32_t>> by_coverage;
    for (uint32_t mask = 1; mask <= nsubsets; ++mask) {
        int cov = 0;
        for (auto [i, j] : pairs)
            if (mask_separates(mask << 1, i, j)) ++cov;
        by_coverage.push_back({cov, mask});
    }
    std::sort(by_coverage.begin(), by_coverage.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    cs.masks.reserve(by_coverage.size());
    for (auto& [cov, mask] : by_coverage) cs.masks.push_back(mask);
    cs.pair_ids.resize(cs.masks.size());
    cs.last_cover.assign(pairs.size(), -1);
    for (size_t t = 0; t < cs.masks.size(); ++t)
        for (size_t p = 0; p < pairs.size(); ++p)
            if (mask_separates(cs.masks[t] << 1, pairs[p].first, pairs[p].second)) {
                cs.pair_ids[t].push_back(static_cast<int>(p));
                cs.last_cover[p] = static_cast<int>(t);
            }
    cs.res.resize(pairs.size());
    cs.unsat = 0;
    cs.total_res = 0;
    for (size_t p = 0; p < pairs.size(); ++p) {
        cs.res[p] = lambda * dm.at(pairs[p].first, pairs[p].second);
        if (cs.res[p] > 0) ++cs.unsat;
        cs.total_res += std::max(0LL, cs.res[p]);
    }
    std::vector<int> pair_index(static_cast<size_t>(n) * n, -1);
    for (size_t p = 0; p < pairs.size(); ++p) {
        pair_index[static_cast<size_t>(pairs[p].first) * n + pairs[p].second] =
            static_cast<int>(p);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                cs.triangles.push_back({pair_index[static_cast<size_t>(i) * n + j],
                                        pair_index[static_cast<size_t>(i) * n + k],
                                        pair_index[static_cast<size_t>(j) * n + k]});
    cs.counts.assign(cs.masks.size(), 0);
    cs.cap_pairs_per_column = static_cast<long long>(n) * n / 4;

    if (!cs.dfs(0, l)) return std::nullopt;

    Addressing addr(n, l);
    int col = 0;
    for (size_t t = 0; t < cs.masks.size(); ++t)
        for (long long c = 0; c < cs.counts[t]; ++c, ++col)
            for (int v = 1; v < n; ++v)
                addr.set_bit(v, col, ((cs.masks[t] << 1) >> v) & 1);
    return addr;  // leftover columns stay all-zero
}

inline Addressing counts_to_addressing(int n, int l, const std::vector<Rational>& counts) {
    Addressing addr(n, l);
    int col = 0;
    for (uint32_t mask = 1; mask < counts.size() + 1; ++mask) {
        long long c = to_int64(numerator(counts[mask - 1]));
        for (long long t = 0; t < c; ++t, ++col)
            for (int v = 1; v < n; ++v) addr.set_bit(v, col, ((mask << 1) >> v) & 1);
    }
    return addr;
}

}  // namespace detail

/// Addressing of dm with length exactly l and stretch lambda, or nullopt if
/// the complete search proves there is none. Throws BudgetExceeded when the
/// node budget runs out before either outcome.
inline std::optional<Addressing> feasible_at_length(const DistanceMatrix& dm, long long lambda,
                                                    long long l,
                                                    const SearchConfig& cfg = SearchConfig()) {
    if (lambda < 1) throw ValidationError("lambda must be a positive integer");
    if (l < 0) throw ValidationError("length must be nonnegative");
    if (dm.n == 1) return Addressing(1, static_cast<int>(l));
    for (int i = 0; i < dm.n; ++i)
        for (int j = i + 1; j < dm.n; ++j)
            if (lambda * dm.at(i, j) > l) return std::nullopt;
    if (l <= 62 && (1LL << l) < dm.n) return std::nullopt;  // rows must be distinct
    if (l > 1000000) throw SizeLimit("length too large to materialize");

    detail::SearchContext ctx;
    ctx.limit = cfg.node_limit;
    if (cfg.canonical_columns) {
        detail::SearchContext row_ctx;
        row_ctx.limit = std::min<uint64_t>(cfg.node_limit / 4 + 1, 250000);
        if (auto found = detail::row_search(dm, lambda, static_cast<int>(l), cfg.fix_first_row,
                                            row_ctx))
            return found;
        auto found = detail::column_search(dm, lambda, static_cast<int>(l), ctx);
        if (found) return found;
        if (ctx.exhausted) throw BudgetExceeded("node limit hit before the search finished");
        return std::nullopt;
    }
    auto found = detail::row_search(dm, lambda, static_cast<int>(l), cfg.fix_first_row, ctx);
    if (found) return found;
    if (ctx.exhausted) throw BudgetExceeded("node limit hit before the search finished");
    if (l > 62) throw SizeLimit("row search needs length <= 62");
    return std::nullopt;
}

/// Exact c_lambda by increasing-length search from the best closed-form
/// lower bound. Meant for small instances.
inline ExactResult brute_force_c(const DistanceMatrix& dm, long long lambda = 1,
                                 const SearchConfig& cfg = SearchConfig()) {
    auto [lower, rule] = closed_form_lower(dm, lambda);
    for (long long l = lower;; ++l) {
        if (auto found = feasible_at_length(dm, lambda, l, cfg)) {
            ExactResult r;
            r.value = l;
            r.witness = *found;
            r.lower_rule = l == lower ? rule : "exhaustive_search";
            return r;
        }
    }
}

/// Exact c_lambda via the integer program over canonical cut counts:
/// LP relaxation bounds, incumbents from constructive addressings and the
/// bounded oracle, then branching on a fractional cut variable.
inline ExactResult branch_and_bound_c(const DistanceMatrix& dm, long long lambda = 1,
                                      const SearchConfig& cfg = SearchConfig(),
                                      int primal_cap = kDefaultPrimalCap) {
    ExactResult result;
    if (dm.n == 1) {
        result.witness = Addressing(1, 0);
        result.lower_rule = "trivial";
        return result;
    }
    auto [cf_lower, cf_rule] = closed_form_lower(dm, lambda);
    long long lower = cf_lower;
    std::string rule = cf_rule;

    Addressing incumbent = hadamard_addressing(dm, lambda);
    long long upper = incumbent.length;

    // Bounded oracle pass: walk lengths upward while proofs are cheap. Most
    // small instances close here, before the LP is ever built.
    for (long long l = lower; l < upper; ++l) {
        std::optional<Addressing> found;
        try {
            found = feasible_at_length(dm, lambda, l, cfg);
        } catch (const BudgetExceeded&) {
            break;
        }
        if (found) {
            incumbent = *found;
            upper = l;
            break;
        }
        lower = l + 1;
        rule = "exhaustive_search";
    }
    if (upper == lower) {
        result.value = upper;
        result.witness = incumbent;
        result.lower_rule = rule;
        return result;
    }

    LinearProgramSpec root = build_primal(dm, lambda, primal_cap);
    LpSolution root_sol = solve_exact(root);
    if (root_sol.status != LpStatus::Optimal)
        throw SolverSelfCheckError("LP relaxation must have an optimum");
    long long lp_lower = ceil_to_int64(root_sol.value);
    if (lp_lower > lower) {
        lower = lp_lower;
        rule = "lp_relaxation";
    }
    if (upper == lower) {
        result.value = upper;
        result.witness = incumbent;
        result.lower_rule = rule;
        return result;
    }

    // LP branch and bound on the cut counts.
    struct Node {
        std::vector<std::pair<int, long long>> upper_bounds;  // S_var <= bound
        std::vector<std::pair<int, long long>> lower_bounds;  // S_var >= bound
    };
    std::vector<Node> stack = {Node{}};
    uint64_t nodes = 0;
    int nvars = static_cast<int>(root.var_names.size());
    while (!stack.empty()) {
        if (++nodes > cfg.node_limit)
            throw BudgetExceeded("branch and bound node limit exceeded");
        Node node = std::move(stack.back());
        stack.pop_back();
        LinearProgramSpec lp = root;
        for (auto [var, b] : node.upper_bounds) {
            LpConstraint row;
            row.name = "ub_" + lp.var_names[var];
            row.coeffs.assign(nvars, Rational(0));
            row.coeffs[var] = 1;
            row.rel = Rel::Le;
            row.rhs = Rational(b);
            lp.rows.push_back(std::move(row));
        }
        for (auto [var, b] : node.lower_bounds) {
            LpConstraint row;
            row.name = "lb_" + lp.var_names[var];
            row.coeffs.assign(nvars, Rational(0));
            row.coeffs[var] = 1;
            row.rel = Rel::Ge;
            row.rhs = Rational(b);
            lp.rows.push_back(std::move(row));
        }
        LpSolution sol = solve_exact(lp);
        if (sol.status == LpStatus::Infeasible) continue;
        if (sol.status != LpStatus::Optimal)
            throw SolverSelfCheckError("bounded LP cannot be unbounded");
        if (ceil_to_int64(sol.value) >= upper) continue;
        int frac_var = -1;
        Rational best_dist = 1;
        for (int j = 0; j < nvars; ++j) {
            if (is_integer(sol.assignment[j])) continue;
            Rational frac = sol.assignment[j] - Rational(floor_rat(sol.assignment[j]));
            Rational dist = frac <= Rational(1, 2) ? Rational(1, 2) - frac : frac - Rational(1, 2);
            if (frac_var == -1 || dist < best_dist) {
                frac_var = j;
                best_dist = dist;
            }
        }
        if (frac_var == -1) {
            // Integral vertex strictly below the incumbent.
            upper = to_int64(numerator(sol.value));
            incumbent = detail::counts_to_addressing(dm.n, static_cast<int>(upper),
                                                     sol.assignment);
            if (!verify(incumbent, dm, lambda))
                throw SolverSelfCheckError("integral LP vertex is not a valid addressing");
            if (upper == lower) break;
            continue;
        }
        long long floor_v = to_int64(floor_rat(sol.assignment[frac_var]));
        Node up = node, down = node;
        down.upper_bounds.push_back({frac_var, floor_v});
        up.lower_bounds.push_back({frac_var, floor_v + 1});
        stack.push_back(std::move(up));
        stack.push_back(std::move(down));
    }
    result.value = upper;
    result.witness = incumbent;
    result.lower_rule = upper == lower ? rule : "branch_and_bound";
    result.nodes = nodes;
    return result;
}

struct SubadditivityReport {
    bool holds = false;
    long long c1 = 0, c2 = 0, c_sum = 0;
    Addressing witness;  // columns of the two optima side by side
    bool witness_valid = false;
};

/// Checks c_{l1+l2} <= c_{l1} + c_{l2} and produces the concatenation
/// witness that certifies the inequality.
inline SubadditivityReport subadditivity_check(const DistanceMatrix& dm, long long l1,
                                               long long l2,
                                               const SearchConfig& cfg = SearchConfig()) {
    if (l1 < 1 || l2 < 1) throw ValidationError("stretches must be positive integers");
    ExactResult r1 = branch_and_bound_c(dm, l1, cfg);
    ExactResult r2 = branch_and_bound_c(dm, l2, cfg);
    ExactResult r12 = branch_and_bound_c(dm, l1 + l2, cfg);
    SubadditivityReport rep;
    rep.c1 = r1.value;
    rep.c2 = r2.value;
    rep.c_sum = r12.value;
    rep.holds = r12.value <= r1.value + r2.value;
    rep.witness = append_columns(r1.witness, r2.witness);
    rep.witness_valid = verify(rep.witness, dm, l1 + l2);
    return rep;
}

}  // namespace bsep
