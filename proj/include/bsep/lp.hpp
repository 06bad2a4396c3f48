#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "bsep/errors.hpp"
#include "bsep/graph.hpp"
#include "bsep/rational.hpp"

namespace bsep {

constexpr int kDefaultPrimalCap = 14;

enum class Sense { Minimize, Maximize };
enum class Rel { Le, Ge };

struct LpConstraint {
    std::string name;
    std::vector<Rational> coeffs;
    Rel rel = Rel::Ge;
    Rational rhs = 0;
};

/// Linear program with nonnegative variables (x >= 0 is implicit).
struct LinearProgramSpec {
    Sense sense = Sense::Minimize;
    std::vector<std::string> var_names;
    std::vector<Rational> objective;
    std::vector<LpConstraint> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    Rational value = 0;
    std::vector<Rational> assignment;
    std::vector<int> basis;  // final basic columns; j < #vars means var_names[j]
    long long pivots = 0;
};

namespace detail {

inline bool mask_separates(uint32_t full_mask, int i, int j) {
    return (((full_mask >> i) ^ (full_mask >> j)) & 1u) != 0;
}

inline std::string subset_var_name(uint32_t mask) {
    std::string s = "S";
    for (int v = 1; mask != 0; ++v, mask >>= 1)
        if (mask & 1u) s += "_" + std::to_string(v);
    return s;
}

}  // namespace detail

/// LP_lambda over the canonical cut variables: one variable per nonempty
/// subset of {1..n-1} (subsets containing vertex 0 are folded onto their
/// complements; the empty and full sets separate nothing and are dropped).
/// One >= constraint per vertex pair.
inline LinearProgramSpec build_primal(const DistanceMatrix& dm, long long lambda = 1,
                                      int primal_cap = kDefaultPrimalCap) {
    if (dm.n > primal_cap)
        throw SizeLimit("primal LP limited to " + std::to_string(primal_cap) + " vertices");
    if (lambda < 1) throw ValidationError("lambda must be a positive integer");
    int n = dm.n;
    uint32_t nsubsets = n >= 1 ? (1u << (n - 1)) - 1 : 0;
    LinearProgramSpec lp;
    lp.sense = Sense::Minimize;
    for (uint32_t mask = 1; mask <= nsubsets; ++mask)
        lp.var_names.push_back(detail::subset_var_name(mask));
    lp.objective.assign(nsubsets, Rational(1));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            LpConstraint row;
            row.name = "p_" + std::to_string(i) + "_" + std::to_string(j);
            row.coeffs.assign(nsubsets, Rational(0));
            for (uint32_t mask = 1; mask <= nsubsets; ++mask)
                if (detail::mask_separates(mask << 1, i, j)) row.coeffs[mask - 1] = 1;
            row.rel = Rel::Ge;
            row.rhs = Rational(lambda * dm.at(i, j));
            lp.rows.push_back(std::move(row));
        }
    return lp;
}

/// Dual of LP_1: one variable per vertex pair, one <= 1 constraint per
/// canonical cut, objective max sum d(i,j) z_ij.
inline LinearProgramSpec build_dual(const DistanceMatrix& dm, int primal_cap = kDefaultPrimalCap) {
    if (dm.n > primal_cap)
        throw SizeLimit("dual LP limited to " + std::to_string(primal_cap) + " vertices");
    int n = dm.n;
    LinearProgramSpec lp;
    lp.sense = Sense::Maximize;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            pairs.push_back({i, j});
            lp.var_names.push_back("z_" + std::to_string(i) + "_" + std::to_string(j));
            lp.objective.push_back(Rational(dm.at(i, j)));
        }
    uint32_t nsubsets = n >= 1 ? (1u << (n - 1)) - 1 : 0;
    for (uint32_t mask = 1; mask <= nsubsets; ++mask) {
        LpConstraint row;
        row.name = "cut" + detail::subset_var_name(mask).substr(1);
        row.coeffs.assign(pairs.size(), Rational(0));
        for (size_t p = 0; p < pairs.size(); ++p)
            if (detail::mask_separates(mask << 1, pairs[p].first, pairs[p].second))
                row.coeffs[p] = 1;
        row.rel = Rel::Le;
        row.rhs = 1;
        lp.rows.push_back(std::move(row));
    }
    return lp;
}

namespace detail {

// Dense exact-rational simplex tableau. Dantzig pricing with an automatic
// switch to Bland's rule after a run of degenerate pivots, which guarantees
// termination while keeping the common case fast.
struct SimplexTableau {
    int nvars = 0;       // structural
    int nslack = 0;      // one slack or surplus column per row
    int nart = 0;        // artificial columns, appended last
    int m = 0;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> rhs;
    std::vector<int> basis;
    std::vector<Rational> reduced;  // reduced cost row
    Rational value = 0;             // current objective (minimization form)
    long long pivots = 0;
    int degenerate_run = 0;

    int ncols() const { return nvars + nslack + nart; }

    void pivot(int prow, int pcol) {
        Rational piv = A[prow][pcol];
        if (piv == 0) throw SolverSelfCheckError("pivot on zero element");
        for (auto& x : A[prow])
            if (x != 0) x /= piv;
        rhs[prow] /= piv;
        A[prow][pcol] = 1;
        for (int i = 0; i < m; ++i) {
            if (i == prow) continue;
            Rational f = A[i][pcol];
            if (f == 0) continue;
            for (int j = 0; j < ncols(); ++j)
                if (A[prow][j] != 0) A[i][j] -= f * A[prow][j];
            A[i][pcol] = 0;
            rhs[i] -= f * rhs[prow];
        }
        Rational f = reduced[pcol];
        if (f != 0) {
            for (int j = 0; j < ncols(); ++j)
                if (A[prow][j] != 0) reduced[j] -= f * A[prow][j];
            reduced[pcol] = 0;
            value += f * rhs[prow];
        }
        basis[prow] = pcol;
        ++pivots;
    }

    // Runs simplex iterations until optimal (returns true) or unbounded
    // (returns false). `allowed` masks columns that may enter.
    bool optimize(const std::vector<char>& allowed) {
        const long long pivot_cap = 2000000;
        while (true) {
            bool bland = degenerate_run >= 40;
            int enter = -1;
            if (bland) {
                for (int j = 0; j < ncols(); ++j)
                    if (allowed[j] && reduced[j] < 0) {
                        enter = j;
                        break;
                    }
            } else {
                for (int j = 0; j < ncols(); ++j)
                    if (allowed[j] && reduced[j] < 0 &&
                        (enter == -1 || reduced[j] < reduced[enter]))
                        enter = j;
            }
            if (enter == -1) return true;

            int leave = -1;
            Rational best_ratio = 0;
            for (int i = 0; i < m; ++i) {
                if (A[i][enter] <= 0) continue;
                Rational ratio = rhs[i] / A[i][enter];
                if (leave == -1 || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == -1) return false;
            degenerate_run = best_ratio == 0 ? degenerate_run + 1 : 0;
            pivot(leave, enter);
            if (pivots > pivot_cap) throw SolverSelfCheckError("simplex did not terminate");
        }
    }
};

}  // namespace detail

/// Exact two-phase simplex. The returned assignment is re-substituted into
/// every constraint and the objective before returning.
inline LpSolution solve_exact(const LinearProgramSpec& spec) {
    int nvars = static_cast<int>(spec.var_names.size());
    if (static_cast<int>(spec.objective.size()) != nvars)
        throw ValidationError("objective size does not match variable count");
    for (const auto& row : spec.rows)
        if (static_cast<int>(row.coeffs.size()) != nvars)
            throw ValidationError("constraint size does not match variable count");

    bool maximize = spec.sense == Sense::Maximize;
    LpSolution sol;
    if (spec.rows.empty()) {
        // x = 0 is optimal for min with nonnegative costs; unbounded otherwise.
        sol.assignment.assign(nvars, Rational(0));
        for (int j = 0; j < nvars; ++j) {
            Rational c = maximize ? -spec.objective[j] : spec.objective[j];
            if (c < 0) {
                sol.status = LpStatus::Unbounded;
                return sol;
            }
        }
        sol.status = LpStatus::Optimal;
        return sol;
    }

    detail::SimplexTableau t;
    t.nvars = nvars;
    t.m = static_cast<int>(spec.rows.size());
    t.nslack = t.m;
    std::vector<int> art_of_row(t.m, -1);
    for (int i = 0; i < t.m; ++i) {
        const auto& row = spec.rows[i];
        bool flip = row.rhs < 0;
        Rel rel = row.rel;
        if (flip) rel = rel == Rel::Ge ? Rel::Le : Rel::Ge;
        if (rel == Rel::Ge) art_of_row[i] = t.nart++;
    }
    int total = t.nvars + t.nslack + t.nart;
    t.A.assign(t.m, std::vector<Rational>(total, Rational(0)));
    t.rhs.assign(t.m, Rational(0));
    t.basis.assign(t.m, -1);
    int art_start = t.nvars + t.nslack;
    for (int i = 0; i < t.m; ++i) {
        const auto& row = spec.rows[i];
        bool flip = row.rhs < 0;
        Rel rel = flip ? (row.rel == Rel::Ge ? Rel::Le : Rel::Ge) : row.rel;
        for (int j = 0; j < nvars; ++j) t.A[i][j] = flip ? -row.coeffs[j] : row.coeffs[j];
        t.rhs[i] = flip ? -row.rhs : row.rhs;
        t.A[i][t.nvars + i] = rel == Rel::Le ? 1 : -1;
        if (rel == Rel::Le) {
            t.basis[i] = t.nvars + i;
        } else {
            t.A[i][art_start + art_of_row[i]] = 1;
            t.basis[i] = art_start + art_of_row[i];
        }
    }

    std::vector<char> allowed(total, 1);
    if (t.nart > 0) {
        // Phase 1: minimize the sum of artificials.
        t.reduced.assign(total, Rational(0));
        t.value = 0;
        for (int j = art_start; j < total; ++j) t.reduced[j] = 1;
        for (int i = 0; i < t.m; ++i)
            if (t.basis[i] >= art_start) {
                for (int j = 0; j < total; ++j)
                    if (t.A[i][j] != 0) t.reduced[j] -= t.A[i][j];
                t.value += t.rhs[i];
            }
        if (!t.optimize(allowed)) throw SolverSelfCheckError("phase 1 cannot be unbounded");
        if (t.value != 0) {
            // Artificials cannot all leave: no feasible point exists.
            sol.status = LpStatus::Infeasible;
            sol.pivots = t.pivots;
            return sol;
        }
        for (int i = 0; i < t.m; ++i) {
            if (t.basis[i] < art_start) continue;
            int enter = -1;
            for (int j = 0; j < art_start && enter == -1; ++j)
                if (t.A[i][j] != 0) enter = j;
            if (enter != -1) {
                t.pivot(i, enter);
            } else {
                // Redundant row; drop it.
                t.A.erase(t.A.begin() + i);
                t.rhs.erase(t.rhs.begin() + i);
                t.basis.erase(t.basis.begin() + i);
                --t.m;
                --i;
            }
        }
        for (int j = art_start; j < total; ++j) allowed[j] = 0;
    }

    // Phase 2 objective, rebuilt from the current basis.
    std::vector<Rational> cost(total, Rational(0));
    for (int j = 0; j < nvars; ++j) cost[j] = maximize ? -spec.objective[j] : spec.objective[j];
    t.reduced = cost;
    t.value = 0;
    for (int i = 0; i < t.m; ++i) {
        Rational cb = cost[t.basis[i]];
        if (cb == 0) continue;
        for (int j = 0; j < total; ++j)
            if (t.A[i][j] != 0) t.reduced[j] -= cb * t.A[i][j];
        t.value += cb * t.rhs[i];
    }
    t.degenerate_run = 0;
    if (!t.optimize(allowed)) {
        sol.status = LpStatus::Unbounded;
        sol.pivots = t.pivots;
        return sol;
    }

    sol.status = LpStatus::Optimal;
    sol.assignment.assign(nvars, Rational(0));
    for (int i = 0; i < t.m; ++i)
        if (t.basis[i] < nvars) sol.assignment[t.basis[i]] = t.rhs[i];
    sol.basis = t.basis;
    sol.pivots = t.pivots;

    Rational value = 0;
    for (int j = 0; j < nvars; ++j) value += spec.objective[j] * sol.assignment[j];
    sol.value = value;
    if ((maximize ? -value : value) != t.value)
        throw SolverSelfCheckError("tableau objective does not match substituted objective");

    for (const auto& v : sol.assignment)
        if (v < 0) throw SolverSelfCheckError("solution violates nonnegativity");
    for (const auto& row : spec.rows) {
        Rational lhs = 0;
        for (int j = 0; j < nvars; ++j)
            if (row.coeffs[j] != 0 && sol.assignment[j] != 0)
                lhs += row.coeffs[j] * sol.assignment[j];
        bool ok = row.rel == Rel::Ge ? lhs >= row.rhs : lhs <= row.rhs;
        if (!ok) throw SolverSelfCheckError("solution violates constraint " + row.name);
    }
    return sol;
}

/// Optimal value of LP_1; equals the limit of c_lambda / lambda.
inline Rational beta(const DistanceMatrix& dm, int primal_cap = kDefaultPrimalCap) {
    if (dm.n <= 1) return 0;
    LpSolution sol = solve_exact(build_primal(dm, 1, primal_cap));
    if (sol.status != LpStatus::Optimal) throw SolverSelfCheckError("LP_1 must have an optimum");
    return sol.value;
}

/// LCM of the denominators of an optimal vertex: a stretch at which the
/// scaled LP optimum is integral, so c_mu = mu * beta is a candidate
/// certificate pair.
inline long long candidate_mu(const LpSolution& sol) {
    return to_int64(lcm_of_denominators(sol.assignment));
}

/// c(G, w) / beta(G, w). Always within [1, ceil(log2 n)].
inline Rational integrality_gap(const DistanceMatrix& dm, long long exact_c,
                                int primal_cap = kDefaultPrimalCap) {
    if (dm.n < 2) throw ValidationError("integrality gap needs at least 2 vertices");
    Rational b = beta(dm, primal_cap);
    if (b <= 0) throw SolverSelfCheckError("beta must be positive for a connected graph");
    Rational gap = Rational(exact_c) / b;
    if (gap < 1 || gap > Rational(log2_ceil(dm.n)))
        throw SolverSelfCheckError("integrality gap " + rat_to_string(gap) +
                                   " outside [1, ceil(log2 n)]");
    return gap;
}

namespace detail {

inline std::string lp_term(const Rational& coeff, const std::string& name, bool first) {
    std::string s;
    Rational a = coeff;
    if (first) {
        if (a < 0) {
            s += "- ";
            a = -a;
        }
    } else {
        s += a < 0 ? " - " : " + ";
        if (a < 0) a = -a;
    }
    if (a != 1) s += rat_to_string(a) + " ";
    s += name;
    return s;
}

}  // namespace detail

/// Plain-text LP exchange format (objective, constraints, bounds). Rows with
/// fractional coefficients are scaled to integers, which leaves the feasible
/// set unchanged; a scaled objective is flagged in a comment.
inline std::string export_lp(const LinearProgramSpec& spec) {
    std::ostringstream out;
    out << "\\ binary stretch embedding linear program\n";
    std::vector<Rational> obj = spec.objective;
    BigInt scale = lcm_of_denominators(obj);
    if (scale != 1) {
        out << "\\ objective scaled by " << scale.str() << "\n";
        for (auto& c : obj) c *= Rational(scale);
    }
    out << (spec.sense == Sense::Minimize ? "Minimize" : "Maximize") << "\n obj:";
    bool first = true;
    for (size_t j = 0; j < obj.size(); ++j) {
        if (obj[j] == 0) continue;
        out << " " << detail::lp_term(obj[j], spec.var_names[j], first);
        first = false;
    }
    if (first) out << " 0 " << (spec.var_names.empty() ? "x0" : spec.var_names[0]);
    out << "\nSubject To\n";
    for (const auto& row : spec.rows) {
        std::vector<Rational> coeffs = row.coeffs;
        coeffs.push_back(row.rhs);
        BigInt rs = lcm_of_denominators(coeffs);
        out << " " << row.name << ":";
        bool f = true;
        for (size_t j = 0; j + 1 < coeffs.size(); ++j) {
            Rational c = coeffs[j] * Rational(rs);
            if (c == 0) continue;
            out << " " << detail::lp_term(c, spec.var_names[j], f);
            f = false;
        }
        if (f) out << " 0 " << (spec.var_names.empty() ? "x0" : spec.var_names[0]);
        out << (row.rel == Rel::Ge ? " >= " : " <= ") << rat_to_string(row.rhs * Rational(rs))
            << "\n";
    }
    out << "Bounds\n";
    for (const auto& name : spec.var_names) out << " " << name << " >= 0\n";
    out << "End\n";
    return out.str();
}

}  // namespace bsep
