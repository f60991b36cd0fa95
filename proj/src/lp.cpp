#include "diamond/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace diamond::lp {

namespace {

constexpr double pivot_tolerance = 1e-9;
constexpr double singular_tolerance = 1e-12;

double row_scale(const std::vector<double>& row) {
    double m = 0.0;
    for (double v : row) m = std::max(m, std::abs(v));
    return m > 0.0 ? m : 1.0;
}

/// Solves M z = r in place by Gaussian elimination with partial pivoting.
/// Returns false when M is numerically singular.
bool solve_dense(std::vector<std::vector<double>> m, std::vector<double> r, std::vector<double>& z) {
    const std::size_t n = r.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i) {
            if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
        }
        if (std::abs(m[piv][col]) < singular_tolerance) return false;
        std::swap(m[piv], m[col]);
        std::swap(r[piv], r[col]);
        for (std::size_t i = col + 1; i < n; ++i) {
            const double f = m[i][col] / m[col][col];
            if (f == 0.0) continue;
            for (std::size_t k = col; k < n; ++k) m[i][k] -= f * m[col][k];
            r[i] -= f * r[col];
        }
    }
    z.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = r[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= m[i][k] * z[k];
        z[i] = s / m[i][i];
    }
    return true;
}

double row_activity(const std::vector<double>& row, const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * x[j];
    return s;
}

std::vector<std::size_t> find_active(const LinearProgram& lp, const std::vector<double>& x) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < lp.num_rows(); ++i) {
        const double slack = (lp.rhs[i] - row_activity(lp.constraints[i], x)) / row_scale(lp.constraints[i]);
        if (std::abs(slack) <= feasibility_tolerance) active.push_back(i);
    }
    return active;
}

/// Dense tableau in the form B^-1 [A | b] with a reduced-cost row.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), a_(rows * (cols + 1), 0.0) {}

    double& at(std::size_t i, std::size_t j) { return a_[i * (n_ + 1) + j]; }
    double at(std::size_t i, std::size_t j) const { return a_[i * (n_ + 1) + j]; }
    double& rhs(std::size_t i) { return at(i, n_); }
    double rhs(std::size_t i) const { return at(i, n_); }

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }

    void pivot(std::size_t r, std::size_t e, std::vector<double>& reduced, double& value) {
        const double p = at(r, e);
        for (std::size_t j = 0; j <= n_; ++j) at(r, j) /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            const double f = at(i, e);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n_; ++j) at(i, j) -= f * at(r, j);
            at(i, e) = 0.0;
        }
        const double f = reduced[e];
        if (f != 0.0) {
            for (std::size_t j = 0; j < n_; ++j) reduced[j] -= f * at(r, j);
            value += f * rhs(r);
            reduced[e] = 0.0;
        }
    }

    void drop_row(std::size_t r) {
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r * (n_ + 1)),
                 a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * (n_ + 1)));
        --m_;
    }

private:
    std::size_t m_;
    std::size_t n_;
    std::vector<double> a_;
};

enum class PhaseResult { optimal, unbounded };

}  // namespace

void LinearProgram::validate() const {
    const std::size_t n = objective.size();
    if (n == 0) throw StructuralError("linear program has no variables");
    if (rhs.size() != constraints.size()) throw StructuralError("rhs length differs from row count");
    if (relations.size() != constraints.size()) throw StructuralError("relation count differs from row count");
    if (lower_bounds.size() != n) throw StructuralError("lower bound count differs from variable count");
    for (const auto& row : constraints) {
        if (row.size() != n) throw StructuralError("constraint row length differs from variable count");
        for (double v : row) {
            if (!std::isfinite(v)) throw StructuralError("non-finite constraint coefficient");
        }
    }
    for (double v : objective) {
        if (!std::isfinite(v)) throw StructuralError("non-finite objective coefficient");
    }
    for (double v : rhs) {
        if (!std::isfinite(v)) throw StructuralError("non-finite right-hand side");
    }
    for (double lb : lower_bounds) {
        if (!(lb == 0.0 || lb == free_variable)) throw StructuralError("lower bounds must be 0 or -infinity");
    }
}

double max_violation(const LinearProgram& lp, const std::vector<double>& x) {
    double worst = 0.0;
    for (std::size_t j = 0; j < lp.num_variables(); ++j) {
        if (lp.lower_bounds[j] == 0.0) worst = std::max(worst, -x[j]);
    }
    for (std::size_t i = 0; i < lp.num_rows(); ++i) {
        const double s = row_scale(lp.constraints[i]);
        const double excess = (row_activity(lp.constraints[i], x) - lp.rhs[i]) / s;
        switch (lp.relations[i]) {
            case Relation::less_equal: worst = std::max(worst, excess); break;
            case Relation::greater_equal: worst = std::max(worst, -excess); break;
            case Relation::equal: worst = std::max(worst, std::abs(excess)); break;
        }
    }
    return worst;
}

double complementary_slackness_residual(const LinearProgram& lp, const std::vector<double>& x,
                                        const std::vector<double>& y) {
    // With objective = b.y, a maximization has y >= 0 on <= rows and y <= 0 on >= rows;
    // a minimization has the opposite signs.
    const double orient = lp.sense == Sense::maximize ? 1.0 : -1.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < lp.num_rows(); ++i) {
        const double slack = lp.rhs[i] - row_activity(lp.constraints[i], x);
        worst = std::max(worst, std::abs(y[i] * slack));
        if (lp.relations[i] == Relation::less_equal) worst = std::max(worst, -orient * y[i]);
        if (lp.relations[i] == Relation::greater_equal) worst = std::max(worst, orient * y[i]);
    }
    for (std::size_t j = 0; j < lp.num_variables(); ++j) {
        double rc = lp.objective[j];
        for (std::size_t i = 0; i < lp.num_rows(); ++i) rc -= y[i] * lp.constraints[i][j];
        worst = std::max(worst, std::abs(x[j] * rc));
        if (lp.lower_bounds[j] == 0.0) {
            worst = std::max(worst, orient * rc);
        } else {
            worst = std::max(worst, std::abs(rc));
        }
    }
    return worst;
}

LpSolution solve_simplex(const LinearProgram& lp) {
    lp.validate();
    if (lp.num_variables() > 32 || lp.num_rows() > 64) {
        throw StructuralError("solve_simplex supports at most 32 variables and 64 rows");
    }
    const std::size_t n = lp.num_variables();
    const std::size_t m = lp.num_rows();

    // Column layout: structural (free variables split in two), then slack/surplus, then artificials.
    std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
    std::size_t ncols = 0;
    for (std::size_t j = 0; j < n; ++j) {
        pos_col[j] = ncols++;
        if (lp.lower_bounds[j] == free_variable) neg_col[j] = ncols++;
    }

    std::vector<double> row_factor(m);
    std::vector<Relation> rel(m);
    for (std::size_t i = 0; i < m; ++i) {
        double f = 1.0 / row_scale(lp.constraints[i]);
        rel[i] = lp.relations[i];
        if (lp.rhs[i] < 0.0) {
            f = -f;
            if (rel[i] == Relation::less_equal) {
                rel[i] = Relation::greater_equal;
            } else if (rel[i] == Relation::greater_equal) {
                rel[i] = Relation::less_equal;
            }
        }
        row_factor[i] = f;
    }
    std::vector<std::size_t> slack_col(m, SIZE_MAX), art_col(m, SIZE_MAX);
    for (std::size_t i = 0; i < m; ++i) {
        if (rel[i] != Relation::equal) slack_col[i] = ncols++;
    }
    const std::size_t first_artificial = ncols;
    for (std::size_t i = 0; i < m; ++i) {
        if (rel[i] != Relation::less_equal) art_col[i] = ncols++;
    }

    // Standard-form matrix, kept for the dual solve.
    std::vector<std::vector<double>> A(m, std::vector<double>(ncols, 0.0));
    std::vector<double> b(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = row_factor[i] * lp.constraints[i][j];
            A[i][pos_col[j]] = v;
            if (neg_col[j] != SIZE_MAX) A[i][neg_col[j]] = -v;
        }
        if (slack_col[i] != SIZE_MAX) A[i][slack_col[i]] = rel[i] == Relation::less_equal ? 1.0 : -1.0;
        if (art_col[i] != SIZE_MAX) A[i][art_col[i]] = 1.0;
        b[i] = row_factor[i] * lp.rhs[i];
    }

    Tableau T(m, ncols);
    std::vector<std::size_t> basis(m);
    std::vector<std::size_t> origin(m);  // original row index of each tableau row
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < ncols; ++j) T.at(i, j) = A[i][j];
        T.rhs(i) = b[i];
        basis[i] = rel[i] == Relation::less_equal ? slack_col[i] : art_col[i];
        origin[i] = i;
    }

    const std::size_t cap = 10 * (m + ncols);
    std::size_t iterations = 0;

    auto run_phase = [&](const std::vector<double>& cost, std::size_t enterable, std::vector<double>& reduced,
                         double& value) {
        reduced.assign(ncols, 0.0);
        value = 0.0;
        for (std::size_t j = 0; j < ncols; ++j) reduced[j] = cost[j];
        for (std::size_t i = 0; i < T.rows(); ++i) {
            const double cb = cost[basis[i]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j < ncols; ++j) reduced[j] -= cb * T.at(i, j);
            value += cb * T.rhs(i);
        }
        for (;;) {
            std::size_t enter = SIZE_MAX;
            for (std::size_t j = 0; j < enterable; ++j) {
                if (reduced[j] > pivot_tolerance) {
                    enter = j;
                    break;
                }
            }
            if (enter == SIZE_MAX) return PhaseResult::optimal;
            std::size_t leave = SIZE_MAX;
            double best_ratio = 0.0;
            for (std::size_t i = 0; i < T.rows(); ++i) {
                const double a = T.at(i, enter);
                if (a <= pivot_tolerance) continue;
                const double ratio = std::max(T.rhs(i), 0.0) / a;
                if (leave == SIZE_MAX || ratio < best_ratio - 1e-14 ||
                    (ratio <= best_ratio + 1e-14 && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == SIZE_MAX) return PhaseResult::unbounded;
            if (++iterations > cap) {
                throw SolverFailure("simplex exceeded its iteration cap of " + std::to_string(cap));
            }
            T.pivot(leave, enter, reduced, value);
            basis[leave] = enter;
        }
    };

    std::vector<double> reduced;
    double value = 0.0;

    LpSolution sol;
    if (first_artificial < ncols) {
        std::vector<double> phase1(ncols, 0.0);
        for (std::size_t j = first_artificial; j < ncols; ++j) phase1[j] = -1.0;
        run_phase(phase1, ncols, reduced, value);
        if (value < -feasibility_tolerance) {
            sol.status = Status::infeasible;
            return sol;
        }
        // Drive zero-level artificials out of the basis; a row with no other
        // nonzero entry is redundant and is dropped.
        for (std::size_t i = 0; i < T.rows();) {
            if (basis[i] < first_artificial) {
                ++i;
                continue;
            }
            std::size_t col = SIZE_MAX;
            for (std::size_t j = 0; j < first_artificial; ++j) {
                if (std::abs(T.at(i, j)) > 1e-9) {
                    col = j;
                    break;
                }
            }
            if (col == SIZE_MAX) {
                T.drop_row(i);
                basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
                origin.erase(origin.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            T.pivot(i, col, reduced, value);
            basis[i] = col;
            ++i;
        }
    }

    const double orient = lp.sense == Sense::maximize ? 1.0 : -1.0;
    std::vector<double> phase2(ncols, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        phase2[pos_col[j]] = orient * lp.objective[j];
        if (neg_col[j] != SIZE_MAX) phase2[neg_col[j]] = -orient * lp.objective[j];
    }
    if (run_phase(phase2, first_artificial, reduced, value) == PhaseResult::unbounded) {
        sol.status = Status::unbounded;
        return sol;
    }

    // Basic values re-solved from the original rows, which removes pivoting drift.
    std::vector<double> xs(ncols, 0.0);
    {
        const std::size_t mb = T.rows();
        std::vector<std::vector<double>> B(mb, std::vector<double>(mb));
        std::vector<double> bb(mb), xb;
        for (std::size_t i = 0; i < mb; ++i) {
            for (std::size_t k = 0; k < mb; ++k) B[i][k] = A[origin[i]][basis[k]];
            bb[i] = b[origin[i]];
        }
        if (mb > 0 && solve_dense(B, bb, xb)) {
            for (std::size_t k = 0; k < mb; ++k) xs[basis[k]] = std::max(xb[k], 0.0);
        } else {
            for (std::size_t i = 0; i < mb; ++i) xs[basis[i]] = std::max(T.rhs(i), 0.0);
        }
    }
    sol.variables.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        sol.variables[j] = xs[pos_col[j]] - (neg_col[j] != SIZE_MAX ? xs[neg_col[j]] : 0.0);
    }
    sol.objective_value = row_activity(lp.objective, sol.variables);
    sol.status = Status::optimal;
    sol.active_constraints = find_active(lp, sol.variables);

    // Duals from B^T y = c_B on the rows that survived phase 1.
    const std::size_t mb = T.rows();
    std::vector<std::vector<double>> BT(mb, std::vector<double>(mb));
    std::vector<double> cb(mb);
    for (std::size_t k = 0; k < mb; ++k) {
        for (std::size_t i = 0; i < mb; ++i) BT[k][i] = A[origin[i]][basis[k]];
        cb[k] = phase2[basis[k]];
    }
    std::vector<double> y;
    sol.duals.assign(m, 0.0);
    if (mb > 0) {
        if (!solve_dense(BT, cb, y)) throw SolverFailure("simplex ended on a singular basis");
        for (std::size_t i = 0; i < mb; ++i) sol.duals[origin[i]] = orient * y[i] * row_factor[origin[i]];
    }

    const double viol = max_violation(lp, sol.variables);
    if (viol > feasibility_tolerance) {
        throw SolverFailure("simplex solution violates a constraint by " + std::to_string(viol));
    }
    const double cs = complementary_slackness_residual(lp, sol.variables, sol.duals);
    if (cs > 1e-7) {
        throw SolverFailure("simplex solution fails complementary slackness by " + std::to_string(cs));
    }
    return sol;
}

LpSolution enumerate_vertices(const LinearProgram& lp) {
    lp.validate();
    const std::size_t n = lp.num_variables();
    const std::size_t m = lp.num_rows();
    if (n > 12 || m > 24) throw StructuralError("enumerate_vertices supports at most 12 variables and 24 rows");

    // Candidate active constraints: every row, then x_j = 0 for each bounded variable.
    std::vector<std::vector<double>> cand_rows;
    std::vector<double> cand_rhs;
    for (std::size_t i = 0; i < m; ++i) {
        const double s = row_scale(lp.constraints[i]);
        std::vector<double> r(n);
        for (std::size_t j = 0; j < n; ++j) r[j] = lp.constraints[i][j] / s;
        cand_rows.push_back(std::move(r));
        cand_rhs.push_back(lp.rhs[i] / s);
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (lp.lower_bounds[j] != 0.0) continue;
        std::vector<double> r(n, 0.0);
        r[j] = 1.0;
        cand_rows.push_back(std::move(r));
        cand_rhs.push_back(0.0);
    }
    const std::size_t k = cand_rows.size();

    LpSolution best;
    best.status = Status::infeasible;
    if (k < n) return best;

    const double orient = lp.sense == Sense::maximize ? 1.0 : -1.0;
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    std::vector<std::vector<double>> M(n);
    std::vector<double> r(n), x;
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) {
            M[i] = cand_rows[pick[i]];
            r[i] = cand_rhs[pick[i]];
        }
        if (solve_dense(M, r, x) && max_violation(lp, x) <= feasibility_tolerance) {
            const double obj = row_activity(lp.objective, x);
            if (best.status != Status::optimal || orient * obj > orient * best.objective_value) {
                best.status = Status::optimal;
                best.objective_value = obj;
                best.variables = x;
            }
        }
        // Next combination in lexicographic order.
        std::size_t i = n;
        while (i > 0 && pick[i - 1] == k - n + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t q = i; q < n; ++q) pick[q] = pick[q - 1] + 1;
    }
    if (best.status == Status::optimal) best.active_constraints = find_active(lp, best.variables);
    return best;
}

std::array<std::array<double, 5>, 5> cutset_matrix(const LinkCapacities& c) {
    return {{
        {-c.C012, -c.C01, -c.C02, 0.0, 1.0},
        {-c.C01, -(c.C01 + c.C23), 0.0, -c.C23, 1.0},
        {-c.C02, 0.0, -(c.C02 + c.C13), -c.C13, 1.0},
        {0.0, -c.C23, -c.C13, -c.C123, 1.0},
        {1.0, 1.0, 1.0, 1.0, 0.0},
    }};
}

LinearProgram build_cutset_primal(const LinkCapacities& caps) {
    const auto A = cutset_matrix(caps);
    LinearProgram lp;
    lp.sense = Sense::maximize;
    lp.objective = {0.0, 0.0, 0.0, 0.0, 1.0};
    for (std::size_t i = 0; i < 5; ++i) {
        lp.constraints.emplace_back(A[i].begin(), A[i].end());
        lp.rhs.push_back(i < 4 ? 0.0 : 1.0);
        lp.relations.push_back(i < 4 ? Relation::less_equal : Relation::equal);
    }
    lp.lower_bounds.assign(5, 0.0);
    return lp;
}

LinearProgram build_cutset_dual(const LinkCapacities& caps) {
    const auto A = cutset_matrix(caps);
    LinearProgram lp;
    lp.sense = Sense::minimize;
    lp.objective = {0.0, 0.0, 0.0, 0.0, 1.0};
    // Column j of A gives dual row j; A is symmetric so rows are read directly.
    for (std::size_t j = 0; j < 5; ++j) {
        std::vector<double> row(5);
        for (std::size_t i = 0; i < 5; ++i) row[i] = A[i][j];
        lp.constraints.push_back(std::move(row));
        lp.rhs.push_back(j < 4 ? 0.0 : 1.0);
        lp.relations.push_back(j < 4 ? Relation::greater_equal : Relation::equal);
    }
    lp.lower_bounds.assign(5, 0.0);
    return lp;
}

std::array<double, 4> cut_values(const LinkCapacities& c, const std::array<double, 4>& t) {
    return {
        t[0] * c.C012 + t[1] * c.C01 + t[2] * c.C02,
        t[0] * c.C01 + t[1] * (c.C01 + c.C23) + t[3] * c.C23,
        t[0] * c.C02 + t[2] * (c.C02 + c.C13) + t[3] * c.C13,
        t[1] * c.C23 + t[2] * c.C13 + t[3] * c.C123,
    };
}

std::array<double, 4> dual_rows(const LinkCapacities& caps, const std::array<double, 4>& tau) {
    return cut_values(caps, tau);
}

double cutset_optimum(const LinkCapacities& caps) {
    const LpSolution s = solve_simplex(build_cutset_primal(caps));
    if (s.status != Status::optimal) throw SolverFailure("cut-set program did not reach an optimum");
    return s.objective_value;
}

GridResult grid_search_schedule(const std::function<double(const std::array<double, 4>&)>& rate_fn,
                                int resolution) {
    if (resolution < 10) throw std::invalid_argument("grid_search_schedule: resolution must be at least 10");
    GridResult best;
    const double step = 1.0 / resolution;
    for (int i1 = 0; i1 <= resolution; ++i1) {
        for (int i2 = 0; i1 + i2 <= resolution; ++i2) {
            for (int i3 = 0; i1 + i2 + i3 <= resolution; ++i3) {
                const int i4 = resolution - i1 - i2 - i3;
                const std::array<double, 4> t{i1 * step, i2 * step, i3 * step, i4 * step};
                const double r = rate_fn(t);
                if (r > best.rate) {
                    best.rate = r;
                    best.schedule = t;
                }
            }
        }
    }
    return best;
}

}  // namespace diamond::lp
