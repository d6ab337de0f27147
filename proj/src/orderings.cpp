#include "qfgcpe/orderings.hpp"

#include "qfgcpe/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace qfgcpe::orderings {

namespace {

constexpr double kTol = 1e-10;

// Builds a verdict from signed margins d_i (the inequality holds iff d >= 0).
OrderVerdict verdict_from_margins(const std::vector<double>& d,
                                  const std::vector<double>& at,
                                  const std::vector<double>& lhs,
                                  const std::vector<double>& rhs) {
    OrderVerdict out;
    out.grid_size = static_cast<int>(d.size());
    double worst = std::numeric_limits<double>::infinity();
    std::size_t worst_i = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] < worst) {
            worst = d[i];
            worst_i = i;
        }
    }
    if (worst < -kTol) {
        out.relation = Relation::fails;
        out.witness = Witness{at[worst_i], lhs[worst_i], rhs[worst_i]};
    } else if (worst < 0.0) {
        out.relation = Relation::inconclusive;
    } else {
        out.relation = Relation::holds;
    }
    return out;
}

std::vector<double> uniform_grid(int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = 1e-9 + (1.0 - 2e-9) * i / (n - 1);
    return g;
}

bool holds(const OrderVerdict& v) { return v.relation == Relation::holds; }

TheoremReport make_report(bool hyp, const OrderVerdict& conclusion) {
    TheoremReport r;
    r.hypothesis_holds = hyp;
    r.conclusion_holds = conclusion.relation != Relation::fails;
    r.consistent = !hyp || r.conclusion_holds;
    return r;
}

// psi' must be monotone along Q_X(v) for the concavity/convexity hypotheses.
bool derivative_monotone(const models::QuantileModel& m,
                         const std::function<double(double)>& psi_prime, bool decreasing,
                         int grid) {
    const auto g = uniform_grid(grid);
    double prev = psi_prime(m.Q(g.front()));
    if (!(prev > 0.0)) return false;
    for (int i = 1; i < grid; ++i) {
        const double cur = psi_prime(m.Q(g[i]));
        if (!(cur > 0.0)) return false;
        if (decreasing ? cur > prev + kTol : cur < prev - kTol) return false;
        prev = cur;
    }
    return true;
}

} // namespace

OrderVerdict check_order(OrderKind kind, const models::QuantileModel& mX,
                         const models::QuantileModel& mY, int grid,
                         std::optional<double> eta, const std::vector<double>& v_grid) {
    if (grid < 2) throw std::invalid_argument("check_order: grid must be >= 2");
    if ((kind == OrderKind::QFGCPE || kind == OrderKind::DQFGCPE) && !eta)
        throw std::invalid_argument("check_order: eta required for entropy orders");

    std::vector<double> d, at, lhs, rhs;
    switch (kind) {
        case OrderKind::HQ:
            for (double v : uniform_grid(grid)) {
                const double hx = models::hazard_quantile(mX, v);
                const double hy = models::hazard_quantile(mY, v);
                d.push_back(hx - hy); // H_X >= H_Y
                at.push_back(v);
                lhs.push_back(hx);
                rhs.push_back(hy);
            }
            break;
        case OrderKind::RHQ:
            for (double v : uniform_grid(grid)) {
                const double rx = models::reversed_hazard_quantile(mX, v);
                const double ry = models::reversed_hazard_quantile(mY, v);
                d.push_back(ry - rx); // R_X <= R_Y
                at.push_back(v);
                lhs.push_back(rx);
                rhs.push_back(ry);
            }
            break;
        case OrderKind::disp:
            for (double v : uniform_grid(grid)) {
                const double qx = mX.Q(v);
                const double qy = mY.Q(v);
                d.push_back(qy - qx);
                at.push_back(v);
                lhs.push_back(qx);
                rhs.push_back(qy);
            }
            break;
        case OrderKind::QFGCPE: {
            const double ex = entropy::qfgcpe(mX, *eta);
            const double ey = entropy::qfgcpe(mY, *eta);
            d.push_back(ey - ex);
            at.push_back(0.0);
            lhs.push_back(ex);
            rhs.push_back(ey);
            break;
        }
        case OrderKind::DQFGCPE: {
            const std::vector<double> vg = v_grid.empty() ? uniform_grid(grid) : v_grid;
            for (double v : vg) {
                const double ex = entropy::dqfgcpe(mX, *eta, v);
                const double ey = entropy::dqfgcpe(mY, *eta, v);
                d.push_back(ey - ex);
                at.push_back(v);
                lhs.push_back(ex);
                rhs.push_back(ey);
            }
            break;
        }
    }
    auto verdict = verdict_from_margins(d, at, lhs, rhs);
    verdict.grid_size = grid;
    return verdict;
}

Monotonicity classify_dqfgcpe_monotonicity(const models::QuantileModel& m, double eta,
                                           const std::vector<double>& v_grid) {
    if (v_grid.size() < 50)
        throw std::invalid_argument("classify_dqfgcpe_monotonicity: v_grid must have >= 50 points");
    constexpr double tol = 1e-9;
    std::vector<double> vals;
    vals.reserve(v_grid.size());
    for (double v : v_grid) vals.push_back(entropy::dqfgcpe(m, eta, v));
    bool nondec = true, noninc = true;
    for (std::size_t i = 1; i < vals.size(); ++i) {
        const double diff = vals[i] - vals[i - 1];
        if (diff < -tol) nondec = false;
        if (diff > tol) noninc = false;
    }
    if (nondec) return Monotonicity::increasing;
    if (noninc) return Monotonicity::decreasing;
    return Monotonicity::neither;
}

TheoremReport check_theorem_hq_implies_qfgcpe(const models::QuantileModel& mX,
                                              const models::QuantileModel& mY, double eta,
                                              int grid) {
    const bool hyp = holds(check_order(OrderKind::HQ, mX, mY, grid)) ||
                     holds(check_order(OrderKind::RHQ, mY, mX, grid)); // X >=_RHQ Y
    return make_report(hyp, check_order(OrderKind::QFGCPE, mX, mY, grid, eta));
}

TheoremReport check_theorem_disp_transform_qfgcpe(
    const models::QuantileModel& mX, const models::QuantileModel& mY, double eta,
    const std::function<double(double)>& psi,
    const std::function<double(double)>& psi_prime, bool concave, int grid) {
    const bool disp = holds(check_order(OrderKind::disp, mX, mY, grid));
    const bool order_hyp =
        concave ? holds(check_order(OrderKind::RHQ, mX, mY, grid))
                : holds(check_order(OrderKind::HQ, mX, mY, grid));
    const bool shape = derivative_monotone(mX, psi_prime, concave, grid) &&
                       derivative_monotone(mY, psi_prime, concave, grid);
    const bool hyp = disp && order_hyp && shape;

    const auto tX = models::monotone_map(mX, psi, psi_prime);
    const auto tY = models::monotone_map(mY, psi, psi_prime);
    // concave branch concludes psi(X) >=_QFGCPE psi(Y)
    const auto conclusion = concave ? check_order(OrderKind::QFGCPE, tY, tX, grid, eta)
                                    : check_order(OrderKind::QFGCPE, tX, tY, grid, eta);
    return make_report(hyp, conclusion);
}

TheoremReport check_theorem_transform_preserves_monotonicity(
    const models::QuantileModel& m, double eta, const std::function<double(double)>& psi,
    const std::function<double(double)>& psi_prime, bool convex,
    const std::vector<double>& v_grid) {
    const auto cls = classify_dqfgcpe_monotonicity(m, eta, v_grid);
    const auto expected = convex ? Monotonicity::increasing : Monotonicity::decreasing;
    const bool shape = derivative_monotone(m, psi_prime, !convex, 200);
    const bool hyp = (cls == expected) && shape;

    const auto t = models::monotone_map(m, psi, psi_prime);
    const auto tcls = classify_dqfgcpe_monotonicity(t, eta, v_grid);
    TheoremReport r;
    r.hypothesis_holds = hyp;
    r.conclusion_holds = tcls == expected;
    r.consistent = !hyp || r.conclusion_holds;
    return r;
}

TheoremReport check_theorem_disp_implies_dqfgcpe(const models::QuantileModel& mX,
                                                 const models::QuantileModel& mY, double eta,
                                                 const std::vector<double>& v_grid,
                                                 int grid) {
    const bool hyp = holds(check_order(OrderKind::disp, mX, mY, grid));
    return make_report(hyp,
                       check_order(OrderKind::DQFGCPE, mX, mY, grid, eta, v_grid));
}

TheoremReport check_theorem_dqfgcpe_preserved_by_transform(
    const models::QuantileModel& mX, const models::QuantileModel& mY, double eta,
    const std::function<double(double)>& psi,
    const std::function<double(double)>& psi_prime, const std::vector<double>& v_grid) {
    const bool order_hyp =
        holds(check_order(OrderKind::DQFGCPE, mX, mY, 200, eta, v_grid));
    const bool shape = derivative_monotone(mX, psi_prime, false, 200) &&
                       derivative_monotone(mY, psi_prime, false, 200);
    const bool hyp = order_hyp && shape;
    const auto tX = models::monotone_map(mX, psi, psi_prime);
    const auto tY = models::monotone_map(mY, psi, psi_prime);
    return make_report(hyp,
                       check_order(OrderKind::DQFGCPE, tX, tY, 200, eta, v_grid));
}

} // namespace qfgcpe::orderings
