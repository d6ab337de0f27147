#pragma once

#include "qfgcpe/quantile_models.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace qfgcpe::orderings {

enum class OrderKind { HQ, RHQ, disp, QFGCPE, DQFGCPE };
enum class Relation { holds, fails, inconclusive };
enum class Monotonicity { increasing, decreasing, neither };

struct Witness {
    double v = 0.0;   // grid point where the defining inequality fails
    double lhs = 0.0;
    double rhs = 0.0;
};

struct OrderVerdict {
    Relation relation = Relation::inconclusive;
    std::optional<Witness> witness; // present whenever relation == fails
    int grid_size = 0;
};

/// Grid semi-decision of the stochastic orders:
///   HQ      : H_X(v) >= H_Y(v)
///   RHQ     : R_X(v) <= R_Y(v)
///   disp    : Q_Y(v) - Q_X(v) >= 0
///   QFGCPE  : qfgcpe(X) <= qfgcpe(Y)            (needs eta)
///   DQFGCPE : dqfgcpe(X,v) <= dqfgcpe(Y,v) on v_grid (needs eta)
/// `holds` means no violation on the grid; violations within the 1e-10
/// tolerance band yield `inconclusive`.
OrderVerdict check_order(OrderKind kind, const models::QuantileModel& mX,
                         const models::QuantileModel& mY, int grid = 1000,
                         std::optional<double> eta = std::nullopt,
                         const std::vector<double>& v_grid = {});

/// Finite-difference monotonicity of v -> dqfgcpe(m, eta, v) on v_grid
/// (>= 50 points), tolerance 1e-9.
Monotonicity classify_dqfgcpe_monotonicity(const models::QuantileModel& m, double eta,
                                           const std::vector<double>& v_grid);

struct TheoremReport {
    bool hypothesis_holds = false;
    bool conclusion_holds = false; // conclusion not refuted on the grid
    bool consistent = true;        // !(hypothesis_holds && conclusion fails)
};

/// X <=_HQ Y (equivalently X >=_RHQ Y) implies X <=_QFGCPE Y.
TheoremReport check_theorem_hq_implies_qfgcpe(const models::QuantileModel& mX,
                                              const models::QuantileModel& mY, double eta,
                                              int grid = 1000);

/// With X <=_RHQ Y, X <=_disp Y and psi increasing concave:
/// psi(X) >=_QFGCPE psi(Y). With X <=_HQ Y and psi increasing convex:
/// psi(X) <=_QFGCPE psi(Y). `concave` selects the branch.
TheoremReport check_theorem_disp_transform_qfgcpe(
    const models::QuantileModel& mX, const models::QuantileModel& mY, double eta,
    const std::function<double(double)>& psi,
    const std::function<double(double)>& psi_prime, bool concave, int grid = 1000);

/// Increasing positive convex (concave) psi preserves the IDQFGCPE
/// (DDQFGCPE) class.
TheoremReport check_theorem_transform_preserves_monotonicity(
    const models::QuantileModel& m, double eta, const std::function<double(double)>& psi,
    const std::function<double(double)>& psi_prime, bool convex,
    const std::vector<double>& v_grid);

/// X <=_disp Y implies X <=_DQFGCPE Y.
TheoremReport check_theorem_disp_implies_dqfgcpe(const models::QuantileModel& mX,
                                                 const models::QuantileModel& mY, double eta,
                                                 const std::vector<double>& v_grid,
                                                 int grid = 1000);

/// X <=_DQFGCPE Y is preserved by increasing nonnegative convex psi.
TheoremReport check_theorem_dqfgcpe_preserved_by_transform(
    const models::QuantileModel& mX, const models::QuantileModel& mY, double eta,
    const std::function<double(double)>& psi,
    const std::function<double(double)>& psi_prime, const std::vector<double>& v_grid);

} // namespace qfgcpe::orderings
