#pragma once

#include "phasekit/transfer_matrix.hpp"
#include "phasekit/types.hpp"

namespace phasekit {

/// Real continuous-time realization x' = Ax + Bu, y = Cx + Du.
struct StateSpace {
    Matrix A;
    Matrix B;
    Matrix C;
    Matrix D;

    int order() const { return static_cast<int>(A.rows()); }
    int inputs() const { return static_cast<int>(D.cols()); }
    int outputs() const { return static_cast<int>(D.rows()); }

    static StateSpace static_gain(const Matrix& D);
    void validate() const;
};

/// Block-diagonal controllable-canonical realization over each column's
/// common denominator. Possibly non-minimal.
StateSpace realize(const RationalTransferMatrix& tfm);

/// Balanced truncation for Hurwitz systems (Kalman staircase fallback
/// otherwise); verifies the frequency response on a grid and throws
/// ToleranceNotMet when the reduction error exceeds the bound.
StateSpace minimal_realization(const StateSpace& ss, double tol = 1e-9);

/// Removes uncontrollable/unobservable modes via orthogonal staircase
/// transforms; valid for unstable systems.
StateSpace remove_hidden_modes(const StateSpace& ss, double tol = 1e-9);

/// All eigenvalues of A strictly left of -kStabEps.
bool is_hurwitz(const StateSpace& ss);

/// G(j omega) = C (j omega I - A)^{-1} B + D via a linear solve.
ComplexMatrix freq_response(const StateSpace& ss, double omega);

/// Evaluation at an arbitrary complex point (used by oracles and solvers).
ComplexMatrix eval_at(const StateSpace& ss, Complex s);

/// Controllability (type=='c') or observability (type=='o') gramian;
/// requires a Hurwitz system.
Matrix gramian(const StateSpace& ss, char type);

}  // namespace phasekit
