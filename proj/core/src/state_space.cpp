#include "phasekit/state_space.hpp"

#include "phasekit/errors.hpp"
#include "phasekit/matphase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace phasekit {

namespace {

// Verification frequencies spanning the system's dynamics, plus omega = 0.
std::vector<double> verification_grid(const StateSpace& ss, int points = 60) {
    double lo = 0.01;
    double hi = 100.0;
    if (ss.order() > 0) {
        const Eigen::VectorXcd eigs = Eigen::EigenSolver<Matrix>(ss.A, false).eigenvalues();
        double emin = std::numeric_limits<double>::infinity();
        double emax = 0.0;
        for (Eigen::Index i = 0; i < eigs.size(); ++i) {
            const double a = std::abs(eigs(i));
            if (a > 1e-12) emin = std::min(emin, a);
            emax = std::max(emax, a);
        }
        if (std::isfinite(emin)) lo = std::min(0.01, 0.01 * emin);
        hi = 100.0 * std::max(1.0, emax);
    }
    std::vector<double> ws{0.0};
    for (int k = 0; k < points; ++k) {
        ws.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (points - 1)));
    }
    return ws;
}

double response_mismatch(const StateSpace& a, const StateSpace& b,
                         const std::vector<double>& ws, double* norm_out) {
    double err = 0.0;
    double nrm = 0.0;
    for (double w : ws) {
        ComplexMatrix Ga, Gb;
        try {
            Ga = freq_response(a, w);
            Gb = freq_response(b, w);
        } catch (const ResonantFrequency&) {
            continue;
        }
        err = std::max(err, (Ga - Gb).operatorNorm());
        nrm = std::max(nrm, Ga.operatorNorm());
    }
    if (norm_out) *norm_out = nrm;
    return err;
}

Matrix solve_lyapunov(const Matrix& A, const Matrix& W) {
    const int n = static_cast<int>(A.rows());
    Matrix M = Matrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int row = i + n * j;
            for (int k = 0; k < n; ++k) {
                M(row, k + n * j) += A(i, k);   // (A P)_{ij}
                M(row, i + n * k) += A(j, k);   // (P A')_{ij}
            }
        }
    }
    Vector rhs(n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) rhs(i + n * j) = -W(i, j);
    }
    const Vector p = M.partialPivLu().solve(rhs);
    Matrix P(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) P(i, j) = p(i + n * j);
    }
    return 0.5 * (P + P.transpose());
}

Matrix psd_sqrt_factor(const Matrix& P) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(P);
    Vector d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * d.asDiagonal();
}

// Keeps the controllable subspace (range of the controllability matrix).
StateSpace controllable_part(const StateSpace& ss, double tol) {
    const int n = ss.order();
    if (n == 0) return ss;
    const int m = ss.inputs();
    Matrix K(n, n * m);
    Matrix AkB = ss.B;
    for (int k = 0; k < n; ++k) {
        K.middleCols(k * m, m) = AkB;
        AkB = ss.A * AkB;
    }
    Eigen::ColPivHouseholderQR<Matrix> qr(K);
    qr.setThreshold(tol);
    const int r = static_cast<int>(qr.rank());
    if (r == n) return ss;
    const Matrix Q = qr.householderQ();
    const Matrix V = Q.leftCols(std::max(r, 0));
    StateSpace out;
    out.A = V.transpose() * ss.A * V;
    out.B = V.transpose() * ss.B;
    out.C = ss.C * V;
    out.D = ss.D;
    return out;
}

StateSpace transpose_system(const StateSpace& ss) {
    return StateSpace{ss.A.transpose(), ss.C.transpose(), ss.B.transpose(),
                      ss.D.transpose()};
}

}  // namespace

StateSpace StateSpace::static_gain(const Matrix& D) {
    StateSpace ss;
    ss.A = Matrix::Zero(0, 0);
    ss.B = Matrix::Zero(0, D.cols());
    ss.C = Matrix::Zero(D.rows(), 0);
    ss.D = D;
    return ss;
}

void StateSpace::validate() const {
    const auto n = A.rows();
    if (A.cols() != n || B.rows() != n || C.cols() != n || B.cols() != D.cols() ||
        C.rows() != D.rows()) {
        throw DimensionMismatch("StateSpace: inconsistent dimensions");
    }
    if (!A.allFinite() || !B.allFinite() || !C.allFinite() || !D.allFinite()) {
        throw DimensionMismatch("StateSpace: non-finite entries");
    }
}

StateSpace realize(const RationalTransferMatrix& tfm) {
    const int m = tfm.size();
    std::vector<Matrix> Ablocks, Bblocks, Cblocks;
    Matrix D = Matrix::Zero(m, m);
    int total = 0;

    for (int j = 0; j < m; ++j) {
        Polynomial col_den = Polynomial::one();
        for (int i = 0; i < m; ++i) {
            col_den = Polynomial::lcm(col_den, tfm.entry(i, j).den);
        }
        bool ok = true;
        for (int i = 0; i < m; ++i) {
            ok = ok && Polynomial::divides(tfm.entry(i, j).den, col_den);
        }
        if (!ok) {
            col_den = Polynomial::one();
            for (int i = 0; i < m; ++i) col_den = col_den * tfm.entry(i, j).den;
            col_den = col_den.monic();
        }
        const int q = col_den.degree();

        Matrix Cj = Matrix::Zero(m, std::max(q, 0));
        for (int i = 0; i < m; ++i) {
            const RationalEntry& e = tfm.entry(i, j);
            if (!e.num.is_zero() && e.num.degree() == e.den.degree()) {
                D(i, j) = e.num.leading() / e.den.leading();
            }
            if (q == 0) continue;
            const Polynomial lift = e.num * Polynomial::divmod(col_den, e.den).first;
            const Polynomial strictly_proper = lift - col_den * D(i, j);
            for (int k = 0; k < q; ++k) Cj(i, k) = strictly_proper.coefficient(k);
        }
        if (q > 0) {
            Matrix Aj = Matrix::Zero(q, q);
            for (int k = 0; k + 1 < q; ++k) Aj(k, k + 1) = 1.0;
            for (int k = 0; k < q; ++k) Aj(q - 1, k) = -col_den.coefficient(k);
            Matrix Bj = Matrix::Zero(q, m);
            Bj(q - 1, j) = 1.0;
            Ablocks.push_back(Aj);
            Bblocks.push_back(Bj);
            Cblocks.push_back(Cj);
            total += q;
        }
    }

    StateSpace ss;
    ss.A = Matrix::Zero(total, total);
    ss.B = Matrix::Zero(total, m);
    ss.C = Matrix::Zero(m, total);
    ss.D = D;
    int off = 0;
    for (size_t b = 0; b < Ablocks.size(); ++b) {
        const int q = static_cast<int>(Ablocks[b].rows());
        ss.A.block(off, off, q, q) = Ablocks[b];
        ss.B.middleRows(off, q) = Bblocks[b];
        ss.C.middleCols(off, q) = Cblocks[b];
        off += q;
    }
    return ss;
}

bool is_hurwitz(const StateSpace& ss) {
    ss.validate();
    if (ss.order() == 0) return true;
    const Eigen::VectorXcd eigs = Eigen::EigenSolver<Matrix>(ss.A, false).eigenvalues();
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        if (eigs(i).real() >= -kStabEps) return false;
    }
    return true;
}

ComplexMatrix freq_response(const StateSpace& ss, double omega) {
    return eval_at(ss, Complex(0.0, omega));
}

ComplexMatrix eval_at(const StateSpace& ss, Complex s) {
    ss.validate();
    if (ss.order() == 0) return ss.D.cast<Complex>();
    ComplexMatrix M = -ss.A.cast<Complex>();
    M.diagonal().array() += s;
    Eigen::FullPivLU<ComplexMatrix> lu(M);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) {
        throw ResonantFrequency("freq_response: evaluation point is a pole of the realization",
                                s.imag());
    }
    return ss.C.cast<Complex>() * lu.solve(ss.B.cast<Complex>()) + ss.D.cast<Complex>();
}

Matrix gramian(const StateSpace& ss, char type) {
    ss.validate();
    if (!is_hurwitz(ss)) throw Unstable("gramian: system must be Hurwitz");
    if (type == 'c') return solve_lyapunov(ss.A, ss.B * ss.B.transpose());
    if (type == 'o') return solve_lyapunov(ss.A.transpose(), ss.C.transpose() * ss.C);
    throw std::invalid_argument("gramian: type must be 'c' or 'o'");
}

StateSpace remove_hidden_modes(const StateSpace& ss, double tol) {
    const StateSpace ctrb = controllable_part(ss, tol);
    return transpose_system(controllable_part(transpose_system(ctrb), tol));
}

StateSpace minimal_realization(const StateSpace& ss, double tol) {
    ss.validate();
    if (ss.order() == 0) return ss;
    const std::vector<double> ws = verification_grid(ss);

    StateSpace reduced;
    if (!is_hurwitz(ss)) {
        reduced = remove_hidden_modes(ss, std::max(tol, 1e-12));
        double nrm = 0.0;
        const double err = response_mismatch(ss, reduced, ws, &nrm);
        if (err > 1e-6 * (1.0 + nrm)) {
            throw ToleranceNotMet("minimal_realization: staircase reduction changed the response");
        }
        return reduced;
    }

    const Matrix P = solve_lyapunov(ss.A, ss.B * ss.B.transpose());
    const Matrix Q = solve_lyapunov(ss.A.transpose(), ss.C.transpose() * ss.C);
    const Matrix Zc = psd_sqrt_factor(P);
    const Matrix Zo = psd_sqrt_factor(Q);
    Eigen::JacobiSVD<Matrix> svd(Zo.transpose() * Zc,
                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector hsv = svd.singularValues();
    const int n = ss.order();
    // Truncation threshold sized so the theoretical error bound (twice the sum
    // of the discarded Hankel singular values) stays below tol * ||G||_inf.
    const double thresh = hsv.size() > 0 ? tol * hsv(0) / (2.0 * n + 2.0) : 0.0;
    int r = 0;
    while (r < hsv.size() && hsv(r) > thresh && hsv(r) > 0.0) ++r;

    if (r == 0) {
        reduced = StateSpace::static_gain(ss.D);
    } else if (r == n) {
        reduced = ss;
    } else {
        const Vector si = hsv.head(r).cwiseSqrt().cwiseInverse();
        const Matrix T = Zc * svd.matrixV().leftCols(r) * si.asDiagonal();
        const Matrix Ti = si.asDiagonal() * svd.matrixU().leftCols(r).transpose() *
                          Zo.transpose();
        reduced.A = Ti * ss.A * T;
        reduced.B = Ti * ss.B;
        reduced.C = ss.C * T;
        reduced.D = ss.D;
    }

    double nrm = 0.0;
    const double err = response_mismatch(ss, reduced, ws, &nrm);
    if (err > tol * nrm + 1e-12 * (1.0 + nrm)) {
        throw ToleranceNotMet("minimal_realization: reduction error " + std::to_string(err) +
                              " exceeds the bound");
    }
    return reduced;
}

}  // namespace phasekit
