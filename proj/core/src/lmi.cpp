#include "phasekit/lmi.hpp"

#include "phasekit/errors.hpp"

#include <cmath>

namespace phasekit {

namespace {

bool is_real(const ComplexMatrix& M, double tol = 1e-14) {
    return M.imag().cwiseAbs().maxCoeff() <= tol * (1.0 + M.cwiseAbs().maxCoeff());
}

void check_hermitian(const ComplexMatrix& M, const char* who) {
    if (M.rows() != M.cols() ||
        (M - M.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + M.cwiseAbs().maxCoeff())) {
        throw DimensionMismatch(std::string(who) + ": matrix must be Hermitian");
    }
}

// Scalar layout of one Hermitian variable: diagonal, off-diagonal real parts,
// then off-diagonal imaginary parts.
struct ScalarIndex {
    int p, q;
    enum Kind { diag, off_real, off_imag } kind;
};

ScalarIndex scalar_index(const VariableBlockInfo& v, int k) {
    const int n = v.dim;
    if (k < n) return {k, k, ScalarIndex::diag};
    k -= n;
    const int off = n * (n - 1) / 2;
    const auto locate = [n](int idx) {
        for (int p = 0; p < n; ++p) {
            const int row_len = n - p - 1;
            if (idx < row_len) return std::pair<int, int>{p, p + 1 + idx};
            idx -= row_len;
        }
        return std::pair<int, int>{-1, -1};
    };
    if (k < off) {
        const auto [p, q] = locate(k);
        return {p, q, ScalarIndex::off_real};
    }
    const auto [p, q] = locate(k - off);
    return {p, q, ScalarIndex::off_imag};
}

}  // namespace

ComplexMatrix VariableBlockInfo::basis_matrix(int k) const {
    ComplexMatrix E = ComplexMatrix::Zero(dim, dim);
    const ScalarIndex s = scalar_index(*this, k);
    switch (s.kind) {
        case ScalarIndex::diag:
            E(s.p, s.p) = 1.0;
            break;
        case ScalarIndex::off_real:
            E(s.p, s.q) = 1.0;
            E(s.q, s.p) = 1.0;
            break;
        case ScalarIndex::off_imag:
            E(s.p, s.q) = Complex(0.0, 1.0);
            E(s.q, s.p) = Complex(0.0, -1.0);
            break;
    }
    return E;
}

ComplexMatrix VariableBlockInfo::value(const Vector& y) const {
    ComplexMatrix X = ComplexMatrix::Zero(dim, dim);
    for (int k = 0; k < count(); ++k) X += y(offset + k) * basis_matrix(k);
    return X;
}

ComplexMatrix LmiBlock::assemble(const Vector& y) const {
    ComplexMatrix M = constant;
    for (size_t i = 0; i < basis.size(); ++i) {
        if (y(static_cast<Eigen::Index>(i)) != 0.0) {
            M += y(static_cast<Eigen::Index>(i)) * basis[i];
        }
    }
    return M;
}

int HermitianLmi::num_scalars() const {
    int n = 0;
    for (const auto& v : variables) n += v.count();
    return n;
}

ComplexMatrix HermitianLmi::variable_value(const std::string& name, const Vector& y) const {
    for (const auto& v : variables) {
        if (v.name == name) return v.value(y);
    }
    throw std::invalid_argument("HermitianLmi: unknown variable '" + name + "'");
}

double HermitianLmi::data_norm() const {
    double n = main.constant.norm();
    for (const auto& s : side_constraints) n = std::max(n, s.constant.norm());
    return n;
}

CurveSpec imaginary_axis_curve() {
    CurveSpec c;
    c.Sigma << 0, 1, 1, 0;
    c.Psi.setZero();
    return c;
}

CurveSpec positive_frequency_curve() {
    CurveSpec c;
    c.Sigma << 0, 1, 1, 0;
    c.Psi << Complex(0, 0), Complex(0, 1), Complex(0, -1), Complex(0, 0);
    return c;
}

HermitianLmi assemble_kyp(const ComplexMatrix& A, const ComplexMatrix& B,
                          const ComplexMatrix& M) {
    const int n = static_cast<int>(A.rows());
    const int m = static_cast<int>(B.cols());
    if (A.cols() != n || B.rows() != n || M.rows() != n + m) {
        throw DimensionMismatch("assemble_kyp: dimension mismatch");
    }
    check_hermitian(M, "assemble_kyp");
    if (n > 0) {
        const Eigen::VectorXcd eigs =
            Eigen::ComplexEigenSolver<ComplexMatrix>(A, false).eigenvalues();
        for (Eigen::Index i = 0; i < eigs.size(); ++i) {
            if (std::abs(eigs(i).real()) <= 1e-9 * (1.0 + std::abs(eigs(i)))) {
                throw ImaginaryAxisEigenvalue("assemble_kyp: A has an imaginary-axis eigenvalue");
            }
        }
    }

    HermitianLmi lmi;
    VariableBlockInfo X{"X", n, !(is_real(A) && is_real(B) && is_real(M)), 0};
    lmi.variables = {X};
    lmi.main.name = "kyp";
    lmi.main.constant = M;
    lmi.main.basis.reserve(X.count());
    for (int k = 0; k < X.count(); ++k) {
        const ComplexMatrix E = X.basis_matrix(k);
        ComplexMatrix F = ComplexMatrix::Zero(n + m, n + m);
        F.topLeftCorner(n, n) = A.adjoint() * E + E * A;
        F.topRightCorner(n, m) = E * B;
        F.bottomLeftCorner(m, n) = B.adjoint() * E;
        lmi.main.basis.push_back(F);
    }
    return lmi;
}

HermitianLmi assemble_gkyp(const ComplexMatrix& A, const ComplexMatrix& B,
                           const ComplexMatrix& M, const CurveSpec& curve) {
    const int n = static_cast<int>(A.rows());
    const int m = static_cast<int>(B.cols());
    if (A.cols() != n || B.rows() != n || M.rows() != n + m) {
        throw DimensionMismatch("assemble_gkyp: dimension mismatch");
    }
    check_hermitian(M, "assemble_gkyp");

    HermitianLmi lmi;
    const bool real_data = is_real(A) && is_real(B) && is_real(M) &&
                           is_real(curve.Sigma) && is_real(curve.Psi);
    VariableBlockInfo X{"X", n, !real_data, 0};
    VariableBlockInfo Y{"Y", n, !real_data, X.count()};
    lmi.variables = {X, Y};
    lmi.main.name = "gkyp";
    lmi.main.constant = M;

    if (n == 0) {
        // Degenerate static case: the LMI collapses to M < 0.
        return lmi;
    }

    ComplexMatrix P(2 * n, n + m);
    P.topLeftCorner(n, n) = A;
    P.topRightCorner(n, m) = B;
    P.bottomLeftCorner(n, n) = ComplexMatrix::Identity(n, n);
    P.bottomRightCorner(n, m).setZero();

    const auto outer = [&](const Eigen::Matrix2cd& W, const ComplexMatrix& E) {
        ComplexMatrix K(2 * n, 2 * n);
        K.topLeftCorner(n, n) = W(0, 0) * E;
        K.topRightCorner(n, n) = W(0, 1) * E;
        K.bottomLeftCorner(n, n) = W(1, 0) * E;
        K.bottomRightCorner(n, n) = W(1, 1) * E;
        return ComplexMatrix(P.adjoint() * K * P);
    };

    LmiBlock y_pd;
    y_pd.name = "Y_pd";
    y_pd.sense = LmiBlock::Sense::positive_definite;
    y_pd.constant = ComplexMatrix::Zero(n, n);

    for (int k = 0; k < X.count(); ++k) {
        lmi.main.basis.push_back(outer(curve.Sigma, X.basis_matrix(k)));
        y_pd.basis.push_back(ComplexMatrix::Zero(n, n));
    }
    for (int k = 0; k < Y.count(); ++k) {
        const ComplexMatrix F = Y.basis_matrix(k);
        lmi.main.basis.push_back(outer(curve.Psi, F));
        y_pd.basis.push_back(F);
    }
    lmi.side_constraints.push_back(std::move(y_pd));
    return lmi;
}

HermitianLmi bounded_real_lmi(const StateSpace& ss, double gamma) {
    ss.validate();
    if (gamma <= 0.0) throw std::invalid_argument("bounded_real_lmi: gamma must be positive");
    if (!is_hurwitz(ss)) throw Unstable("bounded_real_lmi: system is not Hurwitz");
    const int n = ss.order();
    const int m = ss.inputs();
    const int p = ss.outputs();

    HermitianLmi lmi;
    lmi.main.name = "bounded_real";
    VariableBlockInfo X{"X", n, false, 0};
    lmi.variables = {X};

    ComplexMatrix M = ComplexMatrix::Zero(n + m + p, n + m + p);
    M.block(n, n, m, m) = -gamma * ComplexMatrix::Identity(m, m);
    M.block(n + m, n + m, p, p) = -gamma * ComplexMatrix::Identity(p, p);
    M.block(n, n + m, m, p) = ss.D.transpose().cast<Complex>();
    M.block(n + m, n, p, m) = ss.D.cast<Complex>();
    M.block(0, n + m, n, p) = ss.C.transpose().cast<Complex>();
    M.block(n + m, 0, p, n) = ss.C.cast<Complex>();
    lmi.main.constant = M;

    LmiBlock x_pd;
    x_pd.name = "X_pd";
    x_pd.sense = LmiBlock::Sense::positive_definite;
    x_pd.constant = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < X.count(); ++k) {
        const ComplexMatrix E = X.basis_matrix(k);
        ComplexMatrix F = ComplexMatrix::Zero(n + m + p, n + m + p);
        F.topLeftCorner(n, n) = ss.A.transpose().cast<Complex>() * E + E * ss.A.cast<Complex>();
        F.block(0, n, n, m) = E * ss.B.cast<Complex>();
        F.block(n, 0, m, n) = ss.B.transpose().cast<Complex>() * E;
        lmi.main.basis.push_back(F);
        x_pd.basis.push_back(E);
    }
    if (n > 0) lmi.side_constraints.push_back(std::move(x_pd));
    return lmi;
}

namespace {

// M-block of the rotated positive-real inequality He(e^{j beta} G) > 0.
ComplexMatrix rotated_real_block(const StateSpace& ss, double beta) {
    const int n = ss.order();
    const int m = ss.inputs();
    const Complex e_pos = std::polar(1.0, beta);
    const Complex e_neg = std::polar(1.0, -beta);
    ComplexMatrix M = ComplexMatrix::Zero(n + m, n + m);
    M.topRightCorner(n, m) = -e_neg * ss.C.transpose().cast<Complex>();
    M.bottomLeftCorner(m, n) = -e_pos * ss.C.cast<Complex>();
    M.bottomRightCorner(m, m) = -e_pos * ss.D.cast<Complex>() -
                                e_neg * ss.D.transpose().cast<Complex>();
    return M;
}

}  // namespace

HermitianLmi sectored_real_lmi(const StateSpace& ss, double alpha) {
    ss.validate();
    if (!(alpha > 0.0 && alpha <= kPi / 2.0)) {
        throw AlphaOutOfRange("sectored_real_lmi: alpha must lie in (0, pi/2]");
    }
    if (!is_hurwitz(ss)) throw Unstable("sectored_real_lmi: system is not Hurwitz");
    const int n = ss.order();
    const double beta = kPi / 2.0 - alpha;

    HermitianLmi lmi = assemble_kyp(ss.A.cast<Complex>(), ss.B.cast<Complex>(),
                                    rotated_real_block(ss, beta));
    lmi.main.name = "sectored_real";
    if (n > 0) {
        LmiBlock x_pd;
        x_pd.name = "X_pd";
        x_pd.sense = LmiBlock::Sense::positive_definite;
        x_pd.constant = ComplexMatrix::Zero(n, n);
        for (int k = 0; k < lmi.variables[0].count(); ++k) {
            x_pd.basis.push_back(lmi.variables[0].basis_matrix(k));
        }
        lmi.side_constraints.push_back(std::move(x_pd));
    }
    return lmi;
}

std::pair<HermitianLmi, HermitianLmi> half_cramped_lmi(const StateSpace& ss, double alpha) {
    ss.validate();
    if (!(alpha > kPi / 2.0 && alpha <= kPi)) {
        throw AlphaOutOfRange("half_cramped_lmi: alpha must lie in (pi/2, pi]");
    }
    if (!is_hurwitz(ss)) throw Unstable("half_cramped_lmi: system is not Hurwitz");
    const double beta = alpha - kPi / 2.0;
    const CurveSpec curve = positive_frequency_curve();
    HermitianLmi rotated = assemble_gkyp(ss.A.cast<Complex>(), ss.B.cast<Complex>(),
                                         rotated_real_block(ss, beta), curve);
    rotated.main.name = "half_cramped_rotated";
    HermitianLmi conjugated = assemble_gkyp(ss.A.cast<Complex>(), ss.B.cast<Complex>(),
                                            rotated_real_block(ss, -beta), curve);
    conjugated.main.name = "half_cramped_conjugated";
    return {std::move(rotated), std::move(conjugated)};
}

namespace {

ComplexMatrix realify_matrix(const ComplexMatrix& F) {
    const Eigen::Index d = F.rows();
    ComplexMatrix R = ComplexMatrix::Zero(2 * d, 2 * d);
    R.topLeftCorner(d, d) = F.real().cast<Complex>();
    R.topRightCorner(d, d) = -F.imag().cast<Complex>();
    R.bottomLeftCorner(d, d) = F.imag().cast<Complex>();
    R.bottomRightCorner(d, d) = F.real().cast<Complex>();
    return R;
}

LmiBlock realify_block(const LmiBlock& b) {
    LmiBlock out;
    out.name = b.name + "_realified";
    out.sense = b.sense;
    out.constant = realify_matrix(b.constant);
    out.basis.reserve(b.basis.size());
    for (const auto& F : b.basis) out.basis.push_back(realify_matrix(F));
    return out;
}

}  // namespace

HermitianLmi realify(const HermitianLmi& lmi) {
    HermitianLmi out;
    out.variables = lmi.variables;
    out.main = realify_block(lmi.main);
    out.side_constraints.reserve(lmi.side_constraints.size());
    for (const auto& s : lmi.side_constraints) out.side_constraints.push_back(realify_block(s));
    return out;
}

}  // namespace phasekit
