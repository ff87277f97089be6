#pragma once

#include "phasekit/state_space.hpp"
#include "phasekit/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace phasekit {

/// One affine Hermitian-matrix constraint: constant + sum_i y_i basis_i,
/// required negative definite or positive definite according to `sense`.
struct LmiBlock {
    enum class Sense { negative_definite, positive_definite };
    std::string name;
    ComplexMatrix constant;
    std::vector<ComplexMatrix> basis;  // one entry per scalar decision variable
    Sense sense = Sense::negative_definite;

    ComplexMatrix assemble(const Vector& y) const;
};

/// Structured description of one Hermitian decision matrix. Scalars are laid
/// out as: diagonal entries, then off-diagonal real parts (row-major p<q),
/// then off-diagonal imaginary parts (only when `complex_hermitian`).
struct VariableBlockInfo {
    std::string name;
    int dim = 0;
    bool complex_hermitian = false;  // false: real symmetric
    int offset = 0;                  // first scalar index

    int count() const {
        return complex_hermitian ? dim * dim : dim * (dim + 1) / 2;
    }
    /// k-th Hermitian basis matrix of this variable block.
    ComplexMatrix basis_matrix(int k) const;
    /// Reconstructs the matrix value from the scalar vector.
    ComplexMatrix value(const Vector& y) const;
};

/// Affine Hermitian LMI with side constraints over a shared scalar vector.
/// The main block is always a strict "< 0" constraint.
struct HermitianLmi {
    LmiBlock main;
    std::vector<LmiBlock> side_constraints;
    std::vector<VariableBlockInfo> variables;

    int num_scalars() const;
    /// Value of a named decision matrix at the certificate y.
    ComplexMatrix variable_value(const std::string& name, const Vector& y) const;
    /// Largest Frobenius norm over all constant terms; scales feasibility margins.
    double data_norm() const;
};

/// Frequency curves Lambda(Sigma, Psi) for the generalized KYP machinery.
struct CurveSpec {
    Eigen::Matrix2cd Sigma;
    Eigen::Matrix2cd Psi;
};
CurveSpec imaginary_axis_curve();    // Sigma = [[0,1],[1,0]], Psi = 0
CurveSpec positive_frequency_curve();  // adds Psi = [[0,j],[-j,0]]

/// KYP: M + [A* X + X A, X B; B* X, 0] < 0 with X Hermitian (real symmetric
/// when all data are real). Throws ImaginaryAxisEigenvalue.
HermitianLmi assemble_kyp(const ComplexMatrix& A, const ComplexMatrix& B,
                          const ComplexMatrix& M);

/// Generalized KYP on the given curve:
/// [A, B; I, 0]^* (Sigma (x) X + Psi (x) Y) [A, B; I, 0] + M < 0, Y > 0.
HermitianLmi assemble_gkyp(const ComplexMatrix& A, const ComplexMatrix& B,
                           const ComplexMatrix& M, const CurveSpec& curve);

/// Bounded real lemma LMI for ||G||_inf < gamma, with side constraint X > 0.
HermitianLmi bounded_real_lmi(const StateSpace& ss, double gamma);

/// Sectored real lemma LMI for Phi_inf(G) < alpha, alpha in (0, pi/2],
/// with side constraint X > 0.
HermitianLmi sectored_real_lmi(const StateSpace& ss, double alpha);

/// The two half-cramped LMIs for alpha in (pi/2, pi] (rotated and conjugate
/// rotated); the phase bound holds iff either one is feasible.
std::pair<HermitianLmi, HermitianLmi> half_cramped_lmi(const StateSpace& ss, double alpha);

/// Real symmetric embedding F = P + jQ -> [[P, -Q], [Q, P]] applied to every
/// block; eigenvalues duplicate and feasibility is preserved exactly.
HermitianLmi realify(const HermitianLmi& lmi);

}  // namespace phasekit
