#include "phasekit/matphase.hpp"

#include "phasekit/errors.hpp"

#include <complex>

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace phasekit {

namespace {

void check_square(const ComplexMatrix& C, const char* who) {
    if (C.rows() == 0 || C.rows() != C.cols()) {
        throw DimensionMismatch(std::string(who) + ": matrix must be square and nonempty");
    }
    if (!C.allFinite()) {
        throw DimensionMismatch(std::string(who) + ": matrix has non-finite entries");
    }
}

double min_eig_herm2(const Eigen::Matrix2cd& M) {
    const double a = M(0, 0).real();
    const double d = M(1, 1).real();
    return 0.5 * (a + d) - std::hypot(0.5 * (a - d), std::abs(M(0, 1)));
}

// Analytic smallest eigenvalue of a 3x3 Hermitian matrix (Cardano). Used only
// for coarse scans; decision points are re-evaluated with the iterative solver.
double min_eig_herm3(const Eigen::Matrix3cd& M) {
    const double m = (M(0, 0).real() + M(1, 1).real() + M(2, 2).real()) / 3.0;
    Eigen::Matrix3cd K = M;
    K(0, 0) -= m;
    K(1, 1) -= m;
    K(2, 2) -= m;
    const double dd = K(0, 0).real() * K(0, 0).real() + K(1, 1).real() * K(1, 1).real() +
                      K(2, 2).real() * K(2, 2).real();
    const double oo = std::norm(K(0, 1)) + std::norm(K(0, 2)) + std::norm(K(1, 2));
    const double p = (dd + 2.0 * oo) / 6.0;
    if (p <= 0.0) return m;
    const Complex det = K(0, 0) * (K(1, 1) * K(2, 2) - K(1, 2) * std::conj(K(1, 2))) -
                        K(0, 1) * (std::conj(K(0, 1)) * K(2, 2) - K(1, 2) * std::conj(K(0, 2))) +
                        K(0, 2) * (std::conj(K(0, 1)) * std::conj(K(1, 2)) -
                                   K(1, 1) * std::conj(K(0, 2)));
    const double q = det.real() / 2.0;
    const double sp = std::sqrt(p);
    double r = q / (sp * sp * sp);
    r = std::clamp(r, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    return m + 2.0 * sp * std::cos(phi + 2.0 * kPi / 3.0);
}

// He(e^{-i theta} C) = cos(theta) H1 + sin(theta) H2.
ComplexMatrix rotated_hermitian(const ComplexMatrix& H1, const ComplexMatrix& H2,
                                double theta) {
    return std::cos(theta) * H1 + std::sin(theta) * H2;
}

struct SupportScan {
    const ComplexMatrix& H1;
    const ComplexMatrix& H2;

    // Fast path for the coarse grid.
    double fast(double theta) const {
        const ComplexMatrix M = rotated_hermitian(H1, H2, theta);
        switch (M.rows()) {
            case 1:
                return M(0, 0).real();
            case 2:
                return min_eig_herm2(M);
            case 3:
                return min_eig_herm3(M);
            default:
                return robust(theta);
        }
    }

    // Backward-stable path for all decision points.
    double robust(double theta) const {
        const ComplexMatrix M = rotated_hermitian(H1, H2, theta);
        if (M.rows() == 1) return M(0, 0).real();
        if (M.rows() == 2) return min_eig_herm2(M);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(M, Eigen::EigenvaluesOnly);
        return es.eigenvalues()(0);
    }

    // Eigenvector of the smallest eigenvalue.
    ComplexVector min_eigvec(double theta) const {
        const ComplexMatrix M = rotated_hermitian(H1, H2, theta);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(M);
        return es.eigenvectors().col(0);
    }
};

double golden_max(const SupportScan& scan, double a, double b, int iters = 90) {
    constexpr double gr = 0.6180339887498949;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = scan.robust(c);
    double fd = scan.robust(d);
    for (int i = 0; i < iters && (b - a) > 1e-15; ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = scan.robust(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = scan.robust(d);
        }
    }
    return 0.5 * (a + b);
}

// Zero crossing of g along [pos, neg] with g(pos) > 0 >= g(neg).
double bisect_crossing(const SupportScan& scan, double pos, double neg) {
    for (int i = 0; i < 90 && std::abs(neg - pos) > 1e-15; ++i) {
        const double mid = 0.5 * (pos + neg);
        if (scan.robust(mid) > 0.0) {
            pos = mid;
        } else {
            neg = mid;
        }
    }
    return 0.5 * (pos + neg);
}

}  // namespace

double wrap_angle(double a) {
    double w = std::fmod(a, 2.0 * kPi);
    if (w > kPi) w -= 2.0 * kPi;
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

ComplexMatrix hermitian_part(const ComplexMatrix& C) {
    return 0.5 * (C + C.adjoint());
}

double rotated_min_eig(const ComplexMatrix& H1, const ComplexMatrix& H2, double theta) {
    return SupportScan{H1, H2}.robust(theta);
}

MagnitudeVector singular_values(const ComplexMatrix& C) {
    check_square(C, "singular_values");
    Eigen::JacobiSVD<ComplexMatrix> svd(C);
    return svd.singularValues();
}

HullPolygon numerical_range_boundary(const ComplexMatrix& C, int num_angles) {
    check_square(C, "numerical_range_boundary");
    if (num_angles < 3) {
        throw std::invalid_argument("numerical_range_boundary: num_angles must be >= 3");
    }
    const ComplexMatrix H1 = hermitian_part(C);
    const ComplexMatrix H2 = hermitian_part(Complex(0, -1) * C);

    HullPolygon hull;
    hull.support_angles.reserve(num_angles);
    hull.support_values.reserve(num_angles);
    std::vector<Complex> pts;
    pts.reserve(num_angles);
    for (int k = 0; k < num_angles; ++k) {
        const double theta = 2.0 * kPi * k / num_angles;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rotated_hermitian(H1, H2, theta));
        const int top = static_cast<int>(C.rows()) - 1;
        const ComplexVector x = es.eigenvectors().col(top);
        pts.push_back((x.adjoint() * C * x)(0, 0));
        hull.support_angles.push_back(theta);
        hull.support_values.push_back(es.eigenvalues()(top));
    }
    hull.vertices = convex_hull(pts);
    return hull;
}

std::vector<Complex> convex_hull(std::vector<Complex> pts) {
    const auto lex = [](const Complex& a, const Complex& b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    };
    std::sort(pts.begin(), pts.end(), lex);
    double scale = 0.0;
    for (const auto& p : pts) scale = std::max(scale, std::abs(p));
    const double tol = 1e-14 * (1.0 + scale);
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [tol](const Complex& a, const Complex& b) {
                              return std::abs(a - b) <= tol;
                          }),
              pts.end());
    const size_t n = pts.size();
    if (n <= 2) return pts;
    const auto cross = [](const Complex& o, const Complex& a, const Complex& b) {
        return (a.real() - o.real()) * (b.imag() - o.imag()) -
               (a.imag() - o.imag()) * (b.real() - o.real());
    };
    std::vector<Complex> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    const size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {  // upper chain
        while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

SectorInfo crampedness(const ComplexMatrix& C) {
    check_square(C, "crampedness");
    const ComplexMatrix H1 = hermitian_part(C);
    const ComplexMatrix H2 = hermitian_part(Complex(0, -1) * C);
    const SupportScan scan{H1, H2};
    const double sigma = C.operatorNorm();
    const double eps = 1e-9 * (1.0 + sigma);

    SectorInfo info;
    if (sigma == 0.0) return info;  // W(0) = {0}

    // Stage 1: uniform grid plus golden-section refinement around the best bracket.
    constexpr int kGrid = 720;
    const double h = 2.0 * kPi / kGrid;
    double best_val = -std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    for (int k = 0; k < kGrid; ++k) {
        const double theta = k * h;
        const double v = scan.fast(theta);
        if (v > best_val) {
            best_val = v;
            best_theta = theta;
        }
    }
    double theta_pos = golden_max(scan, best_theta - h, best_theta + h);
    bool have_positive = scan.robust(theta_pos) > eps;

    if (!have_positive) {
        // Stage 2: cutting planes on the circle of support directions. Each
        // witness z = x^* C x with Re(e^{-i theta} z) <= eps restricts the
        // candidate directions to the arc (arg z - pi/2, arg z + pi/2); the
        // feasible arc at least halves each iteration.
        ComplexVector x = scan.min_eigvec(best_theta);
        Complex z = (x.adjoint() * C * x)(0, 0);
        if (std::abs(z) <= eps) return info;
        double lo = std::arg(z) - kPi / 2;
        double hi = std::arg(z) + kPi / 2;
        for (int iter = 0; iter < 80 && hi - lo > 1e-12; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (scan.robust(mid) > eps) {
                theta_pos = mid;
                have_positive = true;
                break;
            }
            x = scan.min_eigvec(mid);
            z = (x.adjoint() * C * x)(0, 0);
            if (std::abs(z) <= eps) return info;
            // Shift the witness arc onto the same branch before intersecting.
            double c = std::arg(z);
            c += 2.0 * kPi * std::round((0.5 * (lo + hi) - c) / (2.0 * kPi));
            lo = std::max(lo, c - kPi / 2);
            hi = std::min(hi, c + kPi / 2);
        }
        if (!have_positive) return info;
    }

    // The positivity arc {theta : g(theta) > 0} has width pi - delta <= pi.
    // March outward from a positive direction to bracket both endpoints.
    const auto march = [&](double dir) {
        double t_pos = 0.0;
        double step = 1e-4;
        while (scan.robust(theta_pos + dir * (t_pos + step)) > 0.0) {
            t_pos += step;
            step *= 2.0;
            if (t_pos > 2.0 * kPi) break;
        }
        return bisect_crossing(scan, theta_pos + dir * t_pos,
                               theta_pos + dir * (t_pos + step));
    };
    const double arc_left = march(-1.0);
    const double arc_right = march(+1.0);

    double upper = arc_left + kPi / 2;
    double lower = arc_right - kPi / 2;
    double gamma = 0.5 * (upper + lower);
    const double delta = upper - lower;
    const double shift = gamma - wrap_angle(gamma);
    gamma -= shift;
    upper -= shift;
    lower -= shift;

    const double theta_star = golden_max(scan, arc_left, arc_right);

    info.cramped = true;
    info.distance_to_origin = std::max(scan.robust(theta_star), eps);
    info.mid_angle = gamma;
    info.field_angle = std::max(0.0, delta);
    info.upper_ray = upper;
    info.lower_ray = lower;
    return info;
}

PhaseVector matrix_phases(const ComplexMatrix& C) {
    check_square(C, "matrix_phases");
    const SectorInfo sector = crampedness(C);
    if (!sector.cramped) {
        throw NotCramped("matrix_phases: numerical range contains the origin");
    }
    const int n = static_cast<int>(C.rows());
    const double gamma = *sector.mid_angle;

    // Generalized eigenproblem C^* x = lambda C x; lambda is unimodular and
    // the phases are -arg(lambda)/2 up to a multiple of pi.
    ComplexMatrix A = C.adjoint();
    ComplexMatrix B = C;
    ComplexVector alpha(n), beta(n);
    const int info = LAPACKE_zggev(
        LAPACK_COL_MAJOR, 'N', 'N', n,
        reinterpret_cast<lapack_complex_double*>(A.data()), n,
        reinterpret_cast<lapack_complex_double*>(B.data()), n,
        reinterpret_cast<lapack_complex_double*>(alpha.data()),
        reinterpret_cast<lapack_complex_double*>(beta.data()), nullptr, 1, nullptr, 1);
    if (info != 0) {
        throw NumericallySingular("matrix_phases: generalized eigensolver failed");
    }

    PhaseVector out;
    out.values.resize(n);
    for (int k = 0; k < n; ++k) {
        if (std::abs(beta(k)) <= 1e-14 * (1.0 + std::abs(alpha(k)))) {
            throw NumericallySingular("matrix_phases: matrix is numerically singular");
        }
        const double w = -std::arg(alpha(k) / beta(k)) / 2.0;
        out.values(k) = gamma + std::remainder(w - gamma, kPi);
    }
    std::sort(out.values.data(), out.values.data() + n, std::greater<double>());
    out.interval_anchor = gamma - kPi / 2;
    return out;
}

std::pair<double, double> phase_bounds(const ComplexMatrix& C) {
    const SectorInfo sector = crampedness(C);
    if (!sector.cramped) {
        throw NotCramped("phase_bounds: numerical range contains the origin");
    }
    return {*sector.lower_ray, *sector.upper_ray};
}

bool majorizes(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) {
        throw DimensionMismatch("majorizes: vectors must have equal length");
    }
    Vector xs = x;
    Vector ys = y;
    std::sort(xs.data(), xs.data() + xs.size(), std::greater<double>());
    std::sort(ys.data(), ys.data() + ys.size(), std::greater<double>());
    const double tol = 1e-9 * std::max(1.0, xs.cwiseAbs().sum() + ys.cwiseAbs().sum());
    double sx = 0.0;
    double sy = 0.0;
    for (Eigen::Index k = 0; k < xs.size(); ++k) {
        sx += xs(k);
        sy += ys(k);
        if (k + 1 < xs.size() && sx > sy + tol) return false;
    }
    return std::abs(sx - sy) <= tol;
}

bool log_majorizes(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) {
        throw DimensionMismatch("log_majorizes: vectors must have equal length");
    }
    if ((x.array() < 0).any() || (y.array() < 0).any()) {
        throw std::invalid_argument("log_majorizes: entries must be nonnegative");
    }
    Vector xs = x;
    Vector ys = y;
    std::sort(xs.data(), xs.data() + xs.size(), std::greater<double>());
    std::sort(ys.data(), ys.data() + ys.size(), std::greater<double>());
    constexpr double rel = 1e-9;
    double px = 1.0;
    double py = 1.0;
    for (Eigen::Index k = 0; k < xs.size(); ++k) {
        px *= xs(k);
        py *= ys(k);
        if (k + 1 < xs.size() && px > py * (1.0 + rel) + 1e-300) return false;
    }
    return std::abs(px - py) <= rel * std::max({px, py, 1e-300});
}

Vector product_eig_angles(const ComplexMatrix& A, const ComplexMatrix& B) {
    check_square(A, "product_eig_angles");
    check_square(B, "product_eig_angles");
    if (A.rows() != B.rows()) {
        throw DimensionMismatch("product_eig_angles: size mismatch");
    }
    const SectorInfo sa = crampedness(A);
    const SectorInfo sb = crampedness(B);
    if (!sa.cramped || !sb.cramped) {
        throw NotCramped("product_eig_angles: both factors must be cramped");
    }
    const double anchor = *sa.lower_ray + *sb.lower_ray;
    constexpr double snap = 1e-9;

    Eigen::ComplexEigenSolver<ComplexMatrix> es(A * B, false);
    Vector angles(A.rows());
    for (Eigen::Index k = 0; k < A.rows(); ++k) {
        const double u = std::arg(es.eigenvalues()(k));
        angles(k) = u - 2.0 * kPi * std::floor((u - (anchor - snap)) / (2.0 * kPi));
    }
    std::sort(angles.data(), angles.data() + angles.size(), std::greater<double>());
    return angles;
}

bool in_cone(const ComplexMatrix& C, double alpha, double beta, double tol) {
    if (beta - alpha < 0.0 || beta - alpha >= 2.0 * kPi) {
        throw std::invalid_argument("in_cone: require 0 <= beta - alpha < 2*pi");
    }
    const SectorInfo sector = crampedness(C);
    if (!sector.cramped) return false;
    for (int k = -1; k <= 1; ++k) {
        const double shift = 2.0 * kPi * k;
        if (*sector.lower_ray + shift >= alpha - tol &&
            *sector.upper_ray + shift <= beta + tol) {
            return true;
        }
    }
    return false;
}

}  // namespace phasekit
