#include "favprop/hermitian_eig.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace favprop {

namespace {

// Zero the (p,q) entry with the unitary that is a phase followed by a real
// Givens rotation. Diagonal entries stay real; the update keeps the full
// matrix Hermitian.
void jacobi_rotate(CMatrix& a, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double alpha = std::abs(apq);
    if (alpha == 0.0) return;

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * alpha);
    // smaller root of t^2 + 2 tau t - 1 = 0
    const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const cplx w = apq / alpha;
    const cplx wbar = std::conj(w);

    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < n; ++j) {
        if (j == p || j == q) continue;
        const cplx ajp = a(j, p);
        const cplx ajq = a(j, q);
        a(j, p) = c * ajp - s * wbar * ajq;
        a(j, q) = s * w * ajp + c * ajq;
        a(p, j) = std::conj(a(j, p));
        a(q, j) = std::conj(a(j, q));
    }
    a(p, p) = app - t * alpha;
    a(q, q) = aqq + t * alpha;
    a(p, q) = 0.0;
    a(q, p) = 0.0;
}

double off_diagonal_mass(const CMatrix& a) {
    const std::size_t n = a.rows();
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (i != j) acc += std::norm(a(i, j));
    return std::sqrt(acc);
}

double diagonal_mass(const CMatrix& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) acc += std::norm(a(i, i));
    return std::sqrt(acc);
}

void require_hermitian(const CMatrix& a) {
    double max_abs = 0.0;
    double max_asym = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            max_abs = std::max(max_abs, std::abs(a(i, j)));
            max_asym = std::max(max_asym, std::abs(a(i, j) - std::conj(a(j, i))));
        }
    }
    if (max_asym > 1e-10 * max_abs)
        throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
}

}  // namespace

std::vector<double> hermitian_eigenvalues(CMatrix a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
    require_hermitian(a);

    const std::size_t n = a.rows();
    constexpr double kRelTol = 1e-12;
    constexpr int kMaxSweeps = 64;

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        const double off = off_diagonal_mass(a);
        if (off <= kRelTol * diagonal_mass(a)) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, p, q);
    }
    if (!converged && off_diagonal_mass(a) > kRelTol * diagonal_mass(a))
        throw std::runtime_error("hermitian_eigenvalues: Jacobi sweeps did not converge");

    std::vector<double> eigenvalues(n);
    for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a(i, i).real();
    std::sort(eigenvalues.begin(), eigenvalues.end());
    return eigenvalues;
}

}  // namespace favprop
