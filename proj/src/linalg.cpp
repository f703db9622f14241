#include "spinlab/linalg.hpp"

#include "spinlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace spinlab {

double max_abs(const CMatrix& m) {
    double best = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) best = std::max(best, std::abs(m(i, j)));
    return best;
}

double hermiticity_defect(const CMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return max_abs(m - m.adjoint());
}

bool is_hermitian(const CMatrix& m, double tol) { return hermiticity_defect(m) <= tol; }

namespace {

double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Annihilates a(p,q) by A <- G† A G with
//   G = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on rows/cols (p, q),  a_pq = |a_pq| e^{iφ}.
void rotate(CMatrix& a, CMatrix& v, Eigen::Index p, Eigen::Index q) {
    const cplx apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const cplx phase = apq / mag; // e^{iφ}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double theta = (aqq - app) / (2.0 * mag);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const cplx g_pp = c;
    const cplx g_pq = s;
    const cplx g_qp = -s * std::conj(phase);
    const cplx g_qq = c * std::conj(phase);

    const Eigen::Index d = a.rows();
    for (Eigen::Index i = 0; i < d; ++i) {
        const cplx aip = a(i, p);
        const cplx aiq = a(i, q);
        a(i, p) = aip * g_pp + aiq * g_qp;
        a(i, q) = aip * g_pq + aiq * g_qq;
    }
    for (Eigen::Index j = 0; j < d; ++j) {
        const cplx apj = a(p, j);
        const cplx aqj = a(q, j);
        a(p, j) = std::conj(g_pp) * apj + std::conj(g_qp) * aqj;
        a(q, j) = std::conj(g_pq) * apj + std::conj(g_qq) * aqj;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (Eigen::Index i = 0; i < d; ++i) {
        const cplx vip = v(i, p);
        const cplx viq = v(i, q);
        v(i, p) = vip * g_pp + viq * g_qp;
        v(i, q) = vip * g_pq + viq * g_qq;
    }
}

} // namespace

Spectrum hermitian_eig(const CMatrix& matrix, const JacobiOptions& options) {
    if (matrix.rows() != matrix.cols())
        throw DomainError("hermitian_eig: matrix is not square");
    const double defect = hermiticity_defect(matrix);
    if (defect > options.hermitian_tolerance)
        throw DomainError("hermitian_eig: matrix is not Hermitian (defect " + std::to_string(defect) + ")");

    const Eigen::Index d = matrix.rows();
    CMatrix a = 0.5 * (matrix + matrix.adjoint());
    CMatrix v = CMatrix::Identity(d, d);

    const double scale = a.norm();
    const double target = options.relative_tolerance * scale;

    double off = off_diagonal_norm(a);
    int sweep = 0;
    while (off > target) {
        if (sweep == options.max_sweeps)
            throw NumericError("hermitian_eig: no convergence after " + std::to_string(sweep) + " sweeps", off);
        for (Eigen::Index p = 0; p + 1 < d; ++p)
            for (Eigen::Index q = p + 1; q < d; ++q)
                if (std::abs(a(p, q)) > 0.0) rotate(a, v, p, q);
        off = off_diagonal_norm(a);
        ++sweep;
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });

    Spectrum out;
    out.eigenvalues.resize(d);
    out.eigenvectors.resize(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const Eigen::Index src = order[static_cast<std::size_t>(i)];
        out.eigenvalues(i) = a(src, src).real();
        out.eigenvectors.col(i) = v.col(src);
    }
    return out;
}

} // namespace spinlab
