#pragma once

#include <cmath>
#include <stdexcept>
#include <type_traits>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace d2d {

// Spectral radius of a square nonnegative matrix.
//
// Power iteration on the shifted matrix F + cI; the positive diagonal
// breaks periodic structures such as [[0,a],[b,0]] and rho(F + cI) =
// rho(F) + c for nonnegative F.  Each iterate gives certified
// Collatz-Wielandt bounds min_i (Gx)_i/x_i <= rho(G) <= max_i (Gx)_i/x_i,
// so the loop stops only once the enclosure is tighter than `tol`
// relatively.  If the bracket fails to tighten within the iteration cap
// (reducible matrices from file-loaded data), falls back to a dense
// eigensolve.
template <typename Derived>
double spectral_radius(const Eigen::MatrixBase<Derived>& f_expr, double tol = 1e-12,
                       int max_iter = 10000) {
    using Scalar = typename Derived::Scalar;
    static_assert(std::is_floating_point_v<Scalar>);
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    const Matrix f = f_expr;
    const Eigen::Index n = f.rows();
    if (n != f.cols()) throw std::invalid_argument("spectral_radius: matrix not square");
    if (n == 0) return 0.0;
    if ((f.array() < Scalar(0)).any())
        throw std::invalid_argument("spectral_radius: negative entry");

    const Scalar max_row_sum = f.rowwise().sum().maxCoeff();
    if (max_row_sum == Scalar(0)) return 0.0;

    const Scalar shift = Scalar(0.25) * max_row_sum;
    Matrix g = f;
    g.diagonal().array() += shift;

    Vector x = Vector::Ones(n);
    x /= x.norm();
    for (int it = 0; it < max_iter; ++it) {
        Vector y = g * x;
        const Scalar lo = (y.array() / x.array()).minCoeff();
        const Scalar hi = (y.array() / x.array()).maxCoeff();
        if (hi - lo <= tol * hi) return static_cast<double>(Scalar(0.5) * (lo + hi) - shift);
        const Scalar norm = y.norm();
        if (!(norm > Scalar(0)) || !std::isfinite(static_cast<double>(norm))) break;
        x = y / norm;
    }

    // dense fallback
    Eigen::EigenSolver<Matrix> es(f, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

} // namespace d2d
