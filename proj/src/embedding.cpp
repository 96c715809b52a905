#include "phaseid/embedding.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "phaseid/errors.hpp"

namespace phaseid {

Embedding2D classical_mds(const SquareMatrix& distances, std::vector<std::string> ids) {
    const std::size_t n = distances.size();
    if (n == 0) throw MatrixError("classical_mds: empty distance matrix");
    if (ids.empty()) {
        for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
    }
    if (ids.size() != n)
        throw MatrixError("classical_mds: " + std::to_string(ids.size()) + " ids for a " +
                          std::to_string(n) + "x" + std::to_string(n) + " matrix");

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::fabs(distances(i, j)));
    const double tol = 1e-9 * std::max(1.0, scale);

    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(distances(i, i)) > tol)
            throw MatrixError("classical_mds: nonzero diagonal at row " + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) {
            double d = distances(i, j);
            if (!std::isfinite(d)) throw MatrixError("classical_mds: non-finite distance");
            if (d < 0.0) throw MatrixError("classical_mds: negative distance");
            if (std::fabs(d - distances(j, i)) > tol)
                throw MatrixError("classical_mds: matrix is not symmetric at (" +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }

    // B = -1/2 J D^2 J via explicit row/column centering.
    Eigen::MatrixXd sq(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sq(i, j) = distances(i, j) * distances(i, j);
    Eigen::VectorXd row_mean = sq.rowwise().mean();
    double grand_mean = sq.mean();
    Eigen::MatrixXd b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            b(i, j) = -0.5 * (sq(i, j) - row_mean(i) - row_mean(j) + grand_mean);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
    if (solver.info() != Eigen::Success)
        throw NumericError("classical_mds: eigendecomposition failed");
    const Eigen::VectorXd& eigenvalues = solver.eigenvalues();  // ascending

    Embedding2D out;
    out.ids = std::move(ids);
    out.coords.assign(n, {0.0, 0.0});

    const double eig_tol = 1e-12 * std::max(1.0, std::fabs(eigenvalues(n - 1)));
    for (int axis = 0; axis < 2 && axis < static_cast<int>(n); ++axis) {
        const auto col = static_cast<Eigen::Index>(n) - 1 - axis;
        double lambda = eigenvalues(col);
        if (lambda <= eig_tol) break;  // axis stays zero
        Eigen::VectorXd coord = solver.eigenvectors().col(col) * std::sqrt(lambda);

        std::size_t peak = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (std::fabs(coord(i)) > std::fabs(coord(peak))) peak = i;
        }
        if (coord(peak) < 0.0) coord = -coord;

        for (std::size_t i = 0; i < n; ++i) out.coords[i][static_cast<std::size_t>(axis)] = coord(i);
        out.rank = axis + 1;
    }

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double dx = out.coords[i][0] - out.coords[j][0];
            double dy = out.coords[i][1] - out.coords[j][1];
            double recovered = std::sqrt(dx * dx + dy * dy);
            double diff = distances(i, j) - recovered;
            num += diff * diff;
            den += distances(i, j) * distances(i, j);
        }
    }
    out.stress = den > 0.0 ? std::sqrt(num / den) : 0.0;
    return out;
}

}  // namespace phaseid
