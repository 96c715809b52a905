#pragma once

#include <array>
#include <string>
#include <vector>

#include "phaseid/matrix.hpp"

namespace phaseid {

struct Embedding2D {
    std::vector<std::string> ids;  // row order matches the distance matrix
    std::vector<std::array<double, 2>> coords;
    double stress = 0.0;  // sqrt(sum (d - d_hat)^2 / sum d^2)
    int rank = 0;         // positive eigenpairs used (0, 1 or 2)
};

// Classical (Torgerson) MDS: double-center the squared distances, take the
// top-2 eigenpairs, scale eigenvectors by sqrt(eigenvalue). Orientation is
// fixed by flipping each axis so its largest-magnitude coordinate is
// positive. With fewer than 2 positive eigenvalues the missing axes are
// zero-padded (rank reports how many were usable).
// ids defaults to "0", "1", ... when empty.
Embedding2D classical_mds(const SquareMatrix& distances, std::vector<std::string> ids = {});

}  // namespace phaseid
