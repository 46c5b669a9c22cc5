#pragma once

#include <cstddef>
#include <vector>

namespace stallnet {

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// Deterministic sweep order, plain scalar arithmetic. Plenty for the small
// matrices used here (search-space dimension at most ~tens).
struct SymEigen {
    std::vector<double> values;   // descending
    std::vector<double> vectors;  // column j (row-major n*n) is the eigenvector of values[j]
};

// a: row-major n*n, symmetric (only the content matters, a is taken by value).
SymEigen sym_eigen(std::vector<double> a, std::size_t n);

}  // namespace stallnet
