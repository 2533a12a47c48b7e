#pragma once

#include <vector>

#include "specloc/linalg.hpp"

namespace specloc {

/// Eigenvalues of a general square matrix from a dense QR-type solver. Used as
/// an independent check on the region code; never feeds it.
std::vector<cplx> eigenvalues(const ComplexMatrix& a);

}  // namespace specloc
