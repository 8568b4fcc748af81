#pragma once

// Technical coefficients and the Leontief total-requirements matrix.

#include "gvc/icio.hpp"

namespace gvc {

struct TechCoefficients {
    /// A[i,j] = Z[i,j] / x[j]; zero columns where x[j] == 0.
    Matrix A;
    Dimensions dims;
};

TechCoefficients technical_coefficients(const IcioTable& table);

struct LeontiefOptions {
    /// Bound on max |(I - A) B - I|.
    double residual_tol = 1e-9;
    /// Reciprocal condition estimates below this are treated as singular.
    double min_rcond = 1e-12;
};

struct SolveDiagnostics {
    /// LU reciprocal condition estimate (1-norm).
    double rcond = 0.0;
    double condition_estimate = 0.0;
    /// max |(I - A) B - I|.
    double residual_max = 0.0;
};

struct LeontiefInverse {
    Matrix B;
    Dimensions dims;
    SolveDiagnostics diagnostics;
};

/// Solves (I - A) B = I by partial-pivot LU. Throws SingularSystem when the
/// factorization is numerically singular or the residual exceeds the bound.
LeontiefInverse leontief_inverse(const TechCoefficients& coefficients, const LeontiefOptions& opts = {});

/// Inverse of (I - M) for a small square block, same failure rules.
Matrix local_inverse(const Matrix& M, const LeontiefOptions& opts = {});

}  // namespace gvc
