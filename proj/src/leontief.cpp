#include "gvc/leontief.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gvc/error.hpp"

namespace gvc {

TechCoefficients technical_coefficients(const IcioTable& table) {
    const Index g = table.g();
    TechCoefficients out{Matrix::Zero(g, g), table.dims()};
    for (Index j = 0; j < g; ++j) {
        const double xj = table.x()(j);
        if (xj > 0.0) {
            out.A.col(j) = table.Z().col(j) / xj;
        }
    }
    return out;
}

namespace {

struct Solved {
    Matrix B;
    SolveDiagnostics diagnostics;
};

Solved solve_identity(const Matrix& A, const LeontiefOptions& opts) {
    const Index g = A.rows();
    if (A.cols() != g) {
        throw Error(ErrorKind::DimensionMismatch, "coefficient matrix is not square");
    }
    if (!A.allFinite()) {
        throw Error(ErrorKind::InvalidParams, "coefficient matrix has non-finite entries");
    }
    Solved out;
    if (g == 0) {
        out.diagnostics.rcond = 1.0;
        out.diagnostics.condition_estimate = 1.0;
        return out;
    }

    Matrix system = -A;
    system.diagonal().array() += 1.0;
    const Eigen::PartialPivLU<Matrix> lu(system);
    const double rcond = lu.rcond();
    out.diagnostics.rcond = rcond;
    out.diagnostics.condition_estimate = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    if (!(rcond >= opts.min_rcond)) {
        std::ostringstream msg;
        msg << "I - A is numerically singular (rcond " << rcond
            << "); some column likely has nonpositive value added";
        throw Error(ErrorKind::SingularSystem, msg.str());
    }

    out.B = lu.solve(Matrix::Identity(g, g));
    if (!out.B.allFinite()) {
        throw Error(ErrorKind::SingularSystem, "Leontief solve produced non-finite entries");
    }

    // Residual in column panels so the full product never materializes.
    constexpr Index panel = 256;
    double residual = 0.0;
    for (Index c = 0; c < g; c += panel) {
        const Index w = std::min(panel, g - c);
        Matrix block = system * out.B.middleCols(c, w);
        block.block(c, 0, w, w).diagonal().array() -= 1.0;
        residual = std::max(residual, block.cwiseAbs().maxCoeff());
    }
    out.diagnostics.residual_max = residual;
    if (!(residual <= opts.residual_tol)) {
        std::ostringstream msg;
        msg << "Leontief residual " << residual << " exceeds " << opts.residual_tol;
        throw Error(ErrorKind::SingularSystem, msg.str());
    }
    return out;
}

}  // namespace

LeontiefInverse leontief_inverse(const TechCoefficients& coefficients, const LeontiefOptions& opts) {
    if (coefficients.A.rows() != coefficients.dims.g()) {
        throw Error(ErrorKind::DimensionMismatch, "coefficient matrix does not match table dimensions");
    }
    auto solved = solve_identity(coefficients.A, opts);
    return {std::move(solved.B), coefficients.dims, solved.diagnostics};
}

Matrix local_inverse(const Matrix& M, const LeontiefOptions& opts) { return solve_identity(M, opts).B; }

}  // namespace gvc
