#include "doctest.h"
#include "gvc/decomposition.hpp"
#include "gvc/error.hpp"
#include "gvc/leontief.hpp"
#include "gvc/synth.hpp"
#include "oracles.hpp"

using namespace gvc;
using namespace gvc::testing;

TEST_CASE("technical coefficients divide by gross output") {
    const auto A = technical_coefficients(fixture_2x2()).A;
    CHECK(A(0, 0) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(A(0, 1) == doctest::Approx(10.0 / 110.0).epsilon(1e-15));
    CHECK(A(1, 0) == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(A(1, 1) == doctest::Approx(30.0 / 110.0).epsilon(1e-15));

    CHECK(technical_coefficients(fixture_autarky()).A.isZero());

    // C has zero output: its column is zero rather than an error.
    const auto snake = technical_coefficients(fixture_snake()).A;
    CHECK(snake.col(2).isZero());
    CHECK(snake(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("leontief inverse of zero coefficients is identity") {
    const auto L = leontief_inverse(technical_coefficients(fixture_autarky()));
    CHECK(L.B.isIdentity(0.0));
    CHECK(L.diagnostics.residual_max == 0.0);
}

TEST_CASE("leontief inverse matches the power series on the 2x2 fixture") {
    const auto t = fixture_2x2();
    const auto L = leontief_inverse(technical_coefficients(t));
    const Matrix oracle = neumann_series(coefficients_by_loop(t), 64);
    CHECK((L.B - oracle).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(L.diagnostics.rcond > 0.0);
    CHECK(L.diagnostics.rcond <= 1.0);
    CHECK(L.diagnostics.residual_max <= 1e-12);
}

TEST_CASE("singular systems are rejected") {
    auto check_singular = [](Matrix A) {
        const Dimensions d = Dimensions::uniform({"A", "B"}, {"S"});
        try {
            leontief_inverse({std::move(A), d});
            FAIL("expected SingularSystem");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::SingularSystem);
        }
    };
    Matrix closed(2, 2);
    closed << 1.0, 0.2, 0.0, 0.3;  // first column sums to 1 and feeds only itself
    check_singular(closed);
    Matrix full(2, 2);
    full << 0.5, 0.5, 0.5, 0.5;
    check_singular(full);
}

TEST_CASE("property: inverse agrees with the series and respects bounds") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const auto t = synth_random_balanced({1 + seed % 5, 1 + seed % 4, seed, 0.5, 0.05});
        const auto coeff = technical_coefficients(t);
        CHECK(coeff.A.colwise().sum().maxCoeff() <= 0.95 + 1e-12);
        const auto L = leontief_inverse(coeff);
        const Matrix oracle = neumann_series(coefficients_by_loop(t), 1200);
        CHECK((L.B - oracle).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK(L.B.minCoeff() >= -1e-12);
        CHECK(L.B.diagonal().minCoeff() >= 1.0 - 1e-12);

        Matrix residual = (Matrix::Identity(t.g(), t.g()) - coeff.A) * L.B;
        residual.diagonal().array() -= 1.0;
        CHECK(residual.cwiseAbs().maxCoeff() <= 1e-9);

        // diag(v) * B exhausts output: column sums are 1.
        const Matrix vas = va_source_matrix(t, L);
        for (Index j = 0; j < t.g(); ++j) {
            CHECK(std::abs(vas.col(j).sum() - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("local_inverse handles blocks") {
    Matrix M(1, 1);
    M << 0.5;
    CHECK(local_inverse(M)(0, 0) == doctest::Approx(2.0));
    CHECK(local_inverse(Matrix(0, 0)).size() == 0);
}
