#include "gvc/synth.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "gvc/error.hpp"

namespace gvc {

namespace {

const std::vector<std::string> kGoods{"GOODS"};

void require_positive(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error(ErrorKind::InvalidParams, std::string(what) + " must be positive and finite");
        }
    }
}

std::string letter_name(std::size_t k) {
    if (k < 26) {
        return std::string(1, static_cast<char>('A' + k));
    }
    return "R" + std::to_string(k + 1);
}

std::string numbered(char prefix, std::size_t k, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%c%0*zu", prefix, width, k + 1);
    return buf;
}

// Uniform double in [0, 1) from the top 53 bits; avoids the library-specific
// behavior of std::uniform_real_distribution.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

IcioTable synth_snake(std::size_t n_stages, std::span<const double> stage_values) {
    if (n_stages < 2) {
        throw Error(ErrorKind::InvalidParams, "a snake needs at least 2 stages");
    }
    if (stage_values.size() != n_stages) {
        throw Error(ErrorKind::InvalidParams, "expected " + std::to_string(n_stages) + " stage values, got " +
                                                  std::to_string(stage_values.size()));
    }
    require_positive(stage_values, "stage values");
    for (std::size_t k = 1; k < n_stages; ++k) {
        if (!(stage_values[k] > stage_values[k - 1])) {
            throw Error(ErrorKind::InvalidParams, "stage " + std::to_string(k + 1) +
                                                      " adds no value (outputs must strictly increase)");
        }
    }

    std::vector<std::string> regions;
    for (std::size_t k = 0; k <= n_stages; ++k) {
        regions.push_back(n_stages < 26 ? letter_name(k) : (k == n_stages ? "CONSUMER" : numbered('S', k, 3)));
    }
    auto dims = Dimensions::uniform(std::move(regions), kGoods);
    const Index g = dims.g();
    Matrix Z = Matrix::Zero(g, g);
    Matrix Y = Matrix::Zero(g, g);
    for (std::size_t k = 0; k + 1 < n_stages; ++k) {
        Z(static_cast<Index>(k), static_cast<Index>(k + 1)) = stage_values[k];
    }
    Y(static_cast<Index>(n_stages - 1), static_cast<Index>(n_stages)) = stage_values[n_stages - 1];
    return assemble_table(std::move(Z), std::move(Y), std::move(dims));
}

IcioTable synth_spider(std::size_t n_suppliers, std::span<const double> supplier_values, double assembly_value) {
    if (n_suppliers < 2) {
        throw Error(ErrorKind::InvalidParams, "a spider needs at least 2 suppliers");
    }
    if (supplier_values.size() != n_suppliers) {
        throw Error(ErrorKind::InvalidParams, "expected " + std::to_string(n_suppliers) +
                                                  " supplier values, got " + std::to_string(supplier_values.size()));
    }
    require_positive(supplier_values, "supplier values");
    double parts = 0.0;
    for (double v : supplier_values) parts += v;
    if (!(assembly_value > parts) || !std::isfinite(assembly_value)) {
        throw Error(ErrorKind::InvalidParams, "assembly value must exceed the sum of supplier values");
    }

    std::vector<std::string> regions;
    for (std::size_t k = 0; k < n_suppliers; ++k) regions.push_back("S" + std::to_string(k + 1));
    regions.emplace_back("H");
    regions.emplace_back("C");
    auto dims = Dimensions::uniform(std::move(regions), kGoods);
    const Index g = dims.g();
    const auto hub = static_cast<Index>(n_suppliers);
    Matrix Z = Matrix::Zero(g, g);
    Matrix Y = Matrix::Zero(g, g);
    for (std::size_t k = 0; k < n_suppliers; ++k) {
        Z(static_cast<Index>(k), hub) = supplier_values[k];
    }
    Y(hub, hub + 1) = assembly_value;
    return assemble_table(std::move(Z), std::move(Y), std::move(dims));
}

IcioTable synth_random_balanced(const RandomTableParams& p) {
    if (p.n_regions == 0 || p.n_sectors == 0) {
        throw Error(ErrorKind::InvalidParams, "region and sector counts must be positive");
    }
    if (!(p.density > 0.0 && p.density <= 1.0)) {
        throw Error(ErrorKind::InvalidParams, "density must be in (0, 1]");
    }
    if (!(p.va_floor > 0.0 && p.va_floor < 1.0)) {
        throw Error(ErrorKind::InvalidParams, "va_floor must be in (0, 1)");
    }

    std::vector<std::string> regions, sectors;
    for (std::size_t r = 0; r < p.n_regions; ++r) regions.push_back(numbered('R', r, 3));
    for (std::size_t k = 0; k < p.n_sectors; ++k) sectors.push_back(numbered('S', k, 2));
    auto dims = Dimensions::uniform(std::move(regions), sectors);
    const Index g = dims.g();
    const auto n = static_cast<Index>(p.n_regions);

    std::mt19937_64 rng(p.seed);

    // Coefficients column by column: sparse weights, domestic inputs favored,
    // normalized to a column sum in [0.05, 0.999] * (1 - va_floor).
    Matrix A = Matrix::Zero(g, g);
    for (Index j = 0; j < g; ++j) {
        const auto rj = dims.region_of(j);
        double total = 0.0;
        for (Index i = 0; i < g; ++i) {
            const bool keep = i == j || unit(rng) < p.density;
            const double w = unit(rng);
            if (keep) {
                A(i, j) = w * (dims.region_of(i) == rj ? 4.0 : 1.0);
                total += A(i, j);
            }
        }
        const double target = (1.0 - p.va_floor) * (0.05 + 0.949 * unit(rng));
        if (total > 0.0) {
            A.col(j) *= target / total;
        }
    }

    Matrix Y(g, n);
    for (Index i = 0; i < g; ++i) {
        const double scale = 1.0 + 99.0 * unit(rng);
        for (Index r = 0; r < n; ++r) {
            const double w = 0.1 + unit(rng);
            Y(i, r) = scale * w * (static_cast<Index>(dims.region_of(i)) == r ? 5.0 : 1.0);
        }
    }

    // x = A x + y by fixed-point iteration; converges since every column
    // sum of A is below 1 - va_floor.
    const Vector y = Y.rowwise().sum();
    Vector x = y;
    for (int it = 0; it < 10000; ++it) {
        Vector next = y;
        next.noalias() += A * x;
        const double change = (next - x).cwiseAbs().maxCoeff();
        x.swap(next);
        if (change <= 1e-15 * x.cwiseAbs().maxCoeff()) {
            break;
        }
    }

    Matrix Z = A * x.asDiagonal();
    return assemble_table(std::move(Z), std::move(Y), std::move(dims));
}

}  // namespace gvc
