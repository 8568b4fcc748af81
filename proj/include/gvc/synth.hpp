#pragma once

// Synthetic tables: sequential (snake) and converging (spider) value chains,
// plus seeded random balanced tables for property and performance tests.

#include <cstdint>
#include <span>
#include <string_view>

#include "gvc/icio.hpp"

namespace gvc {

/// Stage k sells its whole output to stage k + 1 as intermediates; the last
/// stage sells final goods to an appended consumer region with zero output.
/// Stage values are gross outputs and must be strictly increasing (each
/// stage adds positive value). Regions are named A, B, C, ...
IcioTable synth_snake(std::size_t n_stages, std::span<const double> stage_values);

/// Suppliers S1..Sn each sell their output to hub H, which sells final goods
/// to consumer C. assembly_value is H's gross output and must exceed the sum
/// of supplier values.
IcioTable synth_spider(std::size_t n_suppliers, std::span<const double> supplier_values, double assembly_value);

struct RandomTableParams {
    std::size_t n_regions = 3;
    std::size_t n_sectors = 2;
    std::uint64_t seed = 1;
    /// Probability that an off-diagonal coefficient is nonzero.
    double density = 0.5;
    /// Minimum value-added share of every column, in (0, 1).
    double va_floor = 0.3;
};

inline constexpr std::string_view kRandomGeneratorName = "mt19937_64";

/// Deterministic for a given seed. Every column's coefficient sum is at most
/// 1 - va_floor. Regions are R001.., sectors S01..
IcioTable synth_random_balanced(const RandomTableParams& params);

}  // namespace gvc
