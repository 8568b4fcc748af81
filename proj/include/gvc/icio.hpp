#pragma once

// Inter-country input-output tables: index space, assembly with accounting
// identity checks, balance validation and gross export aggregation.

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gvc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Index space of a table: regions in order, each owning a contiguous block
/// of sector rows. Sector counts may differ between regions.
class Dimensions {
public:
    Dimensions() = default;
    /// Throws Error(DimensionMismatch) on an empty region list, a region with
    /// no sectors, or duplicate region / sector labels.
    Dimensions(std::vector<std::string> regions, std::vector<std::vector<std::string>> sectors);

    /// Same sector list for every region.
    static Dimensions uniform(std::vector<std::string> regions, const std::vector<std::string>& sectors);

    std::size_t n_regions() const { return regions_.size(); }
    Index g() const { return g_; }

    const std::vector<std::string>& regions() const { return regions_; }
    const std::vector<std::string>& sectors(std::size_t region) const { return sectors_[region]; }
    Index sector_count(std::size_t region) const { return static_cast<Index>(sectors_[region].size()); }
    Index offset(std::size_t region) const { return offsets_[region]; }
    std::size_t region_of(Index row) const { return region_of_[static_cast<std::size_t>(row)]; }

    /// "REGION:SECTOR" code of a row.
    std::string code(Index row) const;
    const std::string& sector_of(Index row) const;

    std::optional<std::size_t> find_region(const std::string& label) const;

    bool operator==(const Dimensions& other) const = default;

private:
    std::vector<std::string> regions_;
    std::vector<std::vector<std::string>> sectors_;
    std::vector<Index> offsets_;
    std::vector<std::size_t> region_of_;
    Index g_ = 0;
};

struct AssembleOptions {
    /// Relative balance tolerance: |residual| / max(1, |x|).
    double balance_tol = 1e-9;
    /// Value added may be negative down to -va_negative_tol * x.
    double va_negative_tol = 1e-6;
    /// Z and Y entries below -flow_negative_tol are rejected.
    double flow_negative_tol = 0.0;

    static AssembleOptions synthetic() { return {}; }
    static AssembleOptions ingest() { return {1e-4, 1e-6, 0.0}; }
};

/// Unvalidated table contents as read from a file; gross output and value
/// added are optional and, when present, are checked rather than trusted.
struct RawTable {
    Dimensions dims;
    Matrix Z;
    Matrix Y;
    std::optional<Vector> x;
    std::optional<Vector> va;
};

class IcioTable;

/// Derives x = Z1 + Y1 and va = x - Z'1. Caller-supplied x / va are checked
/// against the derived values and rejected with BalanceViolation when they
/// disagree beyond opts.balance_tol.
IcioTable assemble_table(Matrix Z, Matrix Y, Dimensions dims, const AssembleOptions& opts = {},
                         std::optional<Vector> x = std::nullopt, std::optional<Vector> va = std::nullopt);

IcioTable assemble_table(RawTable raw, const AssembleOptions& opts = {});

/// Immutable balanced ICIO table. Built only through assemble_table.
class IcioTable {
public:
    const Dimensions& dims() const { return dims_; }
    /// g x g intermediate flows, origin row -> using column.
    const Matrix& Z() const { return Z_; }
    /// g x n_regions final demand by destination region.
    const Matrix& Y() const { return Y_; }
    const Vector& x() const { return x_; }
    const Vector& va() const { return va_; }

    std::size_t n_regions() const { return dims_.n_regions(); }
    Index g() const { return dims_.g(); }

    /// Same labels, every flow multiplied by factor > 0.
    IcioTable scaled(double factor) const;

private:
    friend IcioTable assemble_table(Matrix, Matrix, Dimensions, const AssembleOptions&, std::optional<Vector>,
                                    std::optional<Vector>);
    IcioTable() = default;

    Dimensions dims_;
    Matrix Z_;
    Matrix Y_;
    Vector x_;
    Vector va_;
};

struct BalanceResidual {
    Index index = 0;
    std::string label;
    /// derived - declared (row: Z1 + Y1 - x; column: Z'1 + va - x).
    double residual = 0.0;
    double relative = 0.0;
};

struct ValidationReport {
    double tolerance = 0.0;
    std::vector<BalanceResidual> rows;
    std::vector<BalanceResidual> columns;
    /// Z or Y entries below zero, as "Z[i,j]" / "Y[i,r]" labels.
    std::vector<std::string> negative_flows;
    /// Inconsistent matrix / vector shapes; residuals are not formed then.
    std::vector<std::string> shape_errors;

    bool ok() const { return rows.empty() && columns.empty() && negative_flows.empty() && shape_errors.empty(); }
};

/// Lists every row / column whose relative residual exceeds tol. Never throws.
ValidationReport validate_balance(const RawTable& raw, double tol);
ValidationReport validate_balance(const IcioTable& table, double tol);

struct GrossExports {
    /// Length g: cross-border sales of each row.
    Vector e;
    /// g x n_regions: cross-border sales of each row by destination (zero in
    /// the row's own region).
    Matrix by_destination;
    /// n x n: exporter region -> importer region.
    Matrix bilateral;
    /// Length n: total exports per region.
    Vector country;
};

GrossExports gross_exports(const IcioTable& table);

}  // namespace gvc
