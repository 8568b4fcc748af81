#include "gvc/icio.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "gvc/error.hpp"

namespace gvc {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NegativeFlow: return "NegativeFlow";
        case ErrorKind::BalanceViolation: return "BalanceViolation";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::InvalidIndicators: return "InvalidIndicators";
        case ErrorKind::DuplicateCountry: return "DuplicateCountry";
        case ErrorKind::MissingMacro: return "MissingMacro";
        case ErrorKind::UnmappedSector: return "UnmappedSector";
        case ErrorKind::UnknownGroup: return "UnknownGroup";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

Dimensions::Dimensions(std::vector<std::string> regions, std::vector<std::vector<std::string>> sectors)
    : regions_(std::move(regions)), sectors_(std::move(sectors)) {
    if (regions_.empty()) {
        throw Error(ErrorKind::DimensionMismatch, "a table needs at least one region");
    }
    if (regions_.size() != sectors_.size()) {
        throw Error(ErrorKind::DimensionMismatch, "region count " + std::to_string(regions_.size()) +
                                                      " does not match sector list count " +
                                                      std::to_string(sectors_.size()));
    }
    std::set<std::string> seen_regions;
    for (std::size_t r = 0; r < regions_.size(); ++r) {
        if (regions_[r].empty()) {
            throw Error(ErrorKind::DimensionMismatch, "empty region label");
        }
        if (!seen_regions.insert(regions_[r]).second) {
            throw Error(ErrorKind::DimensionMismatch, "duplicate region '" + regions_[r] + "'");
        }
        if (sectors_[r].empty()) {
            throw Error(ErrorKind::DimensionMismatch, "region '" + regions_[r] + "' has no sectors");
        }
        std::set<std::string> seen_sectors;
        for (const auto& s : sectors_[r]) {
            if (s.empty()) {
                throw Error(ErrorKind::DimensionMismatch, "empty sector label in region '" + regions_[r] + "'");
            }
            if (!seen_sectors.insert(s).second) {
                throw Error(ErrorKind::DimensionMismatch,
                            "duplicate sector '" + s + "' in region '" + regions_[r] + "'");
            }
        }
        offsets_.push_back(g_);
        g_ += static_cast<Index>(sectors_[r].size());
        region_of_.insert(region_of_.end(), sectors_[r].size(), r);
    }
}

Dimensions Dimensions::uniform(std::vector<std::string> regions, const std::vector<std::string>& sectors) {
    std::vector<std::vector<std::string>> per_region(regions.size(), sectors);
    return Dimensions(std::move(regions), std::move(per_region));
}

std::string Dimensions::code(Index row) const { return regions_[region_of(row)] + ":" + sector_of(row); }

const std::string& Dimensions::sector_of(Index row) const {
    const auto r = region_of(row);
    return sectors_[r][static_cast<std::size_t>(row - offsets_[r])];
}

std::optional<std::size_t> Dimensions::find_region(const std::string& label) const {
    const auto it = std::find(regions_.begin(), regions_.end(), label);
    if (it == regions_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - regions_.begin());
}

namespace {

double relative(double residual, double scale) { return std::abs(residual) / std::max(1.0, std::abs(scale)); }

void check_shapes(const Matrix& Z, const Matrix& Y, const Dimensions& dims) {
    const Index g = dims.g();
    const auto n = static_cast<Index>(dims.n_regions());
    if (Z.rows() != g || Z.cols() != g) {
        std::ostringstream msg;
        msg << "Z is " << Z.rows() << "x" << Z.cols() << ", expected " << g << "x" << g;
        throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
    if (Y.rows() != g || Y.cols() != n) {
        std::ostringstream msg;
        msg << "Y is " << Y.rows() << "x" << Y.cols() << ", expected " << g << "x" << n;
        throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
}

void check_flows(const Matrix& M, const char* name, const Dimensions& dims, bool columns_are_regions,
                 double tol) {
    for (Index j = 0; j < M.cols(); ++j) {
        for (Index i = 0; i < M.rows(); ++i) {
            const double v = M(i, j);
            if (!std::isfinite(v)) {
                throw Error(ErrorKind::InvalidParams, std::string(name) + " entry at " + dims.code(i) +
                                                          " is not finite");
            }
            if (v < -tol) {
                const std::string col = columns_are_regions ? dims.regions()[static_cast<std::size_t>(j)]
                                                            : dims.code(j);
                std::ostringstream msg;
                msg << name << "[" << dims.code(i) << ", " << col << "] = " << v;
                throw Error(ErrorKind::NegativeFlow, msg.str());
            }
        }
    }
}

}  // namespace

IcioTable assemble_table(Matrix Z, Matrix Y, Dimensions dims, const AssembleOptions& opts, std::optional<Vector> x,
                         std::optional<Vector> va) {
    check_shapes(Z, Y, dims);
    check_flows(Z, "Z", dims, false, opts.flow_negative_tol);
    check_flows(Y, "Y", dims, true, opts.flow_negative_tol);

    const Index g = dims.g();
    Vector x_derived = Z.rowwise().sum() + Y.rowwise().sum();
    Vector va_derived = x_derived - Z.colwise().sum().transpose();

    if (x) {
        if (x->size() != g) {
            throw Error(ErrorKind::DimensionMismatch, "gross output has length " + std::to_string(x->size()) +
                                                          ", expected " + std::to_string(g));
        }
        for (Index i = 0; i < g; ++i) {
            if (relative((*x)(i) - x_derived(i), x_derived(i)) > opts.balance_tol) {
                std::ostringstream msg;
                msg << "row " << dims.code(i) << ": declared output " << (*x)(i) << " but Z1 + Y1 = "
                    << x_derived(i);
                throw Error(ErrorKind::BalanceViolation, msg.str());
            }
        }
    }
    if (va) {
        if (va->size() != g) {
            throw Error(ErrorKind::DimensionMismatch, "value added has length " + std::to_string(va->size()) +
                                                          ", expected " + std::to_string(g));
        }
        for (Index j = 0; j < g; ++j) {
            if (relative((*va)(j) - va_derived(j), x_derived(j)) > opts.balance_tol) {
                std::ostringstream msg;
                msg << "column " << dims.code(j) << ": declared value added " << (*va)(j) << " but x - Z'1 = "
                    << va_derived(j);
                throw Error(ErrorKind::BalanceViolation, msg.str());
            }
        }
    }
    for (Index j = 0; j < g; ++j) {
        if (va_derived(j) < -opts.va_negative_tol * std::max(1.0, x_derived(j))) {
            std::ostringstream msg;
            msg << "value added of " << dims.code(j) << " is " << va_derived(j) << " (output " << x_derived(j)
                << ")";
            throw Error(ErrorKind::NegativeFlow, msg.str());
        }
    }

    IcioTable table;
    table.dims_ = std::move(dims);
    table.Z_ = std::move(Z);
    table.Y_ = std::move(Y);
    table.x_ = std::move(x_derived);
    table.va_ = std::move(va_derived);
    return table;
}

IcioTable assemble_table(RawTable raw, const AssembleOptions& opts) {
    return assemble_table(std::move(raw.Z), std::move(raw.Y), std::move(raw.dims), opts, std::move(raw.x),
                          std::move(raw.va));
}

IcioTable IcioTable::scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw Error(ErrorKind::InvalidParams, "scale factor must be positive and finite");
    }
    IcioTable out;
    out.dims_ = dims_;
    out.Z_ = Z_ * factor;
    out.Y_ = Y_ * factor;
    out.x_ = x_ * factor;
    out.va_ = va_ * factor;
    return out;
}

ValidationReport validate_balance(const RawTable& raw, double tol) {
    ValidationReport report;
    report.tolerance = tol;
    const auto& dims = raw.dims;
    const Index g = dims.g();
    const auto n = static_cast<Index>(dims.n_regions());

    if (raw.Z.rows() != g || raw.Z.cols() != g) {
        report.shape_errors.push_back("Z is " + std::to_string(raw.Z.rows()) + "x" + std::to_string(raw.Z.cols()) +
                                      ", expected " + std::to_string(g) + "x" + std::to_string(g));
    }
    if (raw.Y.rows() != g || raw.Y.cols() != n) {
        report.shape_errors.push_back("Y is " + std::to_string(raw.Y.rows()) + "x" + std::to_string(raw.Y.cols()) +
                                      ", expected " + std::to_string(g) + "x" + std::to_string(n));
    }
    if (raw.x && raw.x->size() != g) {
        report.shape_errors.push_back("gross output has length " + std::to_string(raw.x->size()));
    }
    if (raw.va && raw.va->size() != g) {
        report.shape_errors.push_back("value added has length " + std::to_string(raw.va->size()));
    }
    if (!report.shape_errors.empty()) {
        return report;
    }

    for (Index j = 0; j < g; ++j) {
        for (Index i = 0; i < g; ++i) {
            if (raw.Z(i, j) < 0.0) {
                report.negative_flows.push_back("Z[" + dims.code(i) + "," + dims.code(j) + "]");
            }
        }
    }
    for (Index r = 0; r < n; ++r) {
        for (Index i = 0; i < g; ++i) {
            if (raw.Y(i, r) < 0.0) {
                report.negative_flows.push_back("Y[" + dims.code(i) + "," +
                                                dims.regions()[static_cast<std::size_t>(r)] + "]");
            }
        }
    }

    const Vector row_sums = raw.Z.rowwise().sum() + raw.Y.rowwise().sum();
    const Vector& x = raw.x ? *raw.x : row_sums;
    if (raw.x) {
        for (Index i = 0; i < g; ++i) {
            const double residual = row_sums(i) - x(i);
            const double rel = relative(residual, x(i));
            if (!(rel <= tol)) {
                report.rows.push_back({i, dims.code(i), residual, rel});
            }
        }
    }
    if (raw.va) {
        const Vector col_sums = raw.Z.colwise().sum().transpose();
        for (Index j = 0; j < g; ++j) {
            const double residual = col_sums(j) + (*raw.va)(j) - x(j);
            const double rel = relative(residual, x(j));
            if (!(rel <= tol)) {
                report.columns.push_back({j, dims.code(j), residual, rel});
            }
        }
    }
    return report;
}

ValidationReport validate_balance(const IcioTable& table, double tol) {
    RawTable raw{table.dims(), table.Z(), table.Y(), table.x(), table.va()};
    return validate_balance(raw, tol);
}

GrossExports gross_exports(const IcioTable& table) {
    const auto& dims = table.dims();
    const Index g = dims.g();
    const std::size_t n = dims.n_regions();

    GrossExports out;
    out.by_destination = Matrix::Zero(g, static_cast<Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        const auto col = static_cast<Index>(r);
        out.by_destination.col(col) =
            table.Z().middleCols(dims.offset(r), dims.sector_count(r)).rowwise().sum() + table.Y().col(col);
        out.by_destination.col(col).segment(dims.offset(r), dims.sector_count(r)).setZero();
    }
    out.e = out.by_destination.rowwise().sum();

    out.bilateral = Matrix::Zero(static_cast<Index>(n), static_cast<Index>(n));
    for (std::size_t s = 0; s < n; ++s) {
        out.bilateral.row(static_cast<Index>(s)) =
            out.by_destination.middleRows(dims.offset(s), dims.sector_count(s)).colwise().sum();
    }
    out.country = out.bilateral.rowwise().sum();
    return out;
}

}  // namespace gvc
