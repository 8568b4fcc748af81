#pragma once

// Value-added tracing through the Leontief inverse: backward / forward
// participation, the two-border GVC trade share, and the sectoral export
// indicators consumed by the taxonomy.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gvc/icio.hpp"
#include "gvc/leontief.hpp"
#include "gvc/taxonomy.hpp"

namespace gvc {

enum class SectorGroup { Primary, Manufacturing, BusinessServices, OtherServices, Other };

std::string_view to_string(SectorGroup group);
std::optional<SectorGroup> parse_sector_group(std::string_view text);

/// Sector label -> group. Keys are either a bare sector code ("C10") that
/// applies in every region, or a "REGION:SECTOR" code that takes precedence.
class SectorGroupMap {
public:
    /// Returns false if the key was already assigned (the old value is kept).
    bool assign(std::string key, SectorGroup group);
    std::optional<SectorGroup> lookup(const std::string& region, const std::string& sector) const;
    const std::map<std::string, SectorGroup>& entries() const { return entries_; }

private:
    std::map<std::string, SectorGroup> entries_;
};

/// Group of every table row; throws UnmappedSector naming the first gap.
std::vector<SectorGroup> resolve_groups(const Dimensions& dims, const SectorGroupMap& groups);

/// va / x with negatives clamped to zero and zero-output rows set to zero.
Vector value_added_coefficients(const IcioTable& table);

/// diag(v) * B: value added of row-sector i embodied per unit of gross output
/// of column-sector j.
Matrix va_source_matrix(const IcioTable& table, const LeontiefInverse& leontief);

struct CountryParticipation {
    std::string country;
    double exports = 0.0;
    double dva = 0.0;
    double fva = 0.0;
    double dvx = 0.0;
    double backward_share = 0.0;
    double forward_share = 0.0;
    double participation = 0.0;
    /// Shares are reported as 0 for countries without exports.
    bool zero_exports = false;
};

struct ParticipationReport {
    std::vector<CountryParticipation> countries;
};

ParticipationReport participation(const IcioTable& table, const LeontiefInverse& leontief);
ParticipationReport participation(const IcioTable& table, const LeontiefOptions& opts = {});

struct BilateralGvc {
    std::string exporter;
    std::string importer;
    double gross = 0.0;
    /// Value crossing exactly one border.
    double traditional = 0.0;
    double gvc = 0.0;
};

struct GvcTradeReport {
    /// Every ordered pair of distinct regions, exporter-major.
    std::vector<BilateralGvc> pairs;
    double total_gross = 0.0;
    double total_traditional = 0.0;
    double total_gvc = 0.0;
    /// total_gvc / total_gross, or 0 when nothing is traded.
    double world_gvc_share = 0.0;
};

/// Needs only the domestic-block inverses; throws SingularSystem when one of
/// them is singular.
GvcTradeReport gvc_trade_share(const IcioTable& table, const LeontiefOptions& opts = {});

struct MacroRecord {
    std::string country;
    SizeClass size = SizeClass::Medium;
    double gdp = 0.0;
    std::optional<double> ip_receipts;
    std::optional<double> rnd_expenditure;
};

using MacroTable = std::map<std::string, MacroRecord>;

/// One CountryIndicators per region, in table order. Throws MissingMacro or
/// UnmappedSector for incomplete inputs.
std::vector<CountryIndicators> taxonomy_inputs(const IcioTable& table, const LeontiefInverse& leontief,
                                               const SectorGroupMap& groups, const MacroTable& macro);
std::vector<CountryIndicators> taxonomy_inputs(const IcioTable& table, const SectorGroupMap& groups,
                                               const MacroTable& macro, const LeontiefOptions& opts = {});

}  // namespace gvc
