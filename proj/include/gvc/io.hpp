#pragma once

// File formats. All CSV inputs are UTF-8, comma-separated, decimal point, no
// thousands separators; `#` comment lines and blank lines are skipped and
// ParseError messages carry the 1-based line number.
//
// ICIO table layout:
//
//   origin,A:AGR,A:MAN,B:AGR,B:MAN,FD:A,FD:B
//   A:AGR,1,2,3,4,5,6
//   ...                      one row per column code, same order
//   VA,...                   optional, g values
//   X,...                    optional, g values
//
// The first header cell is a free label. FD columns must name every region
// exactly once. VA / X rows, when present, are reconciled with the values
// derived from Z and Y.

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gvc/decomposition.hpp"
#include "gvc/icio.hpp"
#include "gvc/taxonomy.hpp"

namespace gvc {

RawTable parse_icio_csv_raw(std::istream& in);
IcioTable parse_icio_csv(std::istream& in, const AssembleOptions& opts = AssembleOptions::ingest());

/// Values are written in shortest round-trip form, so parsing the output
/// reproduces the table exactly. Each comment becomes a leading `# ` line.
void write_icio_csv(const IcioTable& table, std::ostream& out, std::span<const std::string> comments = {});

/// Lines of `sector,group`; an optional first line `sector,group` is a header.
/// Groups: Primary, Manufacturing, BusinessServices, OtherServices, Other.
SectorGroupMap parse_sector_groups(std::istream& in);

/// Header row required. Columns (any order): country, size, gdp, and
/// optionally ip_receipts, rnd_expenditure (same currency as gdp; empty cell
/// = unknown). size is SMALL / MEDIUM / LARGE or a population count.
MacroTable parse_macro_csv(std::istream& in, const SizeCutoffs& cutoffs = {});

/// Header row required. Columns: country, size, primary_share, manuf_share,
/// bus_serv_share, backward_manuf (fractions) and optionally
/// ip_receipts_gdp, rnd_gdp (percent of GDP), other_serv_share, other_share.
std::vector<CountryIndicators> parse_indicators_csv(std::istream& in);

/// Reads a classification produced by write_report: a JSON array of objects
/// with "country" and "group", a JSON object country -> group, or a CSV with
/// country and group columns.
std::map<std::string, TaxonomyGroup> parse_classification(std::istream& in);

/// `key = value` lines. Per-size keys take a `.small`, `.medium` or `.large`
/// suffix, e.g. `advanced_backward_manuf_min.large = 0.15`.
ThresholdSet parse_thresholds(std::istream& in, ThresholdSet base = {});
void write_thresholds(const ThresholdSet& t, std::ostream& out);

enum class ReportFormat { Json, Csv };

struct ClassifiedCountry {
    CountryIndicators indicators;
    TaxonomyGroup group = TaxonomyGroup::LimitedManufacturing;
};

void write_report(const ParticipationReport& report, std::ostream& out, ReportFormat format);
void write_report(const GvcTradeReport& report, std::ostream& out, ReportFormat format);
void write_report(const std::vector<ClassifiedCountry>& report, std::ostream& out, ReportFormat format);
void write_report(const TransitionReport& report, std::ostream& out, ReportFormat format);
void write_report(const ValidationReport& report, std::ostream& out, ReportFormat format);

}  // namespace gvc
