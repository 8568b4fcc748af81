#include "gvc/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

#include "gvc/error.hpp"
#include "json.hpp"

namespace gvc {

namespace {

using json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& message) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + message);
}

/// Splits lines into trimmed fields, skipping blank and `#` lines.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    bool next(std::vector<std::string>& fields) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            const auto t = trim(raw);
            if (t.empty() || t.front() == '#') continue;
            fields.clear();
            std::size_t start = 0;
            while (true) {
                const auto comma = raw.find(',', start);
                const auto end = comma == std::string::npos ? raw.size() : comma;
                fields.emplace_back(trim(std::string_view(raw).substr(start, end - start)));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            return true;
        }
        return false;
    }

    std::size_t line() const { return line_; }

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

double parse_number(std::string_view text, std::size_t line, std::string_view what) {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
        parse_fail(line, "invalid number '" + std::string(text) + "' for " + std::string(what));
    }
    return value;
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

/// Column name -> index for a header row; rejects duplicates.
std::map<std::string, std::size_t> header_index(const std::vector<std::string>& header, std::size_t line) {
    std::map<std::string, std::size_t> out;
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (!out.emplace(lower(header[k]), k).second) {
            parse_fail(line, "duplicate column '" + header[k] + "'");
        }
    }
    return out;
}

std::size_t require_column(const std::map<std::string, std::size_t>& idx, const std::string& name,
                           std::size_t line) {
    const auto it = idx.find(name);
    if (it == idx.end()) parse_fail(line, "missing column '" + name + "'");
    return it->second;
}

std::optional<std::size_t> optional_column(const std::map<std::string, std::size_t>& idx, const std::string& name) {
    const auto it = idx.find(name);
    if (it == idx.end()) return std::nullopt;
    return it->second;
}

void check_width(const std::vector<std::string>& fields, std::size_t expected, std::size_t line) {
    if (fields.size() != expected) {
        parse_fail(line, "expected " + std::to_string(expected) + " fields, found " + std::to_string(fields.size()));
    }
}

void ensure_written(std::ostream& out) {
    if (!out) throw Error(ErrorKind::IoError, "write failed");
}

std::optional<double> optional_percent(const std::vector<std::string>& fields, std::optional<std::size_t> col,
                                       std::size_t line, const char* name) {
    if (!col || fields[*col].empty()) return std::nullopt;
    const double v = parse_number(fields[*col], line, name);
    if (v < 0.0) parse_fail(line, std::string(name) + " must be nonnegative");
    return v;
}

}  // namespace

RawTable parse_icio_csv_raw(std::istream& in) {
    CsvReader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields)) {
        throw Error(ErrorKind::EmptyInput, "ICIO file has no header row");
    }
    const std::size_t header_line = reader.line();

    // Z codes first, then FD columns.
    std::vector<std::string> region_order;
    std::vector<std::vector<std::string>> sectors;
    std::vector<std::string> codes;
    std::vector<std::string> fd_regions;
    for (std::size_t k = 1; k < fields.size(); ++k) {
        const auto& cell = fields[k];
        const auto colon = cell.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == cell.size()) {
            parse_fail(header_line, "column " + std::to_string(k + 1) + " '" + cell +
                                        "' is not a REGION:SECTOR or FD:REGION code");
        }
        const auto prefix = cell.substr(0, colon);
        const auto suffix = cell.substr(colon + 1);
        if (prefix == "FD") {
            fd_regions.push_back(suffix);
            continue;
        }
        if (!fd_regions.empty()) {
            parse_fail(header_line, "intermediate column '" + cell + "' follows final-demand columns");
        }
        if (region_order.empty() || region_order.back() != prefix) {
            if (std::find(region_order.begin(), region_order.end(), prefix) != region_order.end()) {
                parse_fail(header_line, "sectors of region '" + prefix + "' are not contiguous");
            }
            region_order.push_back(prefix);
            sectors.emplace_back();
        }
        sectors.back().push_back(suffix);
        codes.push_back(cell);
    }
    if (codes.empty()) {
        parse_fail(header_line, "header has no REGION:SECTOR columns");
    }

    std::optional<Dimensions> dims_opt;
    try {
        dims_opt.emplace(region_order, sectors);
    } catch (const Error& e) {
        parse_fail(header_line, e.what());
    }
    RawTable raw;
    raw.dims = std::move(*dims_opt);
    const auto& dims = raw.dims;
    const Index g = dims.g();
    const auto n = dims.n_regions();

    // fd_col[r] = header position of region r's final-demand column.
    std::vector<std::optional<std::size_t>> fd_col(n);
    for (std::size_t k = 0; k < fd_regions.size(); ++k) {
        const auto r = dims.find_region(fd_regions[k]);
        if (!r) parse_fail(header_line, "final-demand column for unknown region '" + fd_regions[k] + "'");
        if (fd_col[*r]) parse_fail(header_line, "duplicate final-demand column for region '" + fd_regions[k] + "'");
        fd_col[*r] = k;
    }
    for (std::size_t r = 0; r < n; ++r) {
        if (!fd_col[r]) parse_fail(header_line, "missing final-demand column FD:" + dims.regions()[r]);
    }

    const std::size_t width = 1 + codes.size() + fd_regions.size();
    raw.Z = Matrix::Zero(g, g);
    raw.Y = Matrix::Zero(g, static_cast<Index>(n));
    Index row = 0;
    while (reader.next(fields)) {
        const auto line = reader.line();
        const auto& label = fields.front();
        if (label == "VA" || label == "X") {
            if (row < g) parse_fail(line, "expected row " + codes[static_cast<std::size_t>(row)] + ", found " + label);
            auto& target = label == "VA" ? raw.va : raw.x;
            if (target) parse_fail(line, "duplicate " + label + " row");
            if (fields.size() != static_cast<std::size_t>(g) + 1) {
                if (fields.size() != width ||
                    std::any_of(fields.begin() + 1 + g, fields.end(), [](const auto& f) { return !f.empty(); })) {
                    parse_fail(line, label + " row must have " + std::to_string(g) + " values");
                }
            }
            Vector v(g);
            for (Index j = 0; j < g; ++j) {
                v(j) = parse_number(fields[static_cast<std::size_t>(j) + 1], line, label + " of " + codes[static_cast<std::size_t>(j)]);
            }
            target = std::move(v);
            continue;
        }
        if (raw.va || raw.x) parse_fail(line, "data row '" + label + "' after VA/X rows");
        if (row >= g) parse_fail(line, "unexpected row '" + label + "'; all " + std::to_string(g) + " rows already read");
        if (label != codes[static_cast<std::size_t>(row)]) {
            parse_fail(line, "expected row " + codes[static_cast<std::size_t>(row)] + ", found '" + label + "'");
        }
        check_width(fields, width, line);
        for (Index j = 0; j < g; ++j) {
            raw.Z(row, j) = parse_number(fields[static_cast<std::size_t>(j) + 1], line, "Z column " + codes[static_cast<std::size_t>(j)]);
        }
        for (std::size_t r = 0; r < n; ++r) {
            raw.Y(row, static_cast<Index>(r)) =
                parse_number(fields[1 + codes.size() + *fd_col[r]], line, "FD:" + dims.regions()[r]);
        }
        ++row;
    }
    if (row < g) {
        parse_fail(reader.line() + 1, "file ends before row " + codes[static_cast<std::size_t>(row)]);
    }
    return raw;
}

IcioTable parse_icio_csv(std::istream& in, const AssembleOptions& opts) {
    return assemble_table(parse_icio_csv_raw(in), opts);
}

void write_icio_csv(const IcioTable& table, std::ostream& out, std::span<const std::string> comments) {
    const auto& dims = table.dims();
    const Index g = dims.g();
    for (const auto& c : comments) out << "# " << c << '\n';
    out << "origin";
    for (Index j = 0; j < g; ++j) out << ',' << dims.code(j);
    for (const auto& r : dims.regions()) out << ",FD:" << r;
    out << '\n';
    for (Index i = 0; i < g; ++i) {
        out << dims.code(i);
        for (Index j = 0; j < g; ++j) out << ',' << format_number(table.Z()(i, j));
        for (Index r = 0; r < table.Y().cols(); ++r) out << ',' << format_number(table.Y()(i, r));
        out << '\n';
    }
    out << "VA";
    for (Index j = 0; j < g; ++j) out << ',' << format_number(table.va()(j));
    out << "\nX";
    for (Index j = 0; j < g; ++j) out << ',' << format_number(table.x()(j));
    out << '\n';
    out.flush();
    ensure_written(out);
}

SectorGroupMap parse_sector_groups(std::istream& in) {
    CsvReader reader(in);
    std::vector<std::string> fields;
    SectorGroupMap map;
    bool first = true;
    bool any = false;
    while (reader.next(fields)) {
        const auto line = reader.line();
        check_width(fields, 2, line);
        if (first && lower(fields[0]) == "sector" && lower(fields[1]) == "group") {
            first = false;
            continue;
        }
        first = false;
        if (fields[0].empty()) parse_fail(line, "empty sector label");
        const auto group = parse_sector_group(fields[1]);
        if (!group) {
            throw Error(ErrorKind::UnknownGroup, "line " + std::to_string(line) + ": '" + fields[1] +
                                                     "' is not one of Primary, Manufacturing, BusinessServices, "
                                                     "OtherServices, Other");
        }
        if (!map.assign(fields[0], *group)) parse_fail(line, "sector '" + fields[0] + "' mapped twice");
        any = true;
    }
    if (!any) throw Error(ErrorKind::EmptyInput, "sector group file has no mappings");
    return map;
}

MacroTable parse_macro_csv(std::istream& in, const SizeCutoffs& cutoffs) {
    CsvReader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields)) throw Error(ErrorKind::EmptyInput, "macro file has no header row");
    const auto header_line = reader.line();
    const auto idx = header_index(fields, header_line);
    const auto c_country = require_column(idx, "country", header_line);
    const auto c_size = require_column(idx, "size", header_line);
    const auto c_gdp = require_column(idx, "gdp", header_line);
    const auto c_ip = optional_column(idx, "ip_receipts");
    const auto c_rnd = optional_column(idx, "rnd_expenditure");
    const auto width = fields.size();

    MacroTable table;
    while (reader.next(fields)) {
        const auto line = reader.line();
        check_width(fields, width, line);
        MacroRecord m;
        m.country = fields[c_country];
        if (m.country.empty()) parse_fail(line, "empty country");
        if (auto size = parse_size_class(fields[c_size])) {
            m.size = *size;
        } else {
            const double population = parse_number(fields[c_size], line, "size");
            if (population < 0.0) parse_fail(line, "population must be nonnegative");
            m.size = size_from_population(population, cutoffs);
        }
        m.gdp = parse_number(fields[c_gdp], line, "gdp");
        if (!(m.gdp > 0.0)) parse_fail(line, "gdp must be positive");
        m.ip_receipts = optional_percent(fields, c_ip, line, "ip_receipts");
        m.rnd_expenditure = optional_percent(fields, c_rnd, line, "rnd_expenditure");
        if (table.contains(m.country)) {
            throw Error(ErrorKind::DuplicateCountry,
                        "line " + std::to_string(line) + ": '" + m.country + "' appears more than once");
        }
        table.emplace(m.country, std::move(m));
    }
    return table;
}

std::vector<CountryIndicators> parse_indicators_csv(std::istream& in) {
    CsvReader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields)) throw Error(ErrorKind::EmptyInput, "indicator file has no header row");
    const auto header_line = reader.line();
    const auto idx = header_index(fields, header_line);
    const auto c_country = require_column(idx, "country", header_line);
    const auto c_size = require_column(idx, "size", header_line);
    const auto c_primary = require_column(idx, "primary_share", header_line);
    const auto c_manuf = require_column(idx, "manuf_share", header_line);
    const auto c_bus = require_column(idx, "bus_serv_share", header_line);
    const auto c_backward = require_column(idx, "backward_manuf", header_line);
    const auto c_ip = optional_column(idx, "ip_receipts_gdp");
    const auto c_rnd = optional_column(idx, "rnd_gdp");
    const auto c_oserv = optional_column(idx, "other_serv_share");
    const auto c_other = optional_column(idx, "other_share");
    const auto width = fields.size();

    std::vector<CountryIndicators> out;
    std::set<std::string> seen;
    while (reader.next(fields)) {
        const auto line = reader.line();
        check_width(fields, width, line);
        CountryIndicators ind;
        ind.country = fields[c_country];
        if (ind.country.empty()) parse_fail(line, "empty country");
        const auto size = parse_size_class(fields[c_size]);
        if (!size) parse_fail(line, "size must be SMALL, MEDIUM or LARGE");
        ind.size = *size;
        ind.primary_share = parse_number(fields[c_primary], line, "primary_share");
        ind.manuf_share = parse_number(fields[c_manuf], line, "manuf_share");
        ind.bus_serv_share = parse_number(fields[c_bus], line, "bus_serv_share");
        ind.backward_manuf = parse_number(fields[c_backward], line, "backward_manuf");
        if (c_oserv && !fields[*c_oserv].empty()) ind.other_serv_share = parse_number(fields[*c_oserv], line, "other_serv_share");
        if (c_other && !fields[*c_other].empty()) ind.other_share = parse_number(fields[*c_other], line, "other_share");
        ind.ip_receipts_gdp = optional_percent(fields, c_ip, line, "ip_receipts_gdp");
        ind.rnd_gdp = optional_percent(fields, c_rnd, line, "rnd_gdp");
        if (!seen.insert(ind.country).second) {
            throw Error(ErrorKind::DuplicateCountry,
                        "line " + std::to_string(line) + ": '" + ind.country + "' appears more than once");
        }
        out.push_back(std::move(ind));
    }
    return out;
}

std::map<std::string, TaxonomyGroup> parse_classification(std::istream& in) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    const auto body = trim(text);
    if (body.empty()) throw Error(ErrorKind::EmptyInput, "classification file is empty");

    std::map<std::string, TaxonomyGroup> out;
    auto add = [&out](const std::string& country, const std::string& group, const std::string& where) {
        const auto g = parse_taxonomy_group(group);
        if (!g) throw Error(ErrorKind::UnknownGroup, where + ": '" + group + "' is not a taxonomy group");
        if (!out.emplace(country, *g).second) {
            throw Error(ErrorKind::DuplicateCountry, where + ": '" + country + "' appears more than once");
        }
    };

    if (body.front() == '[' || body.front() == '{') {
        json doc;
        try {
            doc = json::parse(body);
        } catch (const json::exception& e) {
            throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
        }
        try {
            if (doc.is_array()) {
                for (std::size_t k = 0; k < doc.size(); ++k) {
                    add(doc[k].at("country").get<std::string>(), doc[k].at("group").get<std::string>(),
                        "entry " + std::to_string(k + 1));
                }
            } else {
                for (const auto& [country, group] : doc.items()) {
                    add(country, group.get<std::string>(), "key '" + country + "'");
                }
            }
        } catch (const json::exception& e) {
            throw Error(ErrorKind::ParseError, std::string("unexpected JSON shape: ") + e.what());
        }
        return out;
    }

    std::istringstream lines(text);
    CsvReader reader(lines);
    std::vector<std::string> fields;
    reader.next(fields);
    const auto header_line = reader.line();
    const auto idx = header_index(fields, header_line);
    const auto c_country = require_column(idx, "country", header_line);
    const auto c_group = require_column(idx, "group", header_line);
    const auto width = fields.size();
    while (reader.next(fields)) {
        check_width(fields, width, reader.line());
        add(fields[c_country], fields[c_group], "line " + std::to_string(reader.line()));
    }
    return out;
}

namespace {

struct PerSizeKey {
    const char* name;
    std::array<double, 3> ThresholdSet::*field;
};

struct ScalarKey {
    const char* name;
    double ThresholdSet::*field;
};

constexpr ScalarKey kScalarKeys[] = {
    {"commodities_manuf_max", &ThresholdSet::commodities_manuf_max},
    {"commodities_primary_low_max", &ThresholdSet::commodities_primary_low_max},
    {"commodities_primary_high_min", &ThresholdSet::commodities_primary_high_min},
    {"advanced_manuf_bus_min", &ThresholdSet::advanced_manuf_bus_min},
};

constexpr PerSizeKey kPerSizeKeys[] = {
    {"commodities_backward_manuf_max", &ThresholdSet::commodities_backward_manuf_max},
    {"innovative_ip_min", &ThresholdSet::innovative_ip_min},
    {"innovative_rnd_min", &ThresholdSet::innovative_rnd_min},
    {"advanced_backward_manuf_min", &ThresholdSet::advanced_backward_manuf_min},
};

}  // namespace

ThresholdSet parse_thresholds(std::istream& in, ThresholdSet t) {
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto text = trim(raw);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) parse_fail(line, "expected key = value");
        const std::string key = lower(trim(text.substr(0, eq)));
        const auto value = trim(text.substr(eq + 1));

        if (key == "innovative_first") {
            const auto v = lower(value);
            if (v == "true") t.innovative_first = true;
            else if (v == "false") t.innovative_first = false;
            else parse_fail(line, "innovative_first must be true or false");
            continue;
        }
        bool matched = false;
        for (const auto& k : kScalarKeys) {
            if (key == k.name) {
                t.*k.field = parse_number(value, line, key);
                matched = true;
            }
        }
        const auto dot = key.find('.');
        if (!matched && dot != std::string::npos) {
            const auto base = key.substr(0, dot);
            const auto size = parse_size_class(key.substr(dot + 1));
            for (const auto& k : kPerSizeKeys) {
                if (size && base == k.name) {
                    (t.*k.field)[static_cast<std::size_t>(*size)] = parse_number(value, line, key);
                    matched = true;
                }
            }
        }
        if (!matched) parse_fail(line, "unknown threshold key '" + key + "'");
    }
    t.validate();
    return t;
}

void write_thresholds(const ThresholdSet& t, std::ostream& out) {
    out << "# shares are fractions; innovation thresholds are percent of GDP\n";
    for (const auto& k : kScalarKeys) out << k.name << " = " << format_number(t.*k.field) << '\n';
    for (const auto& k : kPerSizeKeys) {
        for (auto size : kSizeClasses) {
            out << k.name << '.' << lower(to_string(size)) << " = "
                << format_number((t.*k.field)[static_cast<std::size_t>(size)]) << '\n';
        }
    }
    out << "innovative_first = " << (t.innovative_first ? "true" : "false") << '\n';
    ensure_written(out);
}

namespace {

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string optional_csv(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

void emit(const json& doc, std::ostream& out) {
    out << doc.dump(2) << '\n';
    out.flush();
    ensure_written(out);
}

}  // namespace

void write_report(const ParticipationReport& report, std::ostream& out, ReportFormat format) {
    if (format == ReportFormat::Json) {
        json doc = json::array();
        for (const auto& c : report.countries) {
            doc.push_back({{"country", c.country},
                           {"exports", c.exports},
                           {"dva", c.dva},
                           {"fva", c.fva},
                           {"dvx", c.dvx},
                           {"backward_share", c.backward_share},
                           {"forward_share", c.forward_share},
                           {"participation", c.participation},
                           {"zero_exports", c.zero_exports}});
        }
        emit(doc, out);
        return;
    }
    out << "country,exports,dva,fva,dvx,backward_share,forward_share,participation,zero_exports\n";
    for (const auto& c : report.countries) {
        out << c.country << ',' << format_number(c.exports) << ',' << format_number(c.dva) << ','
            << format_number(c.fva) << ',' << format_number(c.dvx) << ',' << format_number(c.backward_share) << ','
            << format_number(c.forward_share) << ',' << format_number(c.participation) << ','
            << (c.zero_exports ? "true" : "false") << '\n';
    }
    ensure_written(out);
}

void write_report(const GvcTradeReport& report, std::ostream& out, ReportFormat format) {
    if (format == ReportFormat::Json) {
        json pairs = json::array();
        for (const auto& p : report.pairs) {
            pairs.push_back({{"exporter", p.exporter},
                             {"importer", p.importer},
                             {"gross", p.gross},
                             {"traditional", p.traditional},
                             {"gvc", p.gvc}});
        }
        emit({{"pairs", pairs},
              {"total_gross", report.total_gross},
              {"total_traditional", report.total_traditional},
              {"total_gvc", report.total_gvc},
              {"world_gvc_share", report.world_gvc_share}},
             out);
        return;
    }
    out << "exporter,importer,gross,traditional,gvc,gvc_share\n";
    for (const auto& p : report.pairs) {
        out << p.exporter << ',' << p.importer << ',' << format_number(p.gross) << ','
            << format_number(p.traditional) << ',' << format_number(p.gvc) << ','
            << format_number(p.gross > 0.0 ? p.gvc / p.gross : 0.0) << '\n';
    }
    out << "WORLD,*," << format_number(report.total_gross) << ',' << format_number(report.total_traditional) << ','
        << format_number(report.total_gvc) << ',' << format_number(report.world_gvc_share) << '\n';
    ensure_written(out);
}

void write_report(const std::vector<ClassifiedCountry>& report, std::ostream& out, ReportFormat format) {
    if (format == ReportFormat::Json) {
        json doc = json::array();
        for (const auto& c : report) {
            const auto& i = c.indicators;
            doc.push_back({{"country", i.country},
                           {"group", to_string(c.group)},
                           {"size", to_string(i.size)},
                           {"primary_share", i.primary_share},
                           {"manuf_share", i.manuf_share},
                           {"bus_serv_share", i.bus_serv_share},
                           {"other_serv_share", i.other_serv_share},
                           {"other_share", i.other_share},
                           {"backward_manuf", i.backward_manuf},
                           {"ip_receipts_gdp", optional_json(i.ip_receipts_gdp)},
                           {"rnd_gdp", optional_json(i.rnd_gdp)}});
        }
        emit(doc, out);
        return;
    }
    out << "country,group,size,primary_share,manuf_share,bus_serv_share,other_serv_share,other_share,"
           "backward_manuf,ip_receipts_gdp,rnd_gdp\n";
    for (const auto& c : report) {
        const auto& i = c.indicators;
        out << i.country << ',' << to_string(c.group) << ',' << to_string(i.size) << ','
            << format_number(i.primary_share) << ',' << format_number(i.manuf_share) << ','
            << format_number(i.bus_serv_share) << ',' << format_number(i.other_serv_share) << ','
            << format_number(i.other_share) << ',' << format_number(i.backward_manuf) << ','
            << optional_csv(i.ip_receipts_gdp) << ',' << optional_csv(i.rnd_gdp) << '\n';
    }
    ensure_written(out);
}

void write_report(const TransitionReport& report, std::ostream& out, ReportFormat format) {
    if (format == ReportFormat::Json) {
        json ladder = json::array();
        for (auto g : report.ladder) ladder.push_back(to_string(g));
        json matrix = json::array();
        for (const auto& row : report.counts) matrix.push_back(row);
        emit({{"ladder", ladder},
              {"matrix", matrix},
              {"upgraded", report.upgraded},
              {"downgraded", report.downgraded},
              {"unchanged", report.unchanged},
              {"entrants", report.entrants},
              {"exits", report.exits}},
             out);
        return;
    }
    out << "from";
    for (auto g : report.ladder) out << ',' << to_string(g);
    out << '\n';
    for (std::size_t a = 0; a < kGroupCount; ++a) {
        out << to_string(report.ladder[a]);
        for (std::size_t b = 0; b < kGroupCount; ++b) out << ',' << report.counts[a][b];
        out << '\n';
    }
    out << "\ncountry,status\n";
    auto list = [&out](const std::vector<std::string>& names, const char* status) {
        for (const auto& n : names) out << n << ',' << status << '\n';
    };
    list(report.upgraded, "upgraded");
    list(report.downgraded, "downgraded");
    list(report.unchanged, "unchanged");
    list(report.entrants, "entrant");
    list(report.exits, "exit");
    ensure_written(out);
}

void write_report(const ValidationReport& report, std::ostream& out, ReportFormat format) {
    if (format == ReportFormat::Json) {
        auto residuals = [](const std::vector<BalanceResidual>& items) {
            json arr = json::array();
            for (const auto& r : items) {
                arr.push_back({{"index", r.index}, {"label", r.label}, {"residual", r.residual}, {"relative", r.relative}});
            }
            return arr;
        };
        emit({{"ok", report.ok()},
              {"tolerance", report.tolerance},
              {"rows", residuals(report.rows)},
              {"columns", residuals(report.columns)},
              {"negative_flows", report.negative_flows},
              {"shape_errors", report.shape_errors}},
             out);
        return;
    }
    out << "kind,index,label,residual,relative\n";
    for (const auto& r : report.rows) {
        out << "row," << r.index << ',' << r.label << ',' << format_number(r.residual) << ','
            << format_number(r.relative) << '\n';
    }
    for (const auto& r : report.columns) {
        out << "column," << r.index << ',' << r.label << ',' << format_number(r.residual) << ','
            << format_number(r.relative) << '\n';
    }
    for (const auto& f : report.negative_flows) out << "negative,," << f << ",,\n";
    for (const auto& s : report.shape_errors) out << "shape,,\"" << s << "\",,\n";
    ensure_written(out);
}

}  // namespace gvc
