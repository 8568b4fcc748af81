#include "gvc/decomposition.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "gvc/error.hpp"

namespace gvc {

std::string_view to_string(SectorGroup group) {
    switch (group) {
        case SectorGroup::Primary: return "Primary";
        case SectorGroup::Manufacturing: return "Manufacturing";
        case SectorGroup::BusinessServices: return "BusinessServices";
        case SectorGroup::OtherServices: return "OtherServices";
        case SectorGroup::Other: return "Other";
    }
    return "Unknown";
}

std::optional<SectorGroup> parse_sector_group(std::string_view text) {
    for (auto g : {SectorGroup::Primary, SectorGroup::Manufacturing, SectorGroup::BusinessServices,
                   SectorGroup::OtherServices, SectorGroup::Other}) {
        if (to_string(g) == text) {
            return g;
        }
    }
    return std::nullopt;
}

bool SectorGroupMap::assign(std::string key, SectorGroup group) {
    return entries_.emplace(std::move(key), group).second;
}

std::optional<SectorGroup> SectorGroupMap::lookup(const std::string& region, const std::string& sector) const {
    if (auto it = entries_.find(region + ":" + sector); it != entries_.end()) {
        return it->second;
    }
    if (auto it = entries_.find(sector); it != entries_.end()) {
        return it->second;
    }
    return std::nullopt;
}

std::vector<SectorGroup> resolve_groups(const Dimensions& dims, const SectorGroupMap& groups) {
    std::vector<SectorGroup> out;
    out.reserve(static_cast<std::size_t>(dims.g()));
    for (Index i = 0; i < dims.g(); ++i) {
        const auto group = groups.lookup(dims.regions()[dims.region_of(i)], dims.sector_of(i));
        if (!group) {
            throw Error(ErrorKind::UnmappedSector, "no sector group for " + dims.code(i));
        }
        out.push_back(*group);
    }
    return out;
}

Vector value_added_coefficients(const IcioTable& table) {
    Vector v = Vector::Zero(table.g());
    for (Index j = 0; j < table.g(); ++j) {
        const double xj = table.x()(j);
        if (xj > 0.0) {
            v(j) = std::max(table.va()(j) / xj, 0.0);
        }
    }
    return v;
}

namespace {

void check_consistent(const IcioTable& table, const LeontiefInverse& leontief) {
    if (leontief.B.rows() != table.g() || leontief.B.cols() != table.g() || !(leontief.dims == table.dims())) {
        throw Error(ErrorKind::DimensionMismatch, "Leontief inverse does not belong to this table");
    }
}

/// n x g: value added originating in region s per unit of output of column j,
/// i.e. the region-aggregated rows of diag(v) * B.
Matrix regional_va_content(const IcioTable& table, const Vector& v, const Matrix& B) {
    const auto& dims = table.dims();
    const auto n = dims.n_regions();
    Matrix R(static_cast<Index>(n), table.g());
    for (std::size_t s = 0; s < n; ++s) {
        const Index off = dims.offset(s);
        const Index len = dims.sector_count(s);
        R.row(static_cast<Index>(s)).noalias() = v.segment(off, len).transpose() * B.middleRows(off, len);
    }
    return R;
}

double share(double part, double whole) { return whole > 0.0 ? part / whole : 0.0; }

struct VaTrace {
    GrossExports exports;
    Matrix regional;      // n x g
    Vector foreign;       // length g: foreign VA per unit of output of column j
};

VaTrace trace(const IcioTable& table, const LeontiefInverse& leontief) {
    check_consistent(table, leontief);
    const auto& dims = table.dims();
    VaTrace t;
    t.exports = gross_exports(table);
    const Vector v = value_added_coefficients(table);
    t.regional = regional_va_content(table, v, leontief.B);
    const Vector total = t.regional.colwise().sum().transpose();
    t.foreign.resize(table.g());
    for (Index j = 0; j < table.g(); ++j) {
        t.foreign(j) = total(j) - t.regional(static_cast<Index>(dims.region_of(j)), j);
    }
    return t;
}

}  // namespace

Matrix va_source_matrix(const IcioTable& table, const LeontiefInverse& leontief) {
    check_consistent(table, leontief);
    return value_added_coefficients(table).asDiagonal() * leontief.B;
}

ParticipationReport participation(const IcioTable& table, const LeontiefInverse& leontief) {
    const auto& dims = table.dims();
    const auto t = trace(table, leontief);
    const auto& e = t.exports.e;
    const auto& by_dest = t.exports.by_destination;

    ParticipationReport report;
    for (std::size_t s = 0; s < dims.n_regions(); ++s) {
        const auto si = static_cast<Index>(s);
        const Index off = dims.offset(s);
        const Index len = dims.sector_count(s);

        CountryParticipation c;
        c.country = dims.regions()[s];
        c.exports = t.exports.country(si);
        c.fva = t.foreign.segment(off, len).dot(e.segment(off, len));
        c.dva = c.exports - c.fva;

        // Own value added carried by partner exports to third countries.
        double dvx = 0.0;
        for (Index j = 0; j < table.g(); ++j) {
            if (dims.region_of(j) != s) {
                dvx += t.regional(si, j) * (e(j) - by_dest(j, si));
            }
        }
        c.dvx = dvx;

        c.zero_exports = !(c.exports > 0.0);
        c.backward_share = share(c.fva, c.exports);
        c.forward_share = share(c.dvx, c.exports);
        c.participation = c.backward_share + c.forward_share;
        report.countries.push_back(std::move(c));
    }
    return report;
}

ParticipationReport participation(const IcioTable& table, const LeontiefOptions& opts) {
    return participation(table, leontief_inverse(technical_coefficients(table), opts));
}

GvcTradeReport gvc_trade_share(const IcioTable& table, const LeontiefOptions& opts) {
    const auto& dims = table.dims();
    const auto n = dims.n_regions();
    const auto coefficients = technical_coefficients(table);
    const auto& A = coefficients.A;
    const Vector v = value_added_coefficients(table);
    const auto exports = gross_exports(table);

    // w_s = v_s L_ss (domestic VA per unit of s's output, local chain only);
    // q_r = L_rr Y_rr (r's output for its own final absorption).
    std::vector<Eigen::RowVectorXd> w(n);
    std::vector<Vector> q(n);
    for (std::size_t s = 0; s < n; ++s) {
        const Index off = dims.offset(s);
        const Index len = dims.sector_count(s);
        const Matrix local = local_inverse(A.block(off, off, len, len), opts);
        w[s] = v.segment(off, len).transpose() * local;
        q[s] = local * table.Y().col(static_cast<Index>(s)).segment(off, len);
    }

    GvcTradeReport report;
    for (std::size_t s = 0; s < n; ++s) {
        const Index so = dims.offset(s);
        const Index sl = dims.sector_count(s);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == s) {
                continue;
            }
            const Index ro = dims.offset(r);
            const Index rl = dims.sector_count(r);
            BilateralGvc pair;
            pair.exporter = dims.regions()[s];
            pair.importer = dims.regions()[r];
            pair.gross = exports.bilateral(static_cast<Index>(s), static_cast<Index>(r));
            const double final_direct = w[s].dot(table.Y().col(static_cast<Index>(r)).segment(so, sl));
            const double intermediate_direct = w[s] * (A.block(so, ro, sl, rl) * q[r]);
            pair.traditional = final_direct + intermediate_direct;
            pair.gvc = pair.gross - pair.traditional;
            report.total_gross += pair.gross;
            report.total_traditional += pair.traditional;
            report.total_gvc += pair.gvc;
            report.pairs.push_back(std::move(pair));
        }
    }
    report.world_gvc_share = share(report.total_gvc, report.total_gross);
    return report;
}

std::vector<CountryIndicators> taxonomy_inputs(const IcioTable& table, const LeontiefInverse& leontief,
                                               const SectorGroupMap& groups, const MacroTable& macro) {
    const auto& dims = table.dims();
    const auto row_groups = resolve_groups(dims, groups);
    for (const auto& region : dims.regions()) {
        if (!macro.contains(region)) {
            throw Error(ErrorKind::MissingMacro, "no macro indicators for '" + region + "'");
        }
    }

    const auto t = trace(table, leontief);
    const Vector v = value_added_coefficients(table);
    const auto& e = t.exports.e;
    const auto& B = leontief.B;

    std::vector<CountryIndicators> out;
    for (std::size_t s = 0; s < dims.n_regions(); ++s) {
        const auto& m = macro.at(dims.regions()[s]);
        if (!(m.gdp > 0.0)) {
            throw Error(ErrorKind::InvalidParams, "gdp of '" + m.country + "' must be positive");
        }
        const Index off = dims.offset(s);
        const Index len = dims.sector_count(s);

        // Domestic VA in exports attributed to the sector where it originates.
        const Vector origin = v.segment(off, len).cwiseProduct(B.block(off, off, len, len) * e.segment(off, len));
        std::array<double, 5> by_group{};
        double foreign_manuf = 0.0;
        for (Index k = 0; k < len; ++k) {
            by_group[static_cast<std::size_t>(row_groups[static_cast<std::size_t>(off + k)])] += origin(k);
            if (row_groups[static_cast<std::size_t>(off + k)] == SectorGroup::Manufacturing) {
                foreign_manuf += t.foreign(off + k) * e(off + k);
            }
        }
        const double dva_total = origin.sum();
        const double exports = t.exports.country(static_cast<Index>(s));

        CountryIndicators ind;
        ind.country = m.country;
        ind.size = m.size;
        ind.primary_share = share(by_group[static_cast<std::size_t>(SectorGroup::Primary)], dva_total);
        ind.manuf_share = share(by_group[static_cast<std::size_t>(SectorGroup::Manufacturing)], dva_total);
        ind.bus_serv_share = share(by_group[static_cast<std::size_t>(SectorGroup::BusinessServices)], dva_total);
        ind.other_serv_share = share(by_group[static_cast<std::size_t>(SectorGroup::OtherServices)], dva_total);
        ind.other_share = share(by_group[static_cast<std::size_t>(SectorGroup::Other)], dva_total);
        ind.backward_manuf = share(foreign_manuf, exports);
        if (m.ip_receipts) ind.ip_receipts_gdp = 100.0 * *m.ip_receipts / m.gdp;
        if (m.rnd_expenditure) ind.rnd_gdp = 100.0 * *m.rnd_expenditure / m.gdp;
        out.push_back(std::move(ind));
    }
    return out;
}

std::vector<CountryIndicators> taxonomy_inputs(const IcioTable& table, const SectorGroupMap& groups,
                                               const MacroTable& macro, const LeontiefOptions& opts) {
    return taxonomy_inputs(table, leontief_inverse(technical_coefficients(table), opts), groups, macro);
}

}  // namespace gvc
