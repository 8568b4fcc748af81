#include "gvc/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "gvc/error.hpp"

namespace gvc {

namespace {

std::string upper(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
    return out;
}

constexpr double kShareSlack = 1e-9;

void check_share(double value, const char* name, const std::string& country) {
    if (!(value >= 0.0 && value <= 1.0 + kShareSlack)) {
        throw Error(ErrorKind::InvalidIndicators,
                    std::string(name) + " of '" + country + "' is " + std::to_string(value) + ", outside [0, 1]");
    }
}

void check_percent(const std::optional<double>& value, const char* name, const std::string& country) {
    if (value && !(*value >= 0.0 && std::isfinite(*value))) {
        throw Error(ErrorKind::InvalidIndicators,
                    std::string(name) + " of '" + country + "' must be a nonnegative percentage");
    }
}

std::size_t idx(SizeClass size) { return static_cast<std::size_t>(size); }

bool meets(const std::optional<double>& value, double threshold) { return value && *value >= threshold; }

}  // namespace

std::string_view to_string(SizeClass size) {
    switch (size) {
        case SizeClass::Small: return "SMALL";
        case SizeClass::Medium: return "MEDIUM";
        case SizeClass::Large: return "LARGE";
    }
    return "UNKNOWN";
}

std::optional<SizeClass> parse_size_class(std::string_view text) {
    const auto u = upper(text);
    if (u == "SMALL") return SizeClass::Small;
    if (u == "MEDIUM") return SizeClass::Medium;
    if (u == "LARGE") return SizeClass::Large;
    return std::nullopt;
}

SizeClass size_from_population(double population, const SizeCutoffs& cutoffs) {
    if (!(population >= 0.0)) {
        throw Error(ErrorKind::InvalidParams, "population must be nonnegative");
    }
    if (population < cutoffs.small_max_population) return SizeClass::Small;
    if (population < cutoffs.medium_max_population) return SizeClass::Medium;
    return SizeClass::Large;
}

std::string_view to_string(TaxonomyGroup group) {
    switch (group) {
        case TaxonomyGroup::LowParticipation: return "LowParticipation";
        case TaxonomyGroup::LimitedCommodities: return "LimitedCommodities";
        case TaxonomyGroup::HighCommodities: return "HighCommodities";
        case TaxonomyGroup::LimitedManufacturing: return "LimitedManufacturing";
        case TaxonomyGroup::AdvancedManufacturingServices: return "AdvancedManufacturingServices";
        case TaxonomyGroup::InnovativeActivities: return "InnovativeActivities";
    }
    return "Unknown";
}

std::optional<TaxonomyGroup> parse_taxonomy_group(std::string_view text) {
    for (auto group : kDefaultLadder) {
        if (to_string(group) == text) {
            return group;
        }
    }
    return std::nullopt;
}

bool is_commodities(TaxonomyGroup group) {
    return group == TaxonomyGroup::LowParticipation || group == TaxonomyGroup::LimitedCommodities ||
           group == TaxonomyGroup::HighCommodities;
}

void ThresholdSet::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error(ErrorKind::InvalidParams, std::string(name) + " must be positive");
        }
    };
    positive(commodities_manuf_max, "commodities_manuf_max");
    positive(commodities_primary_low_max, "commodities_primary_low_max");
    positive(commodities_primary_high_min, "commodities_primary_high_min");
    positive(advanced_manuf_bus_min, "advanced_manuf_bus_min");
    for (auto size : kSizeClasses) {
        positive(commodities_backward_manuf_max[idx(size)], "commodities_backward_manuf_max");
        positive(innovative_ip_min[idx(size)], "innovative_ip_min");
        positive(innovative_rnd_min[idx(size)], "innovative_rnd_min");
        positive(advanced_backward_manuf_min[idx(size)], "advanced_backward_manuf_min");
    }
    if (!(commodities_primary_low_max < commodities_primary_high_min)) {
        throw Error(ErrorKind::InvalidParams,
                    "commodities_primary_low_max must be below commodities_primary_high_min");
    }
}

TaxonomyGroup classify(const CountryIndicators& ind, const ThresholdSet& t) {
    check_share(ind.primary_share, "primary_share", ind.country);
    check_share(ind.manuf_share, "manuf_share", ind.country);
    check_share(ind.bus_serv_share, "bus_serv_share", ind.country);
    check_share(ind.backward_manuf, "backward_manuf", ind.country);
    check_percent(ind.ip_receipts_gdp, "ip_receipts_gdp", ind.country);
    check_percent(ind.rnd_gdp, "rnd_gdp", ind.country);

    const auto s = idx(ind.size);

    if (ind.manuf_share < t.commodities_manuf_max && ind.backward_manuf < t.commodities_backward_manuf_max[s]) {
        if (ind.primary_share < t.commodities_primary_low_max) {
            return TaxonomyGroup::LowParticipation;
        }
        if (ind.primary_share < t.commodities_primary_high_min) {
            return TaxonomyGroup::LimitedCommodities;
        }
        return TaxonomyGroup::HighCommodities;
    }

    const bool innovative =
        meets(ind.ip_receipts_gdp, t.innovative_ip_min[s]) && meets(ind.rnd_gdp, t.innovative_rnd_min[s]);
    const bool advanced = ind.manuf_share + ind.bus_serv_share >= t.advanced_manuf_bus_min &&
                          ind.backward_manuf >= t.advanced_backward_manuf_min[s];

    if (t.innovative_first) {
        if (innovative) return TaxonomyGroup::InnovativeActivities;
        if (advanced) return TaxonomyGroup::AdvancedManufacturingServices;
    } else {
        if (advanced) return TaxonomyGroup::AdvancedManufacturingServices;
        if (innovative) return TaxonomyGroup::InnovativeActivities;
    }
    return TaxonomyGroup::LimitedManufacturing;
}

std::map<std::string, TaxonomyGroup> classify_all(const std::vector<CountryIndicators>& inds,
                                                  const ThresholdSet& t) {
    std::map<std::string, TaxonomyGroup> out;
    for (const auto& ind : inds) {
        if (out.contains(ind.country)) {
            throw Error(ErrorKind::DuplicateCountry, "'" + ind.country + "' appears more than once");
        }
        out.emplace(ind.country, classify(ind, t));
    }
    return out;
}

TransitionReport transitions(const std::map<std::string, TaxonomyGroup>& before,
                             const std::map<std::string, TaxonomyGroup>& after,
                             const std::array<TaxonomyGroup, kGroupCount>& ladder) {
    std::array<std::size_t, kGroupCount> rank{};
    std::set<TaxonomyGroup> seen;
    for (std::size_t k = 0; k < kGroupCount; ++k) {
        if (!seen.insert(ladder[k]).second) {
            throw Error(ErrorKind::InvalidParams, "ladder repeats " + std::string(to_string(ladder[k])));
        }
        rank[static_cast<std::size_t>(ladder[k])] = k;
    }

    TransitionReport report;
    report.ladder = ladder;
    for (const auto& [country, from] : before) {
        const auto it = after.find(country);
        if (it == after.end()) {
            report.exits.push_back(country);
            continue;
        }
        const auto r0 = rank[static_cast<std::size_t>(from)];
        const auto r1 = rank[static_cast<std::size_t>(it->second)];
        ++report.counts[r0][r1];
        if (r1 > r0) {
            report.upgraded.push_back(country);
        } else if (r1 < r0) {
            report.downgraded.push_back(country);
        } else {
            report.unchanged.push_back(country);
        }
    }
    for (const auto& [country, group] : after) {
        if (!before.contains(country)) {
            report.entrants.push_back(country);
        }
    }
    return report;
}

}  // namespace gvc
