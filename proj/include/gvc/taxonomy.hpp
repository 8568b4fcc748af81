#pragma once

// Sequential four-type GVC taxonomy (Commodities split into three
// subgroups) and panel transition counts.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gvc {

enum class SizeClass { Small = 0, Medium = 1, Large = 2 };

inline constexpr std::array<SizeClass, 3> kSizeClasses{SizeClass::Small, SizeClass::Medium, SizeClass::Large};

std::string_view to_string(SizeClass size);
/// Accepts SMALL / MEDIUM / LARGE in any letter case.
std::optional<SizeClass> parse_size_class(std::string_view text);

/// Population cutoffs used when a size class is derived instead of given.
/// The defaults are a local convention, not a published rule.
struct SizeCutoffs {
    double small_max_population = 10e6;
    double medium_max_population = 50e6;
};

/// population < small_max -> Small; < medium_max -> Medium; otherwise Large.
SizeClass size_from_population(double population, const SizeCutoffs& cutoffs = {});

/// Enum order is the default upgrading ladder.
enum class TaxonomyGroup {
    LowParticipation = 0,
    LimitedCommodities = 1,
    HighCommodities = 2,
    LimitedManufacturing = 3,
    AdvancedManufacturingServices = 4,
    InnovativeActivities = 5,
};

inline constexpr std::size_t kGroupCount = 6;
inline constexpr std::array<TaxonomyGroup, kGroupCount> kDefaultLadder{
    TaxonomyGroup::LowParticipation,     TaxonomyGroup::LimitedCommodities,
    TaxonomyGroup::HighCommodities,      TaxonomyGroup::LimitedManufacturing,
    TaxonomyGroup::AdvancedManufacturingServices, TaxonomyGroup::InnovativeActivities,
};

std::string_view to_string(TaxonomyGroup group);
std::optional<TaxonomyGroup> parse_taxonomy_group(std::string_view text);
bool is_commodities(TaxonomyGroup group);

struct CountryIndicators {
    std::string country;
    SizeClass size = SizeClass::Medium;
    /// Shares of domestic value added in gross exports, as fractions.
    double primary_share = 0.0;
    double manuf_share = 0.0;
    double bus_serv_share = 0.0;
    double other_serv_share = 0.0;
    double other_share = 0.0;
    /// Foreign value added in manufacturing exports / total exports.
    double backward_manuf = 0.0;
    /// Percent of GDP. A missing value never satisfies an innovation test.
    std::optional<double> ip_receipts_gdp;
    std::optional<double> rnd_gdp;
};

/// Share thresholds are fractions; innovation thresholds are percent of GDP.
/// Per-size arrays are indexed by SizeClass.
struct ThresholdSet {
    double commodities_manuf_max = 0.60;
    std::array<double, 3> commodities_backward_manuf_max{0.20, 0.10, 0.075};
    double commodities_primary_low_max = 0.20;
    double commodities_primary_high_min = 0.40;
    std::array<double, 3> innovative_ip_min{0.15, 0.1, 0.1};
    std::array<double, 3> innovative_rnd_min{1.5, 1.0, 1.0};
    double advanced_manuf_bus_min = 0.80;
    std::array<double, 3> advanced_backward_manuf_min{0.30, 0.20, 0.15};
    /// Rule order after Commodities: Innovative before Advanced when true.
    bool innovative_first = true;

    /// Throws InvalidParams when a threshold is nonpositive or low >= high.
    void validate() const;
};

/// First match wins: Commodities, then Innovative and Advanced (order per
/// innovative_first), then LimitedManufacturing. "less than" comparisons are
/// strict and "equal to or greater than" comparisons inclusive.
/// Throws InvalidIndicators for shares outside [0, 1] or negative percents.
TaxonomyGroup classify(const CountryIndicators& ind, const ThresholdSet& t = {});

/// Throws DuplicateCountry when a label repeats.
std::map<std::string, TaxonomyGroup> classify_all(const std::vector<CountryIndicators>& inds,
                                                  const ThresholdSet& t = {});

struct TransitionReport {
    std::array<TaxonomyGroup, kGroupCount> ladder = kDefaultLadder;
    /// counts[from][to], indexed by position in the ladder.
    std::array<std::array<int, kGroupCount>, kGroupCount> counts{};
    std::vector<std::string> upgraded;
    std::vector<std::string> downgraded;
    std::vector<std::string> unchanged;
    /// Present only in the later panel.
    std::vector<std::string> entrants;
    /// Present only in the earlier panel.
    std::vector<std::string> exits;
};

/// Throws InvalidParams if ladder is not a permutation of the six groups.
TransitionReport transitions(const std::map<std::string, TaxonomyGroup>& before,
                             const std::map<std::string, TaxonomyGroup>& after,
                             const std::array<TaxonomyGroup, kGroupCount>& ladder = kDefaultLadder);

}  // namespace gvc
