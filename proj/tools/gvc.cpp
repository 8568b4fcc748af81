// gvc: GVC participation measures and taxonomy from ICIO tables.
//
// Exit codes: 0 success, 1 input / IO error, 2 validation failure.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gvc/decomposition.hpp"
#include "gvc/error.hpp"
#include "gvc/io.hpp"
#include "gvc/leontief.hpp"
#include "gvc/synth.hpp"
#include "gvc/taxonomy.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitValidation = 2;

const char* const kIcioFormat = R"(
ICIO file (CSV, UTF-8, '#' comment lines ignored):
  origin,A:AGR,A:MAN,B:AGR,B:MAN,FD:A,FD:B
  A:AGR,<Z row ...>,<Y row ...>
  ...one row per REGION:SECTOR code, in header order
  VA,<g values>        optional, checked against X - column sums of Z
  X,<g values>         optional, checked against row sums of Z and Y
)";

const char* const kGroupsFormat = R"(
Sector group file (CSV): sector,group
  sector is a bare sector code or REGION:SECTOR (takes precedence);
  group is Primary | Manufacturing | BusinessServices | OtherServices | Other
)";

const char* const kMacroFormat = R"(
Macro file (CSV with header): country,size,gdp,ip_receipts,rnd_expenditure
  size is SMALL | MEDIUM | LARGE or a population count; ip_receipts and
  rnd_expenditure are in gdp's currency (empty cell = unknown)
)";

const char* const kIndicatorFormat = R"(
Indicator file (CSV with header): country,size,primary_share,manuf_share,
  bus_serv_share,backward_manuf[,ip_receipts_gdp,rnd_gdp]
  shares are fractions in [0, 1]; ip_receipts_gdp and rnd_gdp are percent of GDP
)";

struct Options {
    std::string icio;
    std::string groups;
    std::string macro;
    std::string indicators;
    std::string thresholds;
    std::string before;
    std::string after;
    std::string out = "-";
    std::string format = "json";
    double tol = 1e-4;
    std::vector<double> size_cutoffs;

    std::vector<double> values;
    std::size_t stages = 0;
    double assembly = 0.0;
    gvc::RandomTableParams random;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw gvc::Error(gvc::ErrorKind::IoError, "cannot open '" + path + "'");
    }
    return in;
}

/// Report destination: stdout for "-" or a file.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw gvc::Error(gvc::ErrorKind::IoError, "cannot write '" + path + "'");
            }
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

gvc::ReportFormat report_format(const Options& o) {
    return o.format == "csv" ? gvc::ReportFormat::Csv : gvc::ReportFormat::Json;
}

gvc::AssembleOptions ingest_options(const Options& o) {
    auto opts = gvc::AssembleOptions::ingest();
    opts.balance_tol = o.tol;
    return opts;
}

gvc::IcioTable load_table(const Options& o) {
    auto in = open_input(o.icio);
    return gvc::parse_icio_csv(in, ingest_options(o));
}

int run_validate(const Options& o) {
    auto in = open_input(o.icio);
    const auto raw = gvc::parse_icio_csv_raw(in);
    const auto report = gvc::validate_balance(raw, o.tol);
    Output out(o.out);
    gvc::write_report(report, out.stream(), report_format(o));
    if (!report.ok()) {
        std::cerr << "gvc: table is not balanced within " << o.tol << " (" << report.rows.size() << " rows, "
                  << report.columns.size() << " columns flagged)\n";
        return kExitValidation;
    }
    return kExitOk;
}

int run_participation(const Options& o) {
    const auto table = load_table(o);
    const auto report = gvc::participation(table);
    Output out(o.out);
    gvc::write_report(report, out.stream(), report_format(o));
    return kExitOk;
}

int run_gvc_share(const Options& o) {
    const auto table = load_table(o);
    const auto report = gvc::gvc_trade_share(table);
    Output out(o.out);
    gvc::write_report(report, out.stream(), report_format(o));
    return kExitOk;
}

int run_classify(const Options& o) {
    gvc::ThresholdSet thresholds;
    if (!o.thresholds.empty()) {
        auto in = open_input(o.thresholds);
        thresholds = gvc::parse_thresholds(in);
    }

    std::vector<gvc::CountryIndicators> indicators;
    if (!o.indicators.empty()) {
        auto in = open_input(o.indicators);
        indicators = gvc::parse_indicators_csv(in);
    } else {
        if (o.icio.empty() || o.groups.empty() || o.macro.empty()) {
            throw gvc::Error(gvc::ErrorKind::InvalidParams,
                             "classify needs --indicators, or all of --icio, --groups and --macro");
        }
        gvc::SizeCutoffs cutoffs;
        if (!o.size_cutoffs.empty()) {
            cutoffs.small_max_population = o.size_cutoffs.at(0);
            cutoffs.medium_max_population = o.size_cutoffs.at(1);
        }
        const auto table = load_table(o);
        auto groups_in = open_input(o.groups);
        const auto groups = gvc::parse_sector_groups(groups_in);
        auto macro_in = open_input(o.macro);
        const auto macro = gvc::parse_macro_csv(macro_in, cutoffs);
        indicators = gvc::taxonomy_inputs(table, groups, macro);
    }

    const auto groups = gvc::classify_all(indicators, thresholds);
    std::vector<gvc::ClassifiedCountry> report;
    for (auto& ind : indicators) {
        const auto group = groups.at(ind.country);
        report.push_back({std::move(ind), group});
    }
    Output out(o.out);
    gvc::write_report(report, out.stream(), report_format(o));
    return kExitOk;
}

int run_transitions(const Options& o) {
    auto a_in = open_input(o.before);
    const auto a = gvc::parse_classification(a_in);
    auto b_in = open_input(o.after);
    const auto b = gvc::parse_classification(b_in);
    Output out(o.out);
    gvc::write_report(gvc::transitions(a, b), out.stream(), report_format(o));
    return kExitOk;
}

int write_table(const gvc::IcioTable& table, const Options& o, const std::vector<std::string>& comments) {
    Output out(o.out);
    gvc::write_icio_csv(table, out.stream(), comments);
    return kExitOk;
}

std::string join(const std::vector<double>& values) {
    std::ostringstream s;
    for (std::size_t k = 0; k < values.size(); ++k) s << (k ? " " : "") << values[k];
    return s.str();
}

int run_synth_snake(const Options& o) {
    const auto stages = o.stages == 0 ? o.values.size() : o.stages;
    return write_table(gvc::synth_snake(stages, o.values), o, {"synth snake stages=" + std::to_string(stages) +
                                                                 " values=" + join(o.values)});
}

int run_synth_spider(const Options& o) {
    std::ostringstream a;
    a << o.assembly;
    return write_table(gvc::synth_spider(o.values.size(), o.values, o.assembly), o,
                       {"synth spider suppliers=" + join(o.values) + " assembly=" + a.str()});
}

int run_synth_random(const Options& o) {
    const auto& p = o.random;
    std::ostringstream meta;
    meta << "synth random regions=" << p.n_regions << " sectors=" << p.n_sectors << " seed=" << p.seed
         << " density=" << p.density << " va_floor=" << p.va_floor << " generator=" << gvc::kRandomGeneratorName;
    return write_table(gvc::synth_random_balanced(p), o, {meta.str()});
}

void add_report_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    cmd->add_option("--out", o.out, "Output path, - for stdout")->capture_default_str();
}

void add_tolerance(CLI::App* cmd, Options& o) {
    cmd->add_option("--tol", o.tol, "Relative balance tolerance")->check(CLI::PositiveNumber)->capture_default_str();
}

std::string threshold_defaults() {
    std::ostringstream s;
    s << "\nThreshold file (key = value); defaults:\n";
    gvc::write_thresholds(gvc::ThresholdSet{}, s);
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Global value chain participation measures and taxonomy from inter-country input-output tables",
                 "gvc"};
    app.require_subcommand(1);
    Options o;
    int (*handler)(const Options&) = nullptr;

    auto* validate = app.add_subcommand("validate", "Check row and column balance of an ICIO file");
    validate->add_option("--icio", o.icio, "ICIO CSV file")->required();
    add_tolerance(validate, o);
    add_report_flags(validate, o);
    validate->footer(kIcioFormat);
    validate->callback([&] { handler = run_validate; });

    auto* part = app.add_subcommand("participation", "Backward / forward participation per country");
    part->add_option("--icio", o.icio, "ICIO CSV file")->required();
    add_tolerance(part, o);
    add_report_flags(part, o);
    part->footer(kIcioFormat);
    part->callback([&] { handler = run_participation; });

    auto* share = app.add_subcommand("gvc-share", "Bilateral and world share of trade crossing two or more borders");
    share->add_option("--icio", o.icio, "ICIO CSV file")->required();
    add_tolerance(share, o);
    add_report_flags(share, o);
    share->footer(kIcioFormat);
    share->callback([&] { handler = run_gvc_share; });

    auto* classify = app.add_subcommand("classify", "Assign each country to a taxonomy group");
    auto* ind_opt = classify->add_option("--indicators", o.indicators, "Precomputed indicator CSV");
    auto* icio_opt = classify->add_option("--icio", o.icio, "ICIO CSV file");
    auto* groups_opt = classify->add_option("--groups", o.groups, "Sector group CSV");
    auto* macro_opt = classify->add_option("--macro", o.macro, "Macro indicator CSV");
    ind_opt->excludes(icio_opt)->excludes(groups_opt)->excludes(macro_opt);
    icio_opt->needs(groups_opt)->needs(macro_opt);
    classify->add_option("--thresholds", o.thresholds, "Threshold override file");
    classify->add_option("--size-cutoffs", o.size_cutoffs, "SMALL_MAX,MEDIUM_MAX population cutoffs")
        ->expected(2)
        ->delimiter(',');
    add_tolerance(classify, o);
    add_report_flags(classify, o);
    classify->footer(std::string(kIndicatorFormat) + kGroupsFormat + kMacroFormat + threshold_defaults());
    classify->callback([&] { handler = run_classify; });

    auto* trans = app.add_subcommand("transitions", "Group transition counts between two classifications");
    trans->add_option("--a", o.before, "Earlier classification (JSON or CSV from classify)")->required();
    trans->add_option("--b", o.after, "Later classification")->required();
    add_report_flags(trans, o);
    trans->callback([&] { handler = run_transitions; });

    auto* synth = app.add_subcommand("synth", "Write a synthetic ICIO table");
    synth->require_subcommand(1);

    auto* snake = synth->add_subcommand("snake", "Sequential chain A -> B -> ... -> consumer");
    snake->add_option("--values", o.values, "Gross output of each stage, strictly increasing")
        ->required()
        ->delimiter(',');
    snake->add_option("--stages", o.stages, "Number of stages (defaults to the number of values)");
    snake->add_option("--out", o.out, "Output path, - for stdout")->capture_default_str();
    snake->callback([&] { handler = run_synth_snake; });

    auto* spider = synth->add_subcommand("spider", "Suppliers S1..Sn -> hub H -> consumer C");
    spider->add_option("--suppliers", o.values, "Output of each supplier")->required()->delimiter(',');
    spider->add_option("--assembly", o.assembly, "Hub gross output")->required();
    spider->add_option("--out", o.out, "Output path, - for stdout")->capture_default_str();
    spider->callback([&] { handler = run_synth_spider; });

    auto* random = synth->add_subcommand("random", "Seeded random balanced table");
    random->add_option("--regions", o.random.n_regions, "Region count")->capture_default_str();
    random->add_option("--sectors", o.random.n_sectors, "Sectors per region")->capture_default_str();
    random->add_option("--seed", o.random.seed, "Generator seed")->capture_default_str();
    random->add_option("--density", o.random.density, "Off-diagonal coefficient density")->capture_default_str();
    random->add_option("--va-floor", o.random.va_floor, "Minimum value-added share")->capture_default_str();
    random->add_option("--out", o.out, "Output path, - for stdout")->capture_default_str();
    random->callback([&] { handler = run_synth_random; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        return handler(o);
    } catch (const gvc::Error& e) {
        std::cerr << "gvc: " << e.what() << '\n';
        return e.kind() == gvc::ErrorKind::BalanceViolation ? kExitValidation : kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "gvc: " << e.what() << '\n';
        return kExitInput;
    }
}
