// Acceptance suite: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "gvc/decomposition.hpp"
#include "gvc/io.hpp"
#include "gvc/leontief.hpp"
#include "gvc/synth.hpp"
#include "gvc/taxonomy.hpp"
#include "oracles.hpp"

using namespace gvc;
using namespace gvc::testing;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, format, a, b);
    return buf;
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Outcome ac1_identities() {
    Outcome o;
    const auto start = Clock::now();
    double worst_balance = 0.0, worst_vas = 0.0, worst_split = 0.0;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        const RandomTableParams p{1 + seed % 10, 1 + (seed / 10) % 8, seed, 0.5, 0.05 + 0.5 * double(seed % 7) / 7.0};
        const auto t = synth_random_balanced(p);
        const Vector scale = t.x().cwiseMax(1.0);
        const Vector row = (t.x() - t.Z().rowwise().sum() - t.Y().rowwise().sum()).cwiseQuotient(scale);
        const Vector col = (t.x() - t.Z().colwise().sum().transpose() - t.va()).cwiseQuotient(scale);
        worst_balance = std::max({worst_balance, row.cwiseAbs().maxCoeff(), col.cwiseAbs().maxCoeff()});

        const auto B = leontief_inverse(technical_coefficients(t));
        const Matrix vas = va_source_matrix(t, B);
        worst_vas = std::max(worst_vas, (vas.colwise().sum().array() - 1.0).abs().maxCoeff());

        // Own VA traced directly through the domestic rows of VAS.
        const auto e = gross_exports(t);
        const auto report = participation(t, B);
        const auto& d = t.dims();
        for (std::size_t s = 0; s < d.n_regions(); ++s) {
            const Index off = d.offset(s), len = d.sector_count(s);
            const double dva_direct = (vas.block(off, off, len, len).colwise().sum().transpose())
                                          .dot(e.e.segment(off, len));
            const auto& c = report.countries[s];
            worst_split = std::max(worst_split, std::abs(dva_direct + c.fva - c.exports) / std::max(1.0, c.exports));
            worst_split = std::max(worst_split, std::abs(c.dva - dva_direct) / std::max(1.0, c.exports));
        }
    }
    const double elapsed = seconds_since(start);
    o.require(worst_balance <= 1e-9, fmt("balance residual %.3g", worst_balance));
    o.require(worst_vas <= 1e-9, fmt("VAS column sum error %.3g", worst_vas));
    o.require(worst_split <= 1e-9, fmt("dva + fva vs exports %.3g", worst_split));
    o.require(elapsed < 30.0, fmt("runtime %.2f s", elapsed));
    if (o.pass) {
        o.detail = fmt("balance %.2g, VAS %.2g, ", worst_balance, worst_vas) +
                   fmt("dva+fva %.2g, %.2f s", worst_split, elapsed);
    }
    return o;
}

Outcome ac2_neumann() {
    Outcome o;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto t = synth_random_balanced({2 + seed % 9, 1 + seed % 8, 5000 + seed, 0.5, 0.3});
        const auto coeff = technical_coefficients(t);
        const auto B = leontief_inverse(coeff);
        worst = std::max(worst, max_abs(B.B - neumann_series(coefficients_by_loop(t), 200)));
        o.require(max_abs(coeff.A - coefficients_by_loop(t)) <= 1e-15, "coefficients disagree with loop oracle");
    }
    o.require(worst <= 1e-8, fmt("max |B - Neumann| = %.3g", worst));
    if (o.pass) o.detail = fmt("max |B - Neumann_200| = %.2g over 100 tables", worst);
    return o;
}

Outcome ac3_snake() {
    Outcome o;
    const std::vector<double> values{10, 30};
    const auto t = synth_snake(2, values);
    const auto p = participation(t);
    const double fwd = p.countries[0].forward_share;
    const double bwd = p.countries[1].backward_share;
    const double world = gvc_trade_share(t).world_gvc_share;
    o.require(std::abs(fwd - 1.0) <= 1e-9, fmt("forward_share(A) = %.12g", fwd));
    o.require(std::abs(bwd - 1.0 / 3.0) <= 1e-9, fmt("backward_share(B) = %.12g", bwd));
    o.require(std::abs(world - 0.5) <= 1e-9, fmt("world_gvc_share = %.12g", world));
    if (o.pass) o.detail = fmt("forward(A) %.12g, backward(B) %.12g, ", fwd, bwd) + fmt("world %.12g", world);
    return o;
}

Outcome ac4_spider() {
    Outcome o;
    const std::vector<double> values{5, 5};
    const auto t = synth_spider(2, values, 20);
    const auto hub = static_cast<std::size_t>(*t.dims().find_region("H"));
    const double bwd = participation(t).countries[hub].backward_share;
    const double world = gvc_trade_share(t).world_gvc_share;
    o.require(std::abs(bwd - 0.5) <= 1e-9, fmt("backward_share(H) = %.12g", bwd));
    o.require(std::abs(world - 2.0 / 3.0) <= 1e-9, fmt("world_gvc_share = %.12g", world));
    if (o.pass) o.detail = fmt("backward(H) %.12g, world %.12g", bwd, world);
    return o;
}

Outcome ac5_taxonomy() {
    Outcome o;
    std::size_t boundary = 0, grid = 0;
    for (const auto& c : boundary_cases()) {
        ++boundary;
        const auto got = classify(c.ind);
        o.require(got == c.expected, c.name + " -> " + std::string(to_string(got)));
        const auto verdict = predicate_oracle(c.ind);
        o.require(verdict.matches == 1, c.name + ": not exactly one group");
    }
    const ThresholdSet t;
    const double eps = 1e-9;
    auto around = [eps](double v) { return std::vector<double>{v - eps, v, v + eps}; };
    for (auto size : kSizeClasses) {
        const auto s = static_cast<std::size_t>(size);
        auto manuf = around(t.commodities_manuf_max);
        for (double v : around(t.advanced_manuf_bus_min)) manuf.push_back(v);
        manuf.push_back(0.3);
        auto backward = around(t.commodities_backward_manuf_max[s]);
        for (double v : around(t.advanced_backward_manuf_min[s])) backward.push_back(v);
        auto primary = around(t.commodities_primary_low_max);
        for (double v : around(t.commodities_primary_high_min)) primary.push_back(v);
        std::vector<std::optional<double>> ip{std::nullopt}, rnd{std::nullopt};
        for (double v : around(t.innovative_ip_min[s])) ip.emplace_back(v);
        for (double v : around(t.innovative_rnd_min[s])) rnd.emplace_back(v);
        for (double m : manuf)
            for (double b : backward)
                for (double p : primary)
                    for (double bus : {0.0, t.advanced_manuf_bus_min - t.commodities_manuf_max})
                        for (const auto& i : ip)
                            for (const auto& r : rnd) {
                                if (m + bus > 1.0 + eps || m + p > 1.0 + eps) continue;
                                CountryIndicators c;
                                c.country = "X";
                                c.size = size;
                                c.manuf_share = m;
                                c.backward_manuf = b;
                                c.primary_share = p;
                                c.bus_serv_share = bus;
                                c.ip_receipts_gdp = i;
                                c.rnd_gdp = r;
                                const auto verdict = predicate_oracle(c, t);
                                ++grid;
                                o.require(verdict.matches == 1, "grid point in " + std::to_string(verdict.matches) + " groups");
                                o.require(classify(c, t) == verdict.group, "grid point disagrees with predicate oracle");
                            }
    }
    if (o.pass) o.detail = std::to_string(boundary) + " boundary cases, " + std::to_string(grid) + " grid points";
    return o;
}

Outcome ac6_two_country() {
    Outcome o;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto t = synth_random_balanced({2, 1 + seed % 8, 9000 + seed, 0.2 + 0.8 * double(seed % 5) / 5.0, 0.1});
        for (const auto& c : participation(t).countries) {
            worst = std::max({worst, std::abs(c.dvx), std::abs(c.participation - c.backward_share)});
        }
    }
    o.require(worst == 0.0, fmt("max |dvx| or |participation - backward| = %.3g", worst));
    if (o.pass) o.detail = "dvx and participation - backward exactly 0 on 100 tables";
    return o;
}

std::vector<double> share_outputs(const IcioTable& t) {
    std::vector<double> out;
    for (const auto& c : participation(t).countries) {
        out.insert(out.end(), {c.backward_share, c.forward_share, c.participation});
    }
    const auto gvc = gvc_trade_share(t);
    out.push_back(gvc.world_gvc_share);
    for (const auto& p : gvc.pairs) out.push_back(p.gross > 0 ? p.gvc / p.gross : 0.0);

    SectorGroupMap groups;
    for (const auto& sector : t.dims().sectors(0)) {
        groups.assign(sector, sector.back() % 2 ? SectorGroup::Manufacturing : SectorGroup::Primary);
    }
    MacroTable macro;
    for (const auto& r : t.dims().regions()) macro[r] = MacroRecord{r, SizeClass::Medium, 1000.0, 1.0, 20.0};
    for (const auto& c : taxonomy_inputs(t, groups, macro)) {
        out.insert(out.end(), {c.primary_share, c.manuf_share, c.bus_serv_share, c.other_serv_share, c.other_share,
                               c.backward_manuf});
    }
    return out;
}

Outcome ac7_scale() {
    Outcome o;
    std::vector<IcioTable> fixtures{fixture_2x2(), fixture_autarky(), fixture_snake(), fixture_spider()};
    for (std::uint64_t seed = 1; seed <= 10; ++seed) fixtures.push_back(synth_random_balanced({4, 3, seed, 0.5, 0.2}));
    double worst = 0.0;
    std::size_t compared = 0;
    for (const auto& t : fixtures) {
        const auto a = share_outputs(t);
        const auto b = share_outputs(t.scaled(1000.0));
        for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
        compared += a.size();
    }
    o.require(worst <= 1e-9, fmt("max share change %.3g", worst));
    if (o.pass) o.detail = fmt("max change %.2g over ", worst) + std::to_string(compared) + " shares";
    return o;
}

Outcome ac8_performance() {
    Outcome o;
    const auto start = Clock::now();
    const auto t = synth_random_balanced({190, 26, 2024, 0.5, 0.3});
    const double gen = seconds_since(start);
    const auto B = leontief_inverse(technical_coefficients(t));
    const auto p = participation(t, B);
    const auto g = gvc_trade_share(t);
    const double elapsed = seconds_since(start);
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    const double peak_gb = double(usage.ru_maxrss) / (1024.0 * 1024.0);
    o.require(p.countries.size() == 190 && g.pairs.size() == 190 * 189, "incomplete reports");
    o.require(B.diagnostics.residual_max <= 1e-9, fmt("solve residual %.3g", B.diagnostics.residual_max));
    o.require(elapsed <= 60.0, fmt("runtime %.1f s", elapsed));
    o.require(peak_gb <= 4.0, fmt("peak RSS %.2f GB", peak_gb));
    if (o.pass) {
        o.detail = fmt("g=4940, %.1f s (generation %.1f s), ", elapsed, gen) + fmt("peak RSS %.2f GB, ", peak_gb) +
                   std::to_string(sysconf(_SC_NPROCESSORS_ONLN)) + " cores online";
    }
    return o;
}

int run_cli(const std::string& args) {
    const auto cmd = std::string(GVC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome ac9_round_trip() {
    Outcome o;
    std::vector<IcioTable> fixtures{fixture_2x2(), fixture_autarky(), fixture_snake(), fixture_spider()};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) fixtures.push_back(synth_random_balanced({3, 4, seed, 0.5, 0.3}));
    double worst = 0.0;
    for (const auto& t : fixtures) {
        std::stringstream io;
        write_icio_csv(t, io);
        const auto back = parse_icio_csv(io);
        o.require(back.dims() == t.dims(), "dimensions changed");
        const double scale = std::max(1.0, max_abs(t.x()));
        worst = std::max({worst, max_abs(back.Z() - t.Z()) / scale, max_abs(back.Y() - t.Y()) / scale,
                          max_abs(back.x() - t.x()) / scale, max_abs(back.va() - t.va()) / scale});
    }
    o.require(worst <= 1e-12, fmt("round-trip error %.3g", worst));

    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / ("gvc_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const auto good = (dir / "good.csv").string();
    const auto broken = (dir / "broken.csv").string();
    const auto unbalanced = (dir / "unbalanced.csv").string();
    {
        std::ofstream out(good);
        write_icio_csv(fixture_2x2(), out);
    }
    std::ofstream(broken) << "origin,A:GOODS,FD:A\nA:GOODS,1,not-a-number\n";
    std::ofstream(unbalanced) << "origin,A:GOODS,B:GOODS,FD:A,FD:B\nA:GOODS,20,10,50,20\nB:GOODS,15,30,5,60\n"
                                 "X,100,111\n";
    const int ok = run_cli("validate --icio " + good);
    const int parse = run_cli("validate --icio " + broken);
    const int missing = run_cli("validate --icio " + (dir / "absent.csv").string());
    const int invalid = run_cli("validate --icio " + unbalanced);
    std::error_code ec;
    fs::remove_all(dir, ec);
    o.require(ok == 0, "fixture exit " + std::to_string(ok));
    o.require(parse == 1, "parse error exit " + std::to_string(parse));
    o.require(missing == 1, "missing file exit " + std::to_string(missing));
    o.require(invalid == 2, "unbalanced exit " + std::to_string(invalid));
    if (o.pass) {
        o.detail = std::to_string(fixtures.size()) + " tables exact to " + fmt("%.2g", worst) +
                   "; exit codes 0/1/1/2";
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1 accounting identities on 1000 random tables", ac1_identities},
        {"AC2 Leontief inverse matches Neumann series", ac2_neumann},
        {"AC3 snake oracle", ac3_snake},
        {"AC4 spider oracle", ac4_spider},
        {"AC5 taxonomy boundaries and partition", ac5_taxonomy},
        {"AC6 two-country degeneracy", ac6_two_country},
        {"AC7 scale invariance", ac7_scale},
        {"AC8 performance at 190 x 26", ac8_performance},
        {"AC9 round trip and CLI exit codes", ac9_round_trip},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << " (" << o.detail << ")" << std::endl;
        failures += o.pass ? 0 : 1;
    }
    std::cout << (failures ? "acceptance: FAILED " : "acceptance: all criteria passed ")
              << criteria.size() - static_cast<std::size_t>(failures) << "/" << criteria.size() << std::endl;
    return failures ? 1 : 0;
}
