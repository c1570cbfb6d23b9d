// qsm: exact cost distributions of Quicksort variants from the command line.
//
// Exit codes: 0 success, 1 a computation or check failed, 2 usage error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qsm/closed_form.hpp"
#include "qsm/disk_store.hpp"
#include "qsm/moments.hpp"
#include "qsm/pgf_engine.hpp"
#include "qsm/recurrence.hpp"
#include "qsm/report.hpp"
#include "qsm/serialize.hpp"
#include "qsm/simulator.hpp"
#include "reproduce.hpp"

namespace {

using namespace qsm;

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

// Thrown for semantically invalid arguments that parse fine.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string cache_dir;
    bool no_cache = false;
    std::string format = "json";
};

struct VariantArgs {
    std::string name;
    int pivots = 0;

    VariantId resolve() const {
        try {
            return VariantId(parse_family(name), pivots);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
};

void add_variant(CLI::App* cmd, VariantArgs& v) {
    cmd->add_option("--variant", v.name,
                    "Family: comp1pivot, swapv1..swapv5, compdual, swapdual, compthreepivot, compkpivotlinear, "
                    "compkpivotbinary")
        ->required();
    cmd->add_option("--pivots", v.pivots, "Pivot count for the k-pivot families")->check(CLI::PositiveNumber);
}

// Owns the optional disk store and the engines built on it.
struct Engines {
    std::unique_ptr<DiskStore> store;
    std::unique_ptr<PgfEngine> pgf;
    std::unique_ptr<MomentEngine> moments;

    Engines(const Common& c, MomentOptions options = {}) {
        if (!c.no_cache) store = std::make_unique<DiskStore>(resolve_cache_dir(c.cache_dir, ".qsm-cache"));
        pgf = std::make_unique<PgfEngine>(store.get());
        moments = std::make_unique<MomentEngine>(*pgf, options);
    }
};

void require_pgf(const VariantId& v) {
    if (!has_pgf(v.family)) throw UsageError(family_name(v.family) + " has no difference equation; use simulate");
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_pgf(const Common& c, const VariantArgs& va, int n) {
    const VariantId v = va.resolve();
    require_pgf(v);
    Engines e(c);
    const UniPoly p = e.pgf->pgf(v, n);
    if (c.format == "csv")
        std::cout << to_csv(p);
    else if (c.format == "text")
        std::cout << to_string(p) << '\n';
    else
        emit({{"variant", to_json(v)}, {"n", n}, {"pgf", to_json(p)}});
    return 0;
}

struct MomentArgs {
    int order = 1;
    int upto = 0;
    bool central = false;
    bool raw = false;
    bool scaled = false;
    std::optional<int> truncated_order;
};

int cmd_moments(const Common& c, const VariantArgs& va, const MomentArgs& m) {
    const VariantId v = va.resolve();
    require_pgf(v);
    if (m.scaled && m.order < 3) throw UsageError("--scaled needs --order >= 3");
    if (m.truncated_order && *m.truncated_order < m.order) throw UsageError("--truncated-order must be >= --order");
    MomentOptions options;
    if (m.truncated_order) options.path = MomentPath::truncated;
    Engines e(c, options);
    const MomentKind kind = m.central ? MomentKind::central : MomentKind::raw;
    const MomentSequence seq = e.moments->moment_sequence(v, m.order, kind, m.upto);
    if (c.format == "csv") {
        std::cout << to_csv(seq);
        return 0;
    }
    if (c.format == "text") {
        for (int n = 1; n <= seq.upto(); ++n) std::cout << n << ' ' << seq.at(n).to_string() << '\n';
        return 0;
    }
    Json out = to_json(seq);
    if (m.scaled) {
        Json s = Json::object();
        const auto profile = e.moments->scaled_moment_profile(v, m.upto, m.order);
        for (std::size_t i = 0; i < profile.size(); ++i) s[std::to_string(i + 3)] = profile[i];
        out["scaled_at_upto"] = s;
    }
    if (m.truncated_order) out["series_at_upto"] = to_json(e.moments->truncated_factorial_series(v, m.upto, *m.truncated_order));
    emit(out);
    return 0;
}

struct FitArgs {
    int order = 1;
    bool rational = false;
    int skip = -1;
    int upto = 0;
    bool raw = false;
};

int cmd_fit(const Common& c, const VariantArgs& va, const FitArgs& f) {
    const VariantId v = va.resolve();
    require_pgf(v);
    const int upto = f.upto > 0 ? f.upto : static_cast<int>(build_basis(f.order, f.rational).size()) + f.order + 15;
    const MomentKind kind = f.raw ? MomentKind::raw : f.order == 1 ? MomentKind::mean : MomentKind::central;
    Engines e(c);
    const MomentSequence data = e.moments->moment_sequence(v, f.order, kind, upto);
    AutoFit got;
    try {
        got = fit_auto(data, f.order, f.rational, f.skip);
    } catch (const FitError& err) {
        std::cerr << "fit: " << err.what() << '\n';
        return kExitFailed;
    }
    if (c.format == "text") {
        std::cout << got.form.display() << "  (n >= " << got.form.validity_from << ")\n";
    } else if (c.format == "csv") {
        std::cout << kCsvLossyNote << "\nmonomial,exact,decimal\n";
        for (const auto& [mono, coeff] : got.form.terms)
            std::cout << mono.to_string() << ',' << coeff.to_string() << ',' << coeff.to_decimal(kCsvDigits) << '\n';
    } else {
        emit({{"variant", to_json(v)},
              {"order", f.order},
              {"kind", kind_name(kind)},
              {"upto", upto},
              {"skip", got.skip},
              {"inverse_power", got.inverse_power},
              {"basis_size", got.basis_size},
              {"form", to_json(got.form)}});
    }
    return 0;
}

struct RecArgs {
    int order = 1;
    int upto = 0;
    int maxc = 0;
    bool central = false;
};

int cmd_findrec(const Common& c, const VariantArgs& va, const RecArgs& r) {
    const VariantId v = va.resolve();
    require_pgf(v);
    const MomentKind kind = r.central ? MomentKind::central : r.order == 1 ? MomentKind::mean : MomentKind::raw;
    Engines e(c);
    const MomentSequence data = e.moments->moment_sequence(v, r.order, kind, r.upto);
    RecurrenceOperator op;
    try {
        op = find_recurrence(data.values, r.maxc);
    } catch (const RecurrenceError& err) {
        std::cerr << "findrec: " << err.what() << '\n';
        return kExitFailed;
    }
    if (c.format == "json") {
        Json out = to_json(op);
        out["variant"] = to_json(v);
        out["data"] = {{"order", r.order}, {"kind", kind_name(kind)}, {"upto", r.upto}};
        emit(out);
    } else {
        std::cout << op.display() << '\n';
    }
    return 0;
}

struct SimArgs {
    int n = 0;
    long trials = 0;
    std::uint64_t seed = 0;
    int workers = 0;
    bool keep_in_place = false;
};

int cmd_simulate(const Common& c, const VariantArgs& va, const SimArgs& s) {
    const VariantId v = va.resolve();
    SimOptions options;
    if (s.keep_in_place) options.v5_mode = V5Mode::keep_in_place;
    const TrialStats stats = monte_carlo(v, s.n, s.trials, s.seed, s.workers, options);
    if (c.format == "json") {
        emit({{"variant", to_json(v)}, {"n", s.n}, {"stats", to_json(stats)}});
    } else {
        std::cout << "mean " << stats.mean << " variance " << stats.sample_variance << " se " << stats.standard_error()
                  << '\n';
    }
    return 0;
}

int cmd_oracle(const Common& c, const VariantArgs& va, int n) {
    const VariantId v = va.resolve();
    if (n > kMaxExhaustiveN) throw UsageError("oracle: --n must be <= " + std::to_string(kMaxExhaustiveN));
    const UniPoly dist = exhaustive_distribution(v, n);
    std::optional<bool> matches;
    if (has_pgf(v.family)) {
        Engines e(c);
        matches = e.pgf->pgf(v, n) == dist;
    }
    if (c.format == "csv") {
        std::cout << to_csv(dist);
    } else if (c.format == "text") {
        std::cout << to_string(dist) << '\n';
        if (matches) std::cout << (*matches ? "matches the difference equation\n" : "DIFFERS from the difference equation\n");
    } else {
        Json out = {{"variant", to_json(v)}, {"n", n}, {"distribution", to_json(dist)}};
        out["matches_pgf"] = matches ? Json(*matches) : Json(nullptr);
        emit(out);
    }
    return matches.value_or(true) ? 0 : kExitFailed;
}

int cmd_reproduce(const Common& c, const std::string& scope, const std::string& out_path, bool quiet) {
    if (c.no_cache) throw UsageError("reproduce needs the cache; drop --no-cache");
    ReproduceOptions options;
    options.cache_dir = resolve_cache_dir(c.cache_dir, ".qsm-cache");
    if (!quiet) options.progress = &std::cerr;
    const ReportBundle bundle = reproduce(scope, options);
    const std::string text = bundle.to_json().dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out || !(out << text)) {
            std::cerr << "reproduce: cannot write " << out_path << '\n';
            return kExitFailed;
        }
    }
    if (const CheckResult* bad = bundle.first_failure()) {
        std::cerr << "first failing check: " << bad->name << '\n';
        if (!bad->detail.empty()) std::cerr << "  detail:   " << bad->detail << '\n';
        std::cerr << "  expected: " << bad->expected.dump() << '\n' << "  actual:   " << bad->actual.dump() << '\n';
        return kExitFailed;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact cost distributions, moments, closed forms and recurrences for Quicksort variants"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    Common common;
    app.add_option("--cache-dir", common.cache_dir,
                   std::string("PGF cache directory (default: $") + kCacheDirEnv + ", else ./.qsm-cache)");
    app.add_flag("--no-cache", common.no_cache, "Do not read or write the disk cache");
    app.add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();

    VariantArgs variant;
    int n = 0;

    auto* pgf_cmd = app.add_subcommand("pgf", "Exact PGF P_n(t) as a coefficient array");
    add_variant(pgf_cmd, variant);
    pgf_cmd->add_option("--n", n, "List size")->required()->check(CLI::NonNegativeNumber);

    MomentArgs margs;
    auto* moments_cmd = app.add_subcommand("moments", "Exact moments for n = 1..N");
    add_variant(moments_cmd, variant);
    moments_cmd->add_option("--order", margs.order, "Moment order r")->required()->check(CLI::PositiveNumber);
    moments_cmd->add_option("--upto", margs.upto, "Largest n")->required()->check(CLI::PositiveNumber);
    auto* central = moments_cmd->add_flag("--central", margs.central, "Moments about the mean");
    moments_cmd->add_flag("--raw", margs.raw, "Raw moments E[X^r] (default)")->excludes(central);
    moments_cmd->add_flag("--scaled", margs.scaled, "Also report scaled central moments 3..r at n = N");
    moments_cmd->add_option("--truncated-order", margs.truncated_order,
                            "Use truncated series of this order; also report the series at n = N")
        ->check(CLI::PositiveNumber);

    FitArgs fargs;
    auto* fit_cmd = app.add_subcommand("fit", "Fit an exact closed form in n and harmonic numbers");
    add_variant(fit_cmd, variant);
    fit_cmd->add_option("--order", fargs.order, "Moment order (1 = mean, >= 2 central)")->required()->check(CLI::Range(1, 4));
    fit_cmd->add_flag("--rational-basis", fargs.rational, "Allow 1/n factors");
    fit_cmd->add_option("--skip", fargs.skip, "Leading data points to ignore (default: search)")->check(CLI::NonNegativeNumber);
    fit_cmd->add_option("--upto", fargs.upto, "Data length (default: basis size + order + 15)")->check(CLI::PositiveNumber);
    fit_cmd->add_flag("--raw", fargs.raw, "Fit raw moments instead of central ones");

    RecArgs rargs;
    auto* rec_cmd = app.add_subcommand("findrec", "Guess a linear recurrence with polynomial coefficients");
    add_variant(rec_cmd, variant);
    rec_cmd->add_option("--order", rargs.order, "Moment order (1 = mean, >= 2 raw)")->capture_default_str()->check(CLI::PositiveNumber);
    rec_cmd->add_option("--upto", rargs.upto, "Data length")->required()->check(CLI::PositiveNumber);
    rec_cmd->add_option("--maxc", rargs.maxc, "Bound on order + degree")->required()->check(CLI::PositiveNumber);
    rec_cmd->add_flag("--central", rargs.central, "Use central moments");

    SimArgs sargs;
    auto* sim_cmd = app.add_subcommand("simulate", "Seeded Monte Carlo run of the operational sort");
    add_variant(sim_cmd, variant);
    sim_cmd->add_option("--n", sargs.n, "List size")->required()->check(CLI::NonNegativeNumber);
    sim_cmd->add_option("--trials", sargs.trials, "Number of trials")->required()->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", sargs.seed, "Base seed")->required();
    sim_cmd->add_option("--workers", sargs.workers, "Threads (default: hardware)")->check(CLI::NonNegativeNumber);
    sim_cmd->add_flag("--keep-in-place", sargs.keep_in_place,
                      "Two-candidate variant: leave the rejected candidate where it is");

    auto* oracle_cmd = app.add_subcommand("oracle", "Cost distribution by exhaustive enumeration (n <= 7)");
    add_variant(oracle_cmd, variant);
    oracle_cmd->add_option("--n", n, "List size")->required()->check(CLI::NonNegativeNumber);

    std::string scope = "all", out_path;
    bool quiet = false;
    auto* repro_cmd = app.add_subcommand("reproduce", "Run the golden checks and write a JSON report");
    repro_cmd->add_option("--scope", scope, "Which checks to run")
        ->check(CLI::IsMember(reproduce_scopes()))
        ->capture_default_str();
    repro_cmd->add_option("--out", out_path, "Write the report here instead of stdout");
    repro_cmd->add_flag("--quiet", quiet, "No per-check progress on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*pgf_cmd) return cmd_pgf(common, variant, n);
        if (*moments_cmd) return cmd_moments(common, variant, margs);
        if (*fit_cmd) return cmd_fit(common, variant, fargs);
        if (*rec_cmd) return cmd_findrec(common, variant, rargs);
        if (*sim_cmd) return cmd_simulate(common, variant, sargs);
        if (*oracle_cmd) return cmd_oracle(common, variant, n);
        if (*repro_cmd) return cmd_reproduce(common, scope, out_path, quiet);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailed;
    }
    return kExitUsage;
}
