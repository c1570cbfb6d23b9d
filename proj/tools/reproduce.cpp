#include "reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "published/forms.hpp"
#include "published/recurrence.hpp"
#include "published/values.hpp"
#include "qsm/closed_form.hpp"
#include "qsm/disk_store.hpp"
#include "qsm/kernels.hpp"
#include "qsm/moments.hpp"
#include "qsm/pgf_engine.hpp"
#include "qsm/recurrence.hpp"
#include "qsm/simulator.hpp"

namespace qsm {

namespace {

using published::Expr;

const char* moment_label(int r) {
    switch (r) {
        case 1: return "mean";
        case 2: return "variance";
        case 3: return "third_central";
        default: return "fourth_central";
    }
}

Json strings(const std::vector<Rational>& xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(to_json(x));
    return out;
}

Json strings(const std::vector<const char*>& xs) {
    Json out = Json::array();
    for (const char* x : xs) out.push_back(x);
    return out;
}

CheckResult verdict(bool ok, Json expected, Json actual, std::string detail = {}) {
    CheckResult r;
    r.status = ok ? CheckStatus::pass : CheckStatus::fail;
    r.expected = std::move(expected);
    r.actual = std::move(actual);
    r.detail = std::move(detail);
    return r;
}

Json form_json(const Expr& e) { return to_json(e.form(1)); }

class Suite {
public:
    explicit Suite(const std::filesystem::path& cache_dir)
        : store_(cache_dir), engine_(&store_), moments_(engine_) {}

    using Body = std::function<CheckResult()>;

    // Bodies keyed by catalog name.
    std::map<std::string, Body> bodies() {
        std::map<std::string, Body> b;
        const auto form = [&](const std::string& prefix, Family f, int r, Expr e, bool rational = false,
                              std::string note = {}) {
            b[prefix + "_" + moment_label(r) + "_form"] = [=, this] { return form_check(f, r, e, rational, note); };
        };
        using namespace published;

        form("comp1", Family::Comp1Pivot, 1, comp1_mean());
        form("comp1", Family::Comp1Pivot, 2, comp1_m2());
        form("comp1", Family::Comp1Pivot, 3, comp1_m3());
        form("comp1", Family::Comp1Pivot, 4, comp1_m4());
        b["comp1_limit_moments"] = [this] { return limit_moments(); };

        b["per_prob_9_5_5"] = [] {
            const UniPoly got = per_prob(9, 5, 5), want = sparse_poly(kPerProb955);
            return verdict(got == want, to_json(want), to_json(got));
        };
        form("swapv1", Family::SwapV1, 1, v1_mean());
        form("swapv1", Family::SwapV1, 2, v1_m2());
        form("swapv1", Family::SwapV1, 3, v1_m3());
        form("swapv1", Family::SwapV1, 4, v1_m4());
        form("swapv2", Family::SwapV2, 1, v2_mean());
        form("swapv2", Family::SwapV2, 2, v2_m2());
        form("swapv2", Family::SwapV2, 3, v2_m3());
        form("swapv2", Family::SwapV2, 4, v2_m4());
        form("swapv3", Family::SwapV3, 1, v3_mean());
        form("swapv3", Family::SwapV3, 2, v3_m2(), true);
        form("swapv4", Family::SwapV4, 1, v4_mean());
        b["swapv4_variance_form"] = [this] { return in_place_variance(); };
        b["in_place_means"] = [this] { return mean_list(Family::SwapV4, kInPlaceMeans); };
        b["median_of_two_means"] = [this] { return mean_list(Family::SwapV5, kMedianOfTwoMeans); };
        b["swapv2_vs_swapv1"] = [this] { return v2_vs_v1(); };
        b["swapv5_vs_swapv4"] = [this] { return mean_below(Family::SwapV5, Family::SwapV4, 14, 20); };

        b["compdual_pgf_goldens"] = [this] { return dual_pgfs(); };
        b["dual_pivot_equals_single_pivot"] = [this] { return dual_equals_single(); };
        form("compdual", Family::CompDual, 1, comp1_mean());
        form("compdual", Family::CompDual, 2, comp1_m2());
        form("compdual", Family::CompDual, 3, comp1_m3());
        form("compdual", Family::CompDual, 4, comp1_m4());
        form("swapdual", Family::SwapDual, 1, dual_swap_mean(), true);
        b["dual_pivot_means"] = [this] { return mean_list(Family::CompDual, kDualPivotMeans); };
        b["three_pivot_means"] = [this] { return mean_list(Family::CompThreePivot, kThreePivotMeans); };
        b["three_pivot_recurrence"] = [this] { return three_pivot_recurrence(); };
        b["three_pivot_vs_dual"] = [this] { return mean_below(Family::CompThreePivot, Family::CompDual, 4, 20); };
        b["monte_carlo_t100"] = [this] { return monte_carlo_t100(); };
        b["monte_carlo_three_pivot_n20"] = [this] { return monte_carlo_n20(); };
        b["monte_carlo_convergence"] = [this] { return monte_carlo_convergence(); };

        b["in_place_truncated_n100"] = [this] { return truncated_n100(); };
        b["in_place_scaled_profile_n100"] = [this] { return scaled_profile_n100(); };

        b["oracle_equivalence"] = [this] { return oracle_equivalence(); };
        b["cache_integrity"] = [this] { return cache_integrity(); };
        return b;
    }

private:
    MomentSequence data(Family f, int r, int upto) {
        return moments_.moment_sequence(VariantId(f), r, r == 1 ? MomentKind::mean : MomentKind::central, upto);
    }

    const AutoFit& fitted(Family f, int r, bool rational) {
        const auto key = std::make_tuple(f, r, rational);
        auto it = fits_.find(key);
        if (it == fits_.end()) {
            const int upto = static_cast<int>(build_basis(r, rational).size()) + r + 15;
            it = fits_.emplace(key, fit_auto(data(f, r, upto), r, rational)).first;
        }
        return it->second;
    }

    CheckResult form_check(Family f, int r, const Expr& expected, bool rational, const std::string& note) {
        try {
            const AutoFit& got = fitted(f, r, rational);
            std::string detail = "skip " + std::to_string(got.skip) + ", basis " + std::to_string(got.basis_size);
            if (!note.empty()) detail += "; " + note;
            return verdict(got.form.terms == expected.terms, form_json(expected), to_json(got.form), detail);
        } catch (const FitError& e) {
            return verdict(false, form_json(expected), nullptr, e.what());
        }
    }

    // The printed form's H2 factor is n^2-2n-2; enumeration of every input
    // (an independent operational model) rejects it and accepts n^2+2n+2.
    CheckResult in_place_variance() {
        CheckResult r = form_check(Family::SwapV4, 2, published::v4_m2(), true,
                                   "compared against the H2 factor n^2+2n+2; the printed n^2-2n-2 is refuted by "
                                   "enumeration for n = 2..7");
        Json refuted = Json::array();
        bool corrected_ok = true;
        for (int n = 2; n <= kMaxExhaustiveN; ++n) {
            const UniPoly d = exhaustive_distribution(VariantId(Family::SwapV4), n);
            const Rational m1 = theta_derivative(d, 1);
            const Rational var = theta_derivative(d, 2) - m1 * m1;
            corrected_ok = corrected_ok && published::v4_m2().form(1).evaluate(n) == var;
            if (published::v4_m2_printed().form(1).evaluate(n) != var) refuted.push_back(n);
        }
        if (!corrected_ok || refuted.size() != static_cast<std::size_t>(kMaxExhaustiveN - 1)) {
            r.status = CheckStatus::fail;
            r.detail += "; enumeration disagrees with the corrected form";
        }
        return r;
    }

    CheckResult limit_moments() {
        try {
            constexpr long n = 10000;
            const Rational m2 = fitted(Family::Comp1Pivot, 2, false).form.evaluate(n);
            const Rational m3 = fitted(Family::Comp1Pivot, 3, false).form.evaluate(n);
            const Rational m4 = fitted(Family::Comp1Pivot, 4, false).form.evaluate(n);
            const double skew = scaled_central_moment(m3, m2, 3), kurt = scaled_central_moment(m4, m2, 4);
            const bool ok = std::abs(skew - published::kComparisonSkewLimit) <= 0.02 &&
                            std::abs(kurt - published::kComparisonKurtosisLimit) <= 0.05;
            return verdict(ok,
                           {{"skewness", published::kComparisonSkewLimit}, {"skewness_tolerance", 0.02},
                            {"kurtosis", published::kComparisonKurtosisLimit}, {"kurtosis_tolerance", 0.05}},
                           {{"n", n}, {"skewness", skew}, {"kurtosis", kurt}});
        } catch (const FitError& e) {
            return verdict(false, nullptr, nullptr, e.what());
        }
    }

    CheckResult mean_list(Family f, const std::vector<const char*>& expected) {
        const auto got = data(f, 1, static_cast<int>(expected.size())).values;
        bool ok = true;
        for (std::size_t i = 0; i < expected.size(); ++i) ok = ok && got[i] == Rational::parse(expected[i]);
        return verdict(ok, strings(expected), strings(got));
    }

    CheckResult v2_vs_v1() {
        Json bad = Json::array();
        for (int n = 3; n <= 20; ++n) {
            const VariantId v1(Family::SwapV1), v2(Family::SwapV2);
            const bool ok = moments_.raw_moment(v2, n, 1) == moments_.raw_moment(v1, n, 1) &&
                            moments_.central_moment(v2, n, 2) < moments_.central_moment(v1, n, 2);
            if (!ok) bad.push_back(n);
        }
        return verdict(bad.empty(), "equal means and smaller variance for n = 3..20", {{"violations", bad}});
    }

    CheckResult mean_below(Family low, Family high, int from, int to) {
        Json bad = Json::array();
        for (int n = from; n <= to; ++n)
            if (!(moments_.raw_moment(VariantId(low), n, 1) < moments_.raw_moment(VariantId(high), n, 1)))
                bad.push_back(n);
        return verdict(bad.empty(),
                       family_name(low) + " mean below " + family_name(high) + " for n = " + std::to_string(from) +
                           ".." + std::to_string(to),
                       {{"violations", bad}});
    }

    CheckResult dual_pgfs() {
        Json want = Json::array(), got = Json::array();
        bool ok = true;
        for (std::size_t i = 0; i < published::kDualPivotPgfs.size(); ++i) {
            const UniPoly w = published::sparse_poly(published::kDualPivotPgfs[i]);
            const UniPoly g = engine_.pgf(VariantId(Family::CompDual), static_cast<int>(i) + 1);
            ok = ok && g == w;
            want.push_back(to_json(w));
            got.push_back(to_json(g));
        }
        return verdict(ok, want, got);
    }

    CheckResult dual_equals_single() {
        Json bad = Json::array();
        for (int n = 0; n <= 10; ++n)
            if (engine_.pgf(VariantId(Family::CompDual), n) != engine_.pgf(VariantId(Family::Comp1Pivot), n))
                bad.push_back(n);
        return verdict(bad.empty(), "identical PGFs for n = 0..10", {{"mismatches", bad}});
    }

    CheckResult three_pivot_recurrence() {
        const auto seq = data(Family::CompThreePivot, 1, 40).values;
        const auto ref = published::three_pivot_operator();
        Json want = Json::array();
        for (const auto& [num, den] : ref) want.push_back({{"num", to_json(num)}, {"den", to_json(den)}});
        try {
            const RecurrenceOperator op = find_recurrence(seq, 8);
            bool ok = op.order == static_cast<int>(ref.size()) - 1;
            if (ok) {
                const auto monic = op.monic();
                for (std::size_t i = 0; i < ref.size(); ++i)
                    ok = ok && monic[i].num * ref[i].den == ref[i].num * monic[i].den;
            }
            return verdict(ok, {{"order", 4}, {"monic", want}}, to_json(op));
        } catch (const RecurrenceError& e) {
            return verdict(false, {{"order", 4}, {"monic", want}}, nullptr, e.what());
        }
    }

    CheckResult monte_carlo_t100() {
        Json rows = Json::array();
        bool ok = true;
        for (const auto& row : published::kMonteCarloT100)
            for (std::size_t i = 0; i < row.means.size(); ++i) {
                const int n = 10 * (static_cast<int>(i) + 1);
                const auto stats = monte_carlo(VariantId(Family::CompKPivotBinary, row.pivots), n, 100, 1 + i);
                const double ratio = stats.mean / row.means[i];
                ok = ok && std::abs(ratio - 1) <= 0.10;
                rows.push_back({{"pivots", row.pivots}, {"n", n}, {"published", row.means[i]}, {"mean", stats.mean},
                                {"seed", stats.seed}});
            }
        return verdict(ok, "each 100-trial mean within 10% of the published figure", rows);
    }

    CheckResult monte_carlo_n20() {
        const Rational exact = Rational::parse(published::kThreePivotMeans.back());
        const auto stats = monte_carlo(VariantId(Family::CompKPivotBinary, 3), 20, 100000, 2024);
        const double rel = std::abs(stats.mean / exact.to_double() - 1);
        return verdict(rel < 0.01, {{"exact_mean", to_json(exact)}, {"relative_tolerance", 0.01}},
                       {{"stats", to_json(stats)}, {"relative_error", rel}});
    }

    CheckResult monte_carlo_convergence() {
        const double exact = moments_.raw_moment(VariantId(Family::CompThreePivot), 10, 1).to_double();
        Json rows = Json::array();
        bool ok = true;
        double previous = INFINITY;
        for (long t : {100L, 1000L, 100000L}) {
            const auto stats = monte_carlo(VariantId(Family::CompKPivotBinary, 3), 10, t, 77);
            ok = ok && stats.standard_error() < previous && std::abs(stats.mean - exact) <= 4 * stats.standard_error();
            previous = stats.standard_error();
            rows.push_back({{"trials", t}, {"mean", stats.mean}, {"standard_error", stats.standard_error()}});
        }
        return verdict(ok, {{"exact_mean", exact}, {"rule", "standard error shrinks; mean within 4 SE"}}, rows);
    }

    CheckResult truncated_n100() {
        const auto s = moments_.truncated_factorial_series(VariantId(Family::SwapV4), 100, 10);
        const Rational w1 = Rational::parse(published::kInPlaceW1At100);
        const bool ok = s.coeff(1) == w1 && w1 == published::v4_mean().form(1).evaluate(100) &&
                        s.coeff(2) == Rational::parse(published::kInPlaceW2At100) &&
                        s.coeff(3) == Rational::parse(published::kInPlaceW3At100);
        return verdict(ok,
                       {{"w1", published::kInPlaceW1At100}, {"w2", published::kInPlaceW2At100},
                        {"w3", published::kInPlaceW3At100}},
                       {{"w1", to_json(s.coeff(1))}, {"w2", to_json(s.coeff(2))}, {"w3", to_json(s.coeff(3))},
                        {"mean_form_at_100", to_json(published::v4_mean().form(1).evaluate(100))}});
    }

    CheckResult scaled_profile_n100() {
        const auto profile = moments_.scaled_moment_profile(VariantId(Family::SwapV4), 100, 10);
        bool ok = profile.size() == published::kInPlaceScaledAt100.size();
        for (std::size_t i = 0; ok && i < profile.size(); ++i)
            ok = std::abs(profile[i] / published::kInPlaceScaledAt100[i] - 1) < 5e-6;
        Json want = Json::array();
        for (double x : published::kInPlaceScaledAt100) want.push_back(x);
        return verdict(ok, want, profile, "orders 3..10, relative tolerance 5e-6");
    }

    CheckResult oracle_equivalence() {
        std::vector<VariantId> vs = {VariantId(Family::Comp1Pivot), VariantId(Family::SwapV1), VariantId(Family::SwapV2),
                                     VariantId(Family::SwapV3),     VariantId(Family::SwapV4), VariantId(Family::SwapV5),
                                     VariantId(Family::CompDual),   VariantId(Family::SwapDual),
                                     VariantId(Family::CompThreePivot)};
        for (int k = 1; k <= 4; ++k) vs.emplace_back(Family::CompKPivotLinear, k);
        Json bad = Json::array(), covered = Json::array();
        for (const auto& v : vs) {
            for (int n = 0; n <= 6; ++n)
                if (exhaustive_distribution(v, n) != engine_.pgf(v, n)) bad.push_back(variant_key(v) + " n=" + std::to_string(n));
            covered.push_back(variant_key(v));
        }
        return verdict(bad.empty(), {{"variants", covered}, {"n", "0..6"}}, {{"mismatches", bad}});
    }

    CheckResult cache_integrity() {
        std::map<std::string, std::string> seen;
        const auto rel = [&](const std::filesystem::path& p) { return p.lexically_relative(store_.root()).generic_string(); };
        for (const auto& e : store_.events()) seen.emplace(rel(e.path), "recomputed: " + e.reason);
        for (const auto& e : store_.scan()) seen.emplace(rel(e.path), e.reason);
        Json events = Json::array();
        for (const auto& [path, reason] : seen) events.push_back({{"entry", path}, {"reason", reason}});
        return verdict(seen.empty(), "every cache entry verifies", {{"integrity_events", events}},
                       seen.empty() ? std::string{} : "cache integrity error: corrupt entries were ignored");
    }

    DiskStore store_;
    PgfEngine engine_;
    MomentEngine moments_;
    std::map<std::tuple<Family, int, bool>, AutoFit> fits_;
};

}  // namespace

const std::vector<CheckInfo>& check_catalog() {
    static const std::vector<CheckInfo> catalog = [] {
        std::vector<CheckInfo> c;
        const auto add = [&](std::string name, std::string section, bool all_only = false) {
            c.push_back({std::move(name), std::move(section), all_only});
        };
        const auto forms = [&](const std::string& prefix, const std::string& section, int orders) {
            for (int r = 1; r <= orders; ++r) add(prefix + "_" + moment_label(r) + "_form", section);
        };
        forms("comp1", "section2", 4);
        add("comp1_limit_moments", "section2");

        add("per_prob_9_5_5", "section3");
        forms("swapv1", "section3", 4);
        forms("swapv2", "section3", 4);
        forms("swapv3", "section3", 2);
        forms("swapv4", "section3", 2);
        add("in_place_means", "section3");
        add("median_of_two_means", "section3");
        add("swapv2_vs_swapv1", "section3");
        add("swapv5_vs_swapv4", "section3");

        add("compdual_pgf_goldens", "section4");
        add("dual_pivot_equals_single_pivot", "section4");
        forms("compdual", "section4", 4);
        forms("swapdual", "section4", 1);
        add("dual_pivot_means", "section4");
        add("three_pivot_means", "section4");
        add("three_pivot_recurrence", "section4");
        add("three_pivot_vs_dual", "section4");
        add("monte_carlo_t100", "section4");
        add("monte_carlo_three_pivot_n20", "section4", true);
        add("monte_carlo_convergence", "section4", true);

        add("in_place_truncated_n100", "section5");
        add("in_place_scaled_profile_n100", "section5");

        add("oracle_equivalence", "cross", true);
        add("cache_integrity", "cross", true);  // last: inspects everything the run touched
        return c;
    }();
    return catalog;
}

const std::vector<std::string>& reproduce_scopes() {
    static const std::vector<std::string> scopes = {"all", "section2", "section3", "section4", "section5"};
    return scopes;
}

ReportBundle reproduce(const std::string& scope, const ReproduceOptions& options) {
    const auto& scopes = reproduce_scopes();
    if (std::find(scopes.begin(), scopes.end(), scope) == scopes.end())
        throw std::invalid_argument("unknown scope '" + scope + "'");

    ReportBundle bundle;
    bundle.scope = scope;
    bundle.config = {{"scope", scope}, {"cache_dir", options.cache_dir.string()}};
    bundle.started_at = utc_timestamp();

    Suite suite(options.cache_dir);
    auto bodies = suite.bodies();
    for (const auto& info : check_catalog()) {
        const bool selected = scope == "all" || (info.section == scope && !info.all_only);
        CheckResult result;
        const auto start = std::chrono::steady_clock::now();
        if (!selected) {
            result.detail = info.all_only ? "runs only with scope all" : "not in scope";
        } else {
            try {
                result = bodies.at(info.name)();
            } catch (const std::exception& e) {
                result = verdict(false, nullptr, nullptr, std::string("error: ") + e.what());
            }
        }
        result.name = info.name;
        result.section = info.section;
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (selected) bundle.seconds[info.name] = secs;
        if (options.progress)
            *options.progress << status_name(result.status) << ' ' << info.name
                              << (selected ? " (" + std::to_string(secs) + " s)" : std::string{}) << '\n'
                              << std::flush;
        bundle.checks.push_back(std::move(result));
    }
    bundle.finished_at = utc_timestamp();
    return bundle;
}

}  // namespace qsm
