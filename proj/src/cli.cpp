#include "psdist/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "psdist/errors.hpp"
#include "psdist/expsums.hpp"
#include "psdist/fixed_point.hpp"
#include "psdist/gamma_engine.hpp"
#include "psdist/lemma_checks.hpp"
#include "psdist/ps_primes.hpp"
#include "psdist/rational_approx.hpp"
#include "psdist/record_search.hpp"
#include "psdist/report.hpp"

namespace psdist {

std::uint64_t parse_count(const std::string& text, const std::string& what) {
    static const std::regex digits(R"(\d+)");
    if (std::regex_match(text, digits)) {
        try {
            return std::stoull(text);
        } catch (const std::out_of_range&) {
            throw InvalidConfig(what + " out of range: " + text);
        }
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || *end != '\0' || !std::isfinite(v) || v < 0 || v != std::floor(v) || v > 0x1p53) {
        throw InvalidConfig(what + " must be a non-negative integer, got '" + text + "'");
    }
    return static_cast<std::uint64_t>(v);
}

Exponent parse_gamma(const std::string& text) {
    const RealSpec spec = parse_real_spec(text);
    Exponent g;
    if (spec.rational && spec.rational->first.fits_slong_p() && spec.rational->second.fits_slong_p()) {
        g = Exponent::ratio(spec.rational->first.get_si(), spec.rational->second.get_si());
    } else {
        g = Exponent::real(spec.value.to_double());
    }
    if (!(g.value > 0.0 && g.value < 1.0)) throw GammaOutOfRange("gamma must lie in (0, 1), got '" + text + "'");
    return g;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const PrecisionExhausted*>(&e)) return kExitPrecision;
    if (dynamic_cast<const Error*>(&e)) return kExitInvalidConfig;
    // domain_error / invalid_argument / out_of_range from parameter checks, overflow from huge inputs
    if (dynamic_cast<const std::logic_error*>(&e) || dynamic_cast<const std::overflow_error*>(&e)) return kExitInvalidConfig;
    return kExitUsage;
}

namespace {

struct GlobalOptions {
    std::string output;
    std::string format = "json";
    int workers = 0;
    unsigned segment_bits = kDefaultSegmentBits;
    std::uint64_t seed = 0;
    bool with_timings = false;
    std::string plot_dir;
};

/// What a subcommand hands back: a JSON result, or CSV text when asked for.
struct CommandOutput {
    Json result;
    std::optional<std::string> csv;
};

using Handler = std::function<CommandOutput()>;

std::int64_t to_i64(const std::string& text, const std::string& what) {
    const auto v = parse_count(text, what);
    if (v > static_cast<std::uint64_t>(INT64_MAX)) throw InvalidConfig(what + " out of range");
    return static_cast<std::int64_t>(v);
}

std::int64_t parse_signed(const std::string& text, const std::string& what) {
    if (!text.empty() && text[0] == '-') return -to_i64(text.substr(1), what);
    return to_i64(text, what);
}

double parse_double(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || *end != '\0' || !std::isfinite(v)) throw InvalidConfig(what + ": not a number '" + text + "'");
    return v;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void write_plot_file(const std::string& dir, const std::string& name, const std::string& body) {
    std::filesystem::create_directories(dir);
    std::ofstream f(std::filesystem::path(dir) / name, std::ios::binary);
    if (!f) throw InvalidConfig("cannot write plot data into " + dir);
    f << body;
}

/// Raw option strings as typed (or their defaults), keyed by long name.
void echo_options(const CLI::App& app, Json& config) {
    for (const CLI::Option* opt : app.get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help" || name.empty()) continue;
        if (opt->get_expected_min() == 0) {
            config[name] = opt->count() > 0;
            continue;
        }
        if (opt->count() > 0) {
            const auto& res = opt->results();
            if (res.size() == 1) {
                config[name] = res.front();
            } else {
                config[name] = res;
            }
        } else if (!opt->get_default_str().empty()) {
            config[name] = opt->get_default_str();
        }
    }
}

Json theorem_tag(double gamma) {
    return Json(gamma > 11.0 / 12.0 && gamma < 1.0 ? "in_theorem_range" : "out_of_theorem_range");
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Piatetski-Shapiro prime distribution toolkit. log is the natural logarithm throughout."};
    app.require_subcommand(1, 1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--output,-o", g.output, "write the report to this file instead of stdout");
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--workers", g.workers, "OpenMP threads (0: runtime default)")->capture_default_str();
    app.add_option("--segment-bits", g.segment_bits, "log2 of the sieve segment length")
        ->check(CLI::Range(6U, kMaxSegmentBits))
        ->capture_default_str();
    app.add_option("--seed", g.seed, "seed for randomized checks")->capture_default_str();
    app.add_flag("--with-timings", g.with_timings, "add wall-clock timings to JSON reports");
    app.add_option("--emit-plot-data", g.plot_dir, "directory for plot-data CSV series");

    std::map<CLI::App*, Handler> handlers;

    // params
    struct {
        std::string q, gamma = "0.95", C = "1";
    } po;
    auto* params = app.add_subcommand("params", "parameter schedule for given q, gamma, C");
    params->add_option("--q", po.q)->required();
    params->add_option("--gamma", po.gamma)->capture_default_str();
    params->add_option("--C", po.C)->capture_default_str();
    handlers[params] = [&] {
        const Exponent gamma = parse_gamma(po.gamma);
        const ParamSet p = schedule_params(to_i64(po.q, "q"), gamma.value, parse_double(po.C, "C"));
        return CommandOutput{Json{{"params", to_json(p)}, {"tag", theorem_tag(p.gamma)}}, {}};
    };

    // convergents
    struct {
        std::string alpha = "sqrt:2", q_max = "1000000";
    } co;
    auto* conv = app.add_subcommand("convergents", "continued-fraction convergents of alpha");
    conv->add_option("--alpha", co.alpha)->capture_default_str();
    conv->add_option("--q-max", co.q_max)->capture_default_str();
    handlers[conv] = [&] {
        const RealSpec alpha = parse_real_spec(co.alpha);
        const std::int64_t q_max = to_i64(co.q_max, "q-max");
        const ConvergentList list = alpha.is_rational() ? convergents(alpha.rational->first, alpha.rational->second, q_max)
                                                        : convergents(alpha.value, q_max);
        bool verified = true;
        for (const auto& c : list.convergents) {
            if (alpha.is_rational()) {
                // exact: a/q equals alpha or |alpha - a/q| < 1/q^2
                mpq_class x(alpha.rational->first, alpha.rational->second);
                x.canonicalize();
                mpq_class approx(c.a, c.q);
                approx.canonicalize();
                const mpz_class q(c.q);
                verified = verified && abs(x - approx) * q * q < 1;
            } else {
                verified = verified && verify_convergent(alpha.value, c);
            }
        }
        Json r = to_json(list);
        r["verified"] = verified;
        return CommandOutput{r, {}};
    };

    // ps-count
    struct {
        std::string X = "1000000", gamma = "0.95";
        bool dual = false;
    } pc;
    auto* pscount = app.add_subcommand("ps-count", "count Piatetski-Shapiro primes up to X");
    pscount->add_option("--X", pc.X)->capture_default_str();
    pscount->add_option("--gamma", pc.gamma)->capture_default_str();
    pscount->add_flag("--dual", pc.dual, "also enumerate from the n side and compare the sets");
    handlers[pscount] = [&] {
        const Exponent gamma = parse_gamma(pc.gamma);
        const auto X = parse_count(pc.X, "X");
        if (X < 3) throw InvalidConfig("X must be at least 3");
        Json r{{"count", to_json(ps_count(X, gamma, g.segment_bits))}, {"tag", theorem_tag(gamma.value)}};
        if (pc.dual) r["dual_equal"] = ps_primes_p_side(X, gamma, g.segment_bits) == ps_primes_n_side(X, gamma);
        return CommandOutput{r, {}};
    };

    // expsum
    struct {
        std::string alpha = "sqrt:2", X = "1000000", q_max;
    } eo;
    auto* expsum = app.add_subcommand("expsum", "S(X) = sum_{p<=X} e(alpha p) log p against its bound");
    expsum->add_option("--alpha", eo.alpha)->capture_default_str();
    expsum->add_option("--X", eo.X)->capture_default_str();
    expsum->add_option("--q-max", eo.q_max, "largest admissible convergent denominator (default [sqrt X])");
    handlers[expsum] = [&] {
        const RealSpec alpha = parse_real_spec(eo.alpha);
        const auto X = parse_count(eo.X, "X");
        if (X < 2) throw InvalidConfig("X must be at least 2");
        const std::int64_t q_max = eo.q_max.empty() ? static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(X))))
                                                    : to_i64(eo.q_max, "q-max");
        const ConvergentList list = convergents(alpha.value, std::max<std::int64_t>(q_max, 1));
        const DirichletApprox approx = list.convergents.empty() ? dirichlet_approx(alpha.value, std::max<std::int64_t>(q_max, 1))
                                                                : as_dirichlet(list.convergents.back());
        return CommandOutput{Json{{"approx", to_json(approx)}, {"sum", to_json(s_of_x(alpha.value, X, approx, g.segment_bits))}}, {}};
    };

    // theta and vaughan share their phase options
    struct {
        std::string N1 = "1000", N2 = "100000", alpha = "sqrt:2", h = "1", m = "1", gamma = "0.95", v = "10";
    } th;
    auto add_phase_options = [&](CLI::App* sub) {
        sub->set_help_flag("--help", "Print this help message and exit");  // frees -h for the shift h
        sub->add_option("--N1", th.N1)->capture_default_str();
        sub->add_option("--N2", th.N2)->capture_default_str();
        sub->add_option("--alpha", th.alpha)->capture_default_str();
        sub->add_option("--h", th.h)->capture_default_str();
        sub->add_option("--m", th.m)->capture_default_str();
        sub->add_option("--gamma", th.gamma)->capture_default_str();
    };
    auto* theta = app.add_subcommand("theta", "Theta(N1, N2) = sum Lambda(n) e(alpha h n - m n^gamma)");
    add_phase_options(theta);
    handlers[theta] = [&] {
        const RealSpec alpha = parse_real_spec(th.alpha);
        const Exponent gamma = parse_gamma(th.gamma);
        const auto N1 = parse_count(th.N1, "N1"), N2 = parse_count(th.N2, "N2");
        if (N2 <= N1) throw InvalidConfig("need N1 < N2");
        const auto r = theta_sum(N1, N2, alpha.value, parse_signed(th.h, "h"), parse_signed(th.m, "m"), gamma.value);
        return CommandOutput{Json{{"sum", to_json(r)}}, {}};
    };
    auto* vaughan = app.add_subcommand("vaughan", "Vaughan decomposition U1 - U2 - U3 - U4 of Theta(N1, N2)");
    add_phase_options(vaughan);
    vaughan->add_option("--v", th.v)->capture_default_str();
    handlers[vaughan] = [&] {
        const RealSpec alpha = parse_real_spec(th.alpha);
        const Exponent gamma = parse_gamma(th.gamma);
        const auto N1 = parse_count(th.N1, "N1"), N2 = parse_count(th.N2, "N2");
        if (N2 <= N1) throw InvalidConfig("need N1 < N2");
        const double v = parse_double(th.v, "v");
        if (!(v >= 1.0)) throw InvalidConfig("v must be at least 1");
        const ThetaPhase phase(alpha.value, parse_signed(th.h, "h"), parse_signed(th.m, "m"), gamma.value);
        return CommandOutput{Json{{"parts", to_json(vaughan_decompose(N1, N2, phase, v))}}, {}};
    };

    // lemma-check
    struct {
        std::string check;
        std::string trials = "1000";
    } lc;
    auto* lemma = app.add_subcommand("lemma-check", "seeded random audit of an inequality: weyl, vdc, psi, fourier");
    lemma->add_option("check", lc.check)->required();
    lemma->add_option("--trials", lc.trials)->capture_default_str();
    handlers[lemma] = [&] {
        const auto r = run_lemma_check(lc.check, parse_count(lc.trials, "trials"), g.seed);
        Json j{{"check", r.check},
               {"seed", r.seed},
               {"trials", r.trials},
               {"holds", r.holds},
               {"constant", r.constant},
               {"max_ratio", r.max_ratio},
               {"summary", "holds=" + std::to_string(r.holds) + "/" + std::to_string(r.trials)}};
        return CommandOutput{j, {}};
    };

    // gamma
    struct {
        std::string mode = "desk", N = "100000", q, gamma = "0.95", alpha = "sqrt:2", beta = "0", delta, C = "1", H, ladder;
    } go;
    auto* gamma_cmd = app.add_subcommand("gamma", "discrepancy sum Gamma over PS primes");
    gamma_cmd->add_option("--mode", go.mode)->check(CLI::IsMember({"desk", "schedule"}))->capture_default_str();
    gamma_cmd->add_option("--N", go.N, "desk mode: N")->capture_default_str();
    gamma_cmd->add_option("--q", go.q, "schedule mode: q");
    gamma_cmd->add_option("--gamma", go.gamma)->capture_default_str();
    gamma_cmd->add_option("--alpha", go.alpha)->capture_default_str();
    gamma_cmd->add_option("--beta", go.beta)->capture_default_str();
    gamma_cmd->add_option("--delta", go.delta, "desk mode: Delta (default 0.05); schedule mode: override");
    gamma_cmd->add_option("--C", go.C)->capture_default_str();
    gamma_cmd->add_option("--H", go.H, "desk mode: H (default [sqrt N])");
    gamma_cmd->add_option("--ladder", go.ladder, "desk mode: comma-separated N values, e.g. 1e4,1e5,1e6");
    handlers[gamma_cmd] = [&] {
        const Exponent gamma = parse_gamma(go.gamma);
        const RealSpec alpha = parse_real_spec(go.alpha);
        const RealSpec beta = parse_real_spec(go.beta);
        std::vector<ParamSet> sets;
        if (go.mode == "schedule") {
            if (go.q.empty()) throw InvalidConfig("schedule mode needs --q");
            ParamSet p = schedule_params(to_i64(go.q, "q"), gamma.value, parse_double(go.C, "C"));
            if (!go.delta.empty()) {
                p.delta = parse_double(go.delta, "delta");
                p.delta_too_large = p.delta >= 0.25;
            }
            sets.push_back(p);
        } else {
            const double delta = go.delta.empty() ? 0.05 : parse_double(go.delta, "delta");
            const std::int64_t H = go.H.empty() ? 0 : to_i64(go.H, "H");
            const auto Ns = go.ladder.empty() ? std::vector<std::string>{go.N} : split_list(go.ladder);
            if (Ns.empty()) throw InvalidConfig("empty ladder");
            for (const auto& n : Ns) sets.push_back(desk_params(static_cast<double>(parse_count(n, "N")), delta, gamma.value, H));
        }
        std::vector<std::pair<ParamSet, GammaReport>> runs;
        for (const auto& p : sets) runs.emplace_back(p, gamma_sum(p, alpha.value, beta.value, gamma, g.segment_bits));
        const EnvelopeAudit audit = envelope_audit(runs);

        if (!g.plot_dir.empty()) {
            std::ostringstream s;
            s << "N,discrepancy_ratio\n";
            for (const auto& row : audit.rows) s << format_double(row.N) << ',' << format_double(row.discrepancy_ratio) << '\n';
            write_plot_file(g.plot_dir, "discrepancy.csv", s.str());
        }

        CommandOutput o;
        o.result["mode"] = go.mode;
        o.result["segment_bits"] = g.segment_bits;
        o.result["tag"] = theorem_tag(gamma.value);
        if (runs.size() == 1) {
            o.result["params"] = to_json(runs[0].first);
            o.result["report"] = to_json(runs[0].second);
        } else {
            Json arr = Json::array();
            for (const auto& [p, r] : runs) arr.push_back(Json{{"params", to_json(p)}, {"report", to_json(r)}});
            o.result["runs"] = arr;
            o.result["audit"] = to_json(audit);
        }
        if (g.format == "csv") {
            std::ostringstream s;
            write_ladder_csv(s, audit);
            o.csv = s.str();
        }
        return o;
    };

    // search
    struct {
        std::string alpha = "sqrt:2", beta = "0", gamma = "0.95", N = "1000000", delta = "0.01";
    } so;
    auto* search = app.add_subcommand("search", "running-minimum score records over PS primes");
    search->add_option("--alpha", so.alpha)->capture_default_str();
    search->add_option("--beta", so.beta)->capture_default_str();
    search->add_option("--gamma", so.gamma)->capture_default_str();
    search->add_option("--N", so.N, "largest p examined")->capture_default_str();
    search->add_option("--delta", so.delta, "summary counts p with dist <= delta")->capture_default_str();
    handlers[search] = [&] {
        const RealSpec alpha = parse_real_spec(so.alpha);
        SearchConfig cfg;
        cfg.alpha = alpha.value;
        cfg.alpha_rational = alpha.is_rational();
        cfg.beta = parse_real_spec(so.beta).value;
        cfg.gamma = parse_gamma(so.gamma);
        cfg.N_max = parse_count(so.N, "N");
        cfg.delta = parse_double(so.delta, "delta");
        cfg.segment_bits = g.segment_bits;
        if (!(cfg.delta >= 0.0 && cfg.delta <= 0.5)) throw InvalidConfig("delta must lie in [0, 1/2]");

        std::vector<SearchRecord> records;
        const SearchSummary summary = record_search(cfg, [&](const SearchRecord& r) { records.push_back(r); });

        if (!g.plot_dir.empty()) {
            std::ostringstream s;
            s << "p,score\n";
            for (const auto& r : records) s << r.p << ',' << format_double(r.score) << '\n';
            write_plot_file(g.plot_dir, "scores.csv", s.str());
        }
        CommandOutput o;
        Json arr = Json::array();
        for (const auto& r : records) arr.push_back(to_json(r));
        o.result["records"] = arr;
        o.result["summary"] = to_json(summary);
        o.result["tag"] = theorem_tag(cfg.gamma.value);
        if (g.format == "csv") {
            std::ostringstream s;
            s << kRecordCsvHeader << '\n';
            for (const auto& r : records) write_record_csv(s, r);
            o.csv = s.str();
        }
        return o;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        if (g.workers > 0) omp_set_num_threads(g.workers);
        const auto t0 = std::chrono::steady_clock::now();
        CommandOutput result = handlers.at(sub)();
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        std::string text;
        if (result.csv) {
            text = *result.csv;
        } else {
            Json report;
            report["tool"] = kToolName;
            report["version"] = kToolVersion;
            report["command"] = sub->get_name();
            report["log"] = "natural";
            Json config = Json::object();
            echo_options(app, config);
            echo_options(*sub, config);
            report["config"] = config;
            report["result"] = result.result;
            if (g.with_timings) report["timings"] = Json{{"seconds", seconds}, {"workers", omp_get_max_threads()}};
            text = report.dump(2) + "\n";
        }
        if (g.output.empty()) {
            out << text;
        } else {
            std::ofstream f(g.output, std::ios::binary);
            if (!f) throw InvalidConfig("cannot open output file " + g.output);
            f << text;
        }
        return kExitOk;
    } catch (const std::exception& e) {
        const int code = exit_code_for(e);
        const char* label = code == kExitPrecision ? "precision failure: "
                            : code == kExitInvalidConfig ? "invalid configuration: "
                                                         : "error: ";
        err << label << e.what() << '\n';
        return code;
    }
}

}  // namespace psdist
