// Command-line front end: continued fraction expansion tables, sharp
// Diophantine bounds, asymptotic frequency tables, and verification sweeps.
//
// Exit codes: 0 success, 2 parse/usage error, 3 empty region, 4 verification
// failure.

#include <CLI11.hpp>
#include <json.hpp>

#include "cfb/bounds.hpp"
#include "cfb/cf_core.hpp"
#include "cfb/frequency.hpp"
#include "cfb/natural_extension.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

constexpr const char* kToolVersion = "1.0.0";
constexpr int kExitUsage = 2;
constexpr int kExitEmptyRegion = 3;
constexpr int kExitVerification = 4;

using nlohmann::json;

struct OutputOptions {
    std::string format = "json";
    std::string path;  // empty = stdout
    bool no_timestamp = false;
    int sig_digits = 6;
};

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_output(const OutputOptions& opt, const std::string& text) {
    if (opt.path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(opt.path);
    if (!out) throw std::runtime_error("cannot open output file " + opt.path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

void emit_json(const OutputOptions& opt, json config, json results) {
    json envelope;
    envelope["tool_version"] = kToolVersion;
    envelope["config"] = std::move(config);
    envelope["results"] = std::move(results);
    if (!opt.no_timestamp) envelope["timestamp"] = iso_timestamp();
    write_output(opt, envelope.dump(2));
}

void add_output_flags(CLI::App* cmd, OutputOptions& opt) {
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", opt.path, "output file (default stdout)");
    cmd->add_flag("--no-timestamp", opt.no_timestamp,
                  "omit the timestamp field from JSON output");
    cmd->add_option("--precision", opt.sig_digits,
                    "significant digits in CSV output (round-half-even)")
        ->check(CLI::Range(1, 17))
        ->capture_default_str();
}

// ---------------------------------------------------------------------------
// expand
// ---------------------------------------------------------------------------

struct CoefficientRow {
    long n;
    std::string p, q;
    std::string theta, c, d;          // exact rationals ("" when undefined)
    double theta_d = 0.0, c_d = 0.0, d_d = 0.0;
    bool has_cd = false;
};

std::vector<CoefficientRow> coefficient_rows(const cfb::DigitSequence& seq, long n_max) {
    std::vector<CoefficientRow> rows;
    auto convs = cfb::convergents(seq, n_max);
    for (long n = 0; n <= n_max; ++n) {
        CoefficientRow row;
        row.n = n;
        row.p = convs[static_cast<std::size_t>(n)].p.get_str();
        row.q = convs[static_cast<std::size_t>(n)].q.get_str();
        cfb::Rational t = cfb::future_t(seq, n);
        if (t == 0) {
            // terminal index of a finite expansion: theta = 0, C/D undefined
            row.theta = "0";
            row.theta_d = 0.0;
        } else {
            auto triple = cfb::coefficients(seq, n);
            row.theta = cfb::to_string(triple.theta);
            row.theta_d = triple.theta.get_d();
            if (triple.c) {
                row.c = cfb::to_string(*triple.c);
                row.d = cfb::to_string(*triple.d);
                row.c_d = triple.c->get_d();
                row.d_d = triple.d->get_d();
                row.has_cd = true;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

int cmd_expand(const std::string& x_text, long n_opt, const OutputOptions& opt) {
    cfb::Rational x;
    try {
        x = cfb::parse_rational(x_text);
    } catch (const cfb::parse_error& e) {
        std::cerr << "error: cannot parse --x at position " << e.position << ": "
                  << e.what() << '\n';
        return kExitUsage;
    }
    cfb::DigitSequence seq = cfb::expand(x, n_opt > 0 ? n_opt + 64 : 4096);
    long n_max = seq.size();
    if (n_opt >= 0) n_max = std::min(n_max, n_opt);
    auto rows = coefficient_rows(seq, n_max);

    if (opt.format == "csv") {
        std::ostringstream out;
        out << "n,p,q,theta,c,d\n";
        for (const auto& row : rows) {
            out << row.n << ',' << row.p << ',' << row.q << ','
                << cfb::format_sig(row.theta_d, opt.sig_digits) << ',';
            if (row.has_cd)
                out << cfb::format_sig(row.c_d, opt.sig_digits) << ','
                    << cfb::format_sig(row.d_d, opt.sig_digits);
            else
                out << ',';
            out << '\n';
        }
        write_output(opt, out.str());
        return 0;
    }

    json results;
    results["digits"] = cfb::to_bracket_string(seq);
    results["exactness"] =
        seq.exactness == cfb::Exactness::ExactFinite ? "exact_finite" : "truncated";
    results["rows"] = json::array();
    for (const auto& row : rows) {
        json rj;
        rj["n"] = row.n;
        rj["p"] = row.p;
        rj["q"] = row.q;
        rj["theta"] = row.theta;
        rj["theta_approx"] = row.theta_d;
        if (row.has_cd) {
            rj["c"] = row.c;
            rj["c_approx"] = row.c_d;
            rj["d"] = row.d;
            rj["d_approx"] = row.d_d;
        }
        results["rows"].push_back(std::move(rj));
    }
    emit_json(opt, json{{"command", "expand"}, {"x", x_text}, {"n", n_max}}, results);
    return 0;
}

// ---------------------------------------------------------------------------
// bound
// ---------------------------------------------------------------------------

int cmd_bound(const std::string& kind, long a, long b, double r, double R, double t,
              double T, bool table, const OutputOptions& opt) {
    if (table) {
        // (a, b) sweep at fixed thresholds; a superset of the worked table
        std::ostringstream out;
        out << "a,b,case,bound,tong\n";
        for (long aa = 1; aa <= 20; ++aa) {
            for (long bb = 1; bb <= 45; ++bb) {
                try {
                    cfb::BoundResult res = kind == "lower_d"
                                               ? cfb::lower_bound_D(aa, bb, r, R)
                                               : cfb::upper_bound_D(aa, bb, r, R);
                    out << aa << ',' << bb << ',' << cfb::to_string(res.label) << ','
                        << cfb::format_sig(res.value, opt.sig_digits) << ','
                        << cfb::format_sig(res.tong_value, opt.sig_digits) << '\n';
                } catch (const cfb::empty_region_error&) {
                    out << aa << ',' << bb << ",empty,,\n";
                }
            }
        }
        write_output(opt, out.str());
        return 0;
    }

    json config{{"command", "bound"}, {"kind", kind}, {"a", a}, {"b", b}};
    try {
        cfb::BoundResult res;
        if (kind == "lower_d" || kind == "upper_d") {
            config["r"] = r;
            config["R"] = R;
            res = kind == "lower_d" ? cfb::lower_bound_D(a, b, r, R)
                                    : cfb::upper_bound_D(a, b, r, R);
            emit_json(opt, config, json::parse(cfb::to_json_string(res, a, b, r, R)));
        } else {
            config["t"] = t;
            config["T"] = T;
            res = kind == "lower_c" ? cfb::lower_bound_C(a, b, t, T)
                                    : cfb::upper_bound_C(a, b, t, T);
            emit_json(opt, config, json::parse(cfb::to_json_string(res, a, b, t, T)));
        }
    } catch (const cfb::empty_region_error& e) {
        emit_json(opt, config, json{{"error", "empty_region"}, {"message", e.what()}});
        return kExitEmptyRegion;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// freq
// ---------------------------------------------------------------------------

json report_json(const cfb::FrequencyReport& report) {
    return json::parse(cfb::to_json_string(report));
}

int cmd_freq(double r, double R, const std::string& event_name,
             const std::string& method, long samples, long orbit,
             std::uint64_t seed, bool compare, bool compare_table, double dist_at,
             const OutputOptions& opt) {
    cfb::Event event =
        event_name == "less" ? cfb::Event::both_less : cfb::Event::both_greater;
    json config{{"command", "freq"}, {"r", r},         {"R", R},
                {"event", event_name}, {"method", method}, {"samples", samples},
                {"orbit", orbit},      {"seed", seed}};

    if (dist_at > 0.0) {
        json results{{"R", dist_at},
                     {"dist_H", cfb::dist_H(dist_at)},
                     {"density_h", cfb::density_h(dist_at)}};
        emit_json(opt, json{{"command", "freq"}, {"dist", dist_at}}, results);
        return 0;
    }

    if (compare_table) {
        cfb::ComparisonReport cmp = cfb::reference_comparison();
        if (opt.format == "csv")
            write_output(opt, cfb::to_csv_string(cmp, opt.sig_digits));
        else
            emit_json(opt, config, json::parse(cfb::to_json_string(cmp)));
        return 0;
    }

    if (compare) {
        cfb::FrequencyReport closed = cfb::total_frequency(r, R, event);
        cfb::FrequencyReport quad = cfb::total_frequency_quadrature(r, R, event);
        cfb::RegionMeasure mc =
            cfb::monte_carlo_frequency(r, R, event, samples, orbit, seed);
        json results;
        results["closed"] = {{"total", closed.total},
                             {"conditional_mtong", closed.conditional_mtong}};
        results["quadrature"] = {{"total", quad.total},
                                 {"conditional_mtong", quad.conditional_mtong}};
        results["monte_carlo"] = {{"total", mc.value},
                                  {"stderr", mc.stderr_estimate.value_or(0.0)}};
        emit_json(opt, config, results);
        return 0;
    }

    if (method == "mc") {
        cfb::RegionMeasure mc =
            cfb::monte_carlo_frequency(r, R, event, samples, orbit, seed);
        json results{{"total", mc.value},
                     {"scaled", mc.scaled},
                     {"stderr", mc.stderr_estimate.value_or(0.0)},
                     {"method", "monte_carlo"}};
        emit_json(opt, config, results);
        return 0;
    }

    cfb::FrequencyReport report = method == "quadrature"
                                      ? cfb::total_frequency_quadrature(r, R, event)
                                      : cfb::total_frequency(r, R, event);
    if (opt.format == "csv")
        write_output(opt, cfb::to_csv_string(report, opt.sig_digits));
    else
        emit_json(opt, config, report_json(report));
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int cmd_verify(double r, double R, long samples, long orbit, std::uint64_t seed,
               bool counterexample, bool sharpness, long a, long b, double eps,
               const std::string& direction_name, const OutputOptions& opt) {
    json config{{"command", "verify"}, {"r", r},       {"R", R},
                {"samples", samples},  {"orbit", orbit}, {"seed", seed}};

    if (counterexample) {
        double k = cfb::tong_K(1, 1, 1.1, 1.4);
        auto corrected = cfb::lower_bound_C(1, 1, 1.1, 1.4);
        auto primes = cfb::c_prime_config(1, 1, 1.1, 1.4);
        json results{{"tong_K", k},
                     {"c_range", "(1,2)"},
                     {"tong_K_outside_range", k >= 2.0},
                     {"corrected_lower_bound_C", corrected.value},
                     {"F_prime", primes.Fp},
                     {"G_prime", primes.Gp},
                     {"L_prime", primes.Lp}};
        emit_json(opt, config, results);
        return 0;
    }

    if (sharpness) {
        cfb::Direction dir = direction_name == "below" ? cfb::Direction::Below
                                                       : cfb::Direction::Above;
        config["a"] = a;
        config["b"] = b;
        config["eps"] = eps;
        config["direction"] = direction_name;
        try {
            cfb::Witness w = cfb::witness(a, b, r, R, dir, eps);
            json results{{"x", cfb::to_string(w.x)},
                         {"digits", cfb::to_bracket_string(w.seq)},
                         {"n", w.n},
                         {"d_nm1", cfb::to_string(w.d_nm1)},
                         {"d_nm1_approx", w.d_nm1.get_d()},
                         {"bound", w.bound},
                         {"theorem_case", w.theorem_case},
                         {"relative_error",
                          std::abs(w.d_nm1.get_d() - w.bound) / w.bound}};
            emit_json(opt, config, results);
            return 0;
        } catch (const cfb::unreachable_eps_error& e) {
            emit_json(opt, config,
                      json{{"error", "unreachable_eps"}, {"message", e.what()}});
            return kExitVerification;
        } catch (const cfb::empty_region_error& e) {
            emit_json(opt, config,
                      json{{"error", "empty_region"}, {"message", e.what()}});
            return kExitEmptyRegion;
        }
    }

    // soundness sweep over random orbits
    const double slack_tol = 1e-9;
    long violations = 0;
    json first_violation;
    double min_lower_slack = HUGE_VAL, min_upper_slack = HUGE_VAL;
    double inv_sqrt5 = 1.0 / std::sqrt(5.0);
    long borel_bad = 0, dirichlet_bad = 0, conjugate_bad = 0, corner_bad = 0;

    std::mt19937_64 gen(seed);
    for (long s = 0; s < samples; ++s) {
        cfb::BigInt num = 0;
        for (int i = 0; i < 64; ++i) {
            mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), 64);
            num += cfb::BigInt(static_cast<unsigned long>(gen()));
        }
        if (num == 0) num = 1;
        cfb::BigInt den = 1;
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 4096);
        cfb::Rational x = cfb::make_rational(num, den);
        cfb::DigitSequence d = cfb::expand(x, orbit + 70);
        if (d.size() < orbit + 4) continue;  // vanishing-probability short expansion

        std::vector<double> theta(static_cast<std::size_t>(orbit + 3));
        for (long n = 2; n <= orbit + 1; ++n) {
            double t = 0.0;
            long last = std::min<long>(n + 60, d.size());
            for (long k = last; k > n; --k) t = 1.0 / (d.digit(k).get_d() + t);
            double v = cfb::past_v(d, n).get_d();
            double an = d.digit(n).get_d(), bn = d.digit(n + 1).get_d();
            double d_prev = (an + t) * v / (1.0 - an * v);
            double d_mid = 1.0 / (t * v);
            double d_next = (bn + v) * t / (1.0 - bn * t);

            auto record = [&](const char* what, double value, double bound) {
                ++violations;
                if (first_violation.is_null())
                    first_violation = json{{"x", cfb::to_string(x)},
                                           {"n", n},
                                           {"check", what},
                                           {"value", value},
                                           {"bound", bound}};
            };

            if (d_prev < r && d_next < R) {
                double lo = cfb::lower_bound_D(static_cast<long>(an),
                                               static_cast<long>(bn), r, R)
                                .value;
                double slack = d_mid - lo;
                min_lower_slack = std::min(min_lower_slack, slack);
                if (slack < -slack_tol) record("lower_D", d_mid, lo);
            }
            if (d_prev > r && d_next > R) {
                double hi = cfb::upper_bound_D(static_cast<long>(an),
                                               static_cast<long>(bn), r, R)
                                .value;
                double slack = hi - d_mid;
                min_upper_slack = std::min(min_upper_slack, slack);
                if (slack < -slack_tol) record("upper_D", d_mid, hi);
            }

            // classical invariants
            double th = t / (1.0 + t * v);
            theta[static_cast<std::size_t>(n)] = th;
            if (th >= 1.0) {
                ++dirichlet_bad;
                record("dirichlet", th, 1.0);
            }
            double corner_hi = (an + 1.0) * (bn + 1.0);
            double corner_lo = an * bn;
            if (d_mid <= corner_lo || d_mid >= corner_hi) {
                ++corner_bad;
                record("corner", d_mid, corner_hi);
            }
            if (n >= 4) {
                // triple centered at n-1, whose middle digit is a_n
                double m3 = std::min({theta[static_cast<std::size_t>(n - 2)],
                                      theta[static_cast<std::size_t>(n - 1)],
                                      theta[static_cast<std::size_t>(n)]});
                double big3 = std::max({theta[static_cast<std::size_t>(n - 2)],
                                        theta[static_cast<std::size_t>(n - 1)],
                                        theta[static_cast<std::size_t>(n)]});
                if (m3 >= inv_sqrt5) {
                    ++borel_bad;
                    record("borel", m3, inv_sqrt5);
                }
                double conj = 1.0 / std::sqrt(an * an + 4.0);
                if (big3 <= conj) {
                    ++conjugate_bad;
                    record("conjugate", big3, conj);
                }
            }
        }
    }

    json results{{"violations", violations},
                 {"min_lower_slack", min_lower_slack},
                 {"min_upper_slack", min_upper_slack},
                 {"borel_violations", borel_bad},
                 {"dirichlet_violations", dirichlet_bad},
                 {"conjugate_violations", conjugate_bad},
                 {"corner_violations", corner_bad}};
    if (!first_violation.is_null()) results["first_violation"] = first_violation;
    emit_json(opt, config, results);
    return violations == 0 ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact toolkit for continued fraction approximation quality"};
    app.set_config("--config", "", "config file with key=value defaults");
    app.require_subcommand(1);

    OutputOptions opt;

    // expand
    auto* expand = app.add_subcommand("expand", "digit/convergent/coefficient table");
    std::string x_text;
    long n_opt = -1;
    expand->add_option("--x", x_text, "rational input: p/q, integer, or decimal")
        ->required();
    expand->add_option("--n", n_opt, "maximum index (default: whole expansion)");
    add_output_flags(expand, opt);

    // bound
    auto* bound = app.add_subcommand("bound", "sharp bounds for D or C");
    std::string kind = "upper_d";
    long a = 1, b = 1;
    double r = 2.9, R = 3.6, t = 1.1, T = 1.4;
    bool table = false;
    bound->add_option("--kind", kind, "bound kind")
        ->check(CLI::IsMember({"lower_d", "upper_d", "lower_c", "upper_c"}))
        ->capture_default_str();
    bound->add_option("--a", a, "digit a_n")->check(CLI::PositiveNumber);
    bound->add_option("--b", b, "digit a_{n+1}")->check(CLI::PositiveNumber);
    bound->add_option("--r", r, "threshold for D_{n-2}")->capture_default_str();
    bound->add_option("--R", R, "threshold for D_n")->capture_default_str();
    bound->add_option("--t", t, "threshold for C_{n-2}")->capture_default_str();
    bound->add_option("--T", T, "threshold for C_n")->capture_default_str();
    bound->add_flag("--table", table, "CSV sweep over an (a,b) grid");
    add_output_flags(bound, opt);

    // freq
    auto* freq = app.add_subcommand("freq", "asymptotic frequency reports");
    std::string event_name = "greater", method = "closed";
    long samples = 2000, orbit = 50;
    std::uint64_t seed = 1;
    bool compare = false, compare_table = false;
    double dist_at = 0.0;
    freq->add_option("--r", r, "threshold for D_{n-2}")->capture_default_str();
    freq->add_option("--R", R, "threshold for D_n")->capture_default_str();
    freq->add_option("--event", event_name, "event kind")
        ->check(CLI::IsMember({"less", "greater"}))
        ->capture_default_str();
    freq->add_option("--method", method, "computation method")
        ->check(CLI::IsMember({"closed", "quadrature", "mc"}))
        ->capture_default_str();
    freq->add_option("--samples", samples, "Monte Carlo orbit count")
        ->capture_default_str();
    freq->add_option("--orbit", orbit, "points per orbit")->capture_default_str();
    freq->add_option("--seed", seed, "random seed")->capture_default_str();
    freq->add_flag("--compare", compare, "emit all three methods side by side");
    freq->add_flag("--compare-table", compare_table,
                   "per-cell comparison against the reference table at (2.9, 3.6)");
    freq->add_option("--dist", dist_at, "evaluate dist_H at this threshold");
    add_output_flags(freq, opt);

    // verify
    auto* verify = app.add_subcommand("verify", "soundness and sharpness checks");
    bool counterexample = false, sharpness = false;
    double eps = 1e-4;
    std::string direction_name = "above";
    verify->add_option("--r", r, "threshold for D_{n-2}")->capture_default_str();
    verify->add_option("--R", R, "threshold for D_n")->capture_default_str();
    verify->add_option("--samples", samples, "random rationals to sweep")
        ->capture_default_str();
    verify->add_option("--orbit", orbit, "points per orbit")->capture_default_str();
    verify->add_option("--seed", seed, "random seed")->capture_default_str();
    verify->add_flag("--counterexample-tong-c", counterexample,
                     "show the invalid C-bound value K");
    verify->add_flag("--sharpness", sharpness, "construct a near-extremal witness");
    verify->add_option("--a", a, "digit a_n")->check(CLI::PositiveNumber);
    verify->add_option("--b", b, "digit a_{n+1}")->check(CLI::PositiveNumber);
    verify->add_option("--eps", eps, "relative witness tolerance")
        ->capture_default_str();
    verify->add_option("--direction", direction_name, "witness direction")
        ->check(CLI::IsMember({"below", "above"}))
        ->capture_default_str();
    add_output_flags(verify, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (expand->parsed()) return cmd_expand(x_text, n_opt, opt);
        if (bound->parsed()) return cmd_bound(kind, a, b, r, R, t, T, table, opt);
        if (freq->parsed())
            return cmd_freq(r, R, event_name, method, samples, orbit, seed, compare,
                            compare_table, dist_at, opt);
        if (verify->parsed())
            return cmd_verify(r, R, samples, orbit, seed, counterexample, sharpness,
                              a, b, eps, direction_name, opt);
    } catch (const cfb::parse_error& e) {
        std::cerr << "error: " << e.what() << " (position " << e.position << ")\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
