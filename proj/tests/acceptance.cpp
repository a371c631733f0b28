// Acceptance gate: one PASS/FAIL line per criterion, exit code = number of
// failures. argv[1] must be the path to the cfb CLI binary.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cfb/cf_core.hpp"
#include "cfb/frequency.hpp"

namespace {

std::string g_cli;

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = g_cli + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

int g_failures = 0;

void report(int k, bool pass, const std::string& detail) {
    std::cout << "CRITERION " << k << ": " << (pass ? "PASS" : "FAIL") << " — "
              << detail << "\n";
    if (!pass) ++g_failures;
}

// ---------------------------------------------------------------------------
// 1. worked-table reproduction via the CLI
// ---------------------------------------------------------------------------
void criterion_1() {
    struct Row {
        long a, b;
        const char* label;
        double bound, tong;
    };
    const Row printed[] = {
        {1, 1, "vi_a", 2.30, 2.30},  {1, 2, "vi_a", 4.04, 4.04},
        {1, 3, "i", 5.72, 5.76},     {1, 4, "i", 7.07, 7.48},
        {1, 37, "i", 51.44, 64.20},  {2, 1, "vi_c", 4.04, 4.04},
        {2, 2, "vi_a", 7.48, 7.48},  {2, 3, "vi_a", 10.92, 10.92},
        {2, 4, "i", 13.79, 14.36},   {2, 42, "i", 116.00, 144.97},
        {3, 1, "iii", 4.04, 5.76},   {3, 2, "iii", 7.48, 10.92},
        {3, 3, "iii", 10.92, 16.08}, {3, 4, "v", 13.79, 21.23},
        {17, 29, "v", 540.00, 847.79},
    };
    auto t0 = std::chrono::steady_clock::now();
    auto res = run_cli("bound --table --r 2.9 --R 3.6");
    double secs = elapsed_s(t0);
    if (res.exit_code != 0) {
        report(1, false, "CLI exited with code " + std::to_string(res.exit_code));
        return;
    }
    std::map<std::pair<long, long>, std::array<std::string, 3>> table;
    std::istringstream in(res.out);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string a, b, label, bound, tong;
        std::getline(ls, a, ',');
        std::getline(ls, b, ',');
        std::getline(ls, label, ',');
        std::getline(ls, bound, ',');
        std::getline(ls, tong, ',');
        if (!a.empty() && !b.empty())
            table[{std::stol(a), std::stol(b)}] = {label, bound, tong};
    }
    std::ostringstream bad;
    int mismatches = 0;
    for (const auto& row : printed) {
        auto it = table.find({row.a, row.b});
        if (it == table.end()) {
            bad << " (" << row.a << ',' << row.b << ") missing;";
            ++mismatches;
            continue;
        }
        const auto& [label, bound_s, tong_s] = it->second;
        double bound = std::stod(bound_s), tong = std::stod(tong_s);
        if (label != row.label || std::abs(bound - row.bound) > 0.005 ||
            std::abs(tong - row.tong) > 0.005) {
            bad << " (" << row.a << ',' << row.b << "): got " << label << '/'
                << bound_s << '/' << tong_s << " vs printed " << row.label << '/'
                << row.bound << '/' << row.tong << ';';
            ++mismatches;
        }
    }
    bool pass = mismatches == 0 && secs < 1.0;
    std::ostringstream d;
    d << "table sweep in " << secs << " s; " << mismatches
      << " of 15 printed rows disagree";
    if (mismatches) d << " —" << bad.str();
    report(1, pass, d.str());
}

// ---------------------------------------------------------------------------
// 2. worked lower-bound examples
// ---------------------------------------------------------------------------
void criterion_2() {
    struct Ex {
        long a, b;
        double value;
    };
    const Ex exs[] = {{1, 1, 2.30}, {1, 2, 4.04}, {2, 1, 4.04},
                      {2, 2, 7.48}, {2, 3, 10.92}};
    std::ostringstream bad;
    int mismatches = 0;
    for (const auto& ex : exs) {
        auto res = cfb::lower_bound_D(ex.a, ex.b, 2.9, 3.6);
        if (std::abs(res.value - ex.value) > 0.005) {
            bad << " (" << ex.a << ',' << ex.b << "): " << res.value << " vs "
                << ex.value << ';';
            ++mismatches;
        }
    }
    auto res13 = cfb::lower_bound_D(1, 3, 2.9, 3.6);
    if (std::abs(res13.value - 6.67) > 0.005) {
        bad << " (1,3) sharp: " << res13.value << " vs 6.67;";
        ++mismatches;
    }
    if (std::abs(res13.tong_value - 5.76) > 0.005) {
        bad << " (1,3) classical: " << res13.tong_value << " vs 5.76;";
        ++mismatches;
    }
    report(2, mismatches == 0,
           mismatches == 0
               ? "all six worked lower-bound values within 0.005, including "
                 "6.67 > 5.76 at (1,3)"
               : "mismatches:" + bad.str());
}

// ---------------------------------------------------------------------------
// 3. corrected C-bound example
// ---------------------------------------------------------------------------
void criterion_3() {
    double K = cfb::tong_K(1, 1, 1.1, 1.4);
    auto primes = cfb::c_prime_config(1, 1, 1.1, 1.4);
    double bound = cfb::upper_bound_C(1, 1, 1.1, 1.4).value;
    std::ostringstream bad;
    if (!(K > 11.94)) bad << " K=" << K << " not > 11.94;";
    if (std::abs(primes.Fp - 0.870) > 0.0005) bad << " F'=" << primes.Fp << ';';
    if (std::abs(primes.Gp - 0.625) > 0.0005) bad << " G'=" << primes.Gp << ';';
    if (std::abs(primes.Lp - 2.04) > 0.0005) bad << " L'=" << primes.Lp << ';';
    if (!(bound < 1.50 + 0.005)) bad << " bound=" << bound << " not < 1.505;";
    bool pass = bad.str().empty();
    std::ostringstream d;
    if (pass)
        d << "uncorrected K=" << K << " (impossible for a quantity in (1,2)); "
          << "corrected bound " << bound << " < 1.50";
    else
        d << "mismatches:" << bad.str();
    report(3, pass, d.str());
}

// ---------------------------------------------------------------------------
// 4. printed frequency table reproduction
// ---------------------------------------------------------------------------
void criterion_4() {
    auto t0 = std::chrono::steady_clock::now();
    auto rep = cfb::reference_comparison(0.002);
    double secs = elapsed_s(t0);
    std::ostringstream bad;
    int flagged = 0;
    for (const auto& row : rep.rows)
        if (row.flagged) {
            bad << " cell(" << row.range.a_text() << ',' << row.range.b_text()
                << "): printed " << row.printed << " vs computed "
                << row.computed_value << " (freq) / " << row.computed_scaled
                << " (scaled);";
            ++flagged;
        }
    bool total_ok = std::abs(rep.computed_total - 0.64) <= 0.01;
    bool cond_ok = std::abs(rep.computed_conditional - 0.31) <= 0.01;
    if (!total_ok)
        bad << " total " << rep.computed_total << " vs printed 0.64;";
    if (!cond_ok)
        bad << " conditional " << rep.computed_conditional << " vs printed 0.31;";
    bool pass = flagged == 0 && total_ok && cond_ok && secs < 10.0;
    std::ostringstream d;
    d << flagged << " of 11 printed cells deviate beyond 0.002 in " << secs
      << " s";
    if (!pass) d << " —" << bad.str();
    report(4, pass, d.str());
}

// ---------------------------------------------------------------------------
// 5. closed form vs quadrature oracle
// ---------------------------------------------------------------------------
void criterion_5() {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    long checked = 0;
    for (auto [r, R] : {std::pair<double, double>{2.9, 3.6}, {1.5, 1.5}, {5.2, 2.1}})
        for (long a = 1; a <= 10; ++a)
            for (long b = 1; b <= 10; ++b) {
                double cf =
                    cfb::cell_measure(cfb::classify(a, b, r, R), a, b, r, R).value;
                double q =
                    cfb::quadrature_measure(a, b, r, R, cfb::Event::both_greater)
                        .value;
                worst = std::max(worst, std::abs(cf - q));
                ++checked;
            }
    double secs = elapsed_s(t0);
    bool pass = worst <= 1e-8 && secs < 60.0;
    std::ostringstream d;
    d << checked << " cells, worst |closed - quadrature| = " << worst << " in "
      << secs << " s";
    report(5, pass, d.str());
}

// ---------------------------------------------------------------------------
// 6. ergodic consistency
// ---------------------------------------------------------------------------
void criterion_6() {
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream bad;
    auto mc = cfb::monte_carlo_frequency(2.9, 3.6, cfb::Event::both_greater, 2000,
                                         50, 42);
    double se = mc.stderr_estimate.value_or(0.0);
    bool freq_ok = se > 0.0 && std::abs(mc.value - 0.64) <= 3.0 * se;
    if (!freq_ok)
        bad << " frequency " << mc.value << " ± " << se << " is "
            << std::abs(mc.value - 0.64) / se << " stderr from 0.64;";
    bool cdf_ok = true;
    for (double R : {2.0, 3.0, 5.0, 10.0}) {
        auto est = cfb::monte_carlo_cdf_D(R, 2000, 50, 42 + (unsigned)R);
        if (std::abs(est.value - cfb::dist_H(R)) > 3.0 * est.stderr_estimate) {
            cdf_ok = false;
            bad << " cdf(" << R << ") " << est.value << " vs " << cfb::dist_H(R)
                << ';';
        }
    }
    double secs = elapsed_s(t0);
    bool pass = freq_ok && cdf_ok && secs < 30.0;
    std::ostringstream d;
    d << "10^5 orbit points per estimate in " << secs << " s";
    if (!pass) d << " —" << bad.str();
    if (pass) d << "; frequency " << mc.value << " ± " << se;
    report(6, pass, d.str());
}

// ---------------------------------------------------------------------------
// 7. soundness sweep via the CLI
// ---------------------------------------------------------------------------
void criterion_7() {
    auto res = run_cli(
        "verify --r 2.9 --R 3.6 --samples 1000 --orbit 50 --seed 1 "
        "--no-timestamp");
    bool pass = res.exit_code == 0 &&
                res.out.find("\"violations\"") != std::string::npos;
    std::ostringstream d;
    if (pass)
        d << "verify over 1000 random 4096-bit rationals, 50 orbit points "
             "each: exit 0, zero violations";
    else
        d << "verify exit code " << res.exit_code;
    report(7, pass, d.str());
}

// ---------------------------------------------------------------------------
// 8. sharpness witnesses
// ---------------------------------------------------------------------------
void criterion_8() {
    struct Cfg {
        long a, b;
        double r, R;
        cfb::Direction dir;
    };
    std::vector<Cfg> cfgs = {{17, 29, 2.9, 3.6, cfb::Direction::Above},
                             {1, 3, 2.9, 3.6, cfb::Direction::Below}};
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<long> digit(1, 6);
    std::uniform_real_distribution<double> frac(0.05, 0.95);
    while (cfgs.size() < 22) {
        Cfg c{digit(gen), digit(gen), 0.0, 0.0,
              cfgs.size() % 2 ? cfb::Direction::Below : cfb::Direction::Above};
        c.r = c.a + frac(gen);
        c.R = c.b + frac(gen);
        if (c.dir == cfb::Direction::Below &&
            !cfb::lower_region_nonempty(c.a, c.b, c.r, c.R))
            c.dir = cfb::Direction::Above;
        cfgs.push_back(c);
    }
    const double eps = 1e-4;
    std::ostringstream bad;
    int bad_count = 0;
    for (const auto& c : cfgs) {
        try {
            cfb::Witness w = cfb::witness(c.a, c.b, c.r, c.R, c.dir, eps);
            cfb::Rational d_prev = cfb::d_prev_from_tv(w.seq, w.n);
            cfb::Rational d_next = cfb::d_next_from_tv(w.seq, w.n);
            cfb::Rational r_exact = cfb::rational_from_double(c.r);
            cfb::Rational R_exact = cfb::rational_from_double(c.R);
            bool hyp = c.dir == cfb::Direction::Below
                           ? d_prev < r_exact && d_next < R_exact
                           : d_prev > r_exact && d_next > R_exact;
            double rel = std::abs(w.d_nm1.get_d() - w.bound) / w.bound;
            if (!hyp || rel > eps) {
                bad << " (" << c.a << ',' << c.b << ',' << c.r << ',' << c.R
                    << "): rel=" << rel << " hyp=" << hyp << ';';
                ++bad_count;
            }
        } catch (const std::exception& e) {
            bad << " (" << c.a << ',' << c.b << ',' << c.r << ',' << c.R
                << "): " << e.what() << ';';
            ++bad_count;
        }
    }
    report(8, bad_count == 0,
           bad_count == 0 ? "22 witnesses hit their bound within relative 1e-4 "
                            "with exactly-verified hypotheses"
                          : "failures:" + bad.str());
}

// ---------------------------------------------------------------------------
// 9. exact definitional equality for D_{n-1}
// ---------------------------------------------------------------------------
void criterion_9() {
    std::mt19937_64 gen(99);
    long checked = 0, mismatched = 0;
    for (int k = 0; k < 1000; ++k) {
        cfb::BigInt num = 0;
        for (int i = 0; i < 4; ++i) {
            mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), 64);
            num += cfb::BigInt(static_cast<unsigned long>(gen()));
        }
        if (num == 0) num = 1;
        cfb::BigInt den = 1;
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 256);
        cfb::DigitSequence d = cfb::expand(cfb::make_rational(num, den), 4000);
        // D_n needs the digit a_{n+2} to exist, so stop two short of the end
        long last = static_cast<long>(d.size()) - 2;
        for (long n : {1L, last / 2, last}) {
            if (n < 1 || n > last) continue;
            if (cfb::d_def(d, n) != cfb::d_next_from_tv(d, n)) ++mismatched;
            ++checked;
        }
    }
    std::ostringstream d;
    d << checked << " definitional-vs-dynamical identities checked exactly, "
      << mismatched << " mismatches (zero tolerance)";
    report(9, mismatched == 0, d.str());
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-cfb-cli>\n";
        return 64;
    }
    g_cli = argv[1];
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED"
                                  : std::to_string(g_failures) +
                                        " CRITERIA FAILED")
              << "\n";
    return g_failures;
}
