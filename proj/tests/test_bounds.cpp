#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cfb/bounds.hpp"

using namespace cfb;

namespace {

struct TableRow {
    long a, b;
    const char* label;
    double bound;  // value of the sharp Theorem-4 bound (recomputed, exact to 6 digits)
    double tong;
};

// frozen reference rows for r = 2.9, R = 3.6 (values from the closed formulas,
// cross-checked by quadrature of the extremal points)
const TableRow kRows[] = {
    {1, 1, "vi_a", 2.29934, 2.29934},  {1, 2, "vi_a", 4.03565, 4.03565},
    {1, 3, "i", 5.72414, 5.76115},     {1, 4, "i", 7.06897, 7.48337},
    {1, 37, "i", 51.4483, 64.2016},    {2, 1, "vi_c", 4.03565, 4.03565},
    {2, 2, "vi_a", 7.48337, 7.48337},  {2, 3, "vi_a", 10.9242, 10.9242},
    {2, 4, "i", 13.7931, 14.3631},     {2, 42, "i", 116.000, 144.967},
    {3, 1, "iii", 5.38889, 5.76115},   {3, 2, "iii", 10.5000, 10.9242},
    {3, 3, "iii", 15.6111, 16.0822},   {3, 4, "v", 20.0000, 21.2388},
    {17, 29, "v", 540.000, 847.789},
};

}  // namespace

TEST_CASE("classification of the worked-example grid") {
    for (const auto& row : kRows)
        CHECK(to_string(classify(row.a, row.b, 2.9, 3.6)) == row.label);
    CHECK(case_label_from_string("vi_c") == CaseLabel::vi_c);
    CHECK_THROWS_AS(case_label_from_string("nope"), std::invalid_argument);
}

TEST_CASE("sharp upper bounds and Tong values on the worked-example grid") {
    for (const auto& row : kRows) {
        auto res = upper_bound_D(row.a, row.b, 2.9, 3.6);
        CHECK(res.value == doctest::Approx(row.bound).epsilon(2e-5));
        CHECK(res.tong_value == doctest::Approx(row.tong).epsilon(2e-5));
        CHECK(res.value <= res.tong_value + 1e-12);  // sharp never worse than Tong
    }
}

TEST_CASE("lower bounds: worked example values") {
    // intersection cases where the sharp lower bound is exactly M_Tong
    for (auto [a, b] : {std::pair<long, long>{1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3}}) {
        auto res = lower_bound_D(a, b, 2.9, 3.6);
        CHECK(res.theorem_case == 3);
        CHECK(res.value == doctest::Approx(res.tong_value).epsilon(1e-14));
    }
    CHECK(lower_bound_D(1, 1, 2.9, 3.6).value == doctest::Approx(2.30).epsilon(0.0025));
    CHECK(lower_bound_D(2, 3, 2.9, 3.6).value == doctest::Approx(10.92).epsilon(0.0025));
    // an off-intersection case where the sharp bound beats Tong's
    auto res13 = lower_bound_D(1, 3, 2.9, 3.6);
    CHECK(res13.theorem_case == 1);
    CHECK(res13.value == doctest::Approx(4.0 / 0.6).epsilon(1e-12));
    CHECK(res13.tong_value == doctest::Approx(5.76115).epsilon(1e-5));
    CHECK(res13.value > res13.tong_value);
}

TEST_CASE("lower region emptiness") {
    CHECK(lower_region_nonempty(1, 3, 2.9, 3.6));
    CHECK(!lower_region_nonempty(1, 1, 1.05, 1.05));
    CHECK_THROWS_AS(lower_bound_D(1, 1, 1.05, 1.05), empty_region_error);
    CHECK_THROWS_AS(witness(1, 1, 1.05, 1.05, Direction::Below, 1e-3),
                    empty_region_error);
}

TEST_CASE("sharp lower bound dominates Tong's lower bound") {
    for (long a = 1; a <= 4; ++a)
        for (long b = 1; b <= 4; ++b)
            for (double r : {1.4, 2.9, 4.3})
                for (double R : {1.6, 3.6, 5.1}) {
                    if (!lower_region_nonempty(a, b, r, R)) continue;
                    auto res = lower_bound_D(a, b, r, R);
                    CHECK(res.value >= res.tong_value - 1e-12);
                }
}

TEST_CASE("bounds are monotone in the thresholds (cellwise)") {
    for (long a : {1L, 2L})
        for (long b : {1L, 3L}) {
            double prev = HUGE_VAL;
            for (double r : {1.2, 1.8, 2.9, 4.0, 8.0}) {
                double cur = upper_bound_D(a, b, r, 3.6).value;
                CHECK(cur <= prev + 1e-12);
                prev = cur;
            }
        }
}

TEST_CASE("C bounds equal the transformed D bounds") {
    for (long a : {1L, 2L, 3L})
        for (long b : {1L, 2L, 3L})
            for (double t : {1.05, 1.2, 1.5, 1.9})
                for (double T : {1.1, 1.4, 1.7, 1.95}) {
                    double r = 1.0 / (t - 1.0), R = 1.0 / (T - 1.0);
                    auto lc = lower_bound_C(a, b, t, T);
                    auto ud = upper_bound_D(a, b, r, R);
                    CHECK(lc.value ==
                          doctest::Approx(1.0 + 1.0 / ud.value).epsilon(1e-9));
                    CHECK(lc.value > 1.0);
                    CHECK(lc.value < 2.0);
                    if (lower_region_nonempty(a, b, r, R)) {
                        auto uc = upper_bound_C(a, b, t, T);
                        auto ld = lower_bound_D(a, b, r, R);
                        CHECK(uc.value ==
                              doctest::Approx(1.0 + 1.0 / ld.value).epsilon(1e-9));
                        // D > 1 everywhere, so any C value stays below 2
                        CHECK(uc.value > 1.0);
                        CHECK(uc.value < 2.0 + 1e-12);
                    }
                }
    CHECK_THROWS_AS(upper_bound_C(1, 1, 0.9, 1.4), std::domain_error);
    CHECK_THROWS_AS(lower_bound_C(1, 1, 1.1, 2.4), std::domain_error);
}

TEST_CASE("the uncorrected K value versus the corrected C bound") {
    CHECK(tong_K(1, 1, 1.1, 1.4) == doctest::Approx(11.9475).epsilon(1e-4));
    CHECK(tong_K(1, 1, 1.1, 1.4) > 11.94);  // outside (1,2): not a valid C bound
    auto primes = c_prime_config(1, 1, 1.1, 1.4);
    CHECK(primes.Fp == doctest::Approx(0.869565).epsilon(1e-5));
    CHECK(primes.Gp == doctest::Approx(0.625).epsilon(1e-10));
    CHECK(primes.Lp == doctest::Approx(2.04).epsilon(1e-12));
    CHECK(upper_bound_C(1, 1, 1.1, 1.4).value == doctest::Approx(1.4950).epsilon(1e-4));
}

TEST_CASE("witness construction: exact hypotheses, near-extremal value") {
    struct Cfg {
        long a, b;
        double r, R;
        Direction dir;
    };
    std::vector<Cfg> cfgs = {{17, 29, 2.9, 3.6, Direction::Above},
                             {1, 3, 2.9, 3.6, Direction::Below},
                             {1, 1, 2.9, 3.6, Direction::Above},
                             {2, 3, 2.9, 3.6, Direction::Below},
                             {1, 2, 1.7, 2.4, Direction::Above}};
    for (const auto& cfg : cfgs) {
        double eps = 1e-5;
        Witness w = witness(cfg.a, cfg.b, cfg.r, cfg.R, cfg.dir, eps);
        // digit window around n is (a, b)
        CHECK(w.seq.digit(w.n) == cfg.a);
        CHECK(w.seq.digit(w.n + 1) == cfg.b);
        // hypotheses hold exactly in rational arithmetic
        Rational d_prev = d_prev_from_tv(w.seq, w.n);
        Rational d_next = d_next_from_tv(w.seq, w.n);
        Rational r_exact = rational_from_double(cfg.r);
        Rational R_exact = rational_from_double(cfg.R);
        if (cfg.dir == Direction::Below) {
            CHECK(d_prev < r_exact);
            CHECK(d_next < R_exact);
        } else {
            CHECK(d_prev > r_exact);
            CHECK(d_next > R_exact);
        }
        // D_{n-1} recomputed from the sequence matches the witness field and
        // sits within relative eps of the bound
        auto c = coefficients(w.seq, w.n);
        REQUIRE(c.d.has_value());
        CHECK(*c.d == w.d_nm1);
        CHECK(std::abs(w.d_nm1.get_d() - w.bound) < eps * w.bound);
        // x really has the digits the witness reports
        CHECK(fold(w.seq) == w.x);
    }
    CHECK_THROWS_AS(witness(1, 1, 2.9, 3.6, Direction::Above, -1.0),
                    std::invalid_argument);
}

TEST_CASE("bound results serialize") {
    auto res = upper_bound_D(1, 3, 2.9, 3.6);
    auto text = to_json_string(res, 1, 3, 2.9, 3.6);
    CHECK(text.find("\"kind\"") != std::string::npos);
    CHECK(text.find("upper_d") != std::string::npos);
}
