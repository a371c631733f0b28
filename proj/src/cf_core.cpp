#include "cfb/cf_core.hpp"

#include <json.hpp>

#include <algorithm>

namespace cfb {

std::vector<BigInt> normalize_digits(std::vector<BigInt> digits) {
    if (digits.size() >= 2 && digits.back() == 1) {
        digits.pop_back();
        digits.back() += 1;
    }
    return digits;
}

DigitSequence expand(const Rational& x, long max_digits) {
    if (max_digits < 1) throw std::invalid_argument("max_digits must be >= 1");

    DigitSequence out;
    BigInt num = x.get_num(), den = x.get_den();
    BigInt a0, rem;
    mpz_fdiv_qr(a0.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    out.a0 = a0;

    // Euclidean steps on (den, rem): digit = floor(den/rem).
    while (rem != 0 && out.size() < max_digits) {
        BigInt a, rem2;
        mpz_fdiv_qr(a.get_mpz_t(), rem2.get_mpz_t(), den.get_mpz_t(), rem.get_mpz_t());
        out.digits.push_back(a);
        den = rem;
        rem = rem2;
    }

    if (rem == 0) {
        out.exactness = Exactness::ExactFinite;
        out.n_safe = out.size();
    } else {
        out.exactness = Exactness::TruncatedGuaranteed;
        out.n_safe = out.size();  // rational digits are always certified
    }
    return out;
}

Rational bracket_value(const BigInt& first, const std::vector<BigInt>& rest) {
    Rational tail(0);
    for (auto it = rest.rbegin(); it != rest.rend(); ++it) {
        tail = Rational(1) / (Rational(*it) + tail);
    }
    return Rational(first) + tail;
}

Rational fold(const DigitSequence& d) {
    if (d.exactness != Exactness::ExactFinite)
        throw insufficient_digits("fold requires an exact-finite sequence");
    return bracket_value(d.a0, d.digits);
}

std::vector<ConvergentPair> convergents(const DigitSequence& d, long n) {
    if (n < 0 || n > d.size()) throw std::out_of_range("convergent index");
    std::vector<ConvergentPair> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    BigInt p_prev(1), q_prev(0);  // p_{-1}, q_{-1}
    BigInt p_cur = d.a0, q_cur(1);
    out.push_back({p_cur, q_cur, 0});
    for (long k = 1; k <= n; ++k) {
        const BigInt& a = d.digit(k);
        BigInt p_next = a * p_cur + p_prev;
        BigInt q_next = a * q_cur + q_prev;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
        out.push_back({p_cur, q_cur, k});
    }
    return out;
}

namespace {

void check_future_index(const DigitSequence& d, long n) {
    if (n < 0 || n > d.size()) throw std::out_of_range("future index");
    if (d.exactness == Exactness::TruncatedGuaranteed && n + 2 > d.n_safe)
        throw insufficient_digits("tail beyond certified digits");
}

}  // namespace

Rational future_t(const DigitSequence& d, long n) {
    check_future_index(d, n);
    Rational t(0);
    for (long k = d.size(); k >= n + 1; --k) {
        t = Rational(1) / (Rational(d.digit(k)) + t);
    }
    return t;
}

Rational past_v(const DigitSequence& d, long n) {
    if (n < 0 || n > d.size()) throw std::out_of_range("past index");
    if (d.exactness == Exactness::TruncatedGuaranteed && n > d.n_safe)
        throw insufficient_digits("past beyond certified digits");
    if (n == 0) return Rational(0);
    // v_n = q_{n-1}/q_n from the convergent recurrence.
    BigInt q_prev(0), q_cur(1);
    for (long k = 1; k <= n; ++k) {
        BigInt q_next = d.digit(k) * q_cur + q_prev;
        q_prev = q_cur;
        q_cur = q_next;
    }
    return make_rational(q_prev, q_cur);
}

CoefficientTriple coefficients(const DigitSequence& d, long n) {
    Rational t = future_t(d, n);
    Rational v = past_v(d, n);
    if (t == 0) throw std::domain_error("t_n = 0: coefficients undefined at the tail end");
    Rational denom = Rational(1) + t * v;
    CoefficientTriple out{t / denom, std::nullopt, std::nullopt, n};
    if (v != 0) {
        Rational dv = Rational(1) / (t * v);  // D_{n-1}
        out.c = Rational(1) + Rational(1) / dv;
        out.d = std::move(dv);
    }
    return out;
}

Rational d_prev_from_tv(const DigitSequence& d, long n) {
    if (n < 1 || n > d.size()) throw std::out_of_range("index");
    Rational t = future_t(d, n);
    Rational v = past_v(d, n);
    Rational a(d.digit(n));
    Rational den = Rational(1) - a * v;
    if (den == 0) throw std::domain_error("D_{n-2} undefined (n too small)");
    return (a + t) * v / den;
}

Rational d_next_from_tv(const DigitSequence& d, long n) {
    if (n < 0 || n + 1 > d.size()) throw insufficient_digits("need digit a_{n+1}");
    Rational t = future_t(d, n);
    Rational v = past_v(d, n);
    Rational b(d.digit(n + 1));
    Rational den = Rational(1) - b * t;
    if (den == 0) throw std::domain_error("D_n undefined (t_{n+1} = 0)");
    return (b + v) * t / den;
}

Rational d_def(const DigitSequence& d, long n) {
    if (n + 2 > d.size()) throw insufficient_digits("need digits through a_{n+2}");
    std::vector<BigInt> past;
    for (long k = n; k >= 1; --k) past.push_back(d.digit(k));
    std::vector<BigInt> tail;
    for (long k = n + 3; k <= d.size(); ++k) tail.push_back(d.digit(k));
    return bracket_value(d.digit(n + 1), past) * bracket_value(d.digit(n + 2), tail);
}

Rational theta_def(const DigitSequence& d, long n) {
    Rational x = fold(d);
    auto cs = convergents(d, n);
    Rational pq = make_rational(cs.back().p, cs.back().q);
    Rational diff = x - pq;
    if (diff < 0) diff = -diff;
    return Rational(cs.back().q) * Rational(cs.back().q) * diff;
}

std::string to_bracket_string(const DigitSequence& d) {
    std::string s = d.a0.get_str();
    if (d.digits.empty()) return s;
    s += ';';
    for (std::size_t i = 0; i < d.digits.size(); ++i) {
        if (i) s += ',';
        s += d.digits[i].get_str();
    }
    return s;
}

DigitSequence parse_bracket_string(const std::string& text) {
    DigitSequence out;
    auto semi = text.find(';');
    out.a0 = BigInt(text.substr(0, semi));
    if (semi != std::string::npos && semi + 1 < text.size()) {
        std::size_t pos = semi + 1;
        while (pos < text.size()) {
            auto comma = text.find(',', pos);
            auto end = comma == std::string::npos ? text.size() : comma;
            BigInt digit(text.substr(pos, end - pos));
            if (digit < 1) throw parse_error("digit must be >= 1", pos);
            out.digits.push_back(std::move(digit));
            pos = comma == std::string::npos ? text.size() : comma + 1;
        }
    }
    out.n_safe = out.size();
    return out;
}

std::string to_json_string(const DigitSequence& d) {
    nlohmann::json j;
    j["a0"] = d.a0.get_str();
    auto digits = nlohmann::json::array();
    for (const auto& a : d.digits) digits.push_back(a.get_str());
    j["digits"] = std::move(digits);
    j["exactness"] = d.exactness == Exactness::ExactFinite ? "exact-finite"
                                                           : "truncated-guaranteed";
    j["n_safe"] = d.n_safe;
    return j.dump();
}

}  // namespace cfb
