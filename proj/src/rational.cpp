#include "cfb/rational.hpp"

#include <cctype>

namespace cfb {

namespace {

// index of the first character that breaks an integer token, or `to` if none
std::size_t first_bad(const std::string& s, std::size_t from, std::size_t to) {
    if (from >= to) return from;
    std::size_t i = from;
    if (s[i] == '+' || s[i] == '-') ++i;
    if (i >= to) return i;
    for (; i < to; ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return i;
    return to;
}

bool is_integer_token(const std::string& s, std::size_t from, std::size_t to) {
    return from < to && first_bad(s, from, to) == to;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw parse_error("empty rational literal", 0);

    auto slash = text.find('/');
    if (slash != std::string::npos) {
        if (!is_integer_token(text, 0, slash))
            throw parse_error("bad numerator in '" + text + "'",
                              first_bad(text, 0, slash));
        if (!is_integer_token(text, slash + 1, text.size()))
            throw parse_error("bad denominator in '" + text + "'",
                              first_bad(text, slash + 1, text.size()));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw parse_error("zero denominator in '" + text + "'", slash + 1);
        return make_rational(std::move(num), std::move(den));
    }

    auto dot = text.find('.');
    if (dot == std::string::npos) {
        if (!is_integer_token(text, 0, text.size()))
            throw parse_error("bad integer literal '" + text + "'",
                              first_bad(text, 0, text.size()));
        return make_rational(BigInt(text), BigInt(1));
    }

    // decimal: sign? digits '.' digits  ->  exact p / 10^k
    std::string head = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    bool negative = false;
    if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
        negative = head[0] == '-';
        head.erase(0, 1);
    }
    if (head.empty()) head = "0";
    if (frac.empty()) frac = "0";
    if (!is_integer_token(head, 0, head.size()))
        throw parse_error("bad decimal literal '" + text + "'",
                          first_bad(head, 0, head.size()));
    if (!is_integer_token(frac, 0, frac.size()))
        throw parse_error("bad decimal literal '" + text + "'",
                          dot + 1 + first_bad(frac, 0, frac.size()));

    BigInt den(1);
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    BigInt num = BigInt(head) * den + BigInt(frac);
    if (negative) num = -num;
    return make_rational(std::move(num), std::move(den));
}

}  // namespace cfb
