#include "ballspace/rational.hpp"

#include <charconv>

namespace ballspace {

Rational parse_rational(std::string_view text) {
    auto bad = [&]() -> Rational {
        throw input_error("invalid rational '" + std::string(text) + "'");
    };
    auto parse_int = [&](std::string_view part) -> long long {
        long long value = 0;
        if (part.empty()) bad();
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc{} || ptr != part.data() + part.size()) bad();
        return value;
    };
    size_t slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    long long num = parse_int(text.substr(0, slash));
    long long den = parse_int(text.substr(slash + 1));
    if (den <= 0) bad();
    return Rational(num, den);
}

std::string format_rational(const Rational& r) {
    std::string s = std::to_string(r.numerator());
    if (r.denominator() != 1) {
        s += '/';
        s += std::to_string(r.denominator());
    }
    return s;
}

} // namespace ballspace
