#include "orbicover/rational.hpp"

#include "orbicover/errors.hpp"

#include <cctype>

namespace orbicover {

namespace {

bool is_integer_text(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

BigInt parse_integer(std::string_view s)
{
    if (s.front() == '+')
        s.remove_prefix(1);
    return BigInt(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);

    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den) || den.front() == '-')
        throw ValidationError("malformed rational '" + std::string(text) + "'");
    BigInt d = parse_integer(den);
    if (d == 0)
        throw ValidationError("zero denominator in rational '" + std::string(text) + "'");
    return Rational(parse_integer(num), d);
}

std::string to_string(const Rational& value)
{
    const auto num = boost::multiprecision::numerator(value);
    const auto den = boost::multiprecision::denominator(value);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

long floor_to_long(const Rational& value)
{
    BigInt num = boost::multiprecision::numerator(value);
    BigInt den = boost::multiprecision::denominator(value);
    BigInt q = num / den;  // truncates toward zero
    if (num < 0 && q * den != num)
        q -= 1;
    return q.convert_to<long>();
}

}  // namespace orbicover
