#include "gkmfiber/rational.hpp"

#include "gkmfiber/errors.hpp"

namespace gkmfiber {

Rational make_rational(const Integer& num, const Integer& den)
{
    if (sgn(den) == 0)
        throw InvalidArgument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational make_rational(std::int64_t num, std::int64_t den)
{
    return make_rational(Integer(std::to_string(num)), Integer(std::to_string(den)));
}

std::string to_string(const Rational& r)
{
    return r.get_str();
}

} // namespace gkmfiber
