#include "gkmfiber/polynomial.hpp"

#include "gkmfiber/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gkmfiber {

unsigned total_degree(const Monomial& m)
{
    return std::accumulate(m.begin(), m.end(), 0u);
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const
{
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db)
        return da < db;
    return a > b;
}

namespace {

void enumerate(std::size_t n, unsigned remaining, std::size_t pos, Monomial& cur, std::vector<Monomial>& out)
{
    if (pos + 1 == n) {
        cur[pos] = remaining;
        out.push_back(cur);
        return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
        cur[pos] = e;
        enumerate(n, remaining - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

} // namespace

std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned d)
{
    if (n == 0)
        throw InvalidArgument("monomials need at least one variable");
    std::vector<Monomial> out;
    Monomial cur(n, 0);
    enumerate(n, d, 0, cur, out);
    return out;
}

MonomialBasis::MonomialBasis(std::size_t n, unsigned d)
    : n_(n), d_(d), monomials_(monomials_of_degree(n, d))
{
    for (std::size_t i = 0; i < monomials_.size(); ++i)
        index_.emplace(monomials_[i], i);
}

std::size_t MonomialBasis::index_of(const Monomial& m) const
{
    auto it = index_.find(m);
    if (it == index_.end())
        throw InvalidArgument("monomial outside the graded piece");
    return it->second;
}

// ---------------------------------------------------------------------------

Polynomial Polynomial::constant(std::size_t n, const Rational& c)
{
    Polynomial p(n);
    p.add_term(Monomial(n, 0), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t n, std::size_t index)
{
    if (index >= n)
        throw InvalidArgument("variable index out of range");
    Monomial m(n, 0);
    m[index] = 1;
    return monomial(m);
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c)
{
    Polynomial p(m.size());
    p.add_term(m, c);
    return p;
}

int Polynomial::degree() const
{
    if (terms_.empty())
        return -1;
    return static_cast<int>(total_degree(terms_.rbegin()->first));
}

bool Polynomial::is_homogeneous() const
{
    if (terms_.empty())
        return true;
    return total_degree(terms_.begin()->first) == total_degree(terms_.rbegin()->first);
}

Rational Polynomial::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c)
{
    if (m.size() != n_)
        throw InvalidArgument("monomial has wrong number of variables");
    if (gkmfiber::is_zero(c))
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (gkmfiber::is_zero(it->second))
            terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    if (o.n_ != n_)
        throw InvalidArgument("polynomials over different variable counts");
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    if (o.n_ != n_)
        throw InvalidArgument("polynomials over different variable counts");
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c)
{
    if (gkmfiber::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_)
        v *= c;
    return *this;
}

Polynomial Polynomial::operator-() const
{
    Polynomial r = *this;
    for (auto& [m, v] : r.terms_)
        v = -v;
    return r;
}

Polynomial Polynomial::pow(unsigned e) const
{
    Polynomial result = constant(n_, 1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1u)
            result = result * base;
        e >>= 1;
        if (e > 0)
            base = base * base;
    }
    return result;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const
{
    if (point.size() != n_)
        throw InvalidArgument("evaluation point has wrong dimension");
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < n_; ++i)
            for (unsigned k = 0; k < m[i]; ++k)
                t *= point[i];
        sum += t;
    }
    return sum;
}

RationalVector Polynomial::coordinates(const MonomialBasis& basis) const
{
    if (basis.variable_count() != n_)
        throw InvalidArgument("basis has wrong number of variables");
    RationalVector v(basis.size());
    for (const auto& [m, c] : terms_)
        v[basis.index_of(m)] = c;
    return v;
}

Polynomial Polynomial::from_coordinates(const MonomialBasis& basis, std::span<const Rational> coords)
{
    if (coords.size() != basis.size())
        throw InvalidArgument("coordinate vector has wrong length");
    Polynomial p(basis.variable_count());
    for (std::size_t i = 0; i < coords.size(); ++i)
        p.add_term(basis[i], coords[i]);
    return p;
}

std::string Polynomial::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool constant_term = total_degree(m) == 0;
        Rational a = abs(c);
        os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (a != 1 || constant_term)
            os << a.get_str();
        bool need_star = a != 1 && !constant_term;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0)
                continue;
            os << (need_star ? "*" : "") << 'x' << (i + 1);
            if (m[i] > 1)
                os << '^' << m[i];
            need_star = true;
        }
        first = false;
    }
    return os.str();
}

Polynomial operator+(Polynomial a, const Polynomial& b)
{
    a += b;
    return a;
}

Polynomial operator-(Polynomial a, const Polynomial& b)
{
    a -= b;
    return a;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.variable_count() != b.variable_count())
        throw InvalidArgument("polynomials over different variable counts");
    const std::size_t n = a.variable_count();
    Polynomial r(n);
    Monomial m(n);
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            for (std::size_t i = 0; i < n; ++i)
                m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    return r;
}

Polynomial operator*(Polynomial a, const Rational& c)
{
    a *= c;
    return a;
}

Polynomial operator*(const Rational& c, Polynomial a)
{
    a *= c;
    return a;
}

// ---------------------------------------------------------------------------

LinearForm LinearForm::basis(std::size_t n, std::size_t index)
{
    RationalVector v(n);
    v.at(index) = 1;
    return LinearForm(std::move(v));
}

bool LinearForm::is_zero() const
{
    return is_zero_vector(coeffs_);
}

std::size_t LinearForm::pivot() const
{
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!gkmfiber::is_zero(coeffs_[i]))
            return i;
    throw InvalidArgument("zero linear form");
}

Polynomial LinearForm::to_polynomial() const
{
    const std::size_t n = coeffs_.size();
    Polynomial p(n);
    for (std::size_t i = 0; i < n; ++i) {
        Monomial m(n, 0);
        m[i] = 1;
        p.add_term(m, coeffs_[i]);
    }
    return p;
}

Rational LinearForm::pair(std::span<const Rational> vector) const
{
    if (vector.size() != coeffs_.size())
        throw InvalidArgument("pairing with a vector of wrong dimension");
    Rational s = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        s += coeffs_[i] * vector[i];
    return s;
}

LinearForm LinearForm::operator-() const
{
    RationalVector v = coeffs_;
    for (auto& x : v)
        x = -x;
    return LinearForm(std::move(v));
}

LinearForm LinearForm::operator+(const LinearForm& o) const
{
    if (o.dimension() != dimension())
        throw InvalidArgument("linear forms of different dimension");
    RationalVector v = coeffs_;
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] += o.coeffs_[i];
    return LinearForm(std::move(v));
}

LinearForm LinearForm::operator*(const Rational& c) const
{
    RationalVector v = coeffs_;
    for (auto& x : v)
        x *= c;
    return LinearForm(std::move(v));
}

std::string LinearForm::to_string() const
{
    return to_polynomial().to_string();
}

bool linearly_independent(const LinearForm& a, const LinearForm& b)
{
    if (a.dimension() != b.dimension() || a.is_zero() || b.is_zero())
        return false;
    const std::size_t n = a.dimension();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (a[i] * b[j] != a[j] * b[i])
                return true;
    // Single coordinate: any two nonzero forms are proportional.
    return false;
}

LinearForm apply(const RationalMatrix& m, const LinearForm& l)
{
    return LinearForm(m * std::span<const Rational>(l.coefficients()));
}

// ---------------------------------------------------------------------------

Division divide_by_linear(const Polynomial& p, const LinearForm& l)
{
    const std::size_t n = p.variable_count();
    if (l.dimension() != n)
        throw InvalidArgument("linear form and polynomial have different variable counts");
    if (l.is_zero())
        throw InvalidArgument("division by the zero linear form");
    const std::size_t k = l.pivot();
    const Rational lead = l[k];
    Polynomial rest = l.to_polynomial();
    Monomial pivot_var(n, 0);
    pivot_var[k] = 1;
    rest.add_term(pivot_var, -lead);

    // p = sum_e coeff[e] * x_k^e with coeff[e] free of x_k.
    std::map<unsigned, Polynomial> coeff;
    for (const auto& [m, c] : p.terms()) {
        Monomial stripped = m;
        stripped[k] = 0;
        auto [it, _] = coeff.try_emplace(m[k], Polynomial(n));
        it->second.add_term(stripped, c);
    }

    Polynomial quotient(n);
    unsigned top = coeff.empty() ? 0 : coeff.rbegin()->first;
    for (unsigned e = top; e >= 1; --e) {
        auto it = coeff.find(e);
        if (it == coeff.end() || it->second.is_zero())
            continue;
        Polynomial q = it->second * (1 / lead);
        coeff.erase(it);
        auto [below, _] = coeff.try_emplace(e - 1, Polynomial(n));
        below->second -= q * rest;
        Monomial shift(n, 0);
        shift[k] = e - 1;
        quotient += q * Polynomial::monomial(shift);
    }
    auto it = coeff.find(0);
    const bool divisible = it == coeff.end() || it->second.is_zero();
    return {std::move(quotient), divisible};
}

Polynomial canonical_remainder(const Polynomial& p, const LinearForm& l)
{
    const Division div = divide_by_linear(p, l);
    if (div.divisible)
        return Polynomial(p.variable_count());
    return p - div.quotient * l.to_polynomial();
}

namespace {

void require_substitution_matrix(const RationalMatrix& m, std::size_t n)
{
    if (!m.is_square() || m.rows() != n)
        throw InvalidArgument("substitution matrix must be square of size equal to the variable count");
    if (is_zero(determinant(m)))
        throw InvalidArgument("substitution matrix is singular");
}

Polynomial substitute_unchecked(const Polynomial& p, const RationalMatrix& m)
{
    const std::size_t n = p.variable_count();
    std::vector<std::vector<Polynomial>> powers(n);
    for (std::size_t k = 0; k < n; ++k) {
        RationalVector column(n);
        for (std::size_t i = 0; i < n; ++i)
            column[i] = m(i, k);
        powers[k].push_back(Polynomial::constant(n, 1));
        powers[k].push_back(LinearForm(std::move(column)).to_polynomial());
    }
    Polynomial result(n);
    for (const auto& [mono, c] : p.terms()) {
        Polynomial term = Polynomial::constant(n, c);
        for (std::size_t k = 0; k < n; ++k) {
            while (powers[k].size() <= mono[k])
                powers[k].push_back(powers[k].back() * powers[k][1]);
            if (mono[k] > 0)
                term = term * powers[k][mono[k]];
        }
        result += term;
    }
    return result;
}

} // namespace

Polynomial substitute_linear(const Polynomial& p, const RationalMatrix& m)
{
    require_substitution_matrix(m, p.variable_count());
    return substitute_unchecked(p, m);
}

RationalMatrix remainder_matrix(const MonomialBasis& basis, const LinearForm& l)
{
    RationalMatrix r(basis.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const Polynomial rem = canonical_remainder(Polynomial::monomial(basis[j]), l);
        for (const auto& [m, c] : rem.terms())
            r(basis.index_of(m), j) = c;
    }
    return r;
}

RationalMatrix substitution_matrix(const MonomialBasis& basis, const RationalMatrix& m)
{
    require_substitution_matrix(m, basis.variable_count());
    RationalMatrix s(basis.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const Polynomial img = substitute_unchecked(Polynomial::monomial(basis[j]), m);
        for (const auto& [mono, c] : img.terms())
            s(basis.index_of(mono), j) = c;
    }
    return s;
}

} // namespace gkmfiber
