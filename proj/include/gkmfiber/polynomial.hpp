#pragma once

#include "gkmfiber/matrix.hpp"
#include "gkmfiber/rational.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gkmfiber {

// Exponent vector of a monomial in S(t*). Length equals the number of variables.
using Monomial = std::vector<unsigned>;

unsigned total_degree(const Monomial& m);

// Graded lexicographic order: lower degree first, then x1 > x2 > ... within a degree.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// All monomials in n variables of total degree d, in GrlexLess order.
std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned d);

// Position lookup for a fixed graded piece.
class MonomialBasis {
public:
    MonomialBasis(std::size_t n, unsigned d);
    std::size_t variable_count() const { return n_; }
    unsigned degree() const { return d_; }
    std::size_t size() const { return monomials_.size(); }
    const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
    const std::vector<Monomial>& monomials() const { return monomials_; }
    std::size_t index_of(const Monomial& m) const;

private:
    std::size_t n_;
    unsigned d_;
    std::vector<Monomial> monomials_;
    std::map<Monomial, std::size_t> index_;
};

class LinearForm;

class Polynomial {
public:
    using Terms = std::map<Monomial, Rational, GrlexLess>;

    explicit Polynomial(std::size_t variable_count = 0) : n_(variable_count) {}

    static Polynomial constant(std::size_t n, const Rational& c);
    static Polynomial variable(std::size_t n, std::size_t index);
    static Polynomial monomial(const Monomial& m, const Rational& c = 1);

    std::size_t variable_count() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // -1 for the zero polynomial.
    int degree() const;
    bool is_homogeneous() const;
    Rational coefficient(const Monomial& m) const;

    void add_term(const Monomial& m, const Rational& c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    Polynomial operator-() const;
    Polynomial pow(unsigned e) const;

    Rational evaluate(std::span<const Rational> point) const;

    // Coefficients on a graded piece. Throws InvalidArgument if a term lies outside it.
    RationalVector coordinates(const MonomialBasis& basis) const;
    static Polynomial from_coordinates(const MonomialBasis& basis, std::span<const Rational> coords);

    std::string to_string() const;

    bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }

private:
    std::size_t n_;
    Terms terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(Polynomial a, const Rational& c);
Polynomial operator*(const Rational& c, Polynomial a);

// A vector in t*, i.e. a homogeneous degree-one polynomial.
class LinearForm {
public:
    LinearForm() = default;
    explicit LinearForm(RationalVector coefficients) : coeffs_(std::move(coefficients)) {}
    static LinearForm basis(std::size_t n, std::size_t index);

    std::size_t dimension() const { return coeffs_.size(); }
    const RationalVector& coefficients() const { return coeffs_; }
    const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
    bool is_zero() const;
    // Lowest index with nonzero coefficient. Throws InvalidArgument for the zero form.
    std::size_t pivot() const;

    Polynomial to_polynomial() const;
    Rational pair(std::span<const Rational> vector) const;

    LinearForm operator-() const;
    LinearForm operator+(const LinearForm& o) const;
    LinearForm operator*(const Rational& c) const;
    auto operator<=>(const LinearForm& o) const = default;
    bool operator==(const LinearForm& o) const = default;

    std::string to_string() const;

private:
    RationalVector coeffs_;
};

// True when a and b are nonzero and not proportional.
bool linearly_independent(const LinearForm& a, const LinearForm& b);

LinearForm apply(const RationalMatrix& m, const LinearForm& l);

struct Division {
    Polynomial quotient;
    bool divisible = false;
};

// Exact division by a linear form with the pivot variable as leading variable.
// On failure the quotient is the one leaving the canonical remainder.
Division divide_by_linear(const Polynomial& p, const LinearForm& l);

// p with the pivot variable of l eliminated through l = 0. Zero iff l divides p.
Polynomial canonical_remainder(const Polynomial& p, const LinearForm& l);

// Ring automorphism of S(t*) extending the linear map x_k -> sum_i m(i,k) x_i, so
// that a linear form with coefficient vector v goes to m*v.
// Throws InvalidArgument unless m is square, sized to the variable count and invertible.
Polynomial substitute_linear(const Polynomial& p, const RationalMatrix& m);

// Matrix of canonical_remainder(., l) on the degree-d piece (columns = source monomials).
RationalMatrix remainder_matrix(const MonomialBasis& basis, const LinearForm& l);
// Matrix of substitute_linear(., m) on the degree-d piece.
RationalMatrix substitution_matrix(const MonomialBasis& basis, const RationalMatrix& m);

} // namespace gkmfiber
