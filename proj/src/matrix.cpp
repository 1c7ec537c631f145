#include "gkmfiber/matrix.hpp"

#include "gkmfiber/errors.hpp"

#include <algorithm>
#include <utility>

namespace gkmfiber {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols)
{}

RationalMatrix RationalMatrix::identity(std::size_t n)
{
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows, std::size_t cols)
{
    RationalMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw InvalidArgument("matrix row has inconsistent length");
        std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
    }
    return m;
}

RationalMatrix RationalMatrix::transpose() const
{
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const
{
    if (cols_ != o.rows_)
        throw InvalidArgument("matrix product with mismatched dimensions");
    RationalMatrix p(rows_, o.cols_);
    Rational tmp;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(r, k);
            if (is_zero(a))
                continue;
            for (std::size_t c = 0; c < o.cols_; ++c) {
                if (is_zero(o(k, c)))
                    continue;
                mpq_mul(tmp.get_mpq_t(), a.get_mpq_t(), o(k, c).get_mpq_t());
                p(r, c) += tmp;
            }
        }
    return p;
}

RationalVector RationalMatrix::operator*(std::span<const Rational> v) const
{
    if (v.size() != cols_)
        throw InvalidArgument("matrix-vector product with mismatched dimensions");
    RationalVector out(rows_);
    Rational tmp;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) {
            if (is_zero(v[c]) || is_zero((*this)(r, c)))
                continue;
            mpq_mul(tmp.get_mpq_t(), (*this)(r, c).get_mpq_t(), v[c].get_mpq_t());
            out[r] += tmp;
        }
    return out;
}

std::vector<std::size_t> reduce_to_rref(RationalMatrix& m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> support;
    Rational factor, tmp;

    std::size_t next = 0;
    for (std::size_t c = 0; c < cols && next < rows; ++c) {
        std::size_t found = rows;
        for (std::size_t r = next; r < rows; ++r)
            if (!is_zero(m(r, c))) {
                found = r;
                break;
            }
        if (found == rows)
            continue;
        if (found != next)
            for (std::size_t k = c; k < cols; ++k)
                std::swap(m(found, k), m(next, k));

        // Normalize the pivot row and remember its nonzero columns.
        support.clear();
        const Rational inv = 1 / m(next, c);
        for (std::size_t k = c; k < cols; ++k)
            if (!is_zero(m(next, k))) {
                m(next, k) *= inv;
                support.push_back(k);
            }

        for (std::size_t r = 0; r < rows; ++r) {
            if (r == next || is_zero(m(r, c)))
                continue;
            factor = m(r, c);
            for (std::size_t k : support) {
                mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), m(next, k).get_mpq_t());
                mpq_sub(m(r, k).get_mpq_t(), m(r, k).get_mpq_t(), tmp.get_mpq_t());
            }
        }
        pivots.push_back(c);
        ++next;
    }
    return pivots;
}

std::size_t rank(const RationalMatrix& m)
{
    RationalMatrix copy = m;
    return reduce_to_rref(copy).size();
}

std::size_t rank(const std::vector<RationalVector>& vectors, std::size_t length)
{
    if (vectors.empty())
        return 0;
    return rank(RationalMatrix::from_rows(vectors, length));
}

std::vector<RationalVector> nullspace(const RationalMatrix& m)
{
    RationalMatrix r = m;
    const auto pivots = reduce_to_rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : pivots)
        is_pivot[p] = true;

    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        RationalVector v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -r(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

Rational determinant(const RationalMatrix& m)
{
    if (!m.is_square())
        throw InvalidArgument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix a = m;
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(a(p, c)))
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            for (std::size_t k = 0; k < n; ++k)
                std::swap(a(p, k), a(c, k));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (is_zero(a(r, c)))
                continue;
            const Rational f = a(r, c) / a(c, c);
            for (std::size_t k = c; k < n; ++k)
                a(r, k) -= f * a(c, k);
        }
    }
    return det;
}

RationalMatrix inverse(const RationalMatrix& m)
{
    if (!m.is_square())
        throw InvalidArgument("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    const auto pivots = reduce_to_rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1)
        throw InvalidArgument("matrix is singular");
    RationalMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            inv(r, c) = aug(r, n + c);
    return inv;
}

std::optional<RationalVector> solve(const RationalMatrix& a, std::span<const Rational> b)
{
    if (b.size() != a.rows())
        throw InvalidArgument("right-hand side has wrong length");
    RationalMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c)
            aug(r, c) = a(r, c);
        aug(r, a.cols()) = b[r];
    }
    const auto pivots = reduce_to_rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols())
        return std::nullopt;
    RationalVector x(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = aug(i, a.cols());
    return x;
}

bool is_zero_vector(std::span<const Rational> v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_zero(x); });
}

} // namespace gkmfiber

namespace gkmfiber {

RationalVector IncrementalBasis::reduce(std::span<const Rational> v) const
{
    if (v.size() != length_)
        throw InvalidArgument("vector has wrong length for this basis");
    RationalVector r(v.begin(), v.end());
    Rational tmp;
    for (const SparseRow& row : rows_) {
        if (is_zero(r[row.pivot]))
            continue;
        const Rational f = r[row.pivot];
        for (const auto& [idx, val] : row.entries) {
            mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), val.get_mpq_t());
            mpq_sub(r[idx].get_mpq_t(), r[idx].get_mpq_t(), tmp.get_mpq_t());
        }
    }
    return r;
}

bool IncrementalBasis::add(std::span<const Rational> v)
{
    RationalVector r = reduce(v);
    std::size_t pivot = 0;
    while (pivot < r.size() && is_zero(r[pivot]))
        ++pivot;
    if (pivot == r.size())
        return false;
    const Rational inv = 1 / r[pivot];
    SparseRow row{pivot, {}};
    for (std::size_t i = pivot; i < r.size(); ++i)
        if (!is_zero(r[i]))
            row.entries.emplace_back(i, r[i] * inv);
    rows_.push_back(std::move(row));
    return true;
}

bool IncrementalBasis::contains(std::span<const Rational> v) const
{
    return is_zero_vector(reduce(v));
}

} // namespace gkmfiber
