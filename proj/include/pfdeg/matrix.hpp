#pragma once

#include "pfdeg/polynomial.hpp"

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace pfdeg {

/// Dense square matrix, row-major.
template <class T>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, const T& fill = T(0)) : n_(n), data_(n * n, fill) {}
    SquareMatrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
        data_.reserve(n_ * n_);
        for (const auto& row : rows) {
            if (row.size() != n_) throw std::invalid_argument("matrix rows must all have length n");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    std::size_t size() const { return n_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    const std::vector<T>& data() const { return data_; }

    bool operator==(const SquareMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<T> data_;
};

/// det(xI - A), ascending and monic, by the division-free Berkowitz
/// recurrence. T must be a ring type (exact for integers).
template <class T>
std::vector<T> charpoly(const SquareMatrix<T>& a) {
    const std::size_t n = a.size();
    if (n == 0) return {T(1)};
    // Descending coefficients of the trailing principal block, grown upward.
    std::vector<T> c{T(1), T(-a(n - 1, n - 1))};
    std::vector<T> col, tmp;
    for (std::size_t k = n - 1; k-- > 0;) {
        const std::size_t m = n - 1 - k;  // size of the trailing block
        // t = [1, -a_kk, -R S, -R M S, ..., -R M^{m-1} S]
        std::vector<T> t(m + 2);
        t[0] = T(1);
        t[1] = T(-a(k, k));
        col.assign(m, T(0));
        for (std::size_t i = 0; i < m; ++i) col[i] = a(k + 1 + i, k);
        for (std::size_t p = 0; p < m; ++p) {
            T dot = T(0);
            for (std::size_t i = 0; i < m; ++i) dot += a(k, k + 1 + i) * col[i];
            t[p + 2] = T(-dot);
            if (p + 1 == m) break;
            tmp.assign(m, T(0));
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < m; ++j) tmp[i] += a(k + 1 + i, k + 1 + j) * col[j];
            }
            col.swap(tmp);
        }
        std::vector<T> next(m + 2, T(0));
        for (std::size_t i = 0; i < m + 2; ++i) {
            for (std::size_t j = 0; j <= std::min(i, m); ++j) next[i] += t[i - j] * c[j];
        }
        c.swap(next);
    }
    std::vector<T> asc(c.rbegin(), c.rend());
    return asc;
}

/// Non-negative integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t n) : m_(n, 0) {}
    /// Throws MalformedInput on a negative entry or ragged rows.
    explicit IntMatrix(SquareMatrix<std::int64_t> m);
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

    std::size_t size() const { return m_.size(); }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    /// Throws MalformedInput on a negative value.
    void set(std::size_t i, std::size_t j, std::int64_t v);
    const SquareMatrix<std::int64_t>& raw() const { return m_; }

    SquareMatrix<BigInt> to_big() const;
    std::vector<std::vector<std::int64_t>> rows() const;

    bool operator==(const IntMatrix&) const = default;
    /// Row-major lexicographic order.
    bool operator<(const IntMatrix& other) const { return m_.data() < other.m_.data(); }

private:
    SquareMatrix<std::int64_t> m_;
};

ZPoly charpoly(const IntMatrix& m);

/// Matrix of multiplication by the root in the power basis: ones on the
/// sub-diagonal and the reduction of x^d in the last column.
struct CompanionMatrix {
    SquareMatrix<BigInt> entries;
    IntPolynomial source;
};

CompanionMatrix companion(const IntPolynomial& f);

}  // namespace pfdeg
