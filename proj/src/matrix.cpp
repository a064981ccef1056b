#include "pfdeg/matrix.hpp"

#include "pfdeg/error.hpp"

namespace pfdeg {

IntMatrix::IntMatrix(SquareMatrix<std::int64_t> m) : m_(std::move(m)) {
    for (auto v : m_.data()) {
        if (v < 0) throw Error(ErrorKind::MalformedInput, "matrix entries must be non-negative");
    }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : IntMatrix(SquareMatrix<std::int64_t>(rows)) {}

void IntMatrix::set(std::size_t i, std::size_t j, std::int64_t v) {
    if (v < 0) throw Error(ErrorKind::MalformedInput, "matrix entries must be non-negative");
    m_(i, j) = v;
}

SquareMatrix<BigInt> IntMatrix::to_big() const {
    SquareMatrix<BigInt> b(size());
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) b(i, j) = m_(i, j);
    }
    return b;
}

std::vector<std::vector<std::int64_t>> IntMatrix::rows() const {
    std::vector<std::vector<std::int64_t>> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) out[i].push_back(m_(i, j));
    }
    return out;
}

ZPoly charpoly(const IntMatrix& m) {
    ZPoly c = charpoly(m.to_big());
    poly::trim(c);
    return c;
}

CompanionMatrix companion(const IntPolynomial& f) {
    const auto d = static_cast<std::size_t>(f.degree());
    SquareMatrix<BigInt> b(d);
    for (std::size_t i = 1; i < d; ++i) b(i, i - 1) = 1;
    // x^d = -(c0 + c1 x + ... + c_{d-1} x^{d-1})
    for (std::size_t i = 0; i < d; ++i) b(i, d - 1) = -f.coeff(static_cast<int>(i));
    return CompanionMatrix{std::move(b), f};
}

}  // namespace pfdeg
