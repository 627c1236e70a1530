#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "crg/cyclo.hpp"

namespace crg {

using Vector = std::vector<Cyclotomic>;

/// Dense matrix over cyclotomic numbers, row-major.  Acts on column vectors.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    static Matrix identity(std::size_t n);
    static Matrix scalar(std::size_t n, const Cyclotomic& value);
    static Matrix diagonal(const Vector& entries);
    static Matrix from_rows(const std::vector<Vector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Cyclotomic& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Cyclotomic& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const Cyclotomic> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    Vector column(std::size_t c) const;

    Matrix operator*(const Matrix& other) const;
    Vector operator*(std::span<const Cyclotomic> v) const;
    Matrix operator+(const Matrix& other) const;
    Matrix operator-(const Matrix& other) const;
    Matrix scaled(const Cyclotomic& factor) const;

    Matrix transpose() const;
    Matrix conj() const;
    Matrix galois(long exponent) const;
    Matrix pow(long exponent) const;
    /// Throws std::invalid_argument when singular.
    Matrix inverse() const;
    Cyclotomic determinant() const;
    Cyclotomic trace() const;
    std::size_t rank() const;
    /// Basis of {v : M v = 0}.
    std::vector<Vector> nullspace() const;

    /// Smallest conductor containing every entry.
    long conductor() const;
    bool is_identity() const;
    std::string to_string() const;
    std::size_t hash() const;

    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Cyclotomic> data_;
};

/// Kronecker product.
Matrix kron(const Matrix& a, const Matrix& b);
/// Block diagonal sum.
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Reduced row echelon form in place, pivoting only among the first `cols`
/// columns (trailing columns ride along); returns pivot columns.
std::vector<std::size_t> row_reduce(std::vector<Vector>& rows, std::size_t cols);

/// dim ker(g - value * id).
std::size_t eigenspace_dim(const Matrix& g, const Cyclotomic& value);
/// Basis of ker(g - value * id).
std::vector<Vector> eigenspace(const Matrix& g, const Cyclotomic& value);

/// Row vector times matrix.
Vector row_times(std::span<const Cyclotomic> v, const Matrix& m);

/// Scales so the first nonzero entry is 1; zero vectors stay zero.
Vector normalize_leading(Vector v);

}  // namespace crg

template <>
struct std::hash<crg::Matrix> {
    std::size_t operator()(const crg::Matrix& m) const { return m.hash(); }
};
