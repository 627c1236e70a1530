#include "crg/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace crg {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) { return scalar(n, Cyclotomic(1)); }

Matrix Matrix::scalar(std::size_t n, const Cyclotomic& value) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
    return m;
}

Matrix Matrix::diagonal(const Vector& entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Cyclotomic& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                const Cyclotomic& b = other(k, j);
                if (!b.is_zero()) out(i, j) += a * b;
            }
        }
    return out;
}

Vector Matrix::operator*(std::span<const Cyclotomic> v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k)
            if (!v[k].is_zero() && !(*this)(i, k).is_zero()) out[i] += (*this)(i, k) * v[k];
    return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("matrix shape mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("matrix shape mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
    return out;
}

Matrix Matrix::scaled(const Cyclotomic& factor) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= factor;
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

Matrix Matrix::conj() const {
    Matrix out = *this;
    for (auto& x : out.data_) x = x.conj();
    return out;
}

Matrix Matrix::galois(long exponent) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = x.galois(exponent);
    return out;
}

Matrix Matrix::pow(long exponent) const {
    Matrix base = exponent < 0 ? inverse() : *this;
    unsigned long e = exponent < 0 ? -static_cast<unsigned long>(exponent) : exponent;
    Matrix result = identity(rows_);
    while (e != 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e != 0) base = base * base;
    }
    return result;
}

std::vector<std::size_t> row_reduce(std::vector<Vector>& rows, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && rows[p][c].is_zero()) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        const std::size_t width = rows[rank].size();
        const Cyclotomic inv = rows[rank][c].inverse();
        for (std::size_t j = c; j < width; ++j)
            if (!rows[rank][j].is_zero()) rows[rank][j] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][c].is_zero()) continue;
            const Cyclotomic factor = rows[i][c];
            for (std::size_t j = c; j < width; ++j)
                if (!rows[rank][j].is_zero()) rows[i][j] -= factor * rows[rank][j];
        }
        pivots.push_back(c);
        ++rank;
    }
    rows.resize(rank);
    return pivots;
}

namespace {

std::vector<Vector> rows_of(const Matrix& m) {
    std::vector<Vector> rows(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) rows[r].assign(m.row(r).begin(), m.row(r).end());
    return rows;
}

}  // namespace

Matrix Matrix::inverse() const {
    if (!is_square()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = rows_;
    std::vector<Vector> aug(n, Vector(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = (*this)(i, j);
        aug[i][n + i] = 1;
    }
    const auto pivots = row_reduce(aug, n);
    if (pivots.size() != n) throw std::invalid_argument("matrix is singular");
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = aug[i][n + j];
    return out;
}

Cyclotomic Matrix::determinant() const {
    if (!is_square()) throw std::invalid_argument("determinant of a non-square matrix");
    std::vector<Vector> a = rows_of(*this);
    const std::size_t n = rows_;
    Cyclotomic det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        const Cyclotomic inv = a[c][c].inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            const Cyclotomic factor = a[i][c] * inv;
            for (std::size_t j = c; j < n; ++j)
                if (!a[c][j].is_zero()) a[i][j] -= factor * a[c][j];
        }
    }
    return det;
}

Cyclotomic Matrix::trace() const {
    Cyclotomic t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

std::size_t Matrix::rank() const {
    std::vector<Vector> rows = rows_of(*this);
    return row_reduce(rows, cols_).size();
}

std::vector<Vector> Matrix::nullspace() const {
    std::vector<Vector> rows = rows_of(*this);
    const auto pivots = row_reduce(rows, cols_);
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        Vector v(cols_);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

long Matrix::conductor() const {
    long n = 1;
    for (const auto& x : data_) n = lcm_long(n, x.conductor());
    return n;
}

bool Matrix::is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != Cyclotomic(i == j ? 1 : 0)) return false;
    return true;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

std::size_t Matrix::hash() const {
    std::size_t h = rows_ * 31 + cols_;
    for (const auto& x : data_) h ^= x.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (!b(k, l).is_zero()) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return out;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
    return out;
}

std::vector<Vector> eigenspace(const Matrix& g, const Cyclotomic& value) {
    return (g - Matrix::scalar(g.rows(), value)).nullspace();
}

std::size_t eigenspace_dim(const Matrix& g, const Cyclotomic& value) {
    return g.rows() - (g - Matrix::scalar(g.rows(), value)).rank();
}

Vector row_times(std::span<const Cyclotomic> v, const Matrix& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("vector-matrix shape mismatch");
    Vector out(m.cols());
    for (std::size_t k = 0; k < m.rows(); ++k) {
        if (v[k].is_zero()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(k, j).is_zero()) out[j] += v[k] * m(k, j);
    }
    return out;
}

Vector normalize_leading(Vector v) {
    for (const auto& x : v) {
        if (x.is_zero()) continue;
        if (x.is_one()) return v;
        const Cyclotomic inv = x.inverse();
        for (auto& y : v) y *= inv;
        return v;
    }
    return v;
}

}  // namespace crg
