#pragma once

// Exact integer and rational linear algebra shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "k3lat/errors.hpp"

namespace k3lat {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows)
    {
        Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw InvalidInput("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<long long>> rows)
    {
        std::vector<std::vector<T>> v;
        for (auto& r : rows) {
            std::vector<T> row;
            for (long long x : r)
                row.emplace_back(x);
            v.push_back(std::move(row));
        }
        return from_rows(v);
    }

    static Matrix from_columns(const std::vector<std::vector<T>>& cols)
    {
        return from_rows(cols).transpose();
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const
    {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    std::vector<T> col(std::size_t j) const
    {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    std::vector<std::vector<T>> to_rows() const
    {
        std::vector<std::vector<T>> out;
        for (std::size_t i = 0; i < rows_; ++i)
            out.push_back(row(i));
        return out;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_square() const { return rows_ == cols_; }

    bool is_symmetric() const
    {
        if (!is_square())
            return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i))
                    return false;
        return true;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }

    // row(dst) += k * row(src)
    void add_row(std::size_t dst, std::size_t src, const T& k)
    {
        if (k == 0)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(dst, j) += k * (*this)(src, j);
    }

    void add_col(std::size_t dst, std::size_t src, const T& k)
    {
        if (k == 0)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, dst) += k * (*this)(i, src);
    }

    void negate_row(std::size_t i)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = -(*this)(i, j);
    }

    void negate_col(std::size_t j)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = -(*this)(i, j);
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw InvalidInput("matrix product dimension mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& x)
    {
        if (a.cols_ != x.size())
            throw InvalidInput("matrix-vector dimension mismatch");
        std::vector<T> y(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                y[i] += a(i, j) * x[j];
        return y;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

// --- scalar helpers ---------------------------------------------------------

// Representative of a in [0, |m|).
Integer mod_floor(const Integer& a, const Integer& m);
Integer floor_div(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

struct ExtendedGcd {
    Integer g, s, t; // s*a + t*b = g >= 0
};
ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

// gcd of all entries, 0 for the zero vector.
Integer content(const IntVector& v);

Integer dot(const IntVector& a, const IntVector& b);

// Canonical representatives in Q/2Z and Q/Z.
Rational mod2(const Rational& x);
Rational mod1(const Rational& x);

Integer numerator_of(const Rational& x);
Integer denominator_of(const Rational& x);
bool is_integral(const Rational& x);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
Integer parse_integer(const std::string& s);
Rational parse_rational(const std::string& s);

std::int64_t to_int64(const Integer& x);

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);

// --- matrix algorithms ------------------------------------------------------

// Fraction-free Gaussian elimination.
Integer determinant(const IntMatrix& m);

std::size_t matrix_rank(const IntMatrix& m);

// U * M * V = S with U, V unimodular and S diagonal, d1 | d2 | ..., d_i >= 0.
struct SmithForm {
    IntMatrix U, S, V;
    std::vector<Integer> diagonal() const;
};
SmithForm smith_normal_form(const IntMatrix& m);

// Row Hermite form: T * M = H, T unimodular, the first `rank` rows of H are
// in echelon form with positive pivots and reduced entries above each pivot;
// the remaining rows are zero.
struct HermiteForm {
    IntMatrix H, T;
    std::size_t rank = 0;
};
HermiteForm hermite_normal_form(const IntMatrix& m);

// Canonical basis (as rows) of the lattice spanned by the rows of m.
IntMatrix row_lattice_basis(const IntMatrix& m);

// Basis (as columns) of {x in Z^n : A x = 0}, canonicalised by Hermite form.
IntMatrix integer_kernel(const IntMatrix& a);

// Some x in Z^n with A x = b, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

// {x in Z^k : C x = 0 mod modulus}, as a row basis.
IntMatrix congruence_kernel(const IntMatrix& c, const Integer& modulus);

RatMatrix inverse(const RatMatrix& m);
// Inverse of a unimodular integer matrix.
IntMatrix unimodular_inverse(const IntMatrix& m);

} // namespace k3lat
