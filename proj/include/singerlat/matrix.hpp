#pragma once

#include <cstddef>
#include <vector>

#include "singerlat/series.hpp"

namespace singerlat {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }
    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using SeriesMatrix = Matrix<Series>;
using ConstMatrix = Matrix<Elem>;

SeriesMatrix series_identity(const FiniteField& f, std::size_t n);
SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix scale(const SeriesMatrix& a, const Series& s);
// Product with a constant matrix over the entries' field.
SeriesMatrix mul_const(const FiniteField& f, const SeriesMatrix& a, const ConstMatrix& c);
SeriesMatrix from_const(const FiniteField& f, const ConstMatrix& c);
SeriesMatrix truncate(const SeriesMatrix& a, int prec);

// Division-free expansion over column subsets; exact for exact entries.
Series det_expansion(const SeriesMatrix& m);
// Fraction-free elimination with exact Laurent-polynomial division.
Series det_bareiss(const SeriesMatrix& m);
// Picks the expansion, Bareiss, or pivoted elimination with tracked precision.
Series determinant(const SeriesMatrix& m, int max_rel_prec);
// Minor with row r and column c removed.
SeriesMatrix minor_matrix(const SeriesMatrix& m, std::size_t r, std::size_t c);
int min_absolute_precision(const SeriesMatrix& m);
bool equals_to_precision(const SeriesMatrix& a, const SeriesMatrix& b);

ConstMatrix const_identity(std::size_t n);
ConstMatrix const_mul(const FiniteField& f, const ConstMatrix& a, const ConstMatrix& b);

}  // namespace singerlat
