#pragma once

#include <optional>
#include <vector>

#include "dgper/scalar.hpp"

namespace dgper {

/// Dense matrix over an exact field. Small and deterministic; every routine
/// below scans rows/columns in index order, so identical inputs give
/// bit-identical outputs.
class Mat {
public:
    Mat(const Field& f, int rows, int cols)
        : field_(f), rows_(rows), cols_(cols),
          data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Scalar::zero(f)) {}

    static Mat identity(const Field& f, int n);

    const Field& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Scalar& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Scalar& at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    bool operator==(const Mat& o) const;
    bool is_zero() const;

    Mat transposed() const;

    /// Column vector access helpers.
    std::vector<Scalar> col(int j) const;
    void set_col(int j, const std::vector<Scalar>& v);

private:
    Field field_;
    int rows_, cols_;
    std::vector<Scalar> data_;
};

struct RrefResult {
    Mat reduced;
    std::vector<int> pivot_cols; // pivot_cols[r] = column of the r-th pivot
    int rank = 0;
};

RrefResult rref(const Mat& m);

int rank(const Mat& m);

/// Basis of the right kernel {x : m x = 0}, one vector per non-pivot column,
/// in ascending column order.
std::vector<std::vector<Scalar>> kernel_basis(const Mat& m);

/// Solves m x = b for every column b of rhs; std::nullopt when inconsistent.
/// Free variables are set to zero, so the solution is canonical.
std::optional<Mat> solve(const Mat& m, const Mat& rhs);

std::optional<Mat> inverse(const Mat& m);

/// Reduced-echelon basis of the row span (nonzero rows of the rref).
std::vector<std::vector<Scalar>> row_space_basis(const Mat& m);

/// Incremental exact span with greedy reduction; used for echelon choices of
/// generators modulo a previously fixed span.
class SpanBuilder {
public:
    SpanBuilder(const Field& f, int dim) : field_(f), dim_(dim) {}

    /// Reduces v against the current span. Returns the residue if it is
    /// nonzero (normalized to leading coefficient 1) after inserting it,
    /// std::nullopt when v was already in the span.
    std::optional<std::vector<Scalar>> insert(std::vector<Scalar> v);

    /// Reduction without insertion.
    std::vector<Scalar> reduce(std::vector<Scalar> v) const;

    bool contains(const std::vector<Scalar>& v) const;
    int rank() const { return static_cast<int>(rows_.size()); }
    int dim() const { return dim_; }

private:
    Field field_;
    int dim_;
    std::vector<std::vector<Scalar>> rows_; // echelon rows
    std::vector<int> lead_;                 // leading index per row, strictly increasing order kept
};

} // namespace dgper
