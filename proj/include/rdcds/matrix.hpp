#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rdcds/field.hpp"

namespace rdcds {

// Dense matrix over GF(q). All arithmetic is exact. Degenerate shapes
// (zero rows or zero columns) are valid and behave as empty matrices;
// the protocol relies on this for empty dropout and noise blocks.
class FieldMatrix {
public:
    FieldMatrix() : FieldMatrix(0, 0, PrimeField(2)) {}
    FieldMatrix(std::size_t rows, std::size_t cols, const PrimeField& field);
    static FieldMatrix identity(std::size_t n, const PrimeField& field);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const PrimeField& field() const noexcept { return field_; }

    Symbol operator()(std::size_t r, std::size_t c) const {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }
    Symbol& operator()(std::size_t r, std::size_t c) {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }

    std::span<const Symbol> row_span(std::size_t r) const;
    std::vector<Symbol> row(std::size_t r) const;
    void set_row(std::size_t r, std::span<const Symbol> values);

    FieldMatrix operator+(const FieldMatrix& other) const;
    FieldMatrix operator-(const FieldMatrix& other) const;
    FieldMatrix operator*(const FieldMatrix& other) const;
    FieldMatrix scaled(Symbol factor) const;
    FieldMatrix negated() const;

    // Submatrix formed by explicit row/column index lists.
    FieldMatrix select(std::span<const std::size_t> row_ids,
                       std::span<const std::size_t> col_ids) const;
    FieldMatrix select_rows(std::span<const std::size_t> row_ids) const;
    FieldMatrix select_cols(std::span<const std::size_t> col_ids) const;

    FieldMatrix hstack(const FieldMatrix& right) const;
    FieldMatrix vstack(const FieldMatrix& below) const;

    FieldMatrix inverse() const;   // Gauss-Jordan; throws SingularMatrix
    std::size_t rank() const;

    bool is_zero() const noexcept;
    bool operator==(const FieldMatrix&) const = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    PrimeField field_;
    std::vector<Symbol> data_;
};

// Particular solution of A·x = b with free variables fixed to zero.
struct LinearSolution {
    bool consistent = false;
    std::size_t rank = 0;
    std::vector<Symbol> solution;       // size A.cols() when consistent
    std::vector<bool> pivot_variable;   // per column: determined by a pivot
};
LinearSolution solve_linear(const FieldMatrix& a, std::span<const Symbol> b);

// Whether col(inner) is contained in col(outer); both must share row count.
bool column_space_contained(const FieldMatrix& inner, const FieldMatrix& outer);

} // namespace rdcds
