#include "rdcds/matrix.hpp"

#include <algorithm>

#include "rdcds/errors.hpp"

namespace rdcds {

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, const PrimeField& field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

FieldMatrix FieldMatrix::identity(std::size_t n, const PrimeField& field) {
    FieldMatrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

std::span<const Symbol> FieldMatrix::row_span(std::size_t r) const {
    assert(r < rows_);
    return {data_.data() + r * cols_, cols_};
}

std::vector<Symbol> FieldMatrix::row(std::size_t r) const {
    auto s = row_span(r);
    return {s.begin(), s.end()};
}

void FieldMatrix::set_row(std::size_t r, std::span<const Symbol> values) {
    assert(r < rows_);
    if (values.size() != cols_) {
        throw DimensionMismatch("row length " + std::to_string(values.size()) +
                                " does not match " + std::to_string(cols_) + " columns");
    }
    std::copy(values.begin(), values.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
}

namespace {

void require_same_shape(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || !(a.field() == b.field())) {
        throw DimensionMismatch("matrix shapes or fields differ");
    }
}

} // namespace

FieldMatrix FieldMatrix::operator+(const FieldMatrix& other) const {
    require_same_shape(*this, other);
    FieldMatrix out(rows_, cols_, field_);
    for (std::size_t i = 0; i < data_.size(); ++i) {
        out.data_[i] = field_.add(data_[i], other.data_[i]);
    }
    return out;
}

FieldMatrix FieldMatrix::operator-(const FieldMatrix& other) const {
    require_same_shape(*this, other);
    FieldMatrix out(rows_, cols_, field_);
    for (std::size_t i = 0; i < data_.size(); ++i) {
        out.data_[i] = field_.sub(data_[i], other.data_[i]);
    }
    return out;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& other) const {
    if (cols_ != other.rows_ || !(field_ == other.field_)) {
        throw DimensionMismatch("cannot multiply " + std::to_string(rows_) + "x" +
                                std::to_string(cols_) + " by " + std::to_string(other.rows_) +
                                "x" + std::to_string(other.cols_));
    }
    FieldMatrix out(rows_, other.cols_, field_);
    const std::uint64_t q = field_.modulus();
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Symbol a = (*this)(i, k);
            if (a == 0) continue;
            const Symbol* src = other.data_.data() + k * other.cols_;
            Symbol* dst = out.data_.data() + i * other.cols_;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                dst[j] = (dst[j] + a * src[j]) % q;
            }
        }
    }
    return out;
}

FieldMatrix FieldMatrix::scaled(Symbol factor) const {
    FieldMatrix out(rows_, cols_, field_);
    for (std::size_t i = 0; i < data_.size(); ++i) {
        out.data_[i] = field_.mul(data_[i], factor);
    }
    return out;
}

FieldMatrix FieldMatrix::negated() const {
    FieldMatrix out(rows_, cols_, field_);
    for (std::size_t i = 0; i < data_.size(); ++i) {
        out.data_[i] = field_.neg(data_[i]);
    }
    return out;
}

FieldMatrix FieldMatrix::select(std::span<const std::size_t> row_ids,
                                std::span<const std::size_t> col_ids) const {
    FieldMatrix out(row_ids.size(), col_ids.size(), field_);
    for (std::size_t i = 0; i < row_ids.size(); ++i) {
        if (row_ids[i] >= rows_) throw IndexOutOfRange("row index out of range");
        for (std::size_t j = 0; j < col_ids.size(); ++j) {
            if (col_ids[j] >= cols_) throw IndexOutOfRange("column index out of range");
            out(i, j) = (*this)(row_ids[i], col_ids[j]);
        }
    }
    return out;
}

FieldMatrix FieldMatrix::select_rows(std::span<const std::size_t> row_ids) const {
    FieldMatrix out(row_ids.size(), cols_, field_);
    for (std::size_t i = 0; i < row_ids.size(); ++i) {
        if (row_ids[i] >= rows_) throw IndexOutOfRange("row index out of range");
        out.set_row(i, row_span(row_ids[i]));
    }
    return out;
}

FieldMatrix FieldMatrix::select_cols(std::span<const std::size_t> col_ids) const {
    FieldMatrix out(rows_, col_ids.size(), field_);
    for (std::size_t j = 0; j < col_ids.size(); ++j) {
        if (col_ids[j] >= cols_) throw IndexOutOfRange("column index out of range");
        for (std::size_t i = 0; i < rows_; ++i) {
            out(i, j) = (*this)(i, col_ids[j]);
        }
    }
    return out;
}

FieldMatrix FieldMatrix::hstack(const FieldMatrix& right) const {
    if (rows_ != right.rows_ || !(field_ == right.field_)) {
        throw DimensionMismatch("hstack row counts or fields differ");
    }
    FieldMatrix out(rows_, cols_ + right.cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < right.cols_; ++j) out(i, cols_ + j) = right(i, j);
    }
    return out;
}

FieldMatrix FieldMatrix::vstack(const FieldMatrix& below) const {
    if (cols_ != below.cols_ || !(field_ == below.field_)) {
        throw DimensionMismatch("vstack column counts or fields differ");
    }
    FieldMatrix out(rows_ + below.rows_, cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i) out.set_row(i, row_span(i));
    for (std::size_t i = 0; i < below.rows_; ++i) out.set_row(rows_ + i, below.row_span(i));
    return out;
}

FieldMatrix FieldMatrix::inverse() const {
    if (rows_ != cols_) {
        throw DimensionMismatch("only square matrices can be inverted");
    }
    const std::size_t n = rows_;
    FieldMatrix work(*this);
    FieldMatrix out = identity(n, field_);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && work(pivot, col) == 0) ++pivot;
        if (pivot == n) {
            throw SingularMatrix("matrix is singular");
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work(pivot, j), work(col, j));
                std::swap(out(pivot, j), out(col, j));
            }
        }
        const Symbol scale = field_.inv(work(col, col));
        for (std::size_t j = 0; j < n; ++j) {
            work(col, j) = field_.mul(work(col, j), scale);
            out(col, j) = field_.mul(out(col, j), scale);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || work(r, col) == 0) continue;
            const Symbol factor = work(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                work(r, j) = field_.sub(work(r, j), field_.mul(factor, work(col, j)));
                out(r, j) = field_.sub(out(r, j), field_.mul(factor, out(col, j)));
            }
        }
    }
    return out;
}

std::size_t FieldMatrix::rank() const {
    FieldMatrix work(*this);
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols_ && r < rows_; ++col) {
        std::size_t pivot = r;
        while (pivot < rows_ && work(pivot, col) == 0) ++pivot;
        if (pivot == rows_) continue;
        if (pivot != r) {
            for (std::size_t j = col; j < cols_; ++j) std::swap(work(pivot, j), work(r, j));
        }
        const Symbol scale = field_.inv(work(r, col));
        for (std::size_t j = col; j < cols_; ++j) work(r, j) = field_.mul(work(r, j), scale);
        for (std::size_t i = r + 1; i < rows_; ++i) {
            const Symbol factor = work(i, col);
            if (factor == 0) continue;
            for (std::size_t j = col; j < cols_; ++j) {
                work(i, j) = field_.sub(work(i, j), field_.mul(factor, work(r, j)));
            }
        }
        ++r;
    }
    return r;
}

bool FieldMatrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Symbol v) { return v == 0; });
}

LinearSolution solve_linear(const FieldMatrix& a, std::span<const Symbol> b) {
    if (b.size() != a.rows()) {
        throw DimensionMismatch("right-hand side length does not match row count");
    }
    const PrimeField& f = a.field();
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();

    FieldMatrix work(rows, cols + 1, f);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) work(i, j) = a(i, j);
        work(i, cols) = b[i];
    }

    LinearSolution out;
    out.pivot_variable.assign(cols, false);
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pivot = r;
        while (pivot < rows && work(pivot, col) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r) {
            for (std::size_t j = col; j <= cols; ++j) std::swap(work(pivot, j), work(r, j));
        }
        const Symbol scale = f.inv(work(r, col));
        for (std::size_t j = col; j <= cols; ++j) work(r, j) = f.mul(work(r, j), scale);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const Symbol factor = work(i, col);
            if (factor == 0) continue;
            for (std::size_t j = col; j <= cols; ++j) {
                work(i, j) = f.sub(work(i, j), f.mul(factor, work(r, j)));
            }
        }
        out.pivot_variable[col] = true;
        pivot_col.push_back(col);
        ++r;
    }
    out.rank = r;
    for (std::size_t i = r; i < rows; ++i) {
        if (work(i, cols) != 0) {
            out.consistent = false;
            return out;
        }
    }
    out.consistent = true;
    out.solution.assign(cols, 0);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
        out.solution[pivot_col[i]] = work(i, cols);
    }
    return out;
}

bool column_space_contained(const FieldMatrix& inner, const FieldMatrix& outer) {
    if (inner.rows() != outer.rows() || !(inner.field() == outer.field())) {
        throw DimensionMismatch("column space comparison needs equal row counts");
    }
    return outer.hstack(inner).rank() == outer.rank();
}

} // namespace rdcds
