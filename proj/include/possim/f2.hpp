// Copyright 2026 The possim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Bit-packed linear algebra over GF(2).

#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "possim/error.hpp"

namespace possim {

/// A bit vector over GF(2), packed into 64-bit words. Bits beyond size() are
/// always zero.
///
/// Doubles as the library's bitstring type: character i of to_string() is bit
/// i, and operator< orders vectors lexicographically by that string.
class F2Vector {
   public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    F2Vector() = default;
    explicit F2Vector(std::size_t len) : len_(len), words_(word_count(len), 0) {
    }

    /// Parses a string of '0'/'1' characters.
    static F2Vector from_string(std::string_view bits) {
        F2Vector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1') {
                v.set(i);
            } else if (bits[i] != '0') {
                throw ParseError(0, "bitstring contains '" + std::string(1, bits[i]) + "'");
            }
        }
        return v;
    }

    /// Bit i of the result is bit (len - 1 - i) of `value`, i.e. bit 0 is the
    /// most significant. Matches the statevector index convention.
    static F2Vector from_index(std::uint64_t value, std::size_t len) {
        F2Vector v(len);
        for (std::size_t i = 0; i < len; ++i) {
            if ((value >> (len - 1 - i)) & 1) {
                v.set(i);
            }
        }
        return v;
    }

    /// Inverse of from_index. Requires size() <= 64.
    std::uint64_t to_index() const {
        std::uint64_t value = 0;
        for (std::size_t i = 0; i < len_; ++i) {
            value = (value << 1) | static_cast<std::uint64_t>(get(i));
        }
        return value;
    }

    /// Little-endian integer value: bit i contributes 2^i. Requires size() <= 64.
    std::uint64_t to_uint_le() const {
        return words_.empty() ? 0 : words_[0];
    }

    static F2Vector from_uint_le(std::uint64_t value, std::size_t len) {
        F2Vector v(len);
        if (!v.words_.empty()) {
            v.words_[0] = value;
            v.clear_tail();
        }
        return v;
    }

    std::size_t size() const noexcept {
        return len_;
    }
    bool empty() const noexcept {
        return len_ == 0;
    }

    bool get(std::size_t i) const {
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1;
    }
    void set(std::size_t i, bool value = true) {
        Word mask = Word{1} << (i % kWordBits);
        if (value) {
            words_[i / kWordBits] |= mask;
        } else {
            words_[i / kWordBits] &= ~mask;
        }
    }
    void flip(std::size_t i) {
        words_[i / kWordBits] ^= Word{1} << (i % kWordBits);
    }

    std::size_t weight() const noexcept {
        std::size_t w = 0;
        for (Word word : words_) {
            w += static_cast<std::size_t>(std::popcount(word));
        }
        return w;
    }
    bool is_zero() const noexcept {
        return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
    }

    /// Index of the lowest set bit, if any.
    std::optional<std::size_t> first_set() const noexcept {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            if (words_[k] != 0) {
                return k * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[k]));
            }
        }
        return std::nullopt;
    }

    /// Inner product over GF(2).
    bool dot(const F2Vector &other) const {
        check_same_size(other);
        Word acc = 0;
        for (std::size_t k = 0; k < words_.size(); ++k) {
            acc ^= words_[k] & other.words_[k];
        }
        return std::popcount(acc) & 1;
    }

    F2Vector &operator^=(const F2Vector &other) {
        check_same_size(other);
        for (std::size_t k = 0; k < words_.size(); ++k) {
            words_[k] ^= other.words_[k];
        }
        return *this;
    }
    F2Vector &operator&=(const F2Vector &other) {
        check_same_size(other);
        for (std::size_t k = 0; k < words_.size(); ++k) {
            words_[k] &= other.words_[k];
        }
        return *this;
    }
    friend F2Vector operator^(F2Vector a, const F2Vector &b) {
        a ^= b;
        return a;
    }
    friend F2Vector operator&(F2Vector a, const F2Vector &b) {
        a &= b;
        return a;
    }

    std::string to_string() const {
        std::string s(len_, '0');
        for (std::size_t i = 0; i < len_; ++i) {
            if (get(i)) {
                s[i] = '1';
            }
        }
        return s;
    }

    const std::vector<Word> &words() const noexcept {
        return words_;
    }
    std::vector<Word> &words() noexcept {
        return words_;
    }

    friend bool operator==(const F2Vector &, const F2Vector &) = default;

    friend std::strong_ordering operator<=>(const F2Vector &a, const F2Vector &b) {
        std::size_t common = std::min(a.len_, b.len_);
        for (std::size_t i = 0; i < common; ++i) {
            bool x = a.get(i);
            bool y = b.get(i);
            if (x != y) {
                return x ? std::strong_ordering::greater : std::strong_ordering::less;
            }
        }
        return a.len_ <=> b.len_;
    }

   private:
    static std::size_t word_count(std::size_t len) {
        return (len + kWordBits - 1) / kWordBits;
    }
    void clear_tail() {
        if (len_ % kWordBits != 0) {
            words_.back() &= (Word{1} << (len_ % kWordBits)) - 1;
        }
    }
    void check_same_size(const F2Vector &other) const {
        if (other.len_ != len_) {
            throw WidthError("F2Vector length mismatch: " + std::to_string(len_) + " vs " +
                             std::to_string(other.len_));
        }
    }

    std::size_t len_ = 0;
    std::vector<Word> words_;
};

/// Row-major dense matrix over GF(2).
class F2Matrix {
   public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, F2Vector(cols)) {
    }

    static F2Matrix identity(std::size_t n) {
        F2Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m.rows_[i].set(i);
        }
        return m;
    }

    /// Builds a matrix from row bitstrings, e.g. {"110", "011"}.
    static F2Matrix from_rows(const std::vector<std::string> &rows) {
        std::size_t cols = rows.empty() ? 0 : rows.front().size();
        F2Matrix m(0, cols);
        for (const auto &r : rows) {
            m.push_row(F2Vector::from_string(r));
        }
        return m;
    }

    /// `cols` is needed when `rows` is empty.
    static F2Matrix from_rows(std::vector<F2Vector> rows, std::size_t cols) {
        F2Matrix m(0, cols);
        for (auto &r : rows) {
            m.push_row(std::move(r));
        }
        return m;
    }

    std::size_t rows() const noexcept {
        return rows_.size();
    }
    std::size_t cols() const noexcept {
        return cols_;
    }

    const F2Vector &row(std::size_t i) const {
        return rows_[i];
    }
    F2Vector &row(std::size_t i) {
        return rows_[i];
    }
    const std::vector<F2Vector> &row_data() const noexcept {
        return rows_;
    }

    bool get(std::size_t r, std::size_t c) const {
        return rows_[r].get(c);
    }
    void set(std::size_t r, std::size_t c, bool value = true) {
        rows_[r].set(c, value);
    }

    void push_row(F2Vector row) {
        if (row.size() != cols_) {
            throw WidthError("row length " + std::to_string(row.size()) + " does not match " +
                             std::to_string(cols_) + " columns");
        }
        rows_.push_back(std::move(row));
    }

    F2Matrix transpose() const {
        F2Matrix t(cols_, rows_.size());
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                if (rows_[r].get(c)) {
                    t.rows_[c].set(r);
                }
            }
        }
        return t;
    }

    friend bool operator==(const F2Matrix &, const F2Matrix &) = default;

   private:
    std::size_t cols_ = 0;
    std::vector<F2Vector> rows_;
};

namespace detail {

/// Reduced row echelon form in place. Returns the pivot column of each
/// nonzero row, in order; rows past pivots.size() are zero afterwards. When
/// `rhs` is given, its bits follow the row operations.
inline std::vector<std::size_t> rref(F2Matrix &m, F2Vector *rhs = nullptr) {
    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < m.cols() && next_row < m.rows(); ++col) {
        std::size_t found = next_row;
        while (found < m.rows() && !m.get(found, col)) {
            ++found;
        }
        if (found == m.rows()) {
            continue;
        }
        if (found != next_row) {
            std::swap(m.row(found), m.row(next_row));
            if (rhs != nullptr) {
                bool a = rhs->get(found);
                rhs->set(found, rhs->get(next_row));
                rhs->set(next_row, a);
            }
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r != next_row && m.get(r, col)) {
                m.row(r) ^= m.row(next_row);
                if (rhs != nullptr && rhs->get(next_row)) {
                    rhs->flip(r);
                }
            }
        }
        pivots.push_back(col);
        ++next_row;
    }
    return pivots;
}

}  // namespace detail

/// (A·x) mod 2, one packed parity per row.
inline F2Vector matvec(const F2Matrix &a, const F2Vector &x) {
    if (x.size() != a.cols()) {
        throw WidthError("matvec: vector length " + std::to_string(x.size()) + " != " +
                         std::to_string(a.cols()) + " columns");
    }
    F2Vector out(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        if (a.row(r).dot(x)) {
            out.set(r);
        }
    }
    return out;
}

inline std::size_t rank(const F2Matrix &a) {
    F2Matrix work = a;
    return detail::rref(work).size();
}

/// Basis of {v : A·v = 0}. Canonical: one vector per free column in
/// increasing column order, with a 1 at that column, 0 at the other free
/// columns, and pivot entries read from the reduced row echelon form.
inline std::vector<F2Vector> kernel_basis(const F2Matrix &a) {
    F2Matrix work = a;
    std::vector<std::size_t> pivots = detail::rref(work);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t p : pivots) {
        is_pivot[p] = true;
    }
    std::vector<F2Vector> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) {
            continue;
        }
        F2Vector v(a.cols());
        v.set(free);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            if (work.get(r, free)) {
                v.set(pivots[r]);
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some z with E·z = c; free variables are set to 0. Throws NoSolution when
/// the system is inconsistent.
inline F2Vector solve(const F2Matrix &e, const F2Vector &c) {
    if (c.size() != e.rows()) {
        throw WidthError("solve: right-hand side length " + std::to_string(c.size()) + " != " +
                         std::to_string(e.rows()) + " rows");
    }
    F2Matrix work = e;
    F2Vector rhs = c;
    std::vector<std::size_t> pivots = detail::rref(work, &rhs);
    for (std::size_t r = pivots.size(); r < work.rows(); ++r) {
        if (rhs.get(r)) {
            throw NoSolution("linear system is inconsistent");
        }
    }
    F2Vector z(e.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        z.set(pivots[r], rhs.get(r));
    }
    return z;
}

}  // namespace possim
