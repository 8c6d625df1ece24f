#include "boofdeg/matrix.hpp"

#include <algorithm>
#include <stdexcept>

#include "boofdeg/error.hpp"

namespace boofdeg {

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("RationalMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

std::vector<Rational> RationalMatrix::multiply(std::span<const Rational> v) const {
    if (v.size() != cols_) throw std::invalid_argument("RationalMatrix::multiply: size mismatch");
    std::vector<Rational> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        mpq_class acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) {
            if (!v[c].is_zero()) acc += (*this)(r, c).raw() * v[c].raw();
        }
        out[r] = Rational(acc);
    }
    return out;
}

RankNullspace rank_nullspace(const RationalMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();

    // Scale each row to integers, then Bareiss to row echelon form.
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        mpz_class l = 1;
        for (std::size_t c = 0; c < cols; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).raw().get_den_mpz_t());
        for (std::size_t c = 0; c < cols; ++c) {
            const mpq_class& q = m(r, c).raw();
            a[r][c] = q.get_num() * (l / q.get_den());
        }
    }

    std::vector<std::size_t> pivot_cols;
    mpz_class prev = 1;
    std::size_t rank = 0;
    mpz_class t1, t2;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                t1 = a[rank][c] * a[i][j];
                t2 = a[i][c] * a[rank][j];
                t1 -= t2;
                mpz_divexact(a[i][j].get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[rank][c];
        pivot_cols.push_back(c);
        ++rank;
    }

    RankNullspace out;
    out.rank = rank;
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;

    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<mpq_class> v(cols, 0);
        v[free_col] = 1;
        for (std::size_t k = rank; k-- > 0;) {
            const std::size_t pc = pivot_cols[k];
            mpq_class acc = 0;
            for (std::size_t j = pc + 1; j < cols; ++j) {
                if (v[j] != 0 && a[k][j] != 0) acc += mpq_class(a[k][j]) * v[j];
            }
            v[pc] = -acc / mpq_class(a[k][pc]);
        }
        std::vector<Rational> vec;
        vec.reserve(cols);
        for (auto& q : v) vec.emplace_back(q);
        out.basis.push_back(std::move(vec));
    }

    for (const auto& v : out.basis) {
        for (const auto& x : m.multiply(v)) {
            if (!x.is_zero()) throw VerificationError("rank_nullspace: basis vector not in kernel");
        }
    }
    return out;
}

}  // namespace boofdeg
