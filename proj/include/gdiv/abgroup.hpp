#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gdiv/errors.hpp"

namespace gdiv {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

inline BigInt big_gcd(BigInt a, BigInt b) {
    a = big_abs(a);
    b = big_abs(b);
    while (b != 0) {
        BigInt r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (auto& row : init) {
            if (row.size() != cols_) throw InputError("ragged matrix literal");
            for (long long x : row) data_.emplace_back(x);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows, std::size_t cols) {
        IntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw InputError("row has wrong length");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<BigInt> row(std::size_t i) const {
        return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
    }

    void append_row(const std::vector<BigInt>& r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw InputError("row has wrong length");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x == 0; });
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw InputError("matrix dimension mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const BigInt& x = a(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
            }
        return c;
    }

    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix dimension mismatch");
        IntMatrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
        return c;
    }

    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix dimension mismatch");
        IntMatrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
        return c;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    // row[dst] += f * row[src]
    void add_row(std::size_t dst, std::size_t src, const BigInt& f) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
    }
    void add_col(std::size_t dst, std::size_t src, const BigInt& f) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += f * (*this)(i, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
    }

    std::string str() const {
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

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BigInt> data_;
};

// Fraction-free (Bareiss) determinant.
inline BigInt determinant(IntMatrix m) {
    if (m.rows() != m.cols()) throw InputError("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

struct SmithForm {
    IntMatrix u, s, v;  // u * m * v == s
};

// Smith normal form by repeated smallest-absolute-value pivoting.
inline SmithForm smith_normal_form(const IntMatrix& m) {
    const std::size_t r = m.rows(), c = m.cols();
    SmithForm f{IntMatrix::identity(r), m, IntMatrix::identity(c)};
    IntMatrix& s = f.s;
    const std::size_t lim = std::min(r, c);
    for (std::size_t t = 0; t < lim; ++t) {
        for (;;) {
            std::size_t pi = r, pj = c;
            BigInt best;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j) {
                    if (s(i, j) == 0) continue;
                    BigInt a = big_abs(s(i, j));
                    if (pi == r || a < best) {
                        best = a;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == r) return f;  // remaining block is zero
            s.swap_rows(t, pi);
            f.u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            f.v.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (s(i, t) == 0) continue;
                BigInt q = s(i, t) / s(t, t);
                s.add_row(i, t, -q);
                f.u.add_row(i, t, -q);
                if (s(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (s(t, j) == 0) continue;
                BigInt q = s(t, j) / s(t, t);
                s.add_col(j, t, -q);
                f.v.add_col(j, t, -q);
                if (s(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // enforce divisibility of the remaining block by the pivot
            bool divides = true;
            for (std::size_t i = t + 1; i < r && divides; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (s(i, j) % s(t, t) != 0) {
                        s.add_row(t, i, 1);
                        f.u.add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (s(t, t) < 0) {
            s.negate_row(t);
            f.u.negate_row(t);
        }
    }
    return f;
}

class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;

    // Canonical form of the cyclic decomposition with the given orders (0 = infinite).
    static FiniteAbelianGroup from_orders(const std::vector<BigInt>& orders) {
        IntMatrix d(orders.size(), orders.size());
        for (std::size_t i = 0; i < orders.size(); ++i) d(i, i) = orders[i];
        return from_relations(d, orders.size());
    }

    static FiniteAbelianGroup cyclic(const BigInt& n) { return from_orders({n}); }

    // Cokernel of the relation rows inside Z^rank.
    static FiniteAbelianGroup from_relations(const IntMatrix& rel, std::size_t rank) {
        FiniteAbelianGroup g;
        if (rel.rows() == 0) {
            g.factors_.assign(rank, 0);
            return g;
        }
        if (rel.cols() != rank) throw InputError("relation width differs from rank");
        SmithForm f = smith_normal_form(rel);
        std::size_t lim = std::min(rel.rows(), rank);
        std::vector<BigInt> nz;
        std::size_t zeros = rank;
        for (std::size_t i = 0; i < lim; ++i) {
            if (f.s(i, i) == 0) break;
            --zeros;
            if (f.s(i, i) != 1) nz.push_back(f.s(i, i));
        }
        g.factors_ = nz;
        g.factors_.insert(g.factors_.end(), zeros, BigInt(0));
        return g;
    }

    static FiniteAbelianGroup from_factors_unchecked(std::vector<BigInt> f) {
        FiniteAbelianGroup g;
        g.factors_ = std::move(f);
        return g;
    }

    const std::vector<BigInt>& invariant_factors() const { return factors_; }
    bool is_trivial() const { return factors_.empty(); }
    bool is_finite() const {
        return std::none_of(factors_.begin(), factors_.end(), [](const BigInt& x) { return x == 0; });
    }
    std::optional<BigInt> order() const {
        BigInt o = 1;
        for (auto& d : factors_) {
            if (d == 0) return std::nullopt;
            o *= d;
        }
        return o;
    }
    // Largest invariant factor; 0 for infinite groups, 1 for the trivial group.
    BigInt exponent() const { return factors_.empty() ? BigInt(1) : factors_.back(); }
    std::size_t rank() const { return factors_.size(); }

    friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.factors_ == b.factors_;
    }

    std::string str() const {
        if (factors_.empty()) return "1";
        std::ostringstream os;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (i) os << " x ";
            if (factors_[i] == 0)
                os << "Z";
            else
                os << "Z/" << factors_[i];
        }
        return os.str();
    }

private:
    std::vector<BigInt> factors_;
};

// Row lattice of an integer matrix, with membership and coordinate queries.
class RowLattice {
public:
    RowLattice(const IntMatrix& gens, std::size_t ambient) : ambient_(ambient) {
        if (gens.rows() == 0) return;
        if (gens.cols() != ambient) throw InputError("generator width differs from ambient rank");
        f_ = smith_normal_form(gens);
        const std::size_t lim = std::min(gens.rows(), ambient);
        while (rank_ < lim && f_.s(rank_, rank_) != 0) ++rank_;
    }

    std::size_t rank() const { return rank_; }
    std::size_t ambient() const { return ambient_; }

    // Coordinates in the basis b_i = s_i * (row i of v^{-1}), or nullopt if outside.
    std::optional<std::vector<BigInt>> coordinates(const std::vector<BigInt>& x) const {
        if (x.size() != ambient_) throw InputError("vector width differs from ambient rank");
        std::vector<BigInt> xv(ambient_);
        if (rank_ == 0) {
            for (auto& e : x)
                if (e != 0) return std::nullopt;
            return std::vector<BigInt>{};
        }
        for (std::size_t j = 0; j < ambient_; ++j) {
            BigInt acc = 0;
            for (std::size_t k = 0; k < ambient_; ++k)
                if (x[k] != 0) acc += x[k] * f_.v(k, j);
            xv[j] = acc;
        }
        std::vector<BigInt> coord(rank_);
        for (std::size_t j = 0; j < ambient_; ++j) {
            if (j < rank_) {
                if (xv[j] % f_.s(j, j) != 0) return std::nullopt;
                coord[j] = xv[j] / f_.s(j, j);
            } else if (xv[j] != 0) {
                return std::nullopt;
            }
        }
        return coord;
    }

    bool contains(const std::vector<BigInt>& x) const { return coordinates(x).has_value(); }

private:
    std::size_t ambient_;
    std::size_t rank_ = 0;
    SmithForm f_;
};

// span(numerator)/span(denominator) inside Z^ambient_rank.
inline FiniteAbelianGroup subquotient(std::size_t ambient_rank, const IntMatrix& numerator_gens,
                                      const IntMatrix& denominator_gens) {
    RowLattice num(numerator_gens, ambient_rank);
    IntMatrix coords(0, num.rank());
    for (std::size_t i = 0; i < denominator_gens.rows(); ++i) {
        auto c = num.coordinates(denominator_gens.row(i));
        if (!c) throw ContainmentError("denominator generator " + std::to_string(i) + " not in numerator lattice");
        if (num.rank() > 0) coords.append_row(*c);
    }
    return FiniteAbelianGroup::from_relations(coords, num.rank());
}

// Rows spanning {x : x * m == 0}.
inline IntMatrix left_kernel(const IntMatrix& m) {
    SmithForm f = smith_normal_form(m);
    std::size_t rank = 0;
    const std::size_t lim = std::min(m.rows(), m.cols());
    while (rank < lim && f.s(rank, rank) != 0) ++rank;
    IntMatrix k(0, m.rows());
    for (std::size_t i = rank; i < m.rows(); ++i) k.append_row(f.u.row(i));
    return k;
}

// Row-style Hermite normal form: nonzero rows only, positive pivots, entries above each pivot reduced.
inline IntMatrix hermite_normal_form(const IntMatrix& m) {
    IntMatrix h = m;
    const std::size_t r = h.rows(), c = h.cols();
    std::size_t row = 0;
    for (std::size_t col = 0; col < c && row < r; ++col) {
        for (;;) {
            std::size_t piv = r;
            for (std::size_t i = row; i < r; ++i)
                if (h(i, col) != 0 && (piv == r || big_abs(h(i, col)) < big_abs(h(piv, col)))) piv = i;
            if (piv == r) break;
            h.swap_rows(row, piv);
            bool done = true;
            for (std::size_t i = row + 1; i < r; ++i) {
                if (h(i, col) == 0) continue;
                h.add_row(i, row, -(h(i, col) / h(row, col)));
                if (h(i, col) != 0) done = false;
            }
            if (done) break;
        }
        if (row < r && h(row, col) != 0) {
            if (h(row, col) < 0) h.negate_row(row);
            for (std::size_t i = 0; i < row; ++i) {
                BigInt q = h(i, col) / h(row, col);
                if (h(i, col) - q * h(row, col) < 0) q -= 1;
                if (q != 0) h.add_row(i, row, -q);
            }
            ++row;
        }
    }
    IntMatrix out(0, c);
    for (std::size_t i = 0; i < row; ++i) out.append_row(h.row(i));
    return out;
}

inline IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
    std::size_t cols = a.rows() ? a.cols() : b.cols();
    IntMatrix r(0, cols);
    for (std::size_t i = 0; i < a.rows(); ++i) r.append_row(a.row(i));
    for (std::size_t i = 0; i < b.rows(); ++i) r.append_row(b.row(i));
    return r;
}

inline std::vector<BigInt> row_times(const std::vector<BigInt>& x, const IntMatrix& m) {
    std::vector<BigInt> y(m.cols());
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) y[j] += x[k] * m(k, j);
    }
    return y;
}

}  // namespace gdiv
