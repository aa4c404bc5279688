#include "sandpile/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <limits>
#include <string>

#include "sandpile/error.hpp"

namespace sandpile {

namespace {

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

void require_square(const IntegerMatrix& m, const char* what) {
    if (!m.square())
        throw Error(ErrorKind::NotSquare, std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                                              std::to_string(m.cols()));
}

// Position of a nonzero entry of smallest magnitude in the block [t, rows) x [t, cols).
bool smallest_nonzero(const IntegerMatrix& s, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j) {
            if (sgn(s(i, j)) == 0) continue;
            if (!found || cmpabs(s(i, j), s(pi, pj)) < 0) {
                pi = i;
                pj = j;
                found = true;
            }
        }
    return found;
}

// Bookkeeping for U * M * V = S. Every elementary operation on S is mirrored
// on U (rows), U^-1 (columns, inverse operation) or V (columns).
struct SnfWork {
    IntegerMatrix S, U, Uinv, V;

    void swap_rows(std::size_t a, std::size_t b) {
        S.swap_rows(a, b);
        U.swap_rows(a, b);
        Uinv.swap_cols(a, b);
    }

    void swap_cols(std::size_t a, std::size_t b) {
        S.swap_cols(a, b);
        V.swap_cols(a, b);
    }

    // row_dst += k * row_src
    void add_row(std::size_t dst, std::size_t src, const Integer& k) {
        for (std::size_t j = 0; j < S.cols(); ++j) S(dst, j) += k * S(src, j);
        for (std::size_t j = 0; j < U.cols(); ++j) U(dst, j) += k * U(src, j);
        for (std::size_t i = 0; i < Uinv.rows(); ++i) Uinv(i, src) -= k * Uinv(i, dst);
    }

    // col_dst += k * col_src
    void add_col(std::size_t dst, std::size_t src, const Integer& k) {
        for (std::size_t i = 0; i < S.rows(); ++i) S(i, dst) += k * S(i, src);
        for (std::size_t i = 0; i < V.rows(); ++i) V(i, dst) += k * V(i, src);
    }

    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < S.cols(); ++j) S(r, j) = -S(r, j);
        for (std::size_t j = 0; j < U.cols(); ++j) U(r, j) = -U(r, j);
        for (std::size_t i = 0; i < Uinv.rows(); ++i) Uinv(i, r) = -Uinv(i, r);
    }
};

} // namespace

IntegerVector SnfDecomposition::invariant_factors() const {
    const std::size_t k = std::min(S.rows(), S.cols());
    IntegerVector d(k);
    for (std::size_t i = 0; i < k; ++i) d[i] = S(i, i);
    return d;
}

std::size_t SnfDecomposition::rank() const {
    std::size_t r = 0;
    const std::size_t k = std::min(S.rows(), S.cols());
    while (r < k && sgn(S(r, r)) != 0) ++r;
    return r;
}

Integer determinant(const IntegerMatrix& m) {
    require_square(m, "determinant");
    const std::size_t n = m.rows();
    if (n == 0) return 1;

    IntegerMatrix a = m;
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(a(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(a(p, k)) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : Integer(-a(n - 1, n - 1));
}

SnfDecomposition smith_normal_form(const IntegerMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    SnfWork w{m, IntegerMatrix::identity(rows), IntegerMatrix::identity(rows), IntegerMatrix::identity(cols)};

    const std::size_t diag = std::min(rows, cols);
    Integer quot;
    for (std::size_t t = 0; t < diag; ++t) {
        std::size_t pi = t, pj = t;
        if (!smallest_nonzero(w.S, t, pi, pj)) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        for (;;) {
            // Clear column t below the pivot; a nonzero remainder becomes the new, smaller pivot.
            std::size_t best = t;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (sgn(w.S(i, t)) == 0) continue;
                mpz_fdiv_q(quot.get_mpz_t(), w.S(i, t).get_mpz_t(), w.S(t, t).get_mpz_t());
                w.add_row(i, t, -quot);
                if (sgn(w.S(i, t)) != 0 && (best == t || cmpabs(w.S(i, t), w.S(best, t)) < 0)) best = i;
            }
            if (best != t) {
                w.swap_rows(t, best);
                continue;
            }

            for (std::size_t j = t + 1; j < cols; ++j) {
                if (sgn(w.S(t, j)) == 0) continue;
                mpz_fdiv_q(quot.get_mpz_t(), w.S(t, j).get_mpz_t(), w.S(t, t).get_mpz_t());
                w.add_col(j, t, -quot);
                if (sgn(w.S(t, j)) != 0 && (best == t || cmpabs(w.S(t, j), w.S(t, best)) < 0)) best = j;
            }
            if (best != t) {
                w.swap_cols(t, best);
                continue;
            }

            // Pivot must divide the rest of the active block.
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (!mpz_divisible_p(w.S(i, j).get_mpz_t(), w.S(t, t).get_mpz_t())) {
                        w.add_row(t, i, 1);
                        divides = false;
                        break;
                    }
                }
            if (divides) break;
        }
        if (sgn(w.S(t, t)) < 0) w.negate_row(t);
    }
    return SnfDecomposition{std::move(w.U), std::move(w.S), std::move(w.V), std::move(w.Uinv)};
}

RationalMatrix exact_inverse(const IntegerMatrix& m) {
    require_square(m, "exact_inverse");
    const std::size_t n = m.rows();

    // Fraction-free forward elimination on [M | I].
    IntegerMatrix a(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
        a(i, n + i) = 1;
    }
    Integer prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (sgn(a(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(a(p, k)) == 0) ++p;
            if (p == n) throw Error(ErrorKind::Singular, "exact_inverse: matrix is singular");
            a.swap_rows(k, p);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < 2 * n; ++j) {
                Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }

    // Back substitution over the rationals, one right-hand column at a time.
    RationalMatrix inv(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t ii = n; ii-- > 0;) {
            Rational acc = a(ii, n + c);
            for (std::size_t j = ii + 1; j < n; ++j) acc -= a(ii, j) * inv(j, c);
            acc /= a(ii, ii);
            acc.canonicalize();
            inv(ii, c) = acc;
        }
    }
    return inv;
}

RationalMatrix generalized_inverse_lq(const IntegerMatrix& laplacian, std::size_t q) {
    require_square(laplacian, "generalized_inverse_lq");
    const std::size_t n = laplacian.rows();
    if (q >= n) throw Error(ErrorKind::BadVertexId, "generalized_inverse_lq: index " + std::to_string(q) + " out of range");

    IntegerMatrix reduced(n - 1, n - 1);
    for (std::size_t i = 0, r = 0; i < n; ++i) {
        if (i == q) continue;
        for (std::size_t j = 0, c = 0; j < n; ++j) {
            if (j == q) continue;
            reduced(r, c++) = laplacian(i, j);
        }
        ++r;
    }
    const RationalMatrix inv = exact_inverse(reduced);

    RationalMatrix l(n, n);
    for (std::size_t i = 0, r = 0; i < n; ++i) {
        if (i == q) continue;
        for (std::size_t j = 0, c = 0; j < n; ++j) {
            if (j == q) continue;
            l(i, j) = inv(r, c++);
        }
        ++r;
    }
    return l;
}

std::optional<IntegerVector> solve_integer(const SnfDecomposition& snf, const IntegerVector& b) {
    if (snf.U.cols() != b.size()) throw Error(ErrorKind::DimensionMismatch, "solve_integer: right-hand side has wrong length");
    const IntegerVector c = snf.U * b;
    const std::size_t rank = snf.rank();
    IntegerVector y(snf.V.rows());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < rank) {
            if (!mpz_divisible_p(c[i].get_mpz_t(), snf.S(i, i).get_mpz_t())) return std::nullopt;
            mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), snf.S(i, i).get_mpz_t());
        } else if (sgn(c[i]) != 0) {
            return std::nullopt;
        }
    }
    return snf.V * y;
}

std::optional<IntegerVector> solve_integer(const IntegerMatrix& m, const IntegerVector& b) {
    if (m.rows() != b.size()) throw Error(ErrorKind::DimensionMismatch, "solve_integer: right-hand side has wrong length");
    return solve_integer(smith_normal_form(m), b);
}

IntegerVector floor_rational_vector(const RationalVector& v) {
    IntegerVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        mpz_fdiv_q(out[i].get_mpz_t(), v[i].get_num_mpz_t(), v[i].get_den_mpz_t());
    return out;
}

double smallest_reduced_eigenvalue(const IntegerMatrix& qq) {
    require_square(qq, "smallest_reduced_eigenvalue");
    const std::size_t n = qq.rows();
    if (n == 0) return std::numeric_limits<double>::infinity();

    Eigen::MatrixXd a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (qq(i, j) != qq(j, i)) throw Error(ErrorKind::NotSymmetric, "smallest_reduced_eigenvalue: matrix is not symmetric");
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = qq(i, j).get_d();
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

} // namespace sandpile
