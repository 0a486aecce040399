#include "singerlat/matrix.hpp"

#include <algorithm>
#include <bit>

#include "singerlat/context.hpp"
#include "singerlat/error.hpp"

namespace singerlat {

SeriesMatrix series_identity(const FiniteField& f, std::size_t n) {
    SeriesMatrix m(n, n, Series(f));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Series::constant(f, 1);
    return m;
}

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
    SeriesMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Series s;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                if (a(i, k).is_exact_zero() || b(k, j).is_exact_zero()) continue;
                s += a(i, k) * b(k, j);
            }
            out(i, j) = s;
        }
    return out;
}

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
    SeriesMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

SeriesMatrix scale(const SeriesMatrix& a, const Series& s) {
    SeriesMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) * s;
    return out;
}

SeriesMatrix mul_const(const FiniteField& f, const SeriesMatrix& a, const ConstMatrix& c) {
    SeriesMatrix out(a.rows(), c.cols(), Series(f));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) {
            Series s(f);
            for (std::size_t k = 0; k < a.cols(); ++k)
                if (c(k, j) != 0 && !a(i, k).is_exact_zero()) s += a(i, k).scale(c(k, j));
            out(i, j) = s;
        }
    return out;
}

SeriesMatrix from_const(const FiniteField& f, const ConstMatrix& c) {
    SeriesMatrix out(c.rows(), c.cols(), Series(f));
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j)
            if (c(i, j) != 0) out(i, j) = Series::constant(f, c(i, j));
    return out;
}

SeriesMatrix truncate(const SeriesMatrix& a, int prec) {
    SeriesMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).truncate(prec);
    return out;
}

Series det_expansion(const SeriesMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return Series();
    if (n > 16) throw Error(ErrorCode::InvalidArgument, "expansion determinant limited to 16x16");
    // dp[mask] = det of rows 0..|mask|-1 restricted to the columns in mask.
    std::vector<Series> dp(std::size_t{1} << n);
    const FiniteField* f = nullptr;
    for (const auto& s : m.data())
        if (s.field()) f = s.field();
    if (!f) return Series();
    dp[0] = Series::constant(*f, 1);
    for (std::size_t mask = 1; mask < dp.size(); ++mask) {
        const std::size_t r = std::popcount(mask) - 1;
        Series acc(*f);
        int pos = 0;
        for (std::size_t c = 0; c < n; ++c) {
            if (!(mask >> c & 1)) continue;
            const std::size_t rest = mask & ~(std::size_t{1} << c);
            // sign from the number of chosen columns after c
            const int after = std::popcount(rest >> c);
            (void)pos;
            if (!m(r, c).is_exact_zero() && !dp[rest].is_exact_zero()) {
                Series term = m(r, c) * dp[rest];
                if (after % 2) acc -= term;
                else acc += term;
            }
        }
        dp[mask] = acc;
    }
    return dp.back();
}

Series det_bareiss(const SeriesMatrix& m_in) {
    SeriesMatrix m = m_in;
    const std::size_t n = m.rows();
    const FiniteField* f = nullptr;
    for (const auto& s : m.data())
        if (s.field()) f = s.field();
    if (!f) return Series();
    Series prev = Series::constant(*f, 1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m(piv, k).is_zero()) ++piv;
        if (piv == n) return Series(*f);
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(piv, c));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Series num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                auto q = num.exact_quotient(prev);
                if (!q) throw Error(ErrorCode::InvalidArgument, "Bareiss step needs exact entries");
                m(i, j) = *q;
            }
        prev = m(k, k);
    }
    Series det = m(n - 1, n - 1);
    return negate ? -det : det;
}

Series determinant(const SeriesMatrix& m_in, int max_rel_prec) {
    const std::size_t n = m_in.rows();
    if (n <= 10) return det_expansion(m_in);
    bool exact = std::all_of(m_in.data().begin(), m_in.data().end(), [](const Series& s) { return s.is_exact(); });
    if (exact) return det_bareiss(m_in);
    SeriesMatrix m = m_in;
    const FiniteField* f = nullptr;
    for (const auto& s : m.data())
        if (s.field()) f = s.field();
    Series det = Series::constant(*f, 1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = n;
        int best = Series::kExact;
        for (std::size_t r = k; r < n; ++r)
            if (!m(r, k).is_zero() && m(r, k).valuation() < best) {
                best = m(r, k).valuation();
                piv = r;
            }
        if (piv == n) return Series::zero(*f, min_absolute_precision(m_in));
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(piv, c));
            det = -det;
        }
        det *= m(k, k);
        const Series inv = m(k, k).inverse(max_rel_prec);
        for (std::size_t r = k + 1; r < n; ++r) {
            if (m(r, k).is_exact_zero()) continue;
            const Series factor = m(r, k) * inv;
            for (std::size_t c = k + 1; c < n; ++c) m(r, c) -= factor * m(k, c);
        }
    }
    return det;
}

SeriesMatrix minor_matrix(const SeriesMatrix& m, std::size_t r, std::size_t c) {
    SeriesMatrix out(m.rows() - 1, m.cols() - 1);
    for (std::size_t i = 0, oi = 0; i < m.rows(); ++i) {
        if (i == r) continue;
        for (std::size_t j = 0, oj = 0; j < m.cols(); ++j) {
            if (j == c) continue;
            out(oi, oj++) = m(i, j);
        }
        ++oi;
    }
    return out;
}

int min_absolute_precision(const SeriesMatrix& m) {
    int p = Series::kExact;
    for (const auto& s : m.data()) p = std::min(p, s.absolute_precision());
    return p;
}

bool equals_to_precision(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        if (!a.data()[i].equals_to_precision(b.data()[i])) return false;
    return true;
}

ConstMatrix const_identity(std::size_t n) {
    ConstMatrix m(n, n, 0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

ConstMatrix const_mul(const FiniteField& f, const ConstMatrix& a, const ConstMatrix& b) {
    ConstMatrix out(a.rows(), b.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Elem x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) out(i, j) = f.add(out(i, j), f.mul(x, b(k, j)));
        }
    return out;
}

Context::Context(FieldParams params, int precision, int max_precision)
    : params_(std::move(params)), precision_(precision),
      max_precision_(max_precision > 0 ? max_precision : std::max(4 * precision, 64)) {
    if (precision_ < 1) throw Error(ErrorCode::InvalidArgument, "precision must be positive");
    if (max_precision_ < precision_) throw Error(ErrorCode::InvalidArgument, "max precision below precision");
    const Series x = solve_norm_unit(params_, max_precision_);
    x_powers_.push_back(Series::constant(E(), 1, max_precision_));
    // (X sigma)^j = X sigma(X) ... sigma^(j-1)(X) sigma^j
    for (unsigned j = 1; j < d(); ++j)
        x_powers_.push_back(x_powers_.back() * series_frobenius(params_, x, static_cast<int>(j - 1)));
    const unsigned n = d();
    for (unsigned j = 0; j < n; ++j) {
        ConstMatrix m(n, n, 0);
        for (unsigned i = 0; i < n; ++i) {
            const Elem img = params_.frobenius(E().exp(i), j);
            for (unsigned r = 0; r < n; ++r) m(r, i) = E().digit(img, r);
        }
        frob_.push_back(std::move(m));
    }
}

ConstMatrix Context::mult_matrix(Elem c) const {
    const unsigned n = d();
    ConstMatrix m(n, n, 0);
    for (unsigned i = 0; i < n; ++i) {
        const Elem img = E().mul(c, E().exp(i));
        for (unsigned r = 0; r < n; ++r) m(r, i) = E().digit(img, r);
    }
    return m;
}

}  // namespace singerlat
