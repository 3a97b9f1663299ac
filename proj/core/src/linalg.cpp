#include "dgper/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace dgper {

Mat Mat::identity(const Field& f, int n) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::logic_error("matrix product shape mismatch");
    Mat out(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Scalar& b = o.at(k, j);
                if (b.is_zero()) continue;
                out.at(i, j) = out.at(i, j) + a * b;
            }
        }
    return out;
}

Mat Mat::operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::logic_error("matrix sum shape mismatch");
    Mat out(field_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j) + o.at(i, j);
    return out;
}

Mat Mat::operator-(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::logic_error("matrix diff shape mismatch");
    Mat out(field_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j) - o.at(i, j);
    return out;
}

bool Mat::operator==(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != o.at(i, j)) return false;
    return true;
}

bool Mat::is_zero() const {
    for (const Scalar& s : data_)
        if (!s.is_zero()) return false;
    return true;
}

Mat Mat::transposed() const {
    Mat out(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

std::vector<Scalar> Mat::col(int j) const {
    std::vector<Scalar> v;
    v.reserve(rows_);
    for (int i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
}

void Mat::set_col(int j, const std::vector<Scalar>& v) {
    for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
}

namespace {

std::uint64_t fp_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

/// Word-level reduced elimination over F_p; same pivot choices as the
/// generic path, so every derived answer is identical.
struct FpElim {
    std::vector<std::uint64_t> a;
    int rows, cols;
    std::uint64_t p;
    std::vector<int> pivot_cols;
    int rank = 0;

    std::uint64_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }

    explicit FpElim(const Mat& m, const Mat* aug = nullptr) {
        p = m.field().characteristic();
        rows = m.rows();
        cols = m.cols() + (aug ? aug->cols() : 0);
        a.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < m.cols(); ++j) at(i, j) = m.at(i, j).residue();
            if (aug)
                for (int j = 0; j < aug->cols(); ++j) at(i, m.cols() + j) = aug->at(i, j).residue();
        }
        run();
    }

    void run() {
        int r = 0;
        std::vector<int> support;
        for (int c = 0; c < cols && r < rows; ++c) {
            int pivot = -1;
            for (int i = r; i < rows; ++i)
                if (at(i, c) != 0) { pivot = i; break; }
            if (pivot < 0) continue;
            if (pivot != r)
                for (int j = 0; j < cols; ++j) std::swap(at(pivot, j), at(r, j));
            std::uint64_t inv = fp_inv(at(r, c), p);
            support.clear();
            for (int j = c; j < cols; ++j) {
                if (at(r, j) == 0) continue;
                at(r, j) = fp_mul(at(r, j), inv, p);
                support.push_back(j);
            }
            for (int i = 0; i < rows; ++i) {
                if (i == r || at(i, c) == 0) continue;
                std::uint64_t f = at(i, c);
                for (int j : support) at(i, j) = (at(i, j) + p - fp_mul(f, at(r, j), p)) % p;
            }
            pivot_cols.push_back(c);
            ++r;
        }
        rank = r;
    }
};

RrefResult rref_fp(const Mat& m) {
    const Field& k = m.field();
    FpElim elim(m);
    RrefResult out{Mat(k, m.rows(), m.cols()), std::move(elim.pivot_cols), elim.rank};
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (elim.at(i, j) != 0) out.reduced.at(i, j) = Scalar::from_int(k, static_cast<long long>(elim.at(i, j)));
    return out;
}

} // namespace

RrefResult rref(const Mat& m) {
    if (m.field().is_prime_field()) return rref_fp(m);
    RrefResult out{m, {}, 0};
    Mat& a = out.reduced;
    int r = 0;
    std::vector<int> support; // nonzero columns of the pivot row
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        int pivot = -1;
        for (int i = r; i < a.rows(); ++i)
            if (!a.at(i, c).is_zero()) { pivot = i; break; }
        if (pivot < 0) continue;
        if (pivot != r)
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(pivot, j), a.at(r, j));
        Scalar inv = a.at(r, c).inverse();
        support.clear();
        for (int j = c; j < a.cols(); ++j) {
            if (a.at(r, j).is_zero()) continue;
            a.at(r, j) = a.at(r, j) * inv;
            support.push_back(j);
        }
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, c).is_zero()) continue;
            Scalar f = a.at(i, c);
            for (int j : support) a.at(i, j) = a.at(i, j) - f * a.at(r, j);
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.rank = r;
    return out;
}

int rank(const Mat& m) {
    if (m.field().is_prime_field()) return FpElim(m).rank;
    return rref(m).rank;
}

std::vector<std::vector<Scalar>> kernel_basis(const Mat& m) {
    const Field& k = m.field();
    if (k.is_prime_field()) {
        FpElim elim(m);
        std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
        for (int c : elim.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
        std::vector<std::vector<Scalar>> basis;
        for (int c = 0; c < m.cols(); ++c) {
            if (is_pivot[static_cast<std::size_t>(c)]) continue;
            std::vector<Scalar> v(static_cast<std::size_t>(m.cols()), Scalar::zero(k));
            v[static_cast<std::size_t>(c)] = Scalar::one(k);
            for (int r = 0; r < elim.rank; ++r) {
                std::uint64_t val = elim.at(r, c);
                if (val != 0)
                    v[static_cast<std::size_t>(elim.pivot_cols[static_cast<std::size_t>(r)])] =
                        Scalar::from_int(k, -static_cast<long long>(val));
            }
            basis.push_back(std::move(v));
        }
        return basis;
    }
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<Scalar> v(m.cols(), Scalar::zero(m.field()));
        v[c] = Scalar::one(m.field());
        for (int r = 0; r < rr.rank; ++r)
            v[rr.pivot_cols[r]] = -rr.reduced.at(r, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Mat> solve(const Mat& m, const Mat& rhs) {
    if (m.rows() != rhs.rows()) throw std::logic_error("solve shape mismatch");
    const Field& k = m.field();
    if (k.is_prime_field()) {
        FpElim elim(m, &rhs);
        for (int c : elim.pivot_cols)
            if (c >= m.cols()) return std::nullopt;
        Mat x(k, m.cols(), rhs.cols());
        for (int r = 0; r < elim.rank; ++r) {
            int pc = elim.pivot_cols[static_cast<std::size_t>(r)];
            for (int j = 0; j < rhs.cols(); ++j) {
                std::uint64_t val = elim.at(r, m.cols() + j);
                if (val != 0) x.at(pc, j) = Scalar::from_int(k, static_cast<long long>(val));
            }
        }
        return x;
    }
    Mat aug(m.field(), m.rows(), m.cols() + rhs.cols());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        for (int j = 0; j < rhs.cols(); ++j) aug.at(i, m.cols() + j) = rhs.at(i, j);
    }
    RrefResult rr = rref(aug);
    // a pivot in the rhs block means inconsistency
    for (int c : rr.pivot_cols)
        if (c >= m.cols()) return std::nullopt;
    Mat x(m.field(), m.cols(), rhs.cols());
    for (int r = 0; r < rr.rank; ++r) {
        int pc = rr.pivot_cols[r];
        for (int j = 0; j < rhs.cols(); ++j) x.at(pc, j) = rr.reduced.at(r, m.cols() + j);
    }
    return x;
}

std::optional<Mat> inverse(const Mat& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    std::optional<Mat> x = solve(m, Mat::identity(m.field(), m.rows()));
    if (!x) return std::nullopt;
    // solve() returns the unique solution only when m has full rank
    if ((m * *x) == Mat::identity(m.field(), m.rows())) return x;
    return std::nullopt;
}

std::vector<std::vector<Scalar>> row_space_basis(const Mat& m) {
    RrefResult rr = rref(m);
    std::vector<std::vector<Scalar>> rows;
    for (int r = 0; r < rr.rank; ++r) {
        std::vector<Scalar> v;
        v.reserve(m.cols());
        for (int j = 0; j < m.cols(); ++j) v.push_back(rr.reduced.at(r, j));
        rows.push_back(std::move(v));
    }
    return rows;
}

std::optional<std::vector<Scalar>> SpanBuilder::insert(std::vector<Scalar> v) {
    v = reduce(std::move(v));
    int lead = -1;
    for (int i = 0; i < dim_; ++i)
        if (!v[i].is_zero()) { lead = i; break; }
    if (lead < 0) return std::nullopt;
    Scalar inv = v[lead].inverse();
    for (int i = lead; i < dim_; ++i) v[i] = v[i] * inv;
    // back-substitute into existing rows to stay fully reduced
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Scalar f = rows_[r][lead];
        if (f.is_zero()) continue;
        for (int i = 0; i < dim_; ++i) rows_[r][i] = rows_[r][i] - f * v[i];
    }
    auto pos = std::upper_bound(lead_.begin(), lead_.end(), lead);
    std::size_t idx = static_cast<std::size_t>(pos - lead_.begin());
    lead_.insert(pos, lead);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), v);
    return v;
}

std::vector<Scalar> SpanBuilder::reduce(std::vector<Scalar> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Scalar f = v[static_cast<std::size_t>(lead_[r])];
        if (f.is_zero()) continue;
        for (int i = 0; i < dim_; ++i) v[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)] - f * rows_[r][static_cast<std::size_t>(i)];
    }
    return v;
}

bool SpanBuilder::contains(const std::vector<Scalar>& v) const {
    std::vector<Scalar> red = reduce(v);
    for (const Scalar& s : red)
        if (!s.is_zero()) return false;
    return true;
}

} // namespace dgper
