#include "yuanlab/linalg.hpp"

#include <algorithm>

namespace yl {

Matrix Matrix::identity(FieldPtr f, std::size_t n) {
    Matrix m(std::move(f), n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(FieldPtr f, const std::vector<Vec>& rs, std::size_t cols) {
    Matrix m(std::move(f), rs.size(), cols);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        require(rs[i].size() == cols, errc::dimension_mismatch, "row length");
        std::copy(rs[i].begin(), rs[i].end(), m.a.begin() + i * cols);
    }
    return m;
}

std::vector<Vec> Matrix::row_list() const {
    std::vector<Vec> out;
    out.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i)
        out.push_back(row(i));
    return out;
}

Matrix Matrix::mul(const Matrix& other) const {
    require(cols == other.rows, errc::dimension_mismatch, "matrix product");
    const FiniteField& f = *field;
    Matrix out(field, rows, other.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
            fq v = at(i, k);
            if (v == 0)
                continue;
            for (std::size_t j = 0; j < other.cols; ++j)
                out.at(i, j) = f.add(out.at(i, j), f.mul(v, other.at(k, j)));
        }
    return out;
}

Vec Matrix::apply(const Vec& v) const {
    require(v.size() == cols, errc::dimension_mismatch, "matrix apply");
    const FiniteField& f = *field;
    Vec out(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        fq acc = 0;
        const fq* r = a.data() + i * cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (v[j] != 0)
                acc = f.add(acc, f.mul(r[j], v[j]));
        out[i] = acc;
    }
    return out;
}

bool Subspace::contains(const Vec& v) const {
    Vec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](fq x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis.row(i)))
            return false;
    return true;
}

Vec Subspace::reduce(Vec v) const {
    const FiniteField& f = *basis.field;
    for (std::size_t i = 0; i < dim(); ++i) {
        fq c = v[pivots[i]];
        if (c == 0)
            continue;
        const fq* r = basis.a.data() + i * ambient;
        for (std::size_t j = pivots[i]; j < ambient; ++j)
            if (r[j] != 0)
                v[j] = f.sub(v[j], f.mul(c, r[j]));
    }
    return v;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
    Vec coords(dim(), 0);
    Vec w = v;
    const FiniteField& f = *basis.field;
    for (std::size_t i = 0; i < dim(); ++i) {
        fq c = w[pivots[i]];
        coords[i] = c;
        if (c == 0)
            continue;
        const fq* r = basis.a.data() + i * ambient;
        for (std::size_t j = pivots[i]; j < ambient; ++j)
            if (r[j] != 0)
                w[j] = f.sub(w[j], f.mul(c, r[j]));
    }
    for (fq x : w)
        if (x != 0)
            return std::nullopt;
    return coords;
}

bool Subspace::before(const Subspace& o) const {
    if (dim() != o.dim())
        return dim() < o.dim();
    return basis.a < o.basis.a;
}

Subspace rref_generic(const Matrix& m) {
    const FiniteField& f = *m.field;
    std::vector<Vec> rows = m.row_list();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols && r < rows.size(); ++col) {
        // deterministic pivot: first row (in current order) with a nonzero
        std::size_t sel = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i)
            if (rows[i][col] != 0) {
                sel = i;
                break;
            }
        if (sel == rows.size())
            continue;
        std::swap(rows[r], rows[sel]);
        fq piv_inv = f.inv(rows[r][col]);
        for (std::size_t j = col; j < m.cols; ++j)
            rows[r][j] = f.mul(rows[r][j], piv_inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r)
                continue;
            fq c = rows[i][col];
            if (c == 0)
                continue;
            for (std::size_t j = col; j < m.cols; ++j)
                rows[i][j] = f.sub(rows[i][j], f.mul(c, rows[r][j]));
        }
        pivots.push_back(col);
        ++r;
    }
    rows.resize(r);
    Subspace s;
    s.ambient = m.cols;
    s.basis = Matrix::from_rows(m.field, rows, m.cols);
    s.pivots = std::move(pivots);
    return s;
}

Subspace rref_gf2(const Matrix& m) {
    require(m.field->q() == 2, errc::bad_parameters, "rref_gf2 needs q = 2");
    const std::size_t words = (m.cols + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(m.rows,
                                                 std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (m.at(i, j))
                rows[i][j / 64] |= std::uint64_t(1) << (j % 64);

    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols && r < rows.size(); ++col) {
        const std::size_t w = col / 64;
        const std::uint64_t bit = std::uint64_t(1) << (col % 64);
        std::size_t sel = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i)
            if (rows[i][w] & bit) {
                sel = i;
                break;
            }
        if (sel == rows.size())
            continue;
        std::swap(rows[r], rows[sel]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || !(rows[i][w] & bit))
                continue;
            for (std::size_t k = 0; k < words; ++k)
                rows[i][k] ^= rows[r][k];
        }
        pivots.push_back(col);
        ++r;
    }
    Subspace s;
    s.ambient = m.cols;
    s.basis = Matrix(m.field, r, m.cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (rows[i][j / 64] >> (j % 64) & 1)
                s.basis.at(i, j) = 1;
    s.pivots = std::move(pivots);
    return s;
}

Subspace canonical_echelon(const Matrix& m) {
    if (m.field->q() == 2)
        return rref_gf2(m);
    return rref_generic(m);
}

Subspace kernel(const Matrix& m) {
    Subspace r = canonical_echelon(m);
    const FiniteField& f = *m.field;
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t p : r.pivots)
        is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t j = 0; j < m.cols; ++j) {
        if (is_pivot[j])
            continue;
        Vec v(m.cols, 0);
        v[j] = 1;
        for (std::size_t i = 0; i < r.dim(); ++i)
            v[r.pivots[i]] = f.neg(r.basis.at(i, j));
        basis.push_back(std::move(v));
    }
    return span_of(m.field, basis, m.cols);
}

std::optional<Vec> solve(const Matrix& m, const Vec& rhs) {
    require(rhs.size() == m.rows, errc::dimension_mismatch, "solve rhs");
    // eliminate on the augmented matrix
    Matrix aug(m.field, m.rows, m.cols + 1);
    for (std::size_t i = 0; i < m.rows; ++i) {
        std::copy(m.a.begin() + i * m.cols, m.a.begin() + (i + 1) * m.cols,
                  aug.a.begin() + i * aug.cols);
        aug.at(i, m.cols) = rhs[i];
    }
    const FiniteField& f = *m.field;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols && r < m.rows; ++col) {
        std::size_t sel = m.rows;
        for (std::size_t i = r; i < m.rows; ++i)
            if (aug.at(i, col) != 0) {
                sel = i;
                break;
            }
        if (sel == m.rows)
            continue;
        for (std::size_t j = 0; j <= m.cols; ++j)
            std::swap(aug.at(r, j), aug.at(sel, j));
        fq piv_inv = f.inv(aug.at(r, col));
        for (std::size_t j = col; j <= m.cols; ++j)
            aug.at(r, j) = f.mul(aug.at(r, j), piv_inv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r)
                continue;
            fq c = aug.at(i, col);
            if (c == 0)
                continue;
            for (std::size_t j = col; j <= m.cols; ++j)
                aug.at(i, j) = f.sub(aug.at(i, j), f.mul(c, aug.at(r, j)));
        }
        pivots.push_back(col);
        ++r;
    }
    for (std::size_t i = r; i < m.rows; ++i)
        if (aug.at(i, m.cols) != 0)
            return std::nullopt;
    Vec x(m.cols, 0);
    for (std::size_t i = 0; i < r; ++i)
        x[pivots[i]] = aug.at(i, m.cols);
    return x;
}

Subspace zero_subspace(FieldPtr f, std::size_t ambient) {
    Subspace s;
    s.ambient = ambient;
    s.basis = Matrix(std::move(f), 0, ambient);
    return s;
}

Subspace full_space(FieldPtr f, std::size_t ambient) {
    return canonical_echelon(Matrix::identity(std::move(f), ambient));
}

Subspace span_of(FieldPtr f, const std::vector<Vec>& vecs, std::size_t ambient) {
    return canonical_echelon(Matrix::from_rows(std::move(f), vecs, ambient));
}

Subspace sum(const Subspace& s1, const Subspace& s2) {
    require(s1.ambient == s2.ambient, errc::dimension_mismatch, "subspace sum");
    std::vector<Vec> rows = s1.basis.row_list();
    for (auto& r : s2.basis.row_list())
        rows.push_back(r);
    return span_of(s1.basis.field, rows, s1.ambient);
}

Subspace intersect(const Subspace& s1, const Subspace& s2) {
    require(s1.ambient == s2.ambient, errc::dimension_mismatch, "subspace intersect");
    // Zassenhaus: echelонize [U | U; V | 0], rows with zero left block give
    // an intersection basis in the right block.
    const std::size_t n = s1.ambient;
    Matrix z(s1.basis.field, s1.dim() + s2.dim(), 2 * n);
    for (std::size_t i = 0; i < s1.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            z.at(i, j) = s1.basis.at(i, j);
            z.at(i, n + j) = s1.basis.at(i, j);
        }
    for (std::size_t i = 0; i < s2.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            z.at(s1.dim() + i, j) = s2.basis.at(i, j);
    Subspace ech = canonical_echelon(z);
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < ech.dim(); ++i) {
        bool left_zero = true;
        for (std::size_t j = 0; j < n && left_zero; ++j)
            left_zero = ech.basis.at(i, j) == 0;
        if (left_zero) {
            Vec v(n);
            for (std::size_t j = 0; j < n; ++j)
                v[j] = ech.basis.at(i, n + j);
            rows.push_back(std::move(v));
        }
    }
    return span_of(s1.basis.field, rows, n);
}

SpanBuilder::SpanBuilder(FieldPtr f, std::size_t ambient)
    : field_(std::move(f)), ambient_(ambient) {}

bool SpanBuilder::add(Vec v) {
    const FiniteField& f = *field_;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        fq c = v[pivots_[i]];
        if (c == 0)
            continue;
        const Vec& r = rows_[i];
        for (std::size_t j = pivots_[i]; j < ambient_; ++j)
            if (r[j] != 0)
                v[j] = f.sub(v[j], f.mul(c, r[j]));
    }
    std::size_t piv = ambient_;
    for (std::size_t j = 0; j < ambient_; ++j)
        if (v[j] != 0) {
            piv = j;
            break;
        }
    if (piv == ambient_)
        return false;
    fq piv_inv = f.inv(v[piv]);
    for (std::size_t j = piv; j < ambient_; ++j)
        v[j] = f.mul(v[j], piv_inv);
    std::size_t pos = std::size_t(std::lower_bound(pivots_.begin(), pivots_.end(), piv) -
                                  pivots_.begin());
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, piv);
    return true;
}

bool SpanBuilder::contains(const Vec& v) const {
    const FiniteField& f = *field_;
    Vec w = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        fq c = w[pivots_[i]];
        if (c == 0)
            continue;
        const Vec& r = rows_[i];
        for (std::size_t j = pivots_[i]; j < ambient_; ++j)
            if (r[j] != 0)
                w[j] = f.sub(w[j], f.mul(c, r[j]));
    }
    return std::all_of(w.begin(), w.end(), [](fq x) { return x == 0; });
}

Subspace SpanBuilder::to_subspace() const {
    return span_of(field_, rows_, ambient_);
}

std::uint64_t gaussian_binomial(std::size_t dim, std::size_t rank, std::uint32_t q,
                                std::uint64_t cap) {
    if (rank > dim)
        return 0;
    // [n k]_q = q^k [n-1 k]_q + [n-1 k-1]_q, all-integer, saturating
    auto sat_mul = [&](std::uint64_t a, std::uint64_t b) {
        if (a != 0 && b > cap / a)
            return cap + 1;
        std::uint64_t r = a * b;
        return r > cap ? cap + 1 : r;
    };
    auto sat_add = [&](std::uint64_t a, std::uint64_t b) {
        std::uint64_t r = a + b;
        return (r < a || r > cap) ? cap + 1 : r;
    };
    std::vector<std::uint64_t> prev(rank + 1, 0), cur(rank + 1, 0);
    prev[0] = 1;
    for (std::size_t n = 1; n <= dim; ++n) {
        cur[0] = 1;
        for (std::size_t k = 1; k <= rank && k <= n; ++k) {
            std::uint64_t qk = 1;
            for (std::size_t i = 0; i < k; ++i)
                qk = sat_mul(qk, q);
            cur[k] = sat_add(sat_mul(qk, prev[k]), prev[k - 1]);
        }
        std::swap(prev, cur);
        std::fill(cur.begin(), cur.end(), 0);
    }
    return prev[rank];
}

RrefWalker::RrefWalker(FieldPtr f, std::size_t d, std::size_t r)
    : field(std::move(f)), dim(d), rank(r) {
    const std::uint32_t q = field->q();
    // pivot patterns = rank-subsets of [0, dim) in lexicographic order
    std::vector<std::size_t> idx(rank);
    for (std::size_t i = 0; i < rank; ++i)
        idx[i] = i;
    bool done = rank > dim;
    while (!done) {
        patterns.push_back(idx);
        // advance combination
        std::size_t i = rank;
        while (i > 0) {
            --i;
            if (idx[i] + (rank - i) < dim + 0) {
                ++idx[i];
                for (std::size_t j = i + 1; j < rank; ++j)
                    idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0)
                done = true;
        }
        if (rank == 0)
            done = true;
    }
    offsets.push_back(0);
    for (const auto& pat : patterns) {
        std::size_t free_slots = 0;
        for (std::size_t i = 0; i < rank; ++i) {
            std::size_t after = dim - 1 - pat[i];
            std::size_t pivots_after = rank - 1 - i;
            free_slots += after - pivots_after;
        }
        std::uint64_t cnt = 1;
        for (std::size_t i = 0; i < free_slots; ++i)
            cnt *= q;
        pattern_counts.push_back(cnt);
        total += cnt;
        offsets.push_back(total);
    }
}

void RrefWalker::decode(std::size_t pattern_idx, std::uint64_t k, Matrix& out) const {
    const auto& pat = patterns[pattern_idx];
    const std::uint32_t q = field->q();
    if (out.rows != rank || out.cols != dim || !out.field) {
        out = Matrix(field, rank, dim);
    } else {
        std::fill(out.a.begin(), out.a.end(), fq(0));
    }
    std::vector<bool> is_pivot(dim, false);
    for (std::size_t p : pat)
        is_pivot[p] = true;
    for (std::size_t i = 0; i < rank; ++i)
        out.at(i, pat[i]) = 1;
    // free slots in row-major order, least significant digit first
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = pat[i] + 1; j < dim; ++j) {
            if (is_pivot[j])
                continue;
            out.at(i, j) = fq(k % q);
            k /= q;
        }
}

} // namespace yl
