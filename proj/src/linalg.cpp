#include "brpic/linalg.hpp"

#include "brpic/errors.hpp"

#include <map>

namespace brpic {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

Vec Matrix::row(std::size_t i) const { return Vec(d_.begin() + i * c_, d_.begin() + (i + 1) * c_); }

void Matrix::set_row(std::size_t i, const Vec& v) {
    if (v.size() != c_) throw StructuralError("row length mismatch");
    std::copy(v.begin(), v.end(), d_.begin() + i * c_);
}

void Matrix::append_row(const Vec& v) {
    if (r_ == 0 && c_ == 0) c_ = v.size();
    if (v.size() != c_) throw StructuralError("row length mismatch");
    d_.insert(d_.end(), v.begin(), v.end());
    ++r_;
}

std::vector<Vec> Matrix::row_list() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < r_; ++i) out.push_back(row(i));
    return out;
}

Matrix Matrix::transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_zero() const {
    for (const auto& x : d_)
        if (!x.is_zero()) return false;
    return true;
}

bool Matrix::is_symmetric() const {
    if (r_ != c_) return false;
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = i + 1; j < c_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw StructuralError("matrix product shape mismatch");
    Matrix m(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
        for (std::size_t k = 0; k < a.c_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.c_; ++j)
                if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
        }
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw StructuralError("matrix sum shape mismatch");
    Matrix m = a;
    for (std::size_t i = 0; i < m.d_.size(); ++i) m.d_[i] += b.d_[i];
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw StructuralError("matrix difference shape mismatch");
    Matrix m = a;
    for (std::size_t i = 0; i < m.d_.size(); ++i) m.d_[i] -= b.d_[i];
    return m;
}

Vec operator*(const Matrix& a, const Vec& v) {
    if (a.c_ != v.size()) throw StructuralError("matrix-vector shape mismatch");
    Vec out(a.r_);
    for (std::size_t i = 0; i < a.r_; ++i)
        for (std::size_t j = 0; j < a.c_; ++j)
            if (!a(i, j).is_zero() && !v[j].is_zero()) out[i] += a(i, j) * v[j];
    return out;
}

bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_; }

Matrix operator*(const Scalar& s, const Matrix& m) {
    Matrix out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) *= s;
    return out;
}

Rref rref(const Matrix& m) {
    Matrix a = m;
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        Scalar inv = a(r, c).inv();
        for (std::size_t j = c; j < a.cols(); ++j)
            if (!a(r, j).is_zero()) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            Scalar f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    Matrix red(r, a.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) red(i, j) = a(i, j);
    return {std::move(red), std::move(piv)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Matrix kernel(const Matrix& m) {
    Rref r = rref(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : r.pivots) is_piv[p] = true;
    Matrix k(0, m.cols());
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        Vec x(m.cols());
        x[f] = 1;
        for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = -r.reduced(i, f);
        k.append_row(x);
    }
    return k;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    if (b.size() != m.rows()) throw StructuralError("solve: right-hand side has wrong length");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    Rref r = rref(aug);
    Vec x(m.cols());
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        if (r.pivots[i] == m.cols()) return std::nullopt;
        x[r.pivots[i]] = r.reduced(i, m.cols());
    }
    return x;
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw NotInvertible("matrix is not square");
    std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    Rref r = rref(aug);
    if (r.pivots.size() < n || (n > 0 && r.pivots[n - 1] >= n))
        throw NotInvertible("matrix is singular");
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
    return inv;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

Subspace::Subspace(std::size_t ambient) : n_(ambient), basis_(0, ambient) {}

Subspace Subspace::span(std::size_t ambient, const std::vector<Vec>& vectors) {
    Matrix m(vectors.size(), ambient);
    for (std::size_t i = 0; i < vectors.size(); ++i) m.set_row(i, vectors[i]);
    return span(m);
}

Subspace Subspace::span(const Matrix& rows) {
    Subspace s(rows.cols());
    Rref r = rref(rows);
    s.basis_ = std::move(r.reduced);
    s.piv_ = std::move(r.pivots);
    return s;
}

Subspace Subspace::full(std::size_t ambient) { return span(Matrix::identity(ambient)); }

bool Subspace::contains(const Vec& v) const {
    if (v.size() != n_) throw StructuralError("vector has wrong length for subspace");
    Vec r = v;
    for (std::size_t i = 0; i < piv_.size(); ++i) {
        Scalar f = r[piv_[i]];
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < n_; ++j)
            if (!basis_(i, j).is_zero()) r[j] -= f * basis_(i, j);
    }
    for (const auto& x : r)
        if (!x.is_zero()) return false;
    return true;
}

bool Subspace::contains(const Subspace& o) const {
    for (std::size_t i = 0; i < o.dim(); ++i)
        if (!contains(o.basis_vector(i))) return false;
    return true;
}

Vec Subspace::coords(const Vec& v) const {
    if (!contains(v)) throw DomainError("vector is not in the subspace");
    Vec c(piv_.size());
    for (std::size_t i = 0; i < piv_.size(); ++i) c[i] = v[piv_[i]];
    return c;
}

Subspace Subspace::intersect(const Subspace& o) const {
    if (n_ != o.n_) throw StructuralError("intersect: ambient mismatch");
    std::size_t k = dim(), l = o.dim();
    // a.U = b.W  <=>  [U^T | -W^T] (a, b) = 0
    Matrix m(n_, k + l);
    for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t i = 0; i < k; ++i) m(j, i) = basis_(i, j);
        for (std::size_t i = 0; i < l; ++i) m(j, k + i) = -o.basis_(i, j);
    }
    Matrix ker = kernel(m);
    std::vector<Vec> vs;
    for (std::size_t r = 0; r < ker.rows(); ++r) {
        Vec x(n_);
        for (std::size_t i = 0; i < k; ++i)
            if (!ker(r, i).is_zero())
                for (std::size_t j = 0; j < n_; ++j) x[j] += ker(r, i) * basis_(i, j);
        vs.push_back(std::move(x));
    }
    return span(n_, vs);
}

Subspace Subspace::sum(const Subspace& o) const {
    if (n_ != o.n_) throw StructuralError("sum: ambient mismatch");
    auto rows = basis_.row_list();
    auto more = o.basis_.row_list();
    rows.insert(rows.end(), more.begin(), more.end());
    return span(n_, rows);
}

Subspace Subspace::project(const std::vector<std::size_t>& positions) const {
    Matrix m(dim(), positions.size());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < positions.size(); ++j) m(i, j) = basis_(i, positions[j]);
    return span(m);
}

Subspace Subspace::embed(std::size_t ambient, const std::vector<std::size_t>& positions) const {
    if (positions.size() != n_) throw StructuralError("embed: position list has wrong length");
    Matrix m(dim(), ambient);
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < n_; ++j) m(i, positions[j]) = basis_(i, j);
    return span(m);
}

Subspace Subspace::scaled(const Vec& w) const {
    if (w.size() != n_) throw StructuralError("scaled: weight vector has wrong length");
    Matrix m = basis_;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (!m(i, j).is_zero()) m(i, j) *= w[j];
    return span(m);
}

Scalar BilinearForm::eval(const Vec& a, const Vec& b) const {
    Scalar s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero() && !gram(i, j).is_zero()) s += a[i] * gram(i, j) * b[j];
    }
    return s;
}

BilinearForm zero_form(std::size_t dim) { return BilinearForm{Matrix(dim, dim)}; }

Matrix restricted_action(const Subspace& W, const Vec& w) {
    Matrix m(W.dim(), W.dim());
    for (std::size_t i = 0; i < W.dim(); ++i) {
        Vec b = W.basis_vector(i);
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) b[j] *= w[j];
        m.set_row(i, W.coords(b));
    }
    return m;
}

bool form_invariant_under(const Subspace& W, const BilinearForm& beta, const std::vector<Vec>& actions) {
    for (const auto& w : actions) {
        if (!W.invariant_under(w)) return false;
        Matrix m = restricted_action(W, w);
        if (m * beta.gram * m.transpose() != beta.gram) return false;
    }
    return true;
}

std::pair<Subspace, BilinearForm> transport(const Subspace& W, const BilinearForm& beta, const Vec& w) {
    Subspace gW = W.scaled(w);
    Vec winv(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) winv[j] = w[j].inv();
    Matrix q(gW.dim(), W.dim());
    for (std::size_t i = 0; i < gW.dim(); ++i) {
        Vec s = gW.basis_vector(i);
        for (std::size_t j = 0; j < s.size(); ++j)
            if (!s[j].is_zero()) s[j] *= winv[j];
        q.set_row(i, W.coords(s));
    }
    return {gW, BilinearForm{q * beta.gram * q.transpose()}};
}

std::optional<std::vector<Vec>> class_adapted_basis(const Subspace& W, const std::vector<int>& cls) {
    if (cls.size() != W.ambient()) throw StructuralError("class list has wrong length");
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t j = 0; j < cls.size(); ++j) groups[cls[j]].push_back(j);
    std::vector<Vec> out;
    for (const auto& [c, pos] : groups) {
        std::vector<Vec> unit;
        for (auto p : pos) {
            Vec e(W.ambient());
            e[p] = 1;
            unit.push_back(e);
        }
        Subspace piece = W.intersect(Subspace::span(W.ambient(), unit));
        for (std::size_t i = 0; i < piece.dim(); ++i) out.push_back(piece.basis_vector(i));
    }
    if (out.size() != W.dim()) return std::nullopt;
    return out;
}

Vec GModule::weights(const Coords& g) const {
    Vec w(chis.size());
    for (std::size_t i = 0; i < chis.size(); ++i) w[i] = pairing_value(G, chis[i], g);
    return w;
}

Vec GModule::dual_weights(const Coords& g) const {
    Vec w(chis.size());
    for (std::size_t i = 0; i < chis.size(); ++i) w[i] = Scalar::root_of_unity(G.exponent(), -pairing(G, chis[i], g));
    return w;
}

Vec GModule::pair_weights(const Coords& x, const Coords& y) const {
    Vec a = weights(x), b = weights(y);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

Vec GModule::pair_dual_weights(const Coords& x, const Coords& y) const {
    Vec a = weights(x), b = dual_weights(y);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

void GModule::validate() const {
    if (!G.is_valid(u)) throw StructuralError("u is not an element of G");
    if (G.order_of(u) != 2) throw StructuralError("u must have order 2");
    for (const auto& chi : chis) {
        if (!G.is_valid(chi)) throw StructuralError("character has wrong shape");
        if (2 * pairing(G, chi, u) != G.exponent()) throw StructuralError("u must act on V by -1");
    }
}

Composition relation_compose(const Subspace& W, const Subspace& Wt) {
    if (W.ambient() != Wt.ambient() || W.ambient() % 2 != 0) throw StructuralError("relation_compose: ambient mismatch");
    const std::size_t d = W.ambient() / 2;
    const std::size_t k = W.dim(), l = Wt.dim();
    // middle coordinates must agree: a.W_2 = b.Wt_1
    Matrix m(d, k + l);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < k; ++i) m(j, i) = W.basis()(i, d + j);
        for (std::size_t i = 0; i < l; ++i) m(j, k + i) = -Wt.basis()(i, j);
    }
    Matrix ker = kernel(m);
    const std::size_t r = ker.rows();
    Matrix aug(r, 2 * d + k + l);
    for (std::size_t t = 0; t < r; ++t) {
        for (std::size_t i = 0; i < k; ++i) {
            const Scalar& a = ker(t, i);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < d; ++j) aug(t, j) += a * W.basis()(i, j);
        }
        for (std::size_t i = 0; i < l; ++i) {
            const Scalar& b = ker(t, k + i);
            if (b.is_zero()) continue;
            for (std::size_t j = 0; j < d; ++j) aug(t, d + j) += b * Wt.basis()(i, d + j);
        }
        for (std::size_t i = 0; i < k + l; ++i) aug(t, 2 * d + i) = ker(t, i);
    }
    Rref red = rref(aug);
    if (red.pivots.size() != r || (r > 0 && red.pivots.back() >= 2 * d))
        throw DomainError("witness not unique");
    Composition c;
    Matrix res(r, 2 * d);
    c.left = Matrix(r, k);
    c.right = Matrix(r, l);
    for (std::size_t t = 0; t < r; ++t) {
        for (std::size_t j = 0; j < 2 * d; ++j) res(t, j) = red.reduced(t, j);
        for (std::size_t i = 0; i < k; ++i) c.left(t, i) = red.reduced(t, 2 * d + i);
        for (std::size_t i = 0; i < l; ++i) c.right(t, i) = red.reduced(t, 2 * d + k + i);
    }
    c.result = Subspace::span(res);
    if (c.result.dim() != r || !(c.result.basis() == res)) throw DomainError("witness not unique");
    return c;
}

BilinearForm bullet_form(const Composition& c, const BilinearForm& beta, const BilinearForm& beta_t) {
    return BilinearForm{c.left * beta.gram * c.left.transpose() + c.right * beta_t.gram * c.right.transpose()};
}

}  // namespace brpic
