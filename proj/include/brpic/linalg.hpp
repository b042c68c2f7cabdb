#pragma once

#include "brpic/abelian.hpp"
#include "brpic/cyclo.hpp"

#include <optional>
#include <vector>

namespace brpic {

using Vec = std::vector<Scalar>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), d_(rows * cols) {}
    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Scalar& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }
    Vec row(std::size_t i) const;
    void set_row(std::size_t i, const Vec& v);
    void append_row(const Vec& v);
    std::vector<Vec> row_list() const;

    Matrix transpose() const;
    bool is_zero() const;
    bool is_symmetric() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Vec operator*(const Matrix& a, const Vec& v);
    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Scalar> d_;
};

Matrix operator*(const Scalar& s, const Matrix& m);

struct Rref {
    Matrix reduced;  // nonzero rows only
    std::vector<std::size_t> pivots;
};

Rref rref(const Matrix& m);
std::size_t rank(const Matrix& m);
// Basis of {x : m x = 0}, one vector per row.
Matrix kernel(const Matrix& m);
// Some x with m x = b, or nullopt.
std::optional<Vec> solve(const Matrix& m, const Vec& b);
// NotInvertible unless square and nonsingular.
Matrix inverse(const Matrix& m);
Matrix block_diag(const Matrix& a, const Matrix& b);

// Subspace of k^n held as its canonical RREF basis; equality is basis equality.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient);
    static Subspace span(std::size_t ambient, const std::vector<Vec>& vectors);
    static Subspace span(const Matrix& rows);
    static Subspace full(std::size_t ambient);

    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return piv_; }
    Vec basis_vector(std::size_t i) const { return basis_.row(i); }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& o) const;
    // Coordinates of v in the RREF basis; DomainError if v is outside.
    Vec coords(const Vec& v) const;
    Subspace intersect(const Subspace& o) const;
    Subspace sum(const Subspace& o) const;
    // Image under the coordinate projection onto the given positions.
    Subspace project(const std::vector<std::size_t>& positions) const;
    // Embed into a larger ambient by placing coordinate i at positions[i].
    Subspace embed(std::size_t ambient, const std::vector<std::size_t>& positions) const;
    // Image under a diagonal map (coordinate i scaled by w[i]).
    Subspace scaled(const Vec& w) const;
    bool invariant_under(const Vec& w) const { return scaled(w) == *this; }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.n_ == b.n_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    std::size_t n_ = 0;
    Matrix basis_;
    std::vector<std::size_t> piv_;
};

// Bilinear form on a subspace, Gram matrix in the subspace's RREF basis.
struct BilinearForm {
    Matrix gram;
    Scalar eval(const Vec& a, const Vec& b) const;  // coordinate vectors
    bool is_symmetric() const { return gram.is_symmetric(); }
    friend bool operator==(const BilinearForm& a, const BilinearForm& b) { return a.gram == b.gram; }
};

BilinearForm zero_form(std::size_t dim);

// Matrix of the diagonal map w restricted to W, in W's basis (rows = images).
// DomainError if W is not stable.
Matrix restricted_action(const Subspace& W, const Vec& w);
bool form_invariant_under(const Subspace& W, const BilinearForm& beta, const std::vector<Vec>& actions);
// (g.W, g.beta) with (g.beta)(a,b) = beta(g^-1 a, g^-1 b), g diagonal with weights w.
std::pair<Subspace, BilinearForm> transport(const Subspace& W, const BilinearForm& beta, const Vec& w);

// Basis of W made of vectors supported on single classes; nullopt if W is not
// a sum of its intersections with the class coordinate subspaces.
std::optional<std::vector<Vec>> class_adapted_basis(const Subspace& W, const std::vector<int>& cls);

// G-module V = sum of one-dimensional pieces with characters chis.
struct GModule {
    FinAbGroup G;
    Coords u;
    std::vector<Coords> chis;

    std::size_t dim() const { return chis.size(); }
    int conductor() const { return G.exponent(); }
    // Diagonal weights of g on V and on V*.
    Vec weights(const Coords& g) const;
    Vec dual_weights(const Coords& g) const;
    // (x, y) in G x G acting on V+V and on V+V*.
    Vec pair_weights(const Coords& x, const Coords& y) const;
    Vec pair_dual_weights(const Coords& x, const Coords& y) const;
    // Throws StructuralError when u is not of order 2 or u does not act by -1.
    void validate() const;
};

// Relation composition through the middle factor.
struct Composition {
    Subspace result;  // {(v1, w1)}
    Matrix left;      // row i: coordinates in W of (v1, v2) for result basis i
    Matrix right;     // row i: coordinates in W~ of (v2, w1)
};

// W, Wt inside V+V with dim V = d. DomainError("witness not unique") when the
// middle witness is not determined.
Composition relation_compose(const Subspace& W, const Subspace& Wt);
BilinearForm bullet_form(const Composition& c, const BilinearForm& beta, const BilinearForm& beta_t);

}  // namespace brpic
