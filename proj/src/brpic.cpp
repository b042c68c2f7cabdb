#include "brpic/brpic.hpp"

#include "brpic/errors.hpp"

#include <functional>

namespace brpic {

namespace {

Coords head(const Coords& x, int r) { return Coords(x.begin(), x.begin() + r); }
Coords tail(const Coords& x, int r) { return Coords(x.begin() + r, x.end()); }

struct PairGen {
    Coords x, y;
};

std::vector<PairGen> u_generators(const OrthAut& alpha) {
    int r = alpha.group().rank();
    std::vector<PairGen> out;
    for (const auto& g : twisted_subgroup(alpha).U.generators()) out.push_back({head(g, r), tail(g, r)});
    return out;
}

Validation fail(std::string why) { return Validation{false, std::move(why)}; }

Vec axis_vector(std::size_t n, std::size_t i) {
    Vec e(n);
    e[i] = 1;
    return e;
}

Subspace axis(std::size_t d, bool second) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < d; ++i) rows.push_back(axis_vector(2 * d, second ? d + i : i));
    return Subspace::span(2 * d, rows);
}

// Weights of (x^-1, y) acting on T entries: T_ij -> R(x)^-1_i T_ij R(y)_j.
bool t_equivariant(const GModule& V, const Matrix& T, const Coords& x, const Coords& y) {
    Vec rx = V.pair_dual_weights(V.G.neg(x), V.G.neg(x));
    Vec ry = V.pair_dual_weights(y, y);
    for (std::size_t i = 0; i < T.rows(); ++i)
        for (std::size_t j = 0; j < T.cols(); ++j)
            if (!T(i, j).is_zero() && rx[i] * ry[j] != Scalar(1)) return false;
    return true;
}

Matrix block(const Matrix& T, std::size_t r0, std::size_t c0, std::size_t d) {
    Matrix b(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) b(i, j) = T(r0 + i, c0 + j);
    return b;
}

Matrix assemble(const Matrix& A, const Matrix& B, const Matrix& C, const Matrix& D) {
    std::size_t d = A.rows();
    Matrix T(2 * d, 2 * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            T(i, j) = A(i, j);
            T(i, d + j) = B(i, j);
            T(d + i, j) = C(i, j);
            T(d + i, d + j) = D(i, j);
        }
    return T;
}

std::optional<Coords> first_witness(std::size_t n, const std::function<bool(std::size_t)>& test, Exec exec) {
    std::vector<char> hit(n, 0);
    if (exec == Exec::Serial) {
        for (std::size_t k = 0; k < n; ++k)
            if (test(k)) {
                hit[k] = 1;
                break;
            }
    } else {
#pragma omp parallel for schedule(dynamic)
        for (long k = 0; k < static_cast<long>(n); ++k) hit[k] = test(static_cast<std::size_t>(k)) ? 1 : 0;
    }
    for (std::size_t k = 0; k < n; ++k)
        if (hit[k]) return Coords{static_cast<int>(k)};
    return std::nullopt;
}

// Allowed entries of a d x d block under the pair weights; entry (i, j) picks up lw[i] * rw[j].
std::vector<std::vector<bool>> allowed_pattern(std::size_t d, const std::vector<std::pair<Vec, Vec>>& weights) {
    std::vector<std::vector<bool>> ok(d, std::vector<bool>(d, true));
    for (const auto& [lw, rw] : weights)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (lw[i] * rw[j] != Scalar(1)) ok[i][j] = false;
    return ok;
}

// Constraint matrix for block entries, unknown (i, j) at i * d + j.
Matrix pattern_constraints(std::size_t d, const std::vector<std::pair<Vec, Vec>>& weights) {
    Matrix m(0, d * d);
    for (const auto& [lw, rw] : weights)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Vec row(d * d);
                row[i * d + j] = lw[i] * rw[j] - Scalar(1);
                if (!row[i * d + j].is_zero()) m.append_row(row);
            }
    return m;
}

std::optional<std::vector<std::size_t>> perfect_matching(const std::vector<std::vector<bool>>& ok) {
    std::size_t d = ok.size();
    std::vector<long> match_col(d, -1);
    std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t i, std::vector<bool>& seen) {
        for (std::size_t j = 0; j < d; ++j) {
            if (!ok[i][j] || seen[j]) continue;
            seen[j] = true;
            if (match_col[j] < 0 || augment(static_cast<std::size_t>(match_col[j]), seen)) {
                match_col[j] = static_cast<long>(i);
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<bool> seen(d, false);
        if (!augment(i, seen)) return std::nullopt;
    }
    std::vector<std::size_t> row_to_col(d);
    for (std::size_t j = 0; j < d; ++j) row_to_col[match_col[j]] = j;
    return row_to_col;
}

struct BlockSystems {
    std::vector<std::pair<Vec, Vec>> a_weights, c_weights;
};

BlockSystems block_systems(const GModule& V, const OrthAut& alpha) {
    BlockSystems s;
    std::size_t d = V.dim();
    for (const auto& g : u_generators(alpha)) {
        Vec rx = V.pair_dual_weights(V.G.neg(g.x), V.G.neg(g.x));
        Vec ry = V.pair_dual_weights(g.y, g.y);
        Vec lA(rx.begin(), rx.begin() + d), lC(rx.begin() + d, rx.end());
        Vec rV(ry.begin(), ry.begin() + d);
        s.a_weights.push_back({lA, rV});
        s.c_weights.push_back({lC, rV});
    }
    return s;
}

// Equivariant C with C^T A symmetric.
Matrix c_space(std::size_t d, const BlockSystems& s, const Matrix& A) {
    Matrix m = pattern_constraints(d, s.c_weights);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = k + 1; l < d; ++l) {
            // (C^T A)_kl - (C^T A)_lk
            Vec row(d * d);
            for (std::size_t i = 0; i < d; ++i) {
                row[i * d + k] += A(i, l);
                row[i * d + l] -= A(i, k);
            }
            m.append_row(row);
        }
    if (m.rows() == 0) return Matrix::identity(d * d);
    return kernel(m);
}

}  // namespace

Subspace diagonal(const GModule& V) {
    std::size_t d = V.dim();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < d; ++i) {
        Vec e(2 * d);
        e[i] = 1;
        e[d + i] = 1;
        rows.push_back(e);
    }
    return Subspace::span(2 * d, rows);
}

Validation validate_rdatum(const GModule& V, const RDatum& r) {
    std::size_t d = V.dim();
    if (r.W.ambient() != 2 * d) return fail("W must lie in V + V");
    if (r.beta.gram.rows() != r.W.dim() || r.beta.gram.cols() != r.W.dim()) return fail("beta has wrong size");
    if (!(r.alpha.group() == V.G)) return fail("alpha is defined on a different group");
    if (r.W.intersect(axis(d, false)).dim() != 0) return fail("W meets V + 0");
    if (r.W.intersect(axis(d, true)).dim() != 0) return fail("W meets 0 + V");
    if (!u_pair_in(twisted_subgroup(r.alpha), V.u)) return fail("(u, u) is not in U_alpha");
    std::vector<Vec> acts;
    for (const auto& g : u_generators(r.alpha)) acts.push_back(V.pair_weights(g.x, g.y));
    for (const auto& w : acts)
        if (!r.W.invariant_under(w)) return fail("W is not U_alpha-invariant");
    if (!r.beta.is_symmetric()) return fail("beta is not symmetric");
    if (!form_invariant_under(r.W, r.beta, acts)) return fail("beta is not U_alpha-invariant");
    return {};
}

Validation validate_odatum(const GModule& V, const ODatum& o) {
    std::size_t d = V.dim();
    if (o.T.rows() != 2 * d || o.T.cols() != 2 * d) return fail("T must be an endomorphism of V + V*");
    if (!(o.alpha.group() == V.G)) return fail("alpha is defined on a different group");
    if (!u_pair_in(twisted_subgroup(o.alpha), V.u)) return fail("(u, u) is not in U_alpha");
    if (rank(o.T) != 2 * d) return fail("T is not invertible");
    if (!block(o.T, 0, d, d).is_zero()) return fail("B block is nonzero");
    Matrix A = block(o.T, 0, 0, d), D = block(o.T, d, d, d);
    if (D.transpose() * A != Matrix::identity(d)) return fail("D(f)(A v) != f(v)");
    for (const auto& g : u_generators(o.alpha))
        if (!t_equivariant(V, o.T, g.x, g.y)) return fail("T is not U_alpha-equivariant");
    return {};
}

RDatum rdatum_identity(const GModule& V) {
    return RDatum{diagonal(V), zero_form(V.dim()), OrthAut::identity(V.G)};
}

RDatum rdatum_product(const GModule& V, const RDatum& a, const RDatum& b) {
    Composition c = relation_compose(a.W, b.W);
    RDatum out{c.result, bullet_form(c, a.beta, b.beta), a.alpha * b.alpha};
    Validation v = validate_rdatum(V, out);
    if (!v) throw DomainError("product is not a valid datum: " + v.reason);
    return out;
}

std::optional<Coords> rdatum_equiv(const GModule& V, const RDatum& a, const RDatum& b, Exec exec) {
    if (a.alpha != b.alpha || a.W.dim() != b.W.dim()) return std::nullopt;
    FinAbGroup GG = direct_sum(V.G, V.G);
    int r = V.G.rank();
    auto test = [&](std::size_t k) {
        Coords xy = GG.element(k);
        auto [gW, gb] = transport(a.W, a.beta, V.pair_weights(head(xy, r), tail(xy, r)));
        return gW == b.W && gb == b.beta;
    };
    auto hit = first_witness(GG.order(), test, exec);
    if (!hit) return std::nullopt;
    return GG.element(static_cast<std::size_t>((*hit)[0]));
}

ODatum odatum_identity(const GModule& V) { return ODatum{Matrix::identity(2 * V.dim()), OrthAut::identity(V.G)}; }

ODatum odatum_product(const GModule&, const ODatum& a, const ODatum& b) { return ODatum{a.T * b.T, a.alpha * b.alpha}; }

ODatum odatum_inverse(const GModule&, const ODatum& o) { return ODatum{inverse(o.T), o.alpha.inverse()}; }

std::optional<Coords> odatum_equiv(const GModule& V, const ODatum& a, const ODatum& b, Exec exec) {
    if (a.alpha != b.alpha || a.T.rows() != b.T.rows()) return std::nullopt;
    FinAbGroup GG = direct_sum(V.G, V.G);
    int r = V.G.rank();
    // b = (x^-1, y^-1).a, i.e. b = R(x) a R(y)^-1
    auto test = [&](std::size_t k) {
        Coords xy = GG.element(k);
        Vec rx = V.pair_dual_weights(head(xy, r), head(xy, r));
        Coords yi = V.G.neg(tail(xy, r));
        Vec ry = V.pair_dual_weights(yi, yi);
        for (std::size_t i = 0; i < a.T.rows(); ++i)
            for (std::size_t j = 0; j < a.T.cols(); ++j)
                if (rx[i] * a.T(i, j) * ry[j] != b.T(i, j)) return false;
        return true;
    };
    auto hit = first_witness(GG.order(), test, exec);
    if (!hit) return std::nullopt;
    return GG.element(static_cast<std::size_t>((*hit)[0]));
}

std::optional<int> odatum_order(const GModule& V, const ODatum& o, int max_order) {
    ODatum id = odatum_identity(V);
    ODatum p = o;
    for (int k = 1; k <= max_order; ++k) {
        if (odatum_equiv(V, p, id, Exec::Serial)) return k;
        p = odatum_product(V, p, o);
    }
    return std::nullopt;
}

std::optional<int> matrix_order(const Matrix& T, int max_order) {
    Matrix p = T, id = Matrix::identity(T.rows());
    for (int k = 1; k <= max_order; ++k) {
        if (p == id) return k;
        p = p * T;
    }
    return std::nullopt;
}

Subspace tau(const GModule& V, const Subspace& W, const BilinearForm& beta) {
    const std::size_t d = V.dim(), k = W.dim();
    if (W.ambient() != 2 * d) throw StructuralError("W must lie in V + V");
    // unknowns: c (k), f1 (d), f2 (d); for each basis b_j of W:
    // sum_i c_i beta(b_i, b_j) - f1(b_j^1) + f2(b_j^2) = 0
    Matrix m(k, k + 2 * d);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < k; ++i) m(j, i) = beta.gram(i, j);
        for (std::size_t l = 0; l < d; ++l) {
            m(j, k + l) = -W.basis()(j, l);
            m(j, k + d + l) = W.basis()(j, d + l);
        }
    }
    Matrix ker = kernel(m);
    std::vector<Vec> rows;
    for (std::size_t t = 0; t < ker.rows(); ++t) {
        Vec x(4 * d);
        for (std::size_t i = 0; i < k; ++i) {
            const Scalar& c = ker(t, i);
            if (c.is_zero()) continue;
            for (std::size_t l = 0; l < d; ++l) {
                x[l] += c * W.basis()(i, l);
                x[2 * d + l] += c * W.basis()(i, d + l);
            }
        }
        for (std::size_t l = 0; l < d; ++l) {
            x[d + l] = ker(t, k + l);
            x[3 * d + l] = ker(t, k + d + l);
        }
        rows.push_back(std::move(x));
    }
    return Subspace::span(4 * d, rows);
}

Subspace lag_product(const GModule& V, const Subspace& L1, const Subspace& L2) {
    if (L1.ambient() != 4 * V.dim() || L2.ambient() != 4 * V.dim()) throw StructuralError("Lagrangian has wrong ambient");
    return relation_compose(L1, L2).result;
}

Subspace odatum_graph(const GModule& V, const ODatum& o) {
    std::size_t n = 2 * V.dim();
    std::vector<Vec> rows;
    for (std::size_t j = 0; j < n; ++j) {
        Vec x(2 * n);
        for (std::size_t i = 0; i < n; ++i) x[i] = o.T(i, j);
        x[n + j] = 1;
        rows.push_back(std::move(x));
    }
    return Subspace::span(2 * n, rows);
}

RDatum odatum_to_rdatum(const GModule& V, const ODatum& o) {
    Validation v = validate_odatum(V, o);
    if (!v) throw DomainError("invalid T-datum: " + v.reason);
    std::size_t d = V.dim();
    Matrix A = block(o.T, 0, 0, d), C = block(o.T, d, 0, d);
    std::vector<Vec> rows;
    for (std::size_t j = 0; j < d; ++j) {
        Vec x(2 * d);
        for (std::size_t i = 0; i < d; ++i) x[i] = A(i, j);
        x[d + j] = 1;
        rows.push_back(std::move(x));
    }
    Subspace W = Subspace::span(2 * d, rows);
    // basis b_i = (A v_i, v_i); beta_T(b_i, b_j) = (C v_i)(A v_j)
    Matrix vs(W.dim(), d);
    for (std::size_t i = 0; i < W.dim(); ++i)
        for (std::size_t l = 0; l < d; ++l) vs(i, l) = W.basis()(i, d + l);
    Matrix gram = vs * C.transpose() * A * vs.transpose();
    if (!gram.is_symmetric()) throw DomainError("T outside O(V,u,G) image");
    return RDatum{W, BilinearForm{gram}, o.alpha};
}

ODatum rdatum_to_odatum(const GModule& V, const RDatum& r) {
    std::size_t d = V.dim(), n = 2 * d;
    Subspace L = tau(V, r.W, r.beta);
    if (L.dim() != n) throw NotInvertible("tau(W, beta) has the wrong dimension");
    Matrix P1(n, n), P2(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            P1(i, j) = L.basis()(i, j);
            P2(i, j) = L.basis()(i, n + j);
        }
    Matrix P2inv;
    try {
        P2inv = inverse(P2);
    } catch (const NotInvertible&) {
        throw NotInvertible("tau(W, beta) does not project bijectively onto V + V*");
    }
    // rows are (T x, x): P1 = P2 T^T
    ODatum o{(P2inv * P1).transpose(), r.alpha};
    Validation v = validate_odatum(V, o);
    if (!v) throw DomainError("converted T-datum is invalid: " + v.reason);
    return o;
}

InverseResult rdatum_inverse(const GModule& V, const RDatum& r) {
    InverseResult res;
    ODatum o;
    try {
        o = rdatum_to_odatum(V, r);
    } catch (const NotInvertible&) {
        return res;
    }
    RDatum inv = odatum_to_rdatum(V, odatum_inverse(V, o));
    RDatum id = rdatum_identity(V);
    if (!rdatum_equiv(V, rdatum_product(V, r, inv), id) || !rdatum_equiv(V, rdatum_product(V, inv, r), id))
        throw DomainError("constructed inverse does not invert the datum");
    res.invertible = true;
    res.inverse = std::move(inv);
    return res;
}

std::size_t BrpicDescription::nonempty_components() const {
    std::size_t n = 0;
    for (const auto& c : components) n += c.has_invertible_a;
    return n;
}

BrpicDescription describe_brpic(const GModule& V, std::size_t bound, Exec exec) {
    V.validate();
    BrpicDescription out;
    auto all = enumerate_orth(V.G, bound, exec);
    out.orth_order = all.size();
    std::size_t d = V.dim();
    for (const auto& alpha : all) {
        if (!u_pair_in(twisted_subgroup(alpha), V.u)) continue;
        AlphaComponent c;
        c.alpha = alpha;
        BlockSystems s = block_systems(V, alpha);
        Matrix acon = pattern_constraints(d, s.a_weights);
        c.a_dim = d * d - (acon.rows() ? rank(acon) : 0);
        auto match = perfect_matching(allowed_pattern(d, s.a_weights));
        c.has_invertible_a = match.has_value();
        Matrix A = Matrix::identity(d);
        if (match) {
            A = Matrix(d, d);
            for (std::size_t i = 0; i < d; ++i) A(i, (*match)[i]) = 1;
            c.a_rep = A;
            Matrix D = inverse(A).transpose();
            ODatum probe{assemble(A, Matrix(d, d), Matrix(d, d), D), alpha};
            c.d_forced_equivariant = static_cast<bool>(validate_odatum(V, probe));
            c.c_dim = c_space(d, s, A).rows();
        } else {
            Matrix ccon = pattern_constraints(d, s.c_weights);
            c.c_dim = d * d - (ccon.rows() ? rank(ccon) : 0);
        }
        out.components.push_back(std::move(c));
    }
    return out;
}

std::optional<ODatum> sample_odatum(const GModule& V, const OrthAut& alpha, std::mt19937_64& rng) {
    if (!u_pair_in(twisted_subgroup(alpha), V.u)) return std::nullopt;
    std::size_t d = V.dim();
    BlockSystems s = block_systems(V, alpha);
    auto ok = allowed_pattern(d, s.a_weights);
    auto match = perfect_matching(ok);
    if (!match) return std::nullopt;
    std::uniform_int_distribution<int> small(-2, 2), nz(1, 3);
    Matrix A(d, d);
    for (int attempt = 0; attempt < 100; ++attempt) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) A(i, j) = ok[i][j] ? Scalar(small(rng)) : Scalar(0);
        for (std::size_t i = 0; i < d; ++i) A(i, (*match)[i]) = Scalar(nz(rng) * (small(rng) < 0 ? -1 : 1));
        if (rank(A) == d) break;
    }
    if (rank(A) != d) return std::nullopt;
    Matrix basis = c_space(d, s, A);
    Matrix C(d, d);
    for (std::size_t t = 0; t < basis.rows(); ++t) {
        Scalar coef(small(rng));
        if (coef.is_zero()) continue;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) C(i, j) += coef * basis(t, i * d + j);
    }
    ODatum o{assemble(A, Matrix(d, d), C, inverse(A).transpose()), alpha};
    Validation v = validate_odatum(V, o);
    if (!v) throw DomainError("sampled datum failed validation: " + v.reason);
    return o;
}

}  // namespace brpic
