#include "brpic/errors.hpp"
#include "brpic/hopf.hpp"
#include "hopf_internal.hpp"

#include <functional>
#include <map>
#include <numeric>

namespace brpic {

using detail::first_failure;

namespace {

Coords concat(const Coords& a, const Coords& b) {
    Coords c = a;
    c.insert(c.end(), b.begin(), b.end());
    return c;
}

// Structure of the subalgebra spanned by `basis` (basis[0] = 1), coordinates through `span`.
struct Coordinates {
    SparseSpan span;
    Matrix to_basis;  // row-coordinate -> basis-coordinate
    explicit Coordinates(const std::vector<Sparse>& basis) : span(basis) {
        const std::size_t n = basis.size();
        if (span.dim() != n) throw DomainError("basis is not independent");
        Matrix M(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            auto c = span.coords(basis[i]);
            for (std::size_t j = 0; j < n; ++j) M(i, j) = c[j];
        }
        to_basis = inverse(M);
    }
    Sparse operator()(const Sparse& x) const {
        auto c = span.coords(x);
        Sparse out;
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (c[j].is_zero()) continue;
            for (std::size_t i = 0; i < c.size(); ++i) add_term(out, i, c[j] * to_basis(j, i));
        }
        return out;
    }
};

}  // namespace

// ---------------------------------------------------------------- cotensor

Cotensor cotensor(std::shared_ptr<const ComodAlg> L, std::shared_ptr<const ComodAlg> K, std::shared_ptr<const HopfAlg> H) {
    const HopfAlg& B = *L->host;
    if (K->host != L->host) throw StructuralError("cotensor needs a common host");
    if (!(B.group() == direct_sum(H->group(), H->group())) || B.gens().size() != 2 * H->gens().size())
        throw StructuralError("host is not H (x) H");
    Cotensor c;
    c.L = L;
    c.K = K;
    c.H = H;
    const std::size_t dL = L->dim(), dK = K->dim(), dH = H->dim();
    auto phi = iso_cop_map(*H);
    c.right.resize(dL);
    for (std::size_t l = 0; l < dL; ++l)
        for (const auto& [k, v] : L->coaction[l])
            if (auto h = detail::project_second(*H, B, k / dL))
                for (const auto& [p, cp] : phi[*h]) add_term(c.right[l], (k % dL) * dH + p, v * cp);
    c.left.resize(dK);
    for (std::size_t x = 0; x < dK; ++x)
        for (const auto& [k, v] : K->coaction[x])
            if (auto h = detail::project_first(*H, B, k / dK)) add_term(c.left[x], *h * dK + k % dK, v);
    std::vector<Sparse> cols(dL * dK);
    for (std::size_t i = 0; i < dL * dK; ++i) cols[i] = c.defect(unit_vector(i));
    c.space = SparseSpan(sparse_kernel(cols));
    return c;
}

Sparse Cotensor::defect(const Sparse& x) const {
    const std::size_t dK = K->dim(), dH = H->dim();
    Sparse out;
    for (const auto& [key, v] : x) {
        std::size_t l = key / dK, k = key % dK;
        for (const auto& [r, c] : right[l]) add_term(out, r * dK + k, v * c);
        for (const auto& [q, c] : left[k]) add_term(out, (l * dH + q / dK) * dK + q % dK, -v * c);
    }
    return out;
}

Sparse Cotensor::lambda(const Sparse& x) const {
    const HopfAlg& B = *L->host;
    const std::size_t dL = L->dim(), dK = K->dim();
    Sparse out;
    for (const auto& [key, v] : x) {
        std::size_t l = key / dK, k = key % dK;
        for (const auto& [a, ca] : L->coaction[l]) {
            auto h1 = detail::project_first(*H, B, a / dL);
            if (!h1) continue;
            for (const auto& [b, cb] : K->coaction[k]) {
                auto h2 = detail::project_second(*H, B, b / dK);
                if (!h2) continue;
                std::size_t idx = tensor_index(*H, *H, B, *h1, *h2);
                add_term(out, idx * dL * dK + (a % dL) * dK + b % dK, v * ca * cb);
            }
        }
    }
    return out;
}

Sparse Cotensor::mul(const Sparse& x, const Sparse& y) const { return tensor_mul(L->alg, K->alg, x, y); }

CheckReport Cotensor::closure(Exec exec) const {
    const auto& rows = space.rows();
    if (!space.contains(unit_vector(L->alg.unit * K->dim() + K->alg.unit))) return {false, "1 (x) 1 is not in the cotensor"};
    return first_failure(rows.size(), exec, [&](std::size_t i) -> std::optional<std::string> {
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (!space.contains(mul(rows[i], rows[j])))
                return "product of cotensor basis elements " + std::to_string(i) + " and " + std::to_string(j) + " leaves the cotensor";
        return std::nullopt;
    });
}

std::shared_ptr<ComodAlg> Cotensor::as_comodule() const {
    const std::size_t dL = L->dim(), dK = K->dim(), dLK = dL * dK;
    const Sparse one = unit_vector(L->alg.unit * dK + K->alg.unit);
    if (!space.contains(one)) throw DomainError("1 (x) 1 is not in the cotensor");
    // put 1 first and drop the row it replaces
    std::vector<Sparse> basis{one};
    bool dropped = false;
    for (const auto& r : space.rows()) {
        if (!dropped && one.count(r.begin()->first)) {
            dropped = true;
            continue;
        }
        basis.push_back(r);
    }
    if (!dropped) basis.pop_back();
    Coordinates co(basis);
    const std::size_t n = basis.size();
    auto out = std::make_shared<ComodAlg>();
    out->host = L->host;
    out->alg.dim = n;
    out->alg.unit = 0;
    out->alg.table.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out->alg.table[i * n + j] = co(mul(basis[i], basis[j]));
    out->alg.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) out->alg.labels[i] = "c" + std::to_string(i);
    out->coaction.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::map<std::uint64_t, Sparse> parts;
        for (const auto& [k, v] : lambda(basis[i])) add_term(parts[k / dLK], k % dLK, v);
        for (const auto& [b, part] : parts) {
            if (!space.contains(part)) throw DomainError("coaction leaves the cotensor");
            for (const auto& [k, v] : co(part)) add_term(out->coaction[i], b * n + k, v);
        }
    }
    // the whole basis generates
    for (std::size_t i = 0; i < n; ++i) out->generators.push_back(i);
    return out;
}

CotensorIsoReport verify_cotensor_iso(const GModule& V, const RDatum& a, const RDatum& b, Exec exec) {
    if (!b.alpha.is_identity()) throw DomainError("second datum must have alpha = id");
    CotensorIsoReport rep;
    auto H = build_supergroup(V);
    auto B = build_tensor_hopf(V, V);
    auto L1 = build_L(B, V, a);
    auto L2 = build_L(B, V, b);
    Composition comp = relation_compose(a.W, b.W);
    RDatum c{comp.result, bullet_form(comp, a.beta, b.beta), a.alpha};
    auto L3 = build_L(B, V, c);
    Cotensor T = cotensor(L1, L2, H);
    rep.cotensor_dim = T.dim();
    rep.expected_dim = (std::size_t{1} << comp.result.dim()) * twisted_subgroup(a.alpha).U.order();
    auto fail = [&](std::string why) {
        rep.check = {false, std::move(why)};
        return rep;
    };
    if (rep.cotensor_dim != rep.expected_dim)
        return fail("cotensor dimension " + std::to_string(rep.cotensor_dim) + " != " + std::to_string(rep.expected_dim));
    if (auto r = T.closure(exec); !r) return fail(r.failure);

    const std::size_t dK = L2->dim(), d3 = L3->dim(), d = V.dim();
    const int r = V.G.rank();
    const Coords uu = concat(V.u, V.u);
    const std::size_t eu = L1->group_index(uu);
    auto lift = [&](const Subspace& W, const Matrix& rows, const Vec& cw) {
        Vec amb(2 * d);
        for (std::size_t i = 0; i < cw.size(); ++i)
            for (std::size_t j = 0; j < rows.cols(); ++j) {
                Scalar s = cw[i] * rows(i, j);
                if (s.is_zero()) continue;
                Vec w = W.basis_vector(j);
                for (std::size_t t = 0; t < amb.size(); ++t) amb[t] += s * w[t];
            }
        return amb;
    };
    std::vector<Sparse> phig(L3->gen_vectors.size());
    for (std::size_t k = 0; k < phig.size(); ++k) {
        Vec cw = comp.result.coords(L3->gen_vectors[k]);
        Sparse i1 = element_of(*L1, lift(a.W, comp.left, cw));
        Sparse i2 = element_of(*L2, lift(b.W, comp.right, cw));
        Sparse x;
        for (const auto& [l, v] : i1) add_term(x, l * dK + L2->alg.unit, v);
        for (const auto& [y, v] : i2) {
            for (const auto& [l, w] : L1->alg.mul_basis(eu, L1->alg.unit)) add_term(x, l * dK + y, v * w);
        }
        phig[k] = std::move(x);
    }
    const auto fel = L3->F->elements();
    std::vector<Sparse> phi(d3);
    const std::size_t nF = fel.size();
    for (std::size_t i = 0; i < d3; ++i) {
        const Coords& f = fel[i % nF];
        Coords g(f.begin() + r, f.end());
        Sparse x = unit_vector(L1->group_index(f) * dK + L2->group_index(concat(g, g)));
        for (std::size_t k = phig.size(); k-- > 0;)
            if ((i / nF) >> k & 1) x = T.mul(phig[k], x);
        phi[i] = std::move(x);
    }
    auto apply = [&](const Sparse& x) {
        Sparse y;
        for (const auto& [k, v] : x) axpy(y, v, phi[k]);
        return y;
    };
    rep.image_rank = sparse_rank(phi);
    if (rep.image_rank != d3 || d3 != rep.cotensor_dim) return fail("phi is not bijective onto the cotensor");
    const std::size_t dLK = L1->dim() * dK;
    CheckReport body = first_failure(d3, exec, [&](std::size_t i) -> std::optional<std::string> {
        const std::string lab = L3->alg.labels[i];
        if (!T.defect(phi[i]).empty()) return "phi(" + lab + ") is not in the cotensor";
        for (std::size_t g : L3->generators)
            if (apply(L3->alg.mul_basis(i, g)) != T.mul(phi[i], phi[g]))
                return "phi does not respect the relation at (" + lab + ", " + L3->alg.labels[g] + ")";
        Sparse rhs;
        for (const auto& [k, v] : L3->coaction[i])
            for (const auto& [y, w] : phi[k % d3]) add_term(rhs, (k / d3) * dLK + y, v * w);
        if (T.lambda(phi[i]) != rhs) return "phi is not a comodule map at " + lab;
        return std::nullopt;
    });
    rep.check = body;
    return rep;
}

// ---------------------------------------------------------------- Loewy filtration

namespace {

std::vector<Sparse> loewy_kernel(const ComodAlg& A, int n) {
    const HopfAlg& H = *A.host;
    const std::size_t dA = A.dim();
    std::vector<Sparse> cols(dA);
    for (std::size_t a = 0; a < dA; ++a)
        for (const auto& [k, v] : A.coaction[a])
            if (H.degree(k / dA) > n) cols[a].emplace(k, v);
    return sparse_kernel(cols);
}

}  // namespace

std::vector<std::size_t> loewy_dims(const ComodAlg& A) {
    const int top = static_cast<int>(A.host->gens().size());
    std::vector<std::size_t> out;
    for (int n = 0; n <= top; ++n) out.push_back(loewy_kernel(A, n).size());
    return out;
}

std::shared_ptr<ComodAlg> graded(const ComodAlg& A) {
    const std::size_t dA = A.dim();
    if (A.degree.size() != dA) throw DomainError("comodule algebra has no degree data");
    const HopfAlg& H = *A.host;
    const int top = static_cast<int>(H.gens().size());
    for (int n = 0; n <= top; ++n) {
        auto ker = loewy_kernel(A, n);
        std::size_t expect = 0;
        for (int d : A.degree) expect += d <= n;
        bool ok = ker.size() == expect;
        for (const auto& v : ker)
            for (const auto& [k, c] : v) ok = ok && A.degree[k] <= n;
        if (!ok) throw DomainError("Loewy filtration differs from the PBW degree filtration at n = " + std::to_string(n));
    }
    auto out = std::make_shared<ComodAlg>(A);
    for (std::size_t a = 0; a < dA; ++a)
        for (std::size_t b = 0; b < dA; ++b) {
            Sparse& cell = out->alg.table[a * dA + b];
            for (auto it = cell.begin(); it != cell.end();)
                it = A.degree[it->first] == A.degree[a] + A.degree[b] ? std::next(it) : cell.erase(it);
        }
    for (std::size_t a = 0; a < dA; ++a) {
        Sparse& l = out->coaction[a];
        for (auto it = l.begin(); it != l.end();)
            it = H.degree(it->first / dA) + A.degree[it->first % dA] == A.degree[a] ? std::next(it) : l.erase(it);
    }
    return out;
}

bool same_structure(const ComodAlg& a, const ComodAlg& b) {
    return a.dim() == b.dim() && a.alg.unit == b.alg.unit && a.alg.table == b.alg.table && a.coaction == b.coaction;
}

// ---------------------------------------------------------------- probes

SimplicityProbe probe_right_simple(const ComodAlg& A, std::mt19937_64& rng, std::size_t random_probes) {
    const std::size_t dA = A.dim();
    SimplicityProbe rep;
    auto closure = [&](const Sparse& start) {
        IncrementalSpan span;
        std::vector<Sparse> queue{start};
        span.insert(start);
        for (std::size_t q = 0; q < queue.size() && span.dim() < dA; ++q) {
            const Sparse v = queue[q];
            for (std::size_t b = 0; b < dA; ++b) {
                Sparse y = A.alg.mul(v, unit_vector(b));
                if (span.insert(y)) queue.push_back(std::move(y));
            }
            std::map<std::uint64_t, Sparse> slices;
            for (const auto& [k, c] : A.lambda(v)) add_term(slices[k / dA], k % dA, c);
            for (auto& [h, y] : slices)
                if (span.insert(y)) queue.push_back(std::move(y));
        }
        return span.dim();
    };
    std::uniform_int_distribution<int> coef(-3, 3);
    for (std::size_t p = 0; p < dA + random_probes; ++p) {
        Sparse v;
        if (p < dA) {
            v = unit_vector(p);
        } else {
            for (std::size_t i = 0; i < dA; ++i) add_term(v, i, Scalar(coef(rng)));
            if (v.empty()) continue;
        }
        ++rep.probes;
        std::size_t k = closure(v);
        if (k < dA) {
            rep.counterexample = true;
            rep.witness_dim = k;
            return rep;
        }
    }
    return rep;
}

std::optional<Coords> morita_equiv_criterion(const CompatibleData& a, const CompatibleData& b) {
    if (!(a.V1.G == b.V1.G) || !(a.V2.G == b.V2.G) || a.V1.chis != b.V1.chis || a.V2.chis != b.V2.chis) return std::nullopt;
    if (!(a.F == b.F) || !(a.psi == b.psi)) return std::nullopt;
    if (a.W1.dim() != b.W1.dim() || a.W2.dim() != b.W2.dim() || a.W3.dim() != b.W3.dim()) return std::nullopt;
    const std::size_t d1 = a.V1.dim(), d2 = a.V2.dim(), amb = 2 * (d1 + d2);
    auto combine = [&](const CompatibleData& d) {
        std::vector<std::size_t> p1, p2, p3;
        for (std::size_t i = 0; i < d1; ++i) p1.push_back(i);
        for (std::size_t i = 0; i < d2; ++i) p2.push_back(d1 + i);
        for (std::size_t i = 0; i < d1 + d2; ++i) p3.push_back(d1 + d2 + i);
        return d.W1.embed(amb, p1).sum(d.W2.embed(amb, p2)).sum(d.W3.embed(amb, p3));
    };
    const Subspace Wa = combine(a), Wb = combine(b);
    const FinAbGroup G = direct_sum(a.V1.G, a.V2.G);
    const int r1 = a.V1.G.rank();
    for (const auto& g : G.elements()) {
        Coords g1(g.begin(), g.begin() + r1), g2(g.begin() + r1, g.end());
        Vec w1 = a.V1.weights(g1), w2 = a.V2.weights(g2), w = w1;
        w.insert(w.end(), w2.begin(), w2.end());
        w.insert(w.end(), w1.begin(), w1.end());
        w.insert(w.end(), w2.begin(), w2.end());
        auto [gW, gb] = transport(Wa, a.beta, w);
        if (gW == Wb && gb == b.beta) return g;
    }
    return std::nullopt;
}

FreenessProbe probe_freeness(const Cotensor& c) {
    const std::size_t N = c.L->dim() * c.K->dim();
    const auto& rows = c.space.rows();
    FreenessProbe rep;
    IncrementalSpan span;
    for (std::size_t x = 0; x < N && span.dim() < N; ++x) {
        IncrementalSpan trial = span;
        bool ok = true;
        for (const auto& r : rows)
            if (!trial.insert(c.mul(unit_vector(x), r))) {
                ok = false;
                break;
            }
        if (!ok) continue;
        span = std::move(trial);
        ++rep.rank;
    }
    rep.free_basis_found = span.dim() == N;
    return rep;
}

// ---------------------------------------------------------------- sampling

CompatibleData sample_compatible(const GModule& V1, const GModule& V2, std::mt19937_64& rng) {
    V1.validate();
    V2.validate();
    const FinAbGroup G = direct_sum(V1.G, V2.G);
    const Coords u = concat(V1.u, V2.u);
    const std::size_t d1 = V1.dim(), d2 = V2.dim(), dd = d1 + d2;
    const int N = G.exponent();
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)); };
    auto small = [&]() {
        int x = std::uniform_int_distribution<int>(-2, 2)(rng);
        return Scalar(x);
    };

    std::vector<Coords> fg;
    for (std::size_t k = pick(3); k > 0; --k) fg.push_back(G.element(pick(G.order())));
    if (pick(4) != 0) fg.push_back(u);
    const Subgroup F = Subgroup::generated_by(G, fg);
    const bool uin = F.contains(u);
    const auto fel = F.elements();

    std::vector<OddGen> chis;
    std::vector<Coords> gchi;
    for (const auto& chi : V1.chis) gchi.push_back(concat(chi, V2.G.identity()));
    for (const auto& chi : V2.chis) gchi.push_back(concat(V1.G.identity(), chi));
    std::map<std::vector<int>, int> cls_id;
    std::vector<std::vector<int>> keys(dd);
    std::vector<int> cls(dd);
    for (std::size_t i = 0; i < dd; ++i) {
        for (const auto& f : fel) keys[i].push_back(pairing(G, gchi[i], f));
        cls[i] = cls_id.emplace(keys[i], static_cast<int>(cls_id.size())).first->second;
    }
    const int ncls = static_cast<int>(cls_id.size());

    // random subspaces supported on classes
    auto piece = [&](std::size_t from, std::size_t to, std::size_t ambient, std::size_t shift) {
        std::vector<Vec> vecs;
        for (int c = 0; c < ncls; ++c) {
            std::vector<std::size_t> pos;
            for (std::size_t i = from; i < to; ++i)
                if (cls[i] == c) pos.push_back(i);
            if (pos.empty()) continue;
            // favour nonzero pieces: zero with probability 1/4
            std::size_t k = pick(4) == 0 ? 0 : 1 + pick(pos.size());
            for (; k > 0; --k) {
                Vec v(ambient);
                for (auto p : pos) v[p - shift] = small();
                vecs.push_back(v);
            }
        }
        return Subspace::span(ambient, vecs);
    };
    Subspace W1 = piece(0, d1, d1, 0);
    Subspace W2 = piece(d1, dd, d2, d1);
    Subspace W3(dd);
    if (uin && pick(4) != 0) {
        for (int attempt = 0; attempt < 8; ++attempt) {
            Subspace cand = piece(0, dd, dd, 0);
            CompatibleData probe{V1, V2, W1, W2, cand, zero_form(W1.dim() + W2.dim() + cand.dim()), F, TwoCocycle::trivial(F, N)};
            Validation v = validate_compatible(probe);
            if (v || v.reason == "psi(u, f) != psi(f, u)") {
                W3 = cand;
                break;
            }
        }
    }

    // beta in a class-adapted basis, then moved to the RREF bases
    const std::size_t n1 = W1.dim(), n2 = W2.dim(), n3 = W3.dim(), n = n1 + n2 + n3;
    Matrix P(n, n);
    std::vector<std::vector<int>> gkey;
    std::vector<int> gtype;
    std::size_t row = 0, off = 0;
    auto take = [&](const Subspace& W, std::size_t shift, int type) {
        std::vector<int> c(W.ambient());
        for (std::size_t i = 0; i < W.ambient(); ++i) c[i] = cls[shift + i];
        auto basis = class_adapted_basis(W, c);
        for (const auto& v : *basis) {
            std::size_t i = 0;
            while (v[i].is_zero()) ++i;
            gkey.push_back(keys[shift + i]);
            gtype.push_back(type);
            Vec co = W.coords(v);
            for (std::size_t j = 0; j < co.size(); ++j) P(row, off + j) = co[j];
            ++row;
        }
        off += W.dim();
    };
    take(W1, 0, 1);
    take(W2, d1, 2);
    take(W3, 0, 3);
    Matrix Bp(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            bool inv = true;
            for (std::size_t f = 0; f < fel.size(); ++f) inv = inv && (gkey[a][f] + gkey[b][f]) % N == 0;
            if (!inv || pick(2) == 0) continue;
            bool anti = (gtype[a] == 1 && gtype[b] == 2) || (gtype[a] == 2 && gtype[b] == 3);
            if (anti && !uin) continue;
            if (anti && a == b) continue;
            Scalar x = small();
            Bp(a, b) = x;
            Bp(b, a) = anti ? -x : x;
        }
    Matrix Pi = inverse(P);
    Matrix beta = Pi * Bp * Pi.transpose();

    // psi: restriction of a random bicharacter of G
    const auto& fac = G.factors();
    const std::size_t r = fac.size();
    auto make_psi = [&](bool symmetric) {
        std::vector<std::vector<int>> m(r, std::vector<int>(r));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) m[i][j] = static_cast<int>(pick(static_cast<std::size_t>(N)));
        if (symmetric)
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < i; ++j) m[i][j] = m[j][i];
        std::vector<int> e(fel.size() * fel.size());
        for (std::size_t a = 0; a < fel.size(); ++a)
            for (std::size_t b = 0; b < fel.size(); ++b) {
                long s = 0;
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < r; ++j) {
                        long g = std::gcd(fac[i], fac[j]);
                        s += static_cast<long>(m[i][j]) * (N / g) * fel[a][i] * fel[b][j];
                    }
                e[a * fel.size() + b] = static_cast<int>(((s % N) + N) % N);
            }
        return TwoCocycle(F, N, std::move(e));
    };
    CompatibleData d{V1, V2, W1, W2, W3, BilinearForm{beta}, F, make_psi(false)};
    for (int attempt = 0; attempt < 4 && !validate_compatible(d); ++attempt) d.psi = make_psi(false);
    if (!validate_compatible(d)) d.psi = make_psi(true);
    if (Validation v = validate_compatible(d); !v) throw std::logic_error("sampled data is not compatible: " + v.reason);
    return d;
}

}  // namespace brpic
