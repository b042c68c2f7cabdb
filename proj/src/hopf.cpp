#include "brpic/hopf.hpp"

#include "brpic/errors.hpp"
#include "hopf_internal.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace brpic {

namespace {

constexpr std::size_t kMaxDim = 4096;

Coords concat(const Coords& a, const Coords& b) {
    Coords c = a;
    c.insert(c.end(), b.begin(), b.end());
    return c;
}

std::string coords_string(const Coords& g) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
    os << ')';
    return os.str();
}

bool same(const Sparse& a, const Sparse& b) { return a == b; }

}  // namespace

namespace detail {

CheckReport first_failure(std::size_t n, Exec exec, const std::function<std::optional<std::string>(std::size_t)>& check) {
    std::vector<std::optional<std::string>> res(n);
    const long nn = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (long i = 0; i < nn; ++i) {
        try {
            res[static_cast<std::size_t>(i)] = check(static_cast<std::size_t>(i));
        } catch (const std::exception& e) {
            res[static_cast<std::size_t>(i)] = std::string("exception: ") + e.what();
        }
    }
    for (auto& r : res)
        if (r) return CheckReport{false, *r};
    return {};
}

std::string describe_sparse(const Sparse& x, std::size_t limit) {
    std::ostringstream os;
    std::size_t k = 0;
    os << '{';
    for (const auto& [key, c] : x) {
        if (k++ == limit) {
            os << ", ...";
            break;
        }
        os << (k > 1 ? ", " : "") << key << ": " << c.to_string();
    }
    os << '}';
    return os.str();
}

std::optional<std::size_t> project_first(const HopfAlg& H, const HopfAlg& B, std::size_t b) {
    const std::size_t n = H.gens().size(), nG = H.group().order();
    std::uint32_t m = B.mask_of(b);
    if (m >> n) return std::nullopt;
    std::size_t gi = b % B.group().order();
    return m * nG + gi % nG;
}

std::optional<std::size_t> project_second(const HopfAlg& H, const HopfAlg& B, std::size_t b) {
    const std::size_t n = H.gens().size(), nG = H.group().order();
    std::uint32_t m = B.mask_of(b);
    if (m & ((1u << n) - 1)) return std::nullopt;
    std::size_t gi = b % B.group().order();
    return (m >> n) * nG + gi / nG;
}

}  // namespace detail

using detail::first_failure;
using detail::popcount;

Sparse Algebra::mul(const Sparse& a, const Sparse& b) const {
    Sparse out;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) axpy(out, x * y, mul_basis(i, j));
    return out;
}

Sparse tensor_mul(const Algebra& A, const Algebra& B, const Sparse& x, const Sparse& y) {
    Sparse out;
    for (const auto& [k1, c1] : x) {
        std::size_t a1 = k1 / B.dim, b1 = k1 % B.dim;
        for (const auto& [k2, c2] : y) {
            std::size_t a2 = k2 / B.dim, b2 = k2 % B.dim;
            const Sparse& pa = A.mul_basis(a1, a2);
            if (pa.empty()) continue;
            const Sparse& pb = B.mul_basis(b1, b2);
            if (pb.empty()) continue;
            Scalar c = c1 * c2;
            for (const auto& [ka, va] : pa)
                for (const auto& [kb, vb] : pb) add_term(out, ka * B.dim + kb, c * va * vb);
        }
    }
    return out;
}

// ---------------------------------------------------------------- HopfAlg

HopfAlg::HopfAlg(FinAbGroup G, std::vector<OddGen> gens, std::string name)
    : G_(std::move(G)), gens_(std::move(gens)), name_(std::move(name)) {
    const std::size_t n = gens_.size(), nG = G_.order();
    const int N = G_.exponent();
    if (n > 16) throw CapacityError("too many odd generators");
    for (std::size_t i = 0; i < n; ++i) {
        if (!G_.is_valid(gens_[i].chi) || !G_.is_valid(gens_[i].c)) throw StructuralError("odd generator data has wrong shape");
        if (2 * pairing(G_, gens_[i].chi, gens_[i].c) != N) throw StructuralError("chi_i(c_i) must be -1");
        if (G_.order_of(gens_[i].c) > 2) throw StructuralError("c_i must have order at most 2");
        for (std::size_t j = 0; j < i; ++j)
            if ((pairing(G_, gens_[i].chi, gens_[j].c) + pairing(G_, gens_[j].chi, gens_[i].c)) % N != 0)
                throw StructuralError("chi_i(c_j) chi_j(c_i) must be 1");
    }
    const std::size_t nm = std::size_t{1} << n;
    if (nm * nG > kMaxDim) throw CapacityError("Hopf algebra dimension exceeds " + std::to_string(kMaxDim));
    const std::size_t dim = nm * nG;
    alg_.dim = dim;
    alg_.unit = 0;

    std::vector<Coords> el = G_.elements();
    std::vector<std::vector<std::size_t>> add(nG, std::vector<std::size_t>(nG));
    for (std::size_t a = 0; a < nG; ++a)
        for (std::size_t b = 0; b < nG; ++b) add[a][b] = G_.index(G_.add(el[a], el[b]));
    // chiprod[T][g] = prod_{t in T} chi_t(g)
    std::vector<std::vector<Scalar>> chiprod(nm, std::vector<Scalar>(nG, Scalar(1)));
    for (std::size_t T = 1; T < nm; ++T) {
        std::size_t t = static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(T)));
        for (std::size_t g = 0; g < nG; ++g) chiprod[T][g] = chiprod[T & (T - 1)][g] * pairing_value(G_, gens_[t].chi, el[g]);
    }
    std::vector<std::vector<Scalar>> eps(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) eps[i][j] = pairing_value(G_, gens_[j].chi, gens_[i].c);
    // x_S x_T = sign(S, T) x_{S u T} for disjoint S, T
    auto sign = [&](std::size_t S, std::size_t T) {
        Scalar s(1);
        for (std::size_t a = 0; a < n; ++a) {
            if (!(S >> a & 1)) continue;
            for (std::size_t b = 0; b < a; ++b)
                if (T >> b & 1) s *= eps[a][b];
        }
        return s;
    };

    alg_.table.assign(dim * dim, Sparse{});
    for (std::size_t S = 0; S < nm; ++S)
        for (std::size_t T = 0; T < nm; ++T) {
            if (S & T) continue;
            Scalar sg = sign(S, T);
            for (std::size_t g = 0; g < nG; ++g)
                for (std::size_t h = 0; h < nG; ++h)
                    alg_.table[(S * nG + g) * dim + T * nG + h] = Sparse{{(S | T) * nG + add[g][h], chiprod[T][g] * sg}};
        }

    alg_.labels.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::string s;
        for (std::size_t a = 0; a < n; ++a)
            if (mask_of(i) >> a & 1) s += "x" + std::to_string(a);
        alg_.labels[i] = (s.empty() ? "" : s + "*") + "g" + coords_string(el[i % nG]);
    }

    eps_.assign(dim, Scalar(0));
    for (std::size_t g = 0; g < nG; ++g) eps_[g] = Scalar(1);

    std::vector<Sparse> dgen(n), sgen(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t x = index(1u << i, G_.identity());
        std::size_t c = grouplike(gens_[i].c);
        dgen[i] = Sparse{{x * dim + 0, Scalar(1)}, {c * dim + x, Scalar(1)}};
        sgen[i] = scaled(alg_.mul_basis(grouplike(G_.neg(gens_[i].c)), x), Scalar(-1));
    }
    delta_.resize(dim);
    S_.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::uint32_t m = mask_of(i);
        std::size_t g = i % nG;
        Sparse d = unit_vector(g * dim + g);
        Sparse s = unit_vector(G_.index(G_.neg(el[g])));
        for (std::size_t a = n; a-- > 0;) {
            if (!(m >> a & 1)) continue;
            d = tensor_mul(alg_, alg_, dgen[a], d);
            s = alg_.mul(s, sgen[a]);
        }
        delta_[i] = std::move(d);
        S_[i] = std::move(s);
    }
}

int HopfAlg::degree(std::size_t i) const { return popcount(mask_of(i)); }

Sparse HopfAlg::delta(const Sparse& x) const {
    Sparse out;
    for (const auto& [k, c] : x) axpy(out, c, delta_[k]);
    return out;
}

Sparse HopfAlg::antipode(const Sparse& x) const {
    Sparse out;
    for (const auto& [k, c] : x) axpy(out, c, S_[k]);
    return out;
}

std::vector<std::size_t> HopfAlg::generator_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < gens_.size(); ++i) out.push_back(index(1u << i, G_.identity()));
    for (int j = 0; j < G_.rank(); ++j) out.push_back(grouplike(G_.generator(j)));
    return out;
}

std::shared_ptr<HopfAlg> build_supergroup(const GModule& V) {
    V.validate();
    std::vector<OddGen> gens;
    for (const auto& chi : V.chis) gens.push_back({chi, V.u});
    return std::make_shared<HopfAlg>(V.G, std::move(gens), "A(V,u,G)");
}

std::shared_ptr<HopfAlg> build_tensor_hopf(const GModule& V1, const GModule& V2) {
    V1.validate();
    V2.validate();
    FinAbGroup G = direct_sum(V1.G, V2.G);
    Coords z1 = V1.G.identity(), z2 = V2.G.identity();
    std::vector<OddGen> gens;
    for (const auto& chi : V1.chis) gens.push_back({concat(chi, z2), concat(V1.u, z2)});
    for (const auto& chi : V2.chis) gens.push_back({concat(z1, chi), concat(z1, V2.u)});
    return std::make_shared<HopfAlg>(G, std::move(gens), "A(V1,V2,u1,u2,G1,G2)");
}

std::size_t tensor_index(const HopfAlg& H1, const HopfAlg& H2, const HopfAlg& B, std::size_t a, std::size_t b) {
    const std::size_t n1 = H1.gens().size(), nG1 = H1.group().order(), nG2 = H2.group().order();
    std::uint32_t m = H1.mask_of(a) | (H2.mask_of(b) << n1);
    return m * B.group().order() + a % nG1 + nG1 * (b % nG2);
}

// ---------------------------------------------------------------- checks

namespace {

// Left-bracketed words in the generators span the algebra.
std::optional<std::string> words_span(const Algebra& A, const std::vector<std::size_t>& gens) {
    IncrementalSpan span;
    std::vector<Sparse> queue{unit_vector(A.unit)};
    span.insert(queue[0]);
    for (std::size_t q = 0; q < queue.size() && span.dim() < A.dim; ++q)
        for (std::size_t g : gens) {
            Sparse y = A.mul(queue[q], unit_vector(g));
            if (span.insert(y)) queue.push_back(std::move(y));
        }
    if (span.dim() != A.dim)
        return "generators span only " + std::to_string(span.dim()) + " of " + std::to_string(A.dim) + " dimensions";
    return std::nullopt;
}

std::string triple(const Algebra& A, std::size_t a, std::size_t b, std::size_t c) {
    auto lab = [&](std::size_t i) { return i < A.labels.size() ? A.labels[i] : "b" + std::to_string(i); };
    return "(" + lab(a) + ", " + lab(b) + ", " + lab(c) + ")";
}

}  // namespace

CheckReport check_algebra(const Algebra& A, const std::vector<std::size_t>& gens, Exec exec, std::size_t full_limit) {
    if (A.table.size() != A.dim * A.dim) return {false, "multiplication table has wrong size"};
    for (std::size_t i = 0; i < A.dim; ++i) {
        if (!same(A.mul_basis(A.unit, i), unit_vector(i)) || !same(A.mul_basis(i, A.unit), unit_vector(i)))
            return {false, "unit fails at basis element " + std::to_string(i)};
    }
    const bool full = A.dim <= full_limit;
    if (!full) {
        if (auto w = words_span(A, gens)) return {false, *w};
    }
    std::vector<std::size_t> right;
    if (full)
        for (std::size_t i = 0; i < A.dim; ++i) right.push_back(i);
    else
        right = gens;
    return first_failure(A.dim, exec, [&](std::size_t a) -> std::optional<std::string> {
        for (std::size_t b = 0; b < A.dim; ++b) {
            const Sparse& ab = A.mul_basis(a, b);
            for (std::size_t c : right) {
                Sparse lhs = A.mul(ab, unit_vector(c));
                Sparse rhs = A.mul(unit_vector(a), A.mul_basis(b, c));
                if (lhs != rhs) return "associativity fails at " + triple(A, a, b, c);
            }
        }
        return std::nullopt;
    });
}

CheckReport check_hopf(const HopfAlg& H, Exec exec, std::size_t full_limit) {
    const Algebra& A = H.alg();
    const std::size_t dim = A.dim;
    if (auto r = check_algebra(A, H.generator_indices(), exec, full_limit); !r) return r;
    if (H.delta(unit_vector(A.unit)) != unit_vector(A.unit * dim + A.unit)) return {false, "Delta(1) != 1 (x) 1"};
    const auto gens = H.generator_indices();
    return first_failure(dim, exec, [&](std::size_t a) -> std::optional<std::string> {
        const std::string lab = A.labels[a];
        const Sparse& d = H.delta(a);
        // counit
        Sparse l, r;
        for (const auto& [k, c] : d) {
            std::size_t i = k / dim, j = k % dim;
            add_term(l, j, c * H.counit(i));
            add_term(r, i, c * H.counit(j));
        }
        if (l != unit_vector(a) || r != unit_vector(a)) return "counit fails at " + lab;
        // coassociativity
        Sparse lhs, rhs;
        for (const auto& [k, c] : d) {
            std::size_t i = k / dim, j = k % dim;
            for (const auto& [k2, c2] : H.delta(i)) add_term(lhs, k2 * dim + j, c * c2);
            for (const auto& [k2, c2] : H.delta(j)) add_term(rhs, i * dim * dim + k2, c * c2);
        }
        if (lhs != rhs) return "coassociativity fails at " + lab;
        // antipode
        Sparse s1, s2;
        for (const auto& [k, c] : d) {
            std::size_t i = k / dim, j = k % dim;
            axpy(s1, c, A.mul(H.antipode(i), unit_vector(j)));
            axpy(s2, c, A.mul(unit_vector(i), H.antipode(j)));
        }
        Sparse e = H.counit(a).is_zero() ? Sparse{} : scaled(unit_vector(A.unit), H.counit(a));
        if (s1 != e || s2 != e) return "antipode fails at " + lab;
        // multiplicativity of Delta and eps against generators
        for (std::size_t g : gens) {
            const Sparse& ag = A.mul_basis(a, g);
            if (H.delta(ag) != tensor_mul(A, A, d, H.delta(g))) return "Delta is not multiplicative at (" + lab + ", " + A.labels[g] + ")";
            Scalar e1(0);
            for (const auto& [k, c] : ag) e1 += c * H.counit(k);
            if (e1 != H.counit(a) * H.counit(g)) return "counit is not multiplicative at (" + lab + ", " + A.labels[g] + ")";
        }
        return std::nullopt;
    });
}

std::vector<Sparse> iso_cop_map(const HopfAlg& H) {
    const Algebra& A = H.alg();
    const std::size_t n = H.gens().size(), nG = H.group().order();
    std::vector<Sparse> phi(A.dim);
    for (std::size_t i = 0; i < A.dim; ++i) {
        Sparse x = unit_vector(A.unit);
        std::uint32_t m = H.mask_of(i);
        for (std::size_t a = 0; a < n; ++a) {
            if (!(m >> a & 1)) continue;
            Sparse xa = A.mul_basis(H.index(1u << a, H.group().identity()), H.grouplike(H.gens()[a].c));
            x = A.mul(x, xa);
        }
        phi[i] = A.mul(x, unit_vector(i % nG));
    }
    return phi;
}

CheckReport check_iso_cop(const HopfAlg& H) {
    const Algebra& A = H.alg();
    const std::size_t dim = A.dim;
    auto phi = iso_cop_map(H);
    auto apply = [&](const Sparse& x) {
        Sparse y;
        for (const auto& [k, c] : x) axpy(y, c, phi[k]);
        return y;
    };
    if (sparse_rank(phi) != dim) return {false, "phi is not bijective"};
    const auto gens = H.generator_indices();
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t g : gens)
            if (apply(A.mul_basis(a, g)) != A.mul(phi[a], phi[g]))
                return {false, "phi is not multiplicative at (" + A.labels[a] + ", " + A.labels[g] + ")"};
        // Delta(phi(a)) = (phi (x) phi) Delta^cop(a)
        Sparse rhs;
        for (const auto& [k, c] : H.delta(a)) {
            std::size_t i = k / dim, j = k % dim;
            for (const auto& [kj, cj] : phi[j])
                for (const auto& [ki, ci] : phi[i]) add_term(rhs, kj * dim + ki, c * cj * ci);
        }
        if (H.delta(phi[a]) != rhs) return {false, "phi is not a coalgebra map H^cop -> H at " + A.labels[a]};
        Scalar e(0);
        for (const auto& [k, c] : phi[a]) e += c * H.counit(k);
        if (e != H.counit(a)) return {false, "phi does not preserve the counit at " + A.labels[a]};
    }
    return {};
}

// ---------------------------------------------------------------- comodule algebras

std::size_t ComodAlg::gen_index(std::size_t k) const { return (std::size_t{1} << k) * F->order(); }

std::size_t ComodAlg::group_index(const Coords& f) const {
    long p = fpos.at(F->ambient().index(f));
    if (p < 0) throw DomainError("group element is not in F");
    return static_cast<std::size_t>(p);
}

Sparse ComodAlg::lambda(const Sparse& a) const {
    Sparse out;
    for (const auto& [k, c] : a) axpy(out, c, coaction[k]);
    return out;
}

Sparse element_of(const ComodAlg& A, const Vec& v) {
    const std::size_t n = A.gen_vectors.size();
    if (n == 0) {
        for (const auto& x : v)
            if (!x.is_zero()) throw DomainError("vector is not in the generator span");
        return {};
    }
    Matrix M(v.size(), n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < v.size(); ++i) M(i, k) = A.gen_vectors[k][i];
    auto x = solve(M, v);
    if (!x) throw DomainError("vector is not in the generator span");
    Sparse out;
    for (std::size_t k = 0; k < n; ++k) add_term(out, A.gen_index(k), (*x)[k]);
    return out;
}

CheckReport check_comodule_algebra(const ComodAlg& A, Exec exec, std::size_t full_limit) {
    const HopfAlg& H = *A.host;
    const std::size_t dA = A.dim(), dH = H.dim();
    if (A.coaction.size() != dA) return {false, "coaction has wrong size"};
    if (auto r = check_algebra(A.alg, A.generators, exec, full_limit); !r) return r;
    if (A.coaction[A.alg.unit] != unit_vector(H.alg().unit * dA + A.alg.unit)) return {false, "lambda(1) != 1 (x) 1"};
    return first_failure(dA, exec, [&](std::size_t a) -> std::optional<std::string> {
        const std::string lab = A.alg.labels.empty() ? std::to_string(a) : A.alg.labels[a];
        const Sparse& la = A.coaction[a];
        Sparse e;
        for (const auto& [k, c] : la) add_term(e, k % dA, c * H.counit(k / dA));
        if (e != unit_vector(a)) return "counit fails at " + lab;
        Sparse lhs, rhs;
        for (const auto& [k, c] : la) {
            std::size_t h = k / dA, x = k % dA;
            for (const auto& [kd, cd] : H.delta(h)) add_term(lhs, kd * dA + x, c * cd);
            for (const auto& [kl, cl] : A.coaction[x]) add_term(rhs, h * dH * dA + kl, c * cl);
        }
        if (lhs != rhs) return "coassociativity fails at " + lab;
        for (std::size_t g : A.generators) {
            Sparse l = A.lambda(A.alg.mul_basis(a, g));
            Sparse r = tensor_mul(H.alg(), A.alg, la, A.coaction[g]);
            if (l != r) {
                std::string lg = A.alg.labels.empty() ? std::to_string(g) : A.alg.labels[g];
                return "lambda is not multiplicative at (" + lab + ", " + lg + ")";
            }
        }
        return std::nullopt;
    });
}

std::size_t coinvariant_dim(const ComodAlg& A) {
    const std::size_t dA = A.dim();
    const std::size_t one = A.host->alg().unit;
    std::vector<Sparse> cols(dA);
    for (std::size_t a = 0; a < dA; ++a) cols[a] = difference(A.coaction[a], unit_vector(one * dA + a));
    return sparse_kernel(cols).size();
}

// ---------------------------------------------------------------- compatible data and K

namespace {

Subspace coordinate_span(std::size_t ambient, std::size_t from, std::size_t to) {
    std::vector<Vec> v;
    for (std::size_t i = from; i < to; ++i) {
        Vec e(ambient);
        e[i] = 1;
        v.push_back(e);
    }
    return Subspace::span(ambient, v);
}

std::vector<std::size_t> range(std::size_t from, std::size_t n) {
    std::vector<std::size_t> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = from + i;
    return r;
}

struct Blocks {
    std::size_t d1, d2, n1, n2, n3;
    std::size_t n() const { return n1 + n2 + n3; }
    int type(std::size_t k) const { return k < n1 ? 1 : k < n1 + n2 ? 2 : 3; }
};

// W1 + W2 + W3 inside V1 + V2 + (V1 + V2), so that beta is a form on one subspace.
Subspace combined(const CompatibleData& d) {
    const std::size_t d1 = d.V1.dim(), d2 = d.V2.dim(), amb = 2 * (d1 + d2);
    Subspace a = d.W1.embed(amb, range(0, d1));
    Subspace b = d.W2.embed(amb, range(d1, d2));
    Subspace c = d.W3.embed(amb, range(d1 + d2, d1 + d2));
    return a.sum(b).sum(c);
}

Vec combined_weights(const CompatibleData& d, const Coords& f) {
    const int r1 = d.V1.G.rank();
    Coords f1(f.begin(), f.begin() + r1), f2(f.begin() + r1, f.end());
    Vec w1 = d.V1.weights(f1), w2 = d.V2.weights(f2);
    Vec w = w1;
    w.insert(w.end(), w2.begin(), w2.end());
    w.insert(w.end(), w1.begin(), w1.end());
    w.insert(w.end(), w2.begin(), w2.end());
    return w;
}

}  // namespace

Validation validate_compatible(const CompatibleData& d) {
    try {
        d.V1.validate();
        d.V2.validate();
    } catch (const StructuralError& e) {
        return {false, e.what()};
    }
    const std::size_t d1 = d.V1.dim(), d2 = d.V2.dim(), dd = d1 + d2;
    if (d.W1.ambient() != d1 || d.W2.ambient() != d2 || d.W3.ambient() != dd) return {false, "subspace has wrong ambient dimension"};
    const Blocks bl{d1, d2, d.W1.dim(), d.W2.dim(), d.W3.dim()};
    const std::size_t n = bl.n();
    if (d.beta.gram.rows() != n || d.beta.gram.cols() != n) return {false, "beta has wrong size"};
    FinAbGroup G = direct_sum(d.V1.G, d.V2.G);
    if (!(d.F.ambient() == G)) return {false, "F is not a subgroup of G1 x G2"};
    if (!(d.psi.domain() == d.F)) return {false, "psi is not defined on F"};

    Subspace w12 = d.W1.embed(dd, range(0, d1)).sum(d.W2.embed(dd, range(d1, d2)));
    if (d.W3.intersect(w12).dim() != 0) return {false, "W3 meets W1 + W2"};
    if (d.W3.intersect(coordinate_span(dd, 0, d1)).dim() != 0) return {false, "W3 meets V1"};
    if (d.W3.intersect(coordinate_span(dd, d1, dd)).dim() != 0) return {false, "W3 meets V2"};

    const int r1 = d.V1.G.rank();
    std::vector<Vec> actions;
    for (const auto& f : d.F.generators()) {
        Coords f1(f.begin(), f.begin() + r1), f2(f.begin() + r1, f.end());
        Vec w1 = d.V1.weights(f1), w2 = d.V2.weights(f2), w = w1;
        w.insert(w.end(), w2.begin(), w2.end());
        if (!d.W1.invariant_under(w1)) return {false, "W1 is not F-stable"};
        if (!d.W2.invariant_under(w2)) return {false, "W2 is not F-stable"};
        if (!d.W3.invariant_under(w)) return {false, "W3 is not F-stable"};
        actions.push_back(combined_weights(d, f));
    }
    const Coords u = concat(d.V1.u, d.V2.u);
    const bool uin = d.F.contains(u);
    if (bl.n3 > 0 && !uin) return {false, "W3 is nonzero but u is not in F"};

    const Matrix& B = d.beta.gram;
    bool mixed = false;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            int ta = bl.type(a), tb = bl.type(b);
            if (ta > tb) continue;
            bool anti = (ta == 1 && tb == 2) || (ta == 2 && tb == 3);
            if (anti) {
                if (B(a, b) != -B(b, a)) return {false, ta == 1 ? "beta(w1, w2) != -beta(w2, w1)" : "beta(w2, w3) != -beta(w3, w2)"};
                if (!B(a, b).is_zero()) mixed = true;
            } else if (B(a, b) != B(b, a)) {
                if (ta == tb) return {false, "beta is not symmetric on W" + std::to_string(ta)};
                return {false, "beta(w1, w3) != beta(w3, w1)"};
            }
        }
    if (mixed && !uin) return {false, "u is not in F but beta is nonzero on W1 x W2 or W2 x W3"};
    if (!form_invariant_under(combined(d), d.beta, actions)) return {false, "beta is not F-stable"};
    if (!d.psi.is_normalized()) return {false, "psi is not normalized"};
    if (!d.psi.is_cocycle(Exec::Serial)) return {false, "psi is not a 2-cocycle"};
    // Needed for lambda to be an algebra map once e_u enters the relations or the coaction.
    if (uin && (bl.n3 > 0 || mixed))
        for (const auto& f : d.F.elements())
            if (d.psi.exponent(u, f) != d.psi.exponent(f, u)) return {false, "psi(u, f) != psi(f, u)"};
    return {};
}

std::shared_ptr<ComodAlg> build_K(const CompatibleData& d, W3Term term) {
    return build_K(build_tensor_hopf(d.V1, d.V2), d, term);
}

std::shared_ptr<ComodAlg> build_K(std::shared_ptr<const HopfAlg> host, const CompatibleData& d, W3Term term) {
    if (Validation v = validate_compatible(d); !v) throw DomainError("incompatible data: " + v.reason);
    const std::size_t d1 = d.V1.dim(), d2 = d.V2.dim(), dd = d1 + d2;
    const FinAbGroup G = direct_sum(d.V1.G, d.V2.G);
    if (!(host->group() == G) || host->gens().size() != dd) throw StructuralError("host does not match the compatible data");
    const Subgroup& F = d.F;
    const std::size_t nF = F.order();
    const std::vector<Coords> fel = F.elements();

    auto out = std::make_shared<ComodAlg>();
    out->host = host;
    out->F = F;
    out->fpos.assign(G.order(), -1);
    for (std::size_t i = 0; i < nF; ++i) out->fpos[F.indices()[i]] = static_cast<long>(i);

    // classes of V coordinates under F
    std::map<std::vector<int>, int> cls_id;
    std::vector<int> cls(dd);
    for (std::size_t i = 0; i < dd; ++i) {
        std::vector<int> key;
        for (const auto& f : fel) key.push_back(pairing(G, host->gens()[i].chi, f));
        cls[i] = cls_id.emplace(key, static_cast<int>(cls_id.size())).first->second;
    }
    std::vector<int> cls1(cls.begin(), cls.begin() + static_cast<long>(d1)), cls2(cls.begin() + static_cast<long>(d1), cls.end());

    const Blocks bl{d1, d2, d.W1.dim(), d.W2.dim(), d.W3.dim()};
    const std::size_t n = bl.n();
    if (n > 12) throw CapacityError("too many generators for K");
    const std::size_t nm = std::size_t{1} << n;
    if (nm * nF > kMaxDim) throw CapacityError("K dimension exceeds " + std::to_string(kMaxDim));
    const std::size_t dim = nm * nF;

    // class-adapted generators and the change of basis from the RREF bases
    Matrix P(n, n);
    std::size_t row = 0, off = 0;
    auto take = [&](const Subspace& W, const std::vector<int>& c, std::size_t shift, int type) {
        auto basis = class_adapted_basis(W, c);
        if (!basis) throw DomainError("subspace is not F-stable");
        for (const auto& v : *basis) {
            Vec amb(dd);
            for (std::size_t i = 0; i < v.size(); ++i) amb[shift + i] = v[i];
            out->gen_vectors.push_back(amb);
            out->gen_types.push_back(type);
            Vec co = W.coords(v);
            for (std::size_t i = 0; i < co.size(); ++i) P(row, off + i) = co[i];
            ++row;
        }
        off += W.dim();
    };
    take(d.W1, cls1, 0, 1);
    take(d.W2, cls2, d1, 2);
    take(d.W3, cls, 0, 3);
    const Matrix beta = P * d.beta.gram * P.transpose();

    // F-character of each generator
    std::vector<std::vector<Scalar>> lam(n, std::vector<Scalar>(nF));
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t i = 0;
        while (out->gen_vectors[k][i].is_zero()) ++i;
        for (std::size_t f = 0; f < nF; ++f) lam[k][f] = pairing_value(G, host->gens()[i].chi, fel[f]);
    }
    std::vector<std::vector<std::size_t>> fadd(nF, std::vector<std::size_t>(nF));
    std::vector<std::vector<Scalar>> psiv(nF, std::vector<Scalar>(nF));
    for (std::size_t a = 0; a < nF; ++a)
        for (std::size_t b = 0; b < nF; ++b) {
            fadd[a][b] = static_cast<std::size_t>(out->fpos[G.index(G.add(fel[a], fel[b]))]);
            psiv[a][b] = d.psi.value(fel[a], fel[b]);
        }
    const Coords u = concat(d.V1.u, d.V2.u);
    const long upos = F.contains(u) ? out->fpos[G.index(u)] : -1;

    auto key = [&](std::size_t mask, std::size_t g) { return static_cast<std::uint64_t>(mask * nF + g); };
    auto anti = [&](std::size_t s, std::size_t t) {
        int a = bl.type(s), b = bl.type(t);
        return !((a == 1 && b == 2) || (a == 2 && b == 3));
    };
    // w_t (w_R e_g) in normal form
    std::function<Sparse(std::size_t, std::size_t, std::size_t)> gen_left = [&](std::size_t t, std::size_t R, std::size_t g) -> Sparse {
        if (R == 0 || t < static_cast<std::size_t>(__builtin_ctzll(R))) return unit_vector(key(R | (std::size_t{1} << t), g));
        const std::size_t s = static_cast<std::size_t>(__builtin_ctzll(R));
        const std::size_t Rp = R & ~(std::size_t{1} << s);
        if (t == s) return scaled(unit_vector(key(Rp, g)), beta(t, t) / Scalar(2));
        Sparse res;
        const bool an = anti(s, t);
        for (const auto& [k, c] : gen_left(t, Rp, g)) add_term(res, key((k / nF) | (std::size_t{1} << s), k % nF), an ? -c : c);
        if (an) {
            add_term(res, key(Rp, g), beta(t, s));
        } else if (!beta(s, t).is_zero()) {
            // e_u passes w_Rp with sign (-1)^|Rp|
            if (upos < 0) throw DomainError("relation needs e_u but u is not in F");
            Scalar c = -beta(s, t) * psiv[static_cast<std::size_t>(upos)][g];
            if (popcount(static_cast<std::uint32_t>(Rp)) % 2) c = -c;
            add_term(res, key(Rp, fadd[static_cast<std::size_t>(upos)][g]), c);
        }
        return res;
    };
    // w_S w_T as sum of w_R e_g
    std::vector<Sparse> words(nm * nm);
    for (std::size_t S = 0; S < nm; ++S)
        for (std::size_t T = 0; T < nm; ++T) {
            Sparse X = unit_vector(key(T, 0));
            for (std::size_t s = n; s-- > 0;) {
                if (!(S >> s & 1)) continue;
                Sparse Y;
                for (const auto& [k, c] : X) axpy(Y, c, gen_left(s, k / nF, k % nF));
                X = std::move(Y);
            }
            words[S * nm + T] = std::move(X);
        }

    Algebra& A = out->alg;
    A.dim = dim;
    A.unit = 0;
    A.table.assign(dim * dim, Sparse{});
    for (std::size_t S = 0; S < nm; ++S)
        for (std::size_t T = 0; T < nm; ++T) {
            const Sparse& X = words[S * nm + T];
            for (std::size_t f = 0; f < nF; ++f) {
                Scalar coef(1);
                for (std::size_t t = 0; t < n; ++t)
                    if (T >> t & 1) coef *= lam[t][f];
                for (std::size_t h = 0; h < nF; ++h) {
                    Sparse& cell = A.table[key(S, f) * dim + key(T, h)];
                    const std::size_t fh = fadd[f][h];
                    for (const auto& [k, c] : X) {
                        std::size_t g = k % nF;
                        add_term(cell, key(k / nF, fadd[g][fh]), coef * c * psiv[f][h] * psiv[g][fh]);
                    }
                }
            }
        }
    A.labels.resize(dim);
    out->degree.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::string s;
        for (std::size_t k = 0; k < n; ++k)
            if ((i / nF) >> k & 1) s += "w" + std::to_string(k);
        A.labels[i] = (s.empty() ? "" : s + "*") + "e" + coords_string(fel[i % nF]);
        out->degree[i] = popcount(static_cast<std::uint32_t>(i / nF));
    }
    for (std::size_t k = 0; k < n; ++k) out->generators.push_back(out->gen_index(k));
    for (const auto& f : F.generators()) out->generators.push_back(out->group_index(f));

    // coaction on generators, extended multiplicatively along PBW words
    const HopfAlg& H = *host;
    const Coords e = G.identity();
    const Coords c1 = concat(d.V1.u, d.V2.G.identity()), c2 = concat(d.V1.G.identity(), d.V2.u);
    const Coords c3 = term == W3Term::ByU ? u : c2;
    std::vector<Sparse> lgen(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Vec& v = out->gen_vectors[k];
        const int type = bl.type(k);
        Sparse l;
        const std::size_t w = out->gen_index(k);
        for (std::size_t i = 0; i < dd; ++i) {
            if (v[i].is_zero()) continue;
            if (type == 3 && i >= d1)
                add_term(l, H.index(1u << i, c3) * dim + static_cast<std::size_t>(upos), v[i]);
            else
                add_term(l, H.index(1u << i, e) * dim + A.unit, v[i]);
        }
        add_term(l, H.grouplike(type == 2 ? c2 : c1) * dim + w, Scalar(1));
        lgen[k] = std::move(l);
    }
    out->coaction.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t f = i % nF;
        Sparse l = unit_vector(H.grouplike(fel[f]) * dim + key(0, f));
        for (std::size_t k = n; k-- > 0;)
            if ((i / nF) >> k & 1) l = tensor_mul(H.alg(), A, lgen[k], l);
        out->coaction[i] = std::move(l);
    }
    return out;
}

CompatibleData l_data(const GModule& V, const RDatum& r) {
    TwistedSubgroup t = twisted_subgroup(r.alpha);
    return CompatibleData{V, V, Subspace(V.dim()), Subspace(V.dim()), r.W, r.beta, t.U, psi_alpha(r.alpha)};
}

std::shared_ptr<ComodAlg> build_L(std::shared_ptr<const HopfAlg> host, const GModule& V, const RDatum& r) {
    if (Validation v = validate_rdatum(V, r); !v) throw DomainError("invalid datum: " + v.reason);
    return build_K(std::move(host), l_data(V, r));
}

// ---------------------------------------------------------------- coideal subalgebras

Sparse bracket(const HopfAlg& host, std::size_t d1, const Vec& v, const Coords& u) {
    Sparse out;
    const Coords e = host.group().identity();
    for (std::size_t i = 0; i < v.size(); ++i) add_term(out, host.index(1u << i, i < d1 ? e : u), v[i]);
    return out;
}

CoidealSubalgebra build_C(std::shared_ptr<const HopfAlg> host, const GModule& V1, const GModule& V2, const Subspace& W1,
                          const Subspace& W2, const Subspace& W3, const Subgroup& F) {
    const std::size_t d1 = V1.dim(), d2 = V2.dim(), dd = d1 + d2;
    const FinAbGroup G = direct_sum(V1.G, V2.G);
    if (!(host->group() == G) || host->gens().size() != dd) throw StructuralError("host does not match the data");
    if (W1.ambient() != d1 || W2.ambient() != d2 || W3.ambient() != dd) throw StructuralError("subspace has wrong ambient dimension");
    Subspace w12 = W1.embed(dd, range(0, d1)).sum(W2.embed(dd, range(d1, d2)));
    if (W3.intersect(w12).dim() != 0) throw DomainError("W3 meets W1 + W2");
    if (W3.intersect(coordinate_span(dd, 0, d1)).dim() != 0) throw DomainError("W3 meets V1");
    if (W3.intersect(coordinate_span(dd, d1, dd)).dim() != 0) throw DomainError("W3 meets V2");
    const Coords u = concat(V1.u, V2.u);
    if (W3.dim() > 0 && !F.contains(u)) throw DomainError("W3 is nonzero but u is not in F");
    const int r1 = V1.G.rank();
    for (const auto& f : F.generators()) {
        Coords f1(f.begin(), f.begin() + r1), f2(f.begin() + r1, f.end());
        Vec a = V1.weights(f1), b = V2.weights(f2), w = a;
        w.insert(w.end(), b.begin(), b.end());
        if (!W1.invariant_under(a) || !W2.invariant_under(b) || !W3.invariant_under(w)) throw DomainError("F does not stabilize W");
    }

    const HopfAlg& H = *host;
    const Algebra& HA = H.alg();
    std::vector<Sparse> y;
    std::vector<Vec> yv;
    for (std::size_t i = 0; i < W1.dim(); ++i) {
        Vec v(dd);
        Vec b = W1.basis_vector(i);
        for (std::size_t j = 0; j < d1; ++j) v[j] = b[j];
        yv.push_back(v);
    }
    for (std::size_t i = 0; i < W2.dim(); ++i) {
        Vec v(dd);
        Vec b = W2.basis_vector(i);
        for (std::size_t j = 0; j < d2; ++j) v[d1 + j] = b[j];
        yv.push_back(v);
    }
    for (std::size_t i = 0; i < W3.dim(); ++i) yv.push_back(W3.basis_vector(i));
    for (const auto& v : yv) y.push_back(bracket(H, d1, v, u));

    const std::size_t n = y.size(), nm = std::size_t{1} << n, nF = F.order();
    const std::vector<Coords> fel = F.elements();
    const std::size_t dim = nm * nF;
    if (dim > kMaxDim) throw CapacityError("C dimension exceeds " + std::to_string(kMaxDim));
    CoidealSubalgebra res;
    res.embedding.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        Sparse x = unit_vector(HA.unit);
        for (std::size_t k = 0; k < n; ++k)
            if ((i / nF) >> k & 1) x = HA.mul(x, y[k]);
        res.embedding[i] = HA.mul(x, unit_vector(H.grouplike(fel[i % nF])));
    }
    SparseSpan span(res.embedding);
    if (span.dim() != dim) throw DomainError("C basis is not independent");
    Matrix M(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        auto c = span.coords(res.embedding[i]);
        for (std::size_t j = 0; j < dim; ++j) M(i, j) = c[j];
    }
    const Matrix Minv = inverse(M);
    // coordinates in the PBW basis of C
    auto coords = [&](const Sparse& x) {
        auto c = span.coords(x);
        Sparse out;
        for (std::size_t j = 0; j < dim; ++j) {
            if (c[j].is_zero()) continue;
            for (std::size_t i = 0; i < dim; ++i) add_term(out, i, c[j] * Minv(j, i));
        }
        return out;
    };

    auto A = std::make_shared<ComodAlg>();
    A->host = host;
    A->F = F;
    A->fpos.assign(G.order(), -1);
    for (std::size_t i = 0; i < nF; ++i) A->fpos[F.indices()[i]] = static_cast<long>(i);
    A->gen_vectors = yv;
    for (std::size_t k = 0; k < n; ++k) A->gen_types.push_back(k < W1.dim() ? 1 : k < W1.dim() + W2.dim() ? 2 : 3);
    A->alg.dim = dim;
    A->alg.unit = 0;
    A->alg.table.assign(dim * dim, Sparse{});
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) A->alg.table[i * dim + j] = coords(HA.mul(res.embedding[i], res.embedding[j]));
    A->alg.labels.resize(dim);
    A->degree.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::string s;
        for (std::size_t k = 0; k < n; ++k)
            if ((i / nF) >> k & 1) s += "y" + std::to_string(k);
        A->alg.labels[i] = (s.empty() ? "" : s + "*") + "g" + coords_string(fel[i % nF]);
        A->degree[i] = popcount(static_cast<std::uint32_t>(i / nF));
    }
    for (std::size_t k = 0; k < n; ++k) A->generators.push_back(A->gen_index(k));
    for (const auto& f : F.generators()) A->generators.push_back(A->group_index(f));
    A->coaction.resize(dim);
    const std::size_t dH = H.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        std::map<std::size_t, Sparse> parts;
        for (const auto& [k, c] : H.delta(res.embedding[i])) add_term(parts[k / dH], k % dH, c);
        Sparse l;
        for (const auto& [h, part] : parts) {
            if (!span.contains(part)) throw DomainError("C is not a left coideal");
            for (const auto& [k, c] : coords(part)) add_term(l, h * dim + k, c);
        }
        A->coaction[i] = std::move(l);
    }
    res.alg = A;
    return res;
}

// ---------------------------------------------------------------- diag(H)

std::shared_ptr<ComodAlg> diag_comodule(const GModule& V, std::shared_ptr<const HopfAlg> host, DiagSlots slots) {
    auto H = build_supergroup(V);
    const HopfAlg& B = *host;
    if (!(B.group() == direct_sum(V.G, V.G)) || B.gens().size() != 2 * V.dim()) throw StructuralError("host is not A(V,V,u,u,G,G)");
    const std::size_t dim = H->dim();
    auto phi = iso_cop_map(*H);
    auto out = std::make_shared<ComodAlg>();
    out->host = host;
    out->alg = H->alg();
    for (std::size_t i = 0; i < dim; ++i) out->degree.push_back(H->degree(i));
    out->generators = H->generator_indices();
    out->coaction.resize(dim);
    for (std::size_t a = 0; a < dim; ++a) {
        Sparse l;
        for (const auto& [k, c] : H->delta(a)) {
            std::size_t i = k / dim, a3 = k % dim;
            for (const auto& [k2, c2] : H->delta(i)) {
                std::size_t a1 = k2 / dim, a2 = k2 % dim;
                for (const auto& [p, cp] : phi[a3]) {
                    std::size_t b = slots == DiagSlots::CopSecond ? tensor_index(*H, *H, B, a1, p) : tensor_index(*H, *H, B, p, a1);
                    add_term(l, b * dim + a2, c * c2 * cp);
                }
            }
        }
        out->coaction[a] = std::move(l);
    }
    return out;
}

MapReport verify_sigma_isom(const GModule& V, DiagSlots slots) {
    auto B = build_tensor_hopf(V, V);
    auto H = build_supergroup(V);
    auto D = diag_comodule(V, B, slots);
    auto L = build_L(B, V, rdatum_identity(V));
    const std::size_t dim = H->dim(), d = V.dim();
    if (L->dim() != dim) return {{false, "dimension mismatch"}, 0};
    const Algebra& HA = H->alg();
    const Coords uu = concat(V.u, V.u);
    std::vector<Sparse> sx(d);
    for (std::size_t i = 0; i < d; ++i) {
        Vec v(2 * d);
        v[i] = v[d + i] = 1;
        sx[i] = element_of(*L, v);
        if (slots == DiagSlots::CopFirst) sx[i] = L->alg.mul(sx[i], unit_vector(L->group_index(uu)));
    }
    std::vector<Sparse> sigma(dim);
    for (std::size_t a = 0; a < dim; ++a) {
        Sparse x = unit_vector(L->alg.unit);
        for (std::size_t i = 0; i < d; ++i)
            if (H->mask_of(a) >> i & 1) x = L->alg.mul(x, sx[i]);
        Coords g = H->group_of(a);
        sigma[a] = L->alg.mul(x, unit_vector(L->group_index(concat(g, g))));
    }
    auto apply = [&](const Sparse& x) {
        Sparse y;
        for (const auto& [k, c] : x) axpy(y, c, sigma[k]);
        return y;
    };
    MapReport rep;
    rep.rank = sparse_rank(sigma);
    if (rep.rank != dim) {
        rep.check = {false, "sigma is not bijective"};
        return rep;
    }
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t g : H->generator_indices())
            if (apply(HA.mul_basis(a, g)) != L->alg.mul(sigma[a], sigma[g])) {
                rep.check = {false, "sigma is not multiplicative at (" + HA.labels[a] + ", " + HA.labels[g] + ")"};
                return rep;
            }
        Sparse rhs;
        for (const auto& [k, c] : D->coaction[a])
            for (const auto& [k2, c2] : sigma[k % dim]) add_term(rhs, (k / dim) * dim + k2, c * c2);
        if (L->lambda(sigma[a]) != rhs) {
            rep.check = {false, "sigma is not a comodule map at " + HA.labels[a]};
            return rep;
        }
    }
    return rep;
}

}  // namespace brpic
