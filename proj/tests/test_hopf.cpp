#include "brpic/errors.hpp"
#include "brpic/hopf.hpp"
#include "doctest.h"

#include <random>

using namespace brpic;

namespace {

GModule sweedler() { return GModule{FinAbGroup({2}), {1}, {{1}}}; }
GModule z4(std::size_t d) { return GModule{FinAbGroup({4}), {2}, std::vector<Coords>(d, Coords{1})}; }
GModule z2(std::size_t d) { return GModule{FinAbGroup({2}), {1}, std::vector<Coords>(d, Coords{1})}; }
GModule klein(std::size_t d) {
    std::vector<Coords> chis{{1, 0}, {0, 1}, {1, 0}};
    chis.resize(d);
    return GModule{FinAbGroup({2, 2}), {1, 1}, chis};
}

RDatum graph_datum(const GModule& V, const Scalar& a, const Scalar& c) {
    return RDatum{Subspace::span(2, {Vec{a, Scalar(1)}}), BilinearForm{Matrix::from_rows({Vec{c}}, 1)}, OrthAut::identity(V.G)};
}

}  // namespace

TEST_CASE("Sweedler Hopf algebra") {
    auto H = build_supergroup(sweedler());
    CHECK(H->dim() == 4);
    CHECK(check_hopf(*H));
    // S^2 is conjugation by u, so S^2(x) = -x
    const Algebra& A = H->alg();
    std::size_t u = H->grouplike({1});
    for (std::size_t i = 0; i < H->dim(); ++i)
        CHECK(H->antipode(H->antipode(unit_vector(i))) == A.mul(A.mul_basis(u, i), unit_vector(u)));
    CHECK(H->antipode(H->antipode(unit_vector(H->index(1, {0})))) == Sparse{{H->index(1, {0}), Scalar(-1)}});
    // x^2 = 0, g x = -x g
    std::size_t x = H->index(1, {0}), g = H->grouplike({1});
    CHECK(H->alg().mul_basis(x, x).empty());
    CHECK(H->alg().mul_basis(g, x) == scaled(H->alg().mul_basis(x, g), Scalar(-1)));
}

TEST_CASE("supergroup dimensions and axioms") {
    CHECK(build_supergroup(z4(2))->dim() == 16);
    CHECK(build_supergroup(z4(3))->dim() == 32);
    for (auto V : {z2(2), z2(3), z4(1), z4(3), klein(2), GModule{FinAbGroup({8}), {4}, {{1}, {3}}}}) {
        auto H = build_supergroup(V);
        CHECK(H->dim() == (std::size_t{1} << V.dim()) * V.G.order());
        CHECK(check_hopf(*H, Exec::Serial));
        CHECK(check_iso_cop(*H));
    }
}

TEST_CASE("a character not acting by -1 is rejected") {
    CHECK_THROWS_AS(build_supergroup(GModule{FinAbGroup({4}), {2}, {{2}}}), StructuralError);
}

TEST_CASE("tensor product Hopf algebra") {
    GModule V1 = sweedler(), V2 = z4(1);
    auto H1 = build_supergroup(V1), H2 = build_supergroup(V2), B = build_tensor_hopf(V1, V2);
    CHECK(B->dim() == H1->dim() * H2->dim());
    CHECK(check_hopf(*B));
    CHECK(check_iso_cop(*B));
    std::size_t v1 = B->index(1, {0, 0}), v2 = B->index(2, {0, 0});
    CHECK(B->alg().mul_basis(v1, v2) == B->alg().mul_basis(v2, v1));
    CHECK(!B->alg().mul_basis(v1, v2).empty());
    // the index map is an algebra and coalgebra isomorphism H1 (x) H2 -> B
    for (std::size_t a = 0; a < H1->dim(); ++a)
        for (std::size_t b = 0; b < H2->dim(); ++b)
            for (std::size_t c = 0; c < H1->dim(); ++c)
                for (std::size_t d : H2->generator_indices()) {
                    Sparse lhs = B->alg().mul_basis(tensor_index(*H1, *H2, *B, a, b), tensor_index(*H1, *H2, *B, c, d));
                    Sparse rhs;
                    for (const auto& [k1, x1] : H1->alg().mul_basis(a, c))
                        for (const auto& [k2, x2] : H2->alg().mul_basis(b, d)) add_term(rhs, tensor_index(*H1, *H2, *B, k1, k2), x1 * x2);
                    REQUIRE(lhs == rhs);
                }
}

TEST_CASE("a corrupted table fails with a witness") {
    auto H = build_supergroup(sweedler());
    Algebra A = H->alg();
    std::size_t x = H->index(1, {0}), g = H->grouplike({1});
    A.table[g * A.dim + x] = A.table[x * A.dim + g];
    auto r = check_algebra(A, H->generator_indices(), Exec::Serial);
    CHECK(!r.ok);
    CHECK(r.failure.find("associativity") != std::string::npos);

    auto K = build_L(build_tensor_hopf(sweedler(), sweedler()), sweedler(), rdatum_identity(sweedler()));
    ComodAlg bad = *K;
    bad.coaction[1] = bad.coaction[2];
    auto rc = check_comodule_algebra(bad, Exec::Serial);
    CHECK(!rc.ok);
    CHECK(!rc.failure.empty());
}

TEST_CASE("K(0,0,0,F,psi) is the twisted group algebra") {
    GModule V = z4(1);
    FinAbGroup G = direct_sum(V.G, V.G);
    Subgroup F = Subgroup::generated_by(G, {{1, 0}, {0, 1}});
    // psi(f, h) = i^{f_1 h_2}
    std::vector<int> e(F.order() * F.order());
    auto el = F.elements();
    for (std::size_t a = 0; a < el.size(); ++a)
        for (std::size_t b = 0; b < el.size(); ++b) e[a * el.size() + b] = (el[a][0] * el[b][1]) % 4;
    TwoCocycle psi(F, 4, e);
    CompatibleData d{V, V, Subspace(1), Subspace(1), Subspace(2), zero_form(0), F, psi};
    auto K = build_K(d);
    CHECK(K->dim() == F.order());
    CHECK(check_comodule_algebra(*K));
    for (std::size_t a = 0; a < el.size(); ++a)
        for (std::size_t b = 0; b < el.size(); ++b)
            CHECK(K->alg.mul_basis(K->group_index(el[a]), K->group_index(el[b])) ==
                  Sparse{{K->group_index(G.add(el[a], el[b])), psi.value(el[a], el[b])}});
}

TEST_CASE("L data") {
    GModule V = sweedler();
    auto B = build_tensor_hopf(V, V);
    RDatum r = graph_datum(V, Scalar(2), Scalar(3));
    auto L = build_L(B, V, r);
    CHECK(L->dim() == 4);
    CHECK(check_comodule_algebra(*L));
    CHECK(coinvariant_dim(*L) == 1);
    // w^2 = beta(w, w) / 2
    std::size_t w = L->gen_index(0);
    Scalar t = r.W.coords(L->gen_vectors[0])[0];
    CHECK(L->alg.mul_basis(w, w) == Sparse{{0, Scalar(3) * t * t / Scalar(2)}});

    auto orth = enumerate_orth(V.G);
    REQUIRE(orth.size() == 2);
    const OrthAut& gamma = orth[0].is_identity() ? orth[1] : orth[0];
    CHECK(twisted_subgroup(gamma).U.order() == 4);
    // (u, u) is outside U_gamma, so a nonzero W has no L algebra
    CHECK_THROWS_AS(build_L(B, V, RDatum{diagonal(V), zero_form(1), gamma}), DomainError);
    // W = 0 is still fine and gives the twisted group algebra of U_gamma
    auto L0 = build_K(B, l_data(V, RDatum{Subspace(2), zero_form(0), gamma}));
    CHECK(L0->dim() == 4);
    CHECK(check_comodule_algebra(*L0));
    CHECK(coinvariant_dim(*L0) == 1);
}

TEST_CASE("compatible data validation") {
    GModule V = z2(1);
    FinAbGroup G = direct_sum(V.G, V.G);
    Subgroup F = Subgroup::generated_by(G, {{1, 1}});
    Subgroup T = Subgroup::generated_by(G, {});
    auto psi = TwoCocycle::trivial(F, 2);
    Subspace full1 = Subspace::full(1);
    CompatibleData ok{V, V, Subspace(1), Subspace(1), Subspace::span(2, {Vec{Scalar(1), Scalar(1)}}), zero_form(1), F, psi};
    CHECK(validate_compatible(ok));
    auto bad = ok;
    bad.W3 = Subspace::span(2, {Vec{Scalar(1), Scalar(0)}});
    CHECK(validate_compatible(bad).reason == "W3 meets V1");
    bad = ok;
    bad.W1 = full1;
    bad.W2 = full1;
    bad.beta = zero_form(3);
    bad.W3 = Subspace::span(2, {Vec{Scalar(1), Scalar(1)}});
    CHECK(validate_compatible(bad).reason == "W3 meets W1 + W2");
    bad = ok;
    bad.F = T;
    bad.psi = TwoCocycle::trivial(T, 2);
    CHECK(validate_compatible(bad).reason == "W3 is nonzero but u is not in F");
    bad = CompatibleData{V, V, full1, full1, Subspace(2), BilinearForm{Matrix::from_rows({Vec{Scalar(0), Scalar(1)}, Vec{Scalar(1), Scalar(0)}}, 2)}, F, psi};
    CHECK(validate_compatible(bad).reason == "beta(w1, w2) != -beta(w2, w1)");
    bad.beta = BilinearForm{Matrix::from_rows({Vec{Scalar(0), Scalar(1)}, Vec{Scalar(-1), Scalar(0)}}, 2)};
    CHECK(validate_compatible(bad));
    bad.F = T;
    bad.psi = TwoCocycle::trivial(T, 2);
    CHECK(validate_compatible(bad).reason == "u is not in F but beta is nonzero on W1 x W2 or W2 x W3");
    CHECK_THROWS_AS(build_K(bad), DomainError);
}

TEST_CASE("random compatible data give comodule algebras") {
    std::mt19937_64 rng(7);
    const std::vector<std::pair<GModule, GModule>> shapes{
        {z2(1), z2(1)}, {z2(2), z2(1)}, {z4(1), z2(1)}, {klein(1), klein(1)}, {z2(1), z4(2)}};
    int with_w3 = 0, with_mixed = 0;
    for (int rep = 0; rep < 8; ++rep)
        for (const auto& [V1, V2] : shapes) {
            CompatibleData d = sample_compatible(V1, V2, rng);
            auto K = build_K(d);
            INFO("W dims " << d.W1.dim() << " " << d.W2.dim() << " " << d.W3.dim() << " |F| " << d.F.order());
            CHECK(K->dim() == (std::size_t{1} << (d.W1.dim() + d.W2.dim() + d.W3.dim())) * d.F.order());
            auto r = check_comodule_algebra(*K);
            INFO(r.failure);
            CHECK(r.ok);
            CHECK(coinvariant_dim(*K) == 1);
            with_w3 += d.W3.dim() > 0;
            const std::size_t n1 = d.W1.dim(), n2 = d.W2.dim();
            for (std::size_t a = 0; a < n1; ++a)
                for (std::size_t b = n1; b < n1 + n2; ++b) with_mixed += !d.beta.gram(a, b).is_zero();
        }
    CHECK(with_w3 > 0);
    CHECK(with_mixed > 0);
}

TEST_CASE("the literal (1, u2) coaction term is not coassociative") {
    GModule V = z2(1);
    FinAbGroup G = direct_sum(V.G, V.G);
    Subgroup F = Subgroup::generated_by(G, {{1, 1}});
    CompatibleData d{V, V, Subspace(1), Subspace(1), Subspace::span(2, {Vec{Scalar(1), Scalar(1)}}), zero_form(1), F,
                     TwoCocycle::trivial(F, 2)};
    CHECK(check_comodule_algebra(*build_K(d, W3Term::ByU)));
    auto r = check_comodule_algebra(*build_K(d, W3Term::ByU2));
    CHECK(!r.ok);
    CHECK(r.failure.find("coassociativity") != std::string::npos);
}

TEST_CASE("associated graded of K drops beta") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 6; ++rep) {
        GModule V1 = rep % 2 ? klein(1) : z2(2), V2 = z2(1);
        if (rep % 2) V2 = klein(1);
        CompatibleData d = sample_compatible(V1, V2, rng);
        auto B = build_tensor_hopf(V1, V2);
        auto K = build_K(B, d);
        CompatibleData d0 = d;
        d0.beta = zero_form(d.beta.gram.rows());
        auto K0 = build_K(B, d0);
        auto gr = graded(*K);
        CHECK(same_structure(*gr, *K0));
        CHECK(same_structure(*graded(*gr), *gr));
        auto dims = loewy_dims(*K);
        CHECK(dims.front() == d.F.order());
        CHECK(dims.back() == K->dim());
        // degree-0 coaction lands in H(0) (x) A(0)
        for (std::size_t a = 0; a < K->dim(); ++a)
            if (K->degree[a] == 0)
                for (const auto& [k, c] : K->coaction[a]) CHECK(B->degree(k / K->dim()) + K->degree[k % K->dim()] == 0);
    }
}

TEST_CASE("diag(H) and the sigma isomorphism") {
    for (auto V : {sweedler(), z4(1), z2(2)}) {
        auto B = build_tensor_hopf(V, V);
        for (auto slots : {DiagSlots::CopFirst, DiagSlots::CopSecond}) {
            auto D = diag_comodule(V, B, slots);
            CHECK(check_comodule_algebra(*D));
            CHECK(coinvariant_dim(*D) == 1);
            auto rep = verify_sigma_isom(V, slots);
            INFO(rep.check.failure);
            CHECK(rep.check.ok);
            CHECK(rep.rank == D->dim());
        }
    }
}

TEST_CASE("coideal subalgebras") {
    GModule V = sweedler();
    auto B = build_tensor_hopf(V, V);
    FinAbGroup G = B->group();
    Subgroup F = Subgroup::generated_by(G, {{1, 1}});
    auto kF = build_C(B, V, V, Subspace(1), Subspace(1), Subspace(2), F);
    CHECK(kF.alg->dim() == 2);
    CHECK(check_comodule_algebra(*kF.alg));
    // [(v1, v2)]^2 = 0 and its coproduct
    Vec v{Scalar(2), Scalar(-3)};
    Sparse br = bracket(*B, 1, v, {1, 1});
    CHECK(B->alg().mul(br, br).empty());
    const std::size_t dim = B->dim();
    Sparse expect;
    add_term(expect, B->index(1, {0, 0}) * dim + 0, Scalar(2));
    add_term(expect, B->index(2, {1, 1}) * dim + B->grouplike({1, 1}), Scalar(-3));
    for (const auto& [k, c] : br) add_term(expect, B->grouplike({1, 0}) * dim + k, c);
    CHECK(B->delta(br) == expect);
    auto C = build_C(B, V, V, Subspace(1), Subspace(1), Subspace::span(2, {v}), F);
    CHECK(C.alg->dim() == 4);
    CHECK(check_comodule_algebra(*C.alg));
    // C(0, 0, diag V, F) is K(0, 0, diag V, 0, F, 1) up to the basis change
    CHECK(coinvariant_dim(*C.alg) == 1);
    CHECK_THROWS_AS(build_C(B, V, V, Subspace(1), Subspace(1), Subspace::span(2, {v}), Subgroup::generated_by(G, {})), DomainError);
}

TEST_CASE("cotensor of diagonal algebras") {
    for (auto V : {sweedler(), z4(1)}) {
        auto H = build_supergroup(V);
        auto B = build_tensor_hopf(V, V);
        auto L = build_L(B, V, rdatum_identity(V));
        Cotensor c = cotensor(L, L, H);
        CHECK(c.dim() == (std::size_t{1} << V.dim()) * V.G.order());
        CHECK(c.closure());
        auto C = c.as_comodule();
        CHECK(check_comodule_algebra(*C));
        CHECK(coinvariant_dim(*C) == 1);
    }
}

TEST_CASE("cotensor with group algebras matches subgroup composition") {
    GModule V = z4(1);
    auto H = build_supergroup(V);
    auto B = build_tensor_hopf(V, V);
    FinAbGroup GG = B->group();
    // F1 = <(1, 0), (0, 2)> and F2 = diag(G); composite {(f, h) : (f, g) in F1, (g, h) in F2} = F1
    Subgroup F1 = Subgroup::generated_by(GG, {{1, 0}, {0, 2}}), F2 = Subgroup::generated_by(GG, {{1, 1}});
    auto K1 = build_K(B, CompatibleData{V, V, Subspace(1), Subspace(1), Subspace(2), zero_form(0), F1, TwoCocycle::trivial(F1, 4)});
    auto K2 = build_K(B, CompatibleData{V, V, Subspace(1), Subspace(1), Subspace(2), zero_form(0), F2, TwoCocycle::trivial(F2, 4)});
    Cotensor c = cotensor(K1, K2, H);
    CHECK(c.dim() == F1.order());
    // F1 with F1: the composite has order |F1|^2 / |F1 cap (0 x G)| ... counted by the pairs sharing the middle
    Cotensor c2 = cotensor(K1, K1, H);
    std::size_t pairs = 0;
    for (const auto& a : F1.elements())
        for (const auto& b : F1.elements()) pairs += a[1] == b[0];
    CHECK(c2.dim() == pairs);
}

TEST_CASE("cotensor isomorphism on Sweedler graph data") {
    GModule V = sweedler();
    for (auto [a, c, a2, c2] : std::vector<std::array<int, 4>>{{1, 0, 1, 0}, {2, 3, 5, 7}, {-1, 1, 3, -2}}) {
        auto rep = verify_cotensor_iso(V, graph_datum(V, Scalar(a), Scalar(c)), graph_datum(V, Scalar(a2), Scalar(c2)), Exec::Serial);
        INFO(rep.check.failure);
        CHECK(rep.check.ok);
        CHECK(rep.cotensor_dim == 4);
        CHECK(rep.expected_dim == 4);
        CHECK(rep.image_rank == 4);
    }
}

TEST_CASE("cotensor isomorphism on random data") {
    std::mt19937_64 rng(5);
    for (auto V : {z2(2), klein(1), z4(1)}) {
        std::vector<OrthAut> adm;
        for (const auto& comp : describe_brpic(V).components)
            if (comp.has_invertible_a) adm.push_back(comp.alpha);
        for (int rep = 0; rep < 3; ++rep) {
            const OrthAut& al = adm[rng() % adm.size()];
            auto oa = sample_odatum(V, al, rng);
            auto ob = sample_odatum(V, OrthAut::identity(V.G), rng);
            REQUIRE(oa);
            REQUIRE(ob);
            RDatum a = odatum_to_rdatum(V, *oa), b = odatum_to_rdatum(V, *ob);
            auto r = verify_cotensor_iso(V, a, b);
            INFO(r.check.failure);
            CHECK(r.check.ok);
            CHECK(r.cotensor_dim == r.expected_dim);
        }
    }
}

TEST_CASE("right simplicity probe") {
    std::mt19937_64 rng(3);
    GModule V = sweedler();
    auto B = build_tensor_hopf(V, V);
    auto L = build_L(B, V, graph_datum(V, Scalar(2), Scalar(1)));
    CHECK(!probe_right_simple(*L, rng).counterexample);
    FinAbGroup G = B->group();
    Subgroup F = Subgroup::generated_by(G, {{1, 0}, {0, 1}});
    std::vector<int> e(16);
    auto el = F.elements();
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) e[a * 4 + b] = el[a][0] * el[b][1] % 2;
    auto kpsi = build_K(B, CompatibleData{V, V, Subspace(1), Subspace(1), Subspace(2), zero_form(0), F, TwoCocycle(F, 2, e)});
    CHECK(!probe_right_simple(*kpsi, rng).counterexample);

    // kF + kF: two orthogonal copies of the group algebra of F = <u> with the same coaction
    auto H = build_supergroup(V);
    ComodAlg two;
    two.host = H;
    two.alg.dim = 4;
    two.alg.unit = 0;
    two.alg.table.assign(16, Sparse{});
    // basis: 1 = p + q, g = gp + gq, p, gp; products in the idempotent basis
    // use e1 = 1, e2 = g (sum), e3 = p, e4 = gp with p central idempotent
    auto idx = [](int i, int j) { return static_cast<std::size_t>(i * 4 + j); };
    two.alg.table[idx(0, 0)] = {{0, Scalar(1)}};
    two.alg.table[idx(0, 1)] = {{1, Scalar(1)}};
    two.alg.table[idx(0, 2)] = {{2, Scalar(1)}};
    two.alg.table[idx(0, 3)] = {{3, Scalar(1)}};
    two.alg.table[idx(1, 0)] = {{1, Scalar(1)}};
    two.alg.table[idx(1, 1)] = {{0, Scalar(1)}};
    two.alg.table[idx(1, 2)] = {{3, Scalar(1)}};
    two.alg.table[idx(1, 3)] = {{2, Scalar(1)}};
    two.alg.table[idx(2, 0)] = {{2, Scalar(1)}};
    two.alg.table[idx(2, 1)] = {{3, Scalar(1)}};
    two.alg.table[idx(2, 2)] = {{2, Scalar(1)}};
    two.alg.table[idx(2, 3)] = {{3, Scalar(1)}};
    two.alg.table[idx(3, 0)] = {{3, Scalar(1)}};
    two.alg.table[idx(3, 1)] = {{2, Scalar(1)}};
    two.alg.table[idx(3, 2)] = {{3, Scalar(1)}};
    two.alg.table[idx(3, 3)] = {{2, Scalar(1)}};
    std::size_t one = H->grouplike({0}), g = H->grouplike({1});
    two.coaction = {{{one * 4 + 0, Scalar(1)}}, {{g * 4 + 1, Scalar(1)}}, {{one * 4 + 2, Scalar(1)}}, {{g * 4 + 3, Scalar(1)}}};
    two.generators = {1, 2};
    REQUIRE(check_comodule_algebra(two, Exec::Serial));
    auto p = probe_right_simple(two, rng);
    CHECK(p.counterexample);
    CHECK(p.witness_dim == 2);
}

TEST_CASE("Morita criterion") {
    std::mt19937_64 rng(19);
    GModule V1 = z4(1), V2 = z2(1);
    CompatibleData d = sample_compatible(V1, V2, rng);
    while (d.W1.dim() + d.W2.dim() + d.W3.dim() == 0 || d.beta.gram.is_zero()) d = sample_compatible(V1, V2, rng);
    CHECK(morita_equiv_criterion(d, d).has_value());
    // translate by g = (1, 1)
    Coords g{1, 1};
    CompatibleData t = d;
    Vec w1 = V1.weights({1}), w2 = V2.weights({1}), w = w1;
    w.insert(w.end(), w2.begin(), w2.end());
    t.W1 = d.W1.scaled(w1);
    t.W2 = d.W2.scaled(w2);
    t.W3 = d.W3.scaled(w);
    {
        // move beta along the same diagonal action, block by block
        auto block = [&](const Subspace& W, const Vec& ww, std::size_t off, std::vector<Vec>& rows) {
            for (std::size_t i = 0; i < W.dim(); ++i) {
                Vec v = W.basis_vector(i), gv(v.size());
                for (std::size_t j = 0; j < v.size(); ++j) gv[j] = v[j] * ww[j];
                (void)off;
                rows.push_back(gv);
            }
        };
        std::vector<Vec> r1, r2, r3;
        block(d.W1, w1, 0, r1);
        block(d.W2, w2, 0, r2);
        block(d.W3, w, 0, r3);
        const std::size_t n = d.beta.gram.rows();
        Matrix M(n, n);  // M(i, .) = coords of g b_i in the basis of gW
        std::size_t row = 0;
        for (auto* p : {&r1, &r2, &r3}) {
            const Subspace& S = p == &r1 ? t.W1 : p == &r2 ? t.W2 : t.W3;
            std::size_t off = p == &r1 ? 0 : p == &r2 ? t.W1.dim() : t.W1.dim() + t.W2.dim();
            for (const auto& v : *p) {
                Vec c = S.coords(v);
                for (std::size_t j = 0; j < c.size(); ++j) M(row, off + j) = c[j];
                ++row;
            }
        }
        Matrix Mi = inverse(M);
        t.beta = BilinearForm{Mi.transpose() * d.beta.gram * Mi};
    }
    auto wit = morita_equiv_criterion(d, t);
    REQUIRE(wit.has_value());
    CHECK(validate_compatible(t));
    // differing |F|
    CompatibleData s = d;
    s.F = Subgroup::generated_by(direct_sum(V1.G, V2.G), {});
    s.psi = TwoCocycle::trivial(s.F, 4);
    CHECK(!morita_equiv_criterion(d, s).has_value());
}

TEST_CASE("freeness probe on small cotensors") {
    GModule V = sweedler();
    auto H = build_supergroup(V);
    auto B = build_tensor_hopf(V, V);
    auto L = build_L(B, V, graph_datum(V, Scalar(2), Scalar(1)));
    auto K = build_L(B, V, graph_datum(V, Scalar(3), Scalar(-1)));
    Cotensor c = cotensor(L, K, H);
    auto f = probe_freeness(c);
    // 16 = 4 * 4: a free basis of rank 4 exists here
    CHECK(f.free_basis_found);
    CHECK(f.rank == 4);

    // observed, not proved: free on random pairs as well
    std::mt19937_64 rng(42);
    for (auto W : {sweedler(), z2(2), z4(1), klein(1)}) {
        std::vector<OrthAut> adm;
        for (const auto& comp : describe_brpic(W).components)
            if (comp.has_invertible_a) adm.push_back(comp.alpha);
        auto HW = build_supergroup(W);
        auto BW = build_tensor_hopf(W, W);
        for (int rep = 0; rep < 3; ++rep) {
            RDatum a = odatum_to_rdatum(W, *sample_odatum(W, adm[rng() % adm.size()], rng));
            RDatum b = odatum_to_rdatum(W, *sample_odatum(W, OrthAut::identity(W.G), rng));
            Cotensor cw = cotensor(build_L(BW, W, a), build_L(BW, W, b), HW);
            auto fw = probe_freeness(cw);
            CHECK(fw.free_basis_found);
            CHECK(fw.rank * cw.dim() == cw.L->dim() * cw.K->dim());
        }
    }
}

TEST_CASE("serial and parallel checks report the same first failure") {
    for (auto V : {z2(2), z4(3)}) {
        auto H = build_supergroup(V);
        CHECK(check_hopf(*H, Exec::Serial).ok == check_hopf(*H, Exec::Parallel).ok);
        Algebra A = H->alg();
        std::size_t x = H->index(1, {0}), g = H->grouplike({1});
        A.table[g * A.dim + x] = A.table[x * A.dim + g];
        auto s = check_algebra(A, H->generator_indices(), Exec::Serial);
        auto p = check_algebra(A, H->generator_indices(), Exec::Parallel);
        CHECK(!s.ok);
        CHECK(s.failure == p.failure);
    }
    std::mt19937_64 rng(61);
    GModule V = klein(2);
    int with_w3 = 0;
    for (int rep = 0; rep < 6; ++rep) {
        CompatibleData d = sample_compatible(V, V, rng);
        auto good = build_K(d);
        CHECK(check_comodule_algebra(*good, Exec::Serial).ok);
        CHECK(check_comodule_algebra(*good, Exec::Parallel).ok);
        if (d.W3.dim() == 0) continue;
        ++with_w3;
        auto bad = build_K(d, W3Term::ByU2);
        auto s = check_comodule_algebra(*bad, Exec::Serial), p = check_comodule_algebra(*bad, Exec::Parallel);
        CHECK(!s.ok);
        CHECK(s.failure == p.failure);
    }
    CHECK(with_w3 > 0);
}

TEST_CASE("psi_alpha(u, f) = psi_alpha(f, u) on every admissible alpha") {
    // the extra compatibility clause holds for all L data
    for (auto V : {sweedler(), z4(1), klein(1), GModule{FinAbGroup({4, 2}), {2, 0}, {{1, 0}}}}) {
        Coords uu = V.u;
        uu.insert(uu.end(), V.u.begin(), V.u.end());
        std::size_t admissible = 0;
        for (const auto& alpha : enumerate_orth(V.G)) {
            TwistedSubgroup t = twisted_subgroup(alpha);
            if (!u_pair_in(t, V.u)) continue;
            ++admissible;
            TwoCocycle psi = psi_alpha(alpha);
            for (const auto& f : t.U.elements()) REQUIRE(psi.exponent(uu, f) == psi.exponent(f, uu));
        }
        CHECK(admissible > 0);
    }
}
