#include <doctest.h>

#include "brpic/errors.hpp"
#include "brpic/orth.hpp"

#include <set>

using namespace brpic;

namespace {

// Brute-force oracle: every 2x2 matrix over Z_p, keep invertible ones with
// (c g + d chi)(a g + b chi) = g chi for all g, chi.
std::set<std::vector<std::vector<int>>> gl2_oracle(int p) {
    std::set<std::vector<std::vector<int>>> out;
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            for (int c = 0; c < p; ++c)
                for (int d = 0; d < p; ++d) {
                    if (((a * d - b * c) % p + p) % p == 0) continue;
                    bool ok = true;
                    for (int g = 0; g < p && ok; ++g)
                        for (int x = 0; x < p && ok; ++x)
                            ok = ((c * g + d * x) * (a * g + b * x) - g * x) % p == 0;
                    if (ok) out.insert({{a, b}, {c, d}});
                }
    return out;
}

}  // namespace

TEST_CASE("O(Z2 + Z2^) is {id, gamma}") {
    FinAbGroup G({2});
    auto O = enumerate_orth(G);
    REQUIRE(O.size() == 2);
    std::set<std::vector<std::vector<int>>> got{O[0].matrix(), O[1].matrix()};
    CHECK(got == std::set<std::vector<std::vector<int>>>{{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}});
}

TEST_CASE("O(Z_p) matches the GL2 oracle") {
    for (int p : {3, 5, 7}) {
        FinAbGroup G({p});
        auto O = enumerate_orth(G);
        std::set<std::vector<std::vector<int>>> got;
        for (const auto& a : O) got.insert(a.matrix());
        CHECK(got == gl2_oracle(p));
        CHECK(O.size() == static_cast<std::size_t>(2 * (p - 1)));
        bool abelian = true;
        for (const auto& a : O)
            for (const auto& b : O) abelian = abelian && (a * b == b * a);
        CHECK(abelian == (p < 5));
    }
}

TEST_CASE("serial and parallel enumeration agree") {
    for (auto f : {std::vector<int>{2}, {4}, {2, 2}, {3}, {6}}) {
        FinAbGroup G(f);
        auto a = enumerate_orth(G, 256, Exec::Serial);
        auto b = enumerate_orth(G, 256, Exec::Parallel);
        CHECK(a == b);
        for (const auto& x : a) {
            CHECK(is_orthogonal(G, x.hom()));
            for (const auto& y : a) CHECK(std::find(a.begin(), a.end(), x * y) != a.end());
            CHECK(x * x.inverse() == OrthAut::identity(G));
        }
    }
}

TEST_CASE("enumeration bound") {
    CHECK_THROWS_AS(enumerate_orth(FinAbGroup({17})), CapacityError);
    CHECK(enumerate_orth(FinAbGroup({17}), 289).size() == 32);
}

TEST_CASE("non-orthogonal input is rejected") {
    FinAbGroup G({3});
    CHECK_THROWS_AS(OrthAut(G, {{2, 0}, {0, 1}}), StructuralError);
    CHECK_THROWS_AS(OrthAut(G, {{1, 0}, {0, 0}}), StructuralError);
}

TEST_CASE("U_id is the diagonal and psi_id is trivial") {
    for (auto f : {std::vector<int>{2}, {3}, {4}, {2, 2}}) {
        FinAbGroup G(f);
        FinAbGroup GG = direct_sum(G, G);
        OrthAut id = OrthAut::identity(G);
        TwistedSubgroup t = twisted_subgroup(id);
        std::vector<Coords> diag;
        for (const auto& g : G.elements()) {
            Coords x = g;
            x.insert(x.end(), g.begin(), g.end());
            diag.push_back(x);
        }
        CHECK(t.U == Subgroup::generated_by(GG, diag));
        CHECK(t.U.order() == G.order());
        TwoCocycle psi = psi_alpha(id);
        for (int e : psi.table()) CHECK(e == 0);
    }
}

TEST_CASE("gamma on Z2") {
    FinAbGroup G({2});
    OrthAut gamma(G, {{0, 1}, {1, 0}});
    TwistedSubgroup t = twisted_subgroup(gamma);
    CHECK(t.U.order() == 4);
    TwoCocycle psi = psi_alpha(gamma);
    CHECK(psi.value({1, 0}, {0, 1}) == Scalar(-1));
    CHECK(psi.is_cocycle());
    CHECK(psi.is_normalized());
    CHECK(u_pair_in(t, {1}));
}

TEST_CASE("psi_alpha is a normalized cocycle for every enumerated alpha") {
    for (auto f : {std::vector<int>{2}, {3}, {4}, {2, 2}, {6}}) {
        FinAbGroup G(f);
        for (const auto& a : enumerate_orth(G)) {
            TwoCocycle psi = psi_alpha(a);
            CHECK(psi.is_normalized());
            CHECK(psi.is_cocycle(Exec::Serial));
            CHECK(psi.is_cocycle(Exec::Parallel));
        }
    }
}

TEST_CASE("cocycle check rejects a non-cocycle") {
    FinAbGroup GG({2, 2});
    Subgroup F = Subgroup::generated_by(GG, {{1, 0}, {0, 1}});
    std::vector<int> e(16, 0);
    e[1 * 4 + 1] = 1;  // psi(a, a) = -1 only for one element: breaks the identity
    e[1 * 4 + 2] = 1;
    TwoCocycle bad(F, 2, e);
    CHECK_FALSE(bad.is_cocycle());
}
