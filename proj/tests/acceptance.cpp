// Acceptance run: one PASS/FAIL line per criterion, with timings against the budget.

#include "brpic/brpic.hpp"
#include "brpic/errors.hpp"
#include "brpic/hopf.hpp"
#include "brpic/orth.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

using namespace brpic;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = s < budget_s;
    if (!in_time) o.detail += (o.detail.empty() ? "" : "; ") + std::string("over the time budget");
    bool ok = o.ok && in_time;
    if (!ok) ++failures;
    std::printf("%s [%d] %s (%.2fs / %.0fs)%s%s\n", ok ? "PASS" : "FAIL", id, title, s, budget_s, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
    std::fflush(stdout);
}

// Collects failures; the first few are kept as witnesses.
struct Tally {
    std::size_t checks = 0, failed = 0;
    std::string first;
    void check(bool ok, const std::string& what) {
        ++checks;
        if (ok) return;
        if (failed++ < 3) first += (first.empty() ? "" : "; ") + what;
    }
    Outcome outcome(const std::string& extra = {}) const {
        std::ostringstream s;
        s << checks << " checks, " << failed << " failures" << (extra.empty() ? "" : ", " + extra) << (first.empty() ? "" : " [" + first + "]");
        return {failed == 0, s.str()};
    }
};

GModule sweedler() { return GModule{FinAbGroup({2}), {1}, {{1}}}; }

// Characters pairing to -1 with u, cycled to the requested dimension.
GModule with_dim(const FinAbGroup& G, const Coords& u, std::size_t d) {
    std::vector<Coords> odd;
    for (const auto& chi : G.elements())
        if (2 * pairing(G, chi, u) == G.exponent()) odd.push_back(chi);
    GModule V{G, u, {}};
    for (std::size_t i = 0; i < d; ++i) V.chis.push_back(odd[i % odd.size()]);
    return V;
}

bool same(const RDatum& a, const RDatum& b) { return a.W == b.W && a.beta == b.beta && a.alpha == b.alpha; }

std::vector<OrthAut> nonempty_alphas(const GModule& V) {
    std::vector<OrthAut> out;
    for (const auto& c : describe_brpic(V).components)
        if (c.has_invertible_a) out.push_back(c.alpha);
    return out;
}

ODatum draw(const GModule& V, const std::vector<OrthAut>& alphas, std::mt19937_64& rng) {
    auto o = sample_odatum(V, alphas[rng() % alphas.size()], rng);
    if (!o) throw std::logic_error("nonempty component gave no sample");
    return *o;
}

RDatum translate(const GModule& V, const RDatum& r, std::mt19937_64& rng) {
    FinAbGroup GG = direct_sum(V.G, V.G);
    Coords xy = GG.element(rng() % GG.order());
    int k = V.G.rank();
    auto [W, b] = transport(r.W, r.beta, V.pair_weights(Coords(xy.begin(), xy.begin() + k), Coords(xy.begin() + k, xy.end())));
    return RDatum{W, b, r.alpha};
}

// Independent oracle: invertible 2x2 matrices over Z_p preserving g chi.
std::set<std::vector<std::vector<int>>> gl2_oracle(int p) {
    std::set<std::vector<std::vector<int>>> out;
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            for (int c = 0; c < p; ++c)
                for (int d = 0; d < p; ++d) {
                    if (((a * d - b * c) % p + p) % p == 0) continue;
                    bool ok = true;
                    for (int g = 0; g < p && ok; ++g)
                        for (int x = 0; x < p && ok; ++x) ok = ((c * g + d * x) * (a * g + b * x) - g * x) % p == 0;
                    if (ok) out.insert({{a, b}, {c, d}});
                }
    return out;
}

}  // namespace

int main() {
    criterion(1, "O(Z2 + Z2^) = {id, gamma}, gamma of order 2", 1, [] {
        FinAbGroup G({2});
        auto all = enumerate_orth(G);
        OrthAut gamma(G, {{0, 1}, {1, 0}});
        bool ok = all.size() == 2 && all[0] == gamma && all[1].is_identity() && !gamma.is_identity() && (gamma * gamma).is_identity();
        return Outcome{ok, "|O| = " + std::to_string(all.size())};
    });

    criterion(2, "|O(Z_p + Z_p^)| = 2(p-1), non-abelian for p >= 5, against the GL2 oracle", 30, [] {
        Tally t;
        std::string sizes;
        for (int p : {3, 5, 7}) {
            auto all = enumerate_orth(FinAbGroup({p}));
            std::set<std::vector<std::vector<int>>> got;
            for (const auto& a : all) got.insert(a.matrix());
            t.check(all.size() == static_cast<std::size_t>(2 * (p - 1)), "size at p = " + std::to_string(p));
            t.check(got == gl2_oracle(p), "oracle mismatch at p = " + std::to_string(p));
            bool abelian = true;
            for (const auto& a : all)
                for (const auto& b : all) abelian = abelian && a * b == b * a;
            if (p >= 5) t.check(!abelian, "abelian at p = " + std::to_string(p));
            sizes += (sizes.empty() ? "" : ", ") + std::to_string(all.size());
        }
        return t.outcome("orders " + sizes);
    });

    criterion(3, "U_id = diag(G), psi_id = 1, every psi_alpha a normalized 2-cocycle", 10, [] {
        Tally t;
        std::size_t alphas = 0;
        for (auto f : std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 2}}) {
            FinAbGroup G(f);
            OrthAut id = OrthAut::identity(G);
            TwistedSubgroup tw = twisted_subgroup(id);
            std::vector<Coords> diag;
            for (const auto& g : G.elements()) {
                Coords gg = g;
                gg.insert(gg.end(), g.begin(), g.end());
                diag.push_back(gg);
            }
            t.check(tw.U == Subgroup::generated_by(direct_sum(G, G), diag) && tw.U.order() == G.order(), "U_id");
            TwoCocycle psi = psi_alpha(id);
            t.check(std::all_of(psi.table().begin(), psi.table().end(), [](int e) { return e == 0; }), "psi_id");
            for (const auto& a : enumerate_orth(G)) {
                ++alphas;
                TwoCocycle pa = psi_alpha(a);
                t.check(pa.is_normalized() && pa.is_cocycle(), "psi_alpha");
            }
        }
        return t.outcome(std::to_string(alphas) + " alphas");
    });

    criterion(4, "Sweedler: 2 components, each with A-dim 1, C-dim 1, D = A^-T", 5, [] {
        BrpicDescription d = describe_brpic(sweedler());
        std::ostringstream s;
        bool ok = d.component_count() == 2;
        for (const auto& c : d.components) {
            bool good = c.a_dim == 1 && c.c_dim == 1 && c.has_invertible_a && c.d_forced_equivariant;
            ok = ok && good;
            s << (c.alpha.is_identity() ? "id" : "gamma") << ": A-dim " << c.a_dim << ", C-dim " << c.c_dim
              << (good ? "" : " (no invertible equivariant T)") << "; ";
        }
        s << d.component_count() << " components";
        return Outcome{ok, s.str()};
    });

    criterion(5, "group axioms on classes, 200 seeded elements", 60, [] {
        std::mt19937_64 rng(5005);
        Tally t;
        std::size_t undefined = 0, tried = 0;
        std::vector<GModule> hosts{GModule{FinAbGroup({2}), {1}, {}}, sweedler(), with_dim(FinAbGroup({2}), {1}, 2),
                                   GModule{FinAbGroup({2, 2}), {1, 1}, {}}, with_dim(FinAbGroup({2, 2}), {1, 1}, 1),
                                   with_dim(FinAbGroup({2, 2}), {1, 1}, 2)};
        for (int n = 0; n < 200; ++n) {
            const GModule& V = hosts[n % hosts.size()];
            auto alphas = nonempty_alphas(V);
            ODatum a = draw(V, alphas, rng), b = draw(V, alphas, rng), c = draw(V, alphas, rng);
            ODatum l = odatum_product(V, odatum_product(V, a, b), c), r = odatum_product(V, a, odatum_product(V, b, c));
            t.check(l.T == r.T && l.alpha == r.alpha, "T-side associativity");
            RDatum ra = odatum_to_rdatum(V, a), rb = odatum_to_rdatum(V, b), rc = odatum_to_rdatum(V, c);
            RDatum e = rdatum_identity(V);
            t.check(same(rdatum_product(V, ra, e), ra) && same(rdatum_product(V, e, ra), ra), "identity");
            InverseResult inv = rdatum_inverse(V, ra);
            t.check(inv.invertible && rdatum_equiv(V, rdatum_product(V, ra, *inv.inverse), e).has_value() &&
                        rdatum_equiv(V, rdatum_product(V, *inv.inverse, ra), e).has_value(),
                    "inverse");
            ++tried;
            try {
                RDatum left = rdatum_product(V, rdatum_product(V, ra, rb), rc);
                RDatum right = rdatum_product(V, ra, rdatum_product(V, rb, rc));
                t.check(same(left, right), "R-side associativity");
                RDatum ra2 = translate(V, ra, rng), rb2 = translate(V, rb, rng);
                t.check(rdatum_equiv(V, rdatum_product(V, ra, rb), rdatum_product(V, ra2, rb2)).has_value(), "well-defined on classes");
            } catch (const DomainError&) {
                ++undefined;
                // the T side must reject the same composite
                bool rejected = !validate_odatum(V, odatum_product(V, a, b)) || !validate_odatum(V, odatum_product(V, b, c)) ||
                                !validate_odatum(V, l);
                t.check(rejected, "R-side product undefined but T-side valid");
            }
        }
        return t.outcome(std::to_string(undefined) + " of " + std::to_string(tried) + " triples leave the (u, u) condition");
    });

    criterion(6, "tau(a.b) = tau(a) o tau(b) and R <-> T round trips, 100 instances", 60, [] {
        std::mt19937_64 rng(6006);
        Tally t;
        std::size_t undefined = 0;
        std::vector<GModule> hosts{sweedler(), with_dim(FinAbGroup({2}), {1}, 2), with_dim(FinAbGroup({4}), {2}, 2),
                                   with_dim(FinAbGroup({2, 2}), {1, 1}, 2)};
        for (int n = 0; n < 100; ++n) {
            const GModule& V = hosts[n % hosts.size()];
            auto alphas = nonempty_alphas(V);
            ODatum a = draw(V, alphas, rng), b = draw(V, alphas, rng);
            RDatum ra = odatum_to_rdatum(V, a), rb = odatum_to_rdatum(V, b);
            try {
                RDatum ab = rdatum_product(V, ra, rb);
                t.check(tau(V, ab.W, ab.beta) == lag_product(V, tau(V, ra.W, ra.beta), tau(V, rb.W, rb.beta)), "tau functoriality");
            } catch (const DomainError&) {
                ++undefined;
            }
            t.check(odatum_equiv(V, rdatum_to_odatum(V, ra), a).has_value(), "T -> R -> T");
            RDatum back = odatum_to_rdatum(V, rdatum_to_odatum(V, ra));
            t.check(rdatum_equiv(V, back, ra).has_value(), "R -> T -> R");
        }
        return t.outcome(std::to_string(undefined) + " products undefined");
    });

    criterion(7, "Hopf axioms for dim V <= 3, |G| <= 8; 50 seeded K(W, beta, F, psi)", 120, [] {
        Tally t;
        std::vector<std::pair<FinAbGroup, Coords>> groups{{FinAbGroup({2}), {1}},       {FinAbGroup({4}), {2}},
                                                          {FinAbGroup({2, 2}), {1, 1}}, {FinAbGroup({6}), {3}},
                                                          {FinAbGroup({8}), {4}},       {FinAbGroup({4, 2}), {2, 1}},
                                                          {FinAbGroup({2, 2, 2}), {1, 0, 0}}};
        std::size_t hopf = 0;
        for (const auto& [G, u] : groups) {
            for (std::size_t d = 0; d <= 3; ++d) {
                GModule V = with_dim(G, u, d);
                auto H = build_supergroup(V);
                t.check(H->dim() == (std::size_t{1} << d) * G.order(), "supergroup dimension");
                t.check(check_hopf(*H).ok && check_iso_cop(*H).ok, "supergroup axioms");
                ++hopf;
                if (d <= 1) {
                    t.check(check_hopf(*build_tensor_hopf(V, V)).ok, "tensor axioms");
                    ++hopf;
                }
            }
        }
        t.check(check_hopf(*build_tensor_hopf(with_dim(FinAbGroup({2}), {1}, 3), with_dim(FinAbGroup({2}), {1}, 3))).ok, "tensor axioms");
        t.check(check_hopf(*build_tensor_hopf(with_dim(FinAbGroup({8}), {4}, 3), with_dim(FinAbGroup({4}), {2}, 1))).ok, "tensor axioms");
        hopf += 2;

        std::mt19937_64 rng(7007);
        std::vector<std::pair<GModule, GModule>> hosts{{sweedler(), sweedler()},
                                                       {with_dim(FinAbGroup({2}), {1}, 2), sweedler()},
                                                       {with_dim(FinAbGroup({2, 2}), {1, 1}, 1), with_dim(FinAbGroup({2, 2}), {1, 1}, 1)},
                                                       {with_dim(FinAbGroup({4}), {2}, 1), with_dim(FinAbGroup({4}), {2}, 2)},
                                                       {with_dim(FinAbGroup({2, 2}), {1, 1}, 2), with_dim(FinAbGroup({2, 2}), {1, 1}, 1)}};
        std::size_t with_w3 = 0;
        for (int n = 0; n < 50; ++n) {
            const auto& [V1, V2] = hosts[n % hosts.size()];
            CompatibleData d = sample_compatible(V1, V2, rng);
            t.check(validate_compatible(d).ok, "sampled data invalid");
            auto K = build_K(d);
            std::size_t wdim = d.W1.dim() + d.W2.dim() + d.W3.dim();
            with_w3 += d.W3.dim() > 0;
            auto r = check_comodule_algebra(*K);
            t.check(r.ok, "comodule axioms: " + r.failure);
            t.check(coinvariant_dim(*K) == 1, "coinvariants");
            t.check(K->dim() == (std::size_t{1} << wdim) * d.F.order(), "dim = 2^dim W |F|");
        }
        return t.outcome(std::to_string(hopf) + " Hopf algebras, 50 K (" + std::to_string(with_w3) + " with W3 != 0)");
    });

    criterion(8, "gr K(W, beta, F, psi) = K(W, 0, F, psi), 25 instances", 60, [] {
        std::mt19937_64 rng(8008);
        Tally t;
        std::size_t nonzero_beta = 0;
        GModule s = sweedler(), k = with_dim(FinAbGroup({2, 2}), {1, 1}, 1);
        std::vector<std::pair<GModule, GModule>> hosts{{s, s}, {k, k}, {with_dim(FinAbGroup({2}), {1}, 2), s}};
        for (int n = 0; n < 25; ++n) {
            const auto& [V1, V2] = hosts[n % hosts.size()];
            CompatibleData d = sample_compatible(V1, V2, rng);
            auto B = build_tensor_hopf(V1, V2);
            CompatibleData d0 = d;
            d0.beta = zero_form(d.beta.gram.rows());
            nonzero_beta += !d.beta.gram.is_zero();
            t.check(same_structure(*graded(*build_K(B, d)), *build_K(B, d0)), "gr K != K(W, 0)");
        }
        return t.outcome(std::to_string(nonzero_beta) + " with beta != 0");
    });

    criterion(9, "dim(L box K) = 2^dim(W.W~) |U_alpha| and the cotensor isomorphism, 25 pairs", 300, [] {
        std::mt19937_64 rng(9009);
        Tally t;
        std::vector<GModule> hosts{sweedler(), with_dim(FinAbGroup({2}), {1}, 2), with_dim(FinAbGroup({4}), {2}, 1),
                                   with_dim(FinAbGroup({2, 2}), {1, 1}, 1), with_dim(FinAbGroup({4}), {2}, 2)};
        std::set<std::size_t> dims;
        for (int n = 0; n < 25; ++n) {
            const GModule& V = hosts[n % hosts.size()];
            RDatum a = odatum_to_rdatum(V, draw(V, nonempty_alphas(V), rng));
            RDatum b = odatum_to_rdatum(V, draw(V, {OrthAut::identity(V.G)}, rng));
            // expected dimension from the relation composition, independent of the cotensor code
            std::size_t expect = (std::size_t{1} << relation_compose(a.W, b.W).result.dim()) * twisted_subgroup(a.alpha).U.order();
            CotensorIsoReport r = verify_cotensor_iso(V, a, b);
            t.check(r.cotensor_dim == expect, "dim " + std::to_string(r.cotensor_dim) + " != " + std::to_string(expect));
            t.check(r.check.ok, "iso: " + r.check.failure);
            dims.insert(r.cotensor_dim);
        }
        std::string ds;
        for (auto d : dims) ds += (ds.empty() ? "" : " ") + std::to_string(d);
        return t.outcome("cotensor dims {" + ds + "}");
    });

    criterion(10, "sigma(v) = (v, v) e_(u,u): diag(H) iso L(diag V, 0, id)", 10, [] {
        Tally t;
        for (const auto& V : {sweedler(), with_dim(FinAbGroup({4}), {2}, 1)}) {
            MapReport m = verify_sigma_isom(V, DiagSlots::CopFirst);
            t.check(m.check.ok, "sigma: " + m.check.failure);
            MapReport m2 = verify_sigma_isom(V, DiagSlots::CopSecond);
            t.check(m2.check.ok, "sigma (other slot order): " + m2.check.failure);
        }
        return t.outcome();
    });

    criterion(11, "class order of T = [[i, 0], [xi, -i]] (reported)", 10, [] {
        GModule V = sweedler();
        Scalar i = Scalar::root_of_unity(4, 1);
        Matrix T(2, 2);
        T(0, 0) = i;
        T(1, 0) = 1;
        T(1, 1) = -i;
        ODatum o{T, OrthAut::identity(V.G)};
        auto cls = odatum_order(V, o), mat = matrix_order(T);
        std::ostringstream s;
        s << "computed class order " << (cls ? std::to_string(*cls) : "none") << ", matrix order " << (mat ? std::to_string(*mat) : "none")
          << ", stated order 4" << (cls && *cls == 4 ? "" : " (differs: T^2 = -Id ~ Id via (u, e))");
        return Outcome{validate_odatum(V, o).ok && cls.has_value(), s.str()};
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
