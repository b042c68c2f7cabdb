#pragma once

#include "brpic/brpic.hpp"
#include "brpic/exec.hpp"
#include "brpic/linalg.hpp"
#include "brpic/orth.hpp"
#include "brpic/sparse.hpp"

#include <memory>
#include <optional>
#include <random>
#include <string>

namespace brpic {

// Finite-dimensional algebra by structure constants; table[i * dim + j] = b_i b_j.
struct Algebra {
    std::size_t dim = 0;
    std::size_t unit = 0;  // index of the basis element equal to 1
    std::vector<std::string> labels;
    std::vector<Sparse> table;

    const Sparse& mul_basis(std::size_t i, std::size_t j) const { return table[i * dim + j]; }
    Sparse mul(const Sparse& a, const Sparse& b) const;
};

// (a (x) b)(c (x) d) = ac (x) bd on keys i * B.dim + j.
Sparse tensor_mul(const Algebra& A, const Algebra& B, const Sparse& x, const Sparse& y);

// Odd generator x with g x g^-1 = chi(g) x and Delta(x) = x (x) 1 + c (x) x.
struct OddGen {
    Coords chi;
    Coords c;
};

// Bosonization k<x_1..x_n> # kG with x_i^2 = 0 and x_i x_j = chi_j(c_i) x_j x_i.
// PBW basis x_S g at index S * |G| + index(g).
class HopfAlg {
public:
    HopfAlg(FinAbGroup G, std::vector<OddGen> gens, std::string name = {});

    const FinAbGroup& group() const { return G_; }
    const std::vector<OddGen>& gens() const { return gens_; }
    const Algebra& alg() const { return alg_; }
    std::size_t dim() const { return alg_.dim; }
    const std::string& name() const { return name_; }

    std::size_t index(std::uint32_t mask, const Coords& g) const { return mask * G_.order() + G_.index(g); }
    std::uint32_t mask_of(std::size_t i) const { return static_cast<std::uint32_t>(i / G_.order()); }
    Coords group_of(std::size_t i) const { return G_.element(i % G_.order()); }
    int degree(std::size_t i) const;
    std::size_t grouplike(const Coords& g) const { return index(0, g); }

    const Sparse& delta(std::size_t i) const { return delta_[i]; }  // keys i * dim + j
    const Scalar& counit(std::size_t i) const { return eps_[i]; }
    const Sparse& antipode(std::size_t i) const { return S_[i]; }
    Sparse delta(const Sparse& x) const;
    Sparse antipode(const Sparse& x) const;
    // Basis indices of the algebra generators (odd generators, then group generators).
    std::vector<std::size_t> generator_indices() const;

private:
    FinAbGroup G_;
    std::vector<OddGen> gens_;
    std::string name_;
    Algebra alg_;
    std::vector<Sparse> delta_, S_;
    std::vector<Scalar> eps_;
};

// A(V, u, G).
std::shared_ptr<HopfAlg> build_supergroup(const GModule& V);
// A(V1, V2, u1, u2, G1, G2) = A(V1, u1, G1) (x) A(V2, u2, G2), V1 generators first.
std::shared_ptr<HopfAlg> build_tensor_hopf(const GModule& V1, const GModule& V2);
// Index in the tensor Hopf algebra of a (x) b.
std::size_t tensor_index(const HopfAlg& H1, const HopfAlg& H2, const HopfAlg& B, std::size_t a, std::size_t b);

struct CheckReport {
    bool ok = true;
    std::string failure;  // first failing axiom with a witness
    explicit operator bool() const { return ok; }
};

// Full checks on all basis pairs/triples when dim <= full_limit, otherwise on
// (basis, generator) pairs after confirming that left-bracketed generator words span.
CheckReport check_hopf(const HopfAlg& H, Exec exec = Exec::Parallel, std::size_t full_limit = 16);
CheckReport check_algebra(const Algebra& A, const std::vector<std::size_t>& gens, Exec exec = Exec::Parallel,
                          std::size_t full_limit = 16);

// phi(x) = x c, phi(g) = g as a map H -> H; images of basis elements.
std::vector<Sparse> iso_cop_map(const HopfAlg& H);
CheckReport check_iso_cop(const HopfAlg& H);

// Left comodule algebra over a host Hopf algebra; coaction keys h * dim + a.
struct ComodAlg {
    std::shared_ptr<const HopfAlg> host;
    Algebra alg;
    std::vector<Sparse> coaction;
    std::vector<int> degree;                // PBW degree per basis element, if known
    std::vector<std::size_t> generators;    // algebra generators, if known
    // Generator data for K-type algebras.
    std::vector<Vec> gen_vectors;           // ambient V1 + V2 coordinates
    std::vector<int> gen_types;             // 1, 2 or 3
    std::optional<Subgroup> F;
    std::vector<long> fpos;                 // ambient index -> position in F, -1 outside
    std::size_t dim() const { return alg.dim; }
    std::size_t gen_index(std::size_t k) const;   // basis index of w_k
    std::size_t group_index(const Coords& f) const;  // basis index of e_f
    Sparse lambda(const Sparse& a) const;
};

// Element of a K-type algebra for an ambient vector in the span of its generators.
Sparse element_of(const ComodAlg& A, const Vec& v);

CheckReport check_comodule_algebra(const ComodAlg& A, Exec exec = Exec::Parallel, std::size_t full_limit = 16);
std::size_t coinvariant_dim(const ComodAlg& A);

// Compatible data over the host A(V1, V2, u1, u2, G1, G2).
struct CompatibleData {
    GModule V1, V2;
    Subspace W1;  // in V1
    Subspace W2;  // in V2
    Subspace W3;  // in V1 + V2
    BilinearForm beta;  // on the RREF bases of W1, W2, W3 concatenated
    Subgroup F;         // in G1 + G2
    TwoCocycle psi;     // on F
};

Validation validate_compatible(const CompatibleData& d);

// Coaction term for W3 generators (v, w): v (x) 1 + w c (x) e_u + (u1, 1) (x) (v, w).
enum class W3Term { ByU, ByU2 };  // c = (u1, u2) or c = (1, u2)

std::shared_ptr<ComodAlg> build_K(std::shared_ptr<const HopfAlg> host, const CompatibleData& d,
                                  W3Term term = W3Term::ByU);
std::shared_ptr<ComodAlg> build_K(const CompatibleData& d, W3Term term = W3Term::ByU);
// L(W, beta, alpha) = K(0, 0, W, beta, U_alpha, psi_alpha).
CompatibleData l_data(const GModule& V, const RDatum& r);
std::shared_ptr<ComodAlg> build_L(std::shared_ptr<const HopfAlg> host, const GModule& V, const RDatum& r);

// C(W1, W2, W3, F) inside the host, generated by kF, W1 + W2 and [w] = v1 + v2 u for w in W3.
// The basis is the PBW products of generators; embedding[i] is basis i inside the host.
struct CoidealSubalgebra {
    std::shared_ptr<ComodAlg> alg;  // coaction = restricted coproduct
    std::vector<Sparse> embedding;
};
// DomainError when the data is not coideal subalgebra data.
CoidealSubalgebra build_C(std::shared_ptr<const HopfAlg> host, const GModule& V1, const GModule& V2,
                          const Subspace& W1, const Subspace& W2, const Subspace& W3, const Subgroup& F);
// [(v1, v2)] = v1 + v2 u inside A(V1, V2, u1, u2, G1, G2).
Sparse bracket(const HopfAlg& host, std::size_t d1, const Vec& v, const Coords& u);

// diag(H) with lambda(a) = a1 (x) a3 (x) a2 inside A(V, V, u, u, G, G), where H^cop is
// identified with H by phi. CopFirst puts the a3 factor in the first slot.
enum class DiagSlots { CopFirst, CopSecond };
std::shared_ptr<ComodAlg> diag_comodule(const GModule& V, std::shared_ptr<const HopfAlg> host,
                                        DiagSlots slots = DiagSlots::CopFirst);

struct MapReport {
    CheckReport check;
    std::size_t rank = 0;
};
// sigma(v) = (v, v) e_(u,u) for CopFirst and (v, v) for CopSecond; sigma(g) = e_(g,g).
MapReport verify_sigma_isom(const GModule& V, DiagSlots slots = DiagSlots::CopFirst);

struct Cotensor {
    std::shared_ptr<const ComodAlg> L, K;
    std::shared_ptr<const HopfAlg> H;       // A(V, u, G)
    // Right H-coaction of L (keys l * dimH + h) and left H-coaction of K (keys h * dimK + k),
    // read off the second and first tensor factors of the host coactions.
    std::vector<Sparse> right, left;
    SparseSpan space;                       // inside L (x) K, keys l * dimK + k
    std::size_t dim() const { return space.dim(); }
    Sparse defect(const Sparse& x) const;   // keys (l * dimH + h) * dimK + k
    Sparse lambda(const Sparse& x) const;   // coaction of L (x) K, keys b * (dimL dimK) + x
    Sparse mul(const Sparse& x, const Sparse& y) const;
    CheckReport closure(Exec exec = Exec::Parallel) const;
    // Comodule-algebra structure on the cotensor in the basis space.rows().
    std::shared_ptr<ComodAlg> as_comodule() const;
};

Cotensor cotensor(std::shared_ptr<const ComodAlg> L, std::shared_ptr<const ComodAlg> K, std::shared_ptr<const HopfAlg> H);

struct CotensorIsoReport {
    CheckReport check;
    std::size_t cotensor_dim = 0;
    std::size_t expected_dim = 0;  // 2^dim(W.W~) |U_alpha|
    std::size_t image_rank = 0;
};
// L(W, beta, alpha) box L(W~, beta~, id) against L(W.W~, beta.beta~, alpha) through phi.
CotensorIsoReport verify_cotensor_iso(const GModule& V, const RDatum& a, const RDatum& b, Exec exec = Exec::Parallel);

// A_n = lambda^-1(H_n (x) A), as dimensions n = 0..top.
std::vector<std::size_t> loewy_dims(const ComodAlg& A);
// Associated graded comodule algebra on PBW representatives; DomainError when the
// filtration is not the PBW degree filtration.
std::shared_ptr<ComodAlg> graded(const ComodAlg& A);
bool same_structure(const ComodAlg& a, const ComodAlg& b);

struct SimplicityProbe {
    bool counterexample = false;
    std::size_t witness_dim = 0;  // dim of a proper costable right ideal when found
    std::size_t probes = 0;
};
// Heuristic: closures of probe vectors under right multiplication and coaction slices.
SimplicityProbe probe_right_simple(const ComodAlg& A, std::mt19937_64& rng, std::size_t random_probes = 8);

// Witness g in G1 x G2 with W'^i = g W^i, beta' = g beta, F' = F, psi' = psi.
std::optional<Coords> morita_equiv_criterion(const CompatibleData& a, const CompatibleData& b);

// Greedy search for a basis of L (x) K as a right module over the cotensor.
struct FreenessProbe {
    bool free_basis_found = false;
    std::size_t rank = 0;
};
FreenessProbe probe_freeness(const Cotensor& c);

// Random compatible data over A(V, V, u, u, G, G)-type hosts, for tests and the CLI.
CompatibleData sample_compatible(const GModule& V1, const GModule& V2, std::mt19937_64& rng);

}  // namespace brpic
