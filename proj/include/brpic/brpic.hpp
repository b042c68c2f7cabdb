#pragma once

#include "brpic/exec.hpp"
#include "brpic/linalg.hpp"
#include "brpic/orth.hpp"

#include <optional>
#include <random>
#include <string>

namespace brpic {

// (W, beta, alpha): W inside V + V, beta a form on W.
struct RDatum {
    Subspace W;
    BilinearForm beta;
    OrthAut alpha;
};

// (T, alpha): T acts on column vectors (v; f) of V + V*, blocks [[A, B], [C, D]].
struct ODatum {
    Matrix T;
    OrthAut alpha;
};

struct Validation {
    bool ok = true;
    std::string reason;
    explicit operator bool() const { return ok; }
};

Validation validate_rdatum(const GModule& V, const RDatum& r);
Validation validate_odatum(const GModule& V, const ODatum& o);

RDatum rdatum_identity(const GModule& V);
// DomainError when the composite fails validation.
RDatum rdatum_product(const GModule& V, const RDatum& a, const RDatum& b);
// Witness (x, y) in G x G, concatenated, or nullopt.
std::optional<Coords> rdatum_equiv(const GModule& V, const RDatum& a, const RDatum& b, Exec exec = Exec::Parallel);

struct InverseResult {
    bool invertible = false;
    std::optional<RDatum> inverse;
};
// Invertible iff the conversion to a T-datum succeeds; the inverse is checked on both sides.
InverseResult rdatum_inverse(const GModule& V, const RDatum& r);

ODatum odatum_identity(const GModule& V);
ODatum odatum_product(const GModule& V, const ODatum& a, const ODatum& b);
ODatum odatum_inverse(const GModule& V, const ODatum& o);
std::optional<Coords> odatum_equiv(const GModule& V, const ODatum& a, const ODatum& b, Exec exec = Exec::Parallel);
// Smallest k >= 1 with T^k ~ identity, up to max_order.
std::optional<int> odatum_order(const GModule& V, const ODatum& o, int max_order = 64);
// Smallest k >= 1 with T^k = Id as a matrix, up to max_order.
std::optional<int> matrix_order(const Matrix& T, int max_order = 64);

// tau(W, beta) inside (V + V*) + (V + V*), coordinates (w1, f1, w2, f2).
Subspace tau(const GModule& V, const Subspace& W, const BilinearForm& beta);
// Relation composition through the middle V + V*.
Subspace lag_product(const GModule& V, const Subspace& L1, const Subspace& L2);
Subspace odatum_graph(const GModule& V, const ODatum& o);

// DomainError("T outside O(V,u,G) image") when beta_T is not symmetric.
RDatum odatum_to_rdatum(const GModule& V, const ODatum& o);
// NotInvertible when tau(W, beta) is not a graph over its last two coordinates.
ODatum rdatum_to_odatum(const GModule& V, const RDatum& r);

struct AlphaComponent {
    OrthAut alpha;
    std::size_t a_dim = 0;        // U_alpha-equivariant A blocks
    std::size_t c_dim = 0;        // equivariant C blocks with beta_T symmetric (at a_rep)
    bool has_invertible_a = false;
    std::optional<Matrix> a_rep;  // an invertible equivariant A, if any
    bool d_forced_equivariant = false;  // A^-T is equivariant for a_rep
};

struct BrpicDescription {
    std::size_t orth_order = 0;
    std::vector<AlphaComponent> components;  // admissible alphas: (u, u) in U_alpha
    std::size_t component_count() const { return components.size(); }
    std::size_t nonempty_components() const;
};

BrpicDescription describe_brpic(const GModule& V, std::size_t bound = 256, Exec exec = Exec::Parallel);

// Random valid T-datum for the given alpha; nullopt if the component is empty.
std::optional<ODatum> sample_odatum(const GModule& V, const OrthAut& alpha, std::mt19937_64& rng);
Subspace diagonal(const GModule& V);

}  // namespace brpic
