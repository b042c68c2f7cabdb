#pragma once

#include "brpic/abelian.hpp"
#include "brpic/exec.hpp"

#include <vector>

namespace brpic {

// Automorphism of G + G^ (G coordinates first) preserving q(g, chi) = <chi, g>.
class OrthAut {
public:
    OrthAut() = default;
    // StructuralError unless the matrix is an orthogonal automorphism.
    OrthAut(const FinAbGroup& G, std::vector<std::vector<int>> matrix);
    static OrthAut identity(const FinAbGroup& G);

    const FinAbGroup& group() const { return G_; }
    const GroupHom& hom() const { return h_; }
    const std::vector<std::vector<int>>& matrix() const { return h_.matrix(); }

    // alpha(g, chi) split into its G part and G^ part.
    Coords alpha1(const Coords& g, const Coords& chi) const;
    Coords alpha2(const Coords& g, const Coords& chi) const;

    OrthAut operator*(const OrthAut& o) const;  // this o o
    OrthAut inverse() const;
    bool is_identity() const;

    friend bool operator==(const OrthAut& a, const OrthAut& b) { return a.h_ == b.h_; }
    friend bool operator!=(const OrthAut& a, const OrthAut& b) { return !(a == b); }
    friend bool operator<(const OrthAut& a, const OrthAut& b) { return a.matrix() < b.matrix(); }

private:
    OrthAut(FinAbGroup G, GroupHom h) : G_(std::move(G)), h_(std::move(h)) {}
    FinAbGroup G_;
    GroupHom h_;
};

// q(x) = <x_2, x_1> as an exponent of zeta_N on G + G^.
int quad_form(const FinAbGroup& G, const Coords& x);
bool is_orthogonal(const FinAbGroup& G, const GroupHom& a);

// All of O(G + G^), sorted by matrix. CapacityError when |G|^2 > bound.
std::vector<OrthAut> enumerate_orth(const FinAbGroup& G, std::size_t bound = 256, Exec exec = Exec::Parallel);

// Normalized 2-cocycle on a subgroup F of G x G, values zeta_N^e.
class TwoCocycle {
public:
    TwoCocycle() = default;
    TwoCocycle(Subgroup F, int N, std::vector<int> exps);
    static TwoCocycle trivial(const Subgroup& F, int N);

    const Subgroup& domain() const { return F_; }
    int conductor() const { return N_; }
    int exponent(const Coords& f, const Coords& h) const;
    Scalar value(const Coords& f, const Coords& h) const;
    bool is_normalized() const;
    bool is_cocycle(Exec exec = Exec::Parallel) const;
    // Exponent table indexed by positions in domain().indices().
    const std::vector<int>& table() const { return e_; }

    friend bool operator==(const TwoCocycle& a, const TwoCocycle& b) {
        return a.F_ == b.F_ && a.N_ == b.N_ && a.e_ == b.e_;
    }

private:
    std::size_t pos(const Coords& f) const;
    Subgroup F_;
    int N_ = 1;
    std::vector<int> e_;
    std::vector<long> pos_;  // ambient index -> position, -1 outside
};

struct TwistedSubgroup {
    Subgroup U;                    // {(alpha1(g, chi), g)} in G x G
    std::vector<Coords> section;   // representative (g, chi) per member, in U.indices() order
    std::vector<Coords> kernel;    // {(g, chi) : alpha1(g, chi) = 0, g = 0}
};

TwistedSubgroup twisted_subgroup(const OrthAut& a);
// psi_alpha; DomainError("psi ill-defined for this alpha") on representative dependence.
TwoCocycle psi_alpha(const OrthAut& a);
bool u_pair_in(const TwistedSubgroup& t, const Coords& u);

}  // namespace brpic
