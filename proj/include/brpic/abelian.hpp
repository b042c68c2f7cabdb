#pragma once

#include "brpic/cyclo.hpp"

#include <cstddef>
#include <vector>

namespace brpic {

using Coords = std::vector<int>;

// Finite abelian group Z_{n1} x ... x Z_{nr}; factors are kept as given.
class FinAbGroup {
public:
    FinAbGroup() = default;
    explicit FinAbGroup(std::vector<int> factors);

    const std::vector<int>& factors() const { return factors_; }
    int rank() const { return static_cast<int>(factors_.size()); }
    std::size_t order() const { return order_; }
    int exponent() const { return exponent_; }

    // Mixed-radix enumeration of elements, first coordinate fastest.
    std::size_t index(const Coords& g) const;
    Coords element(std::size_t idx) const;
    std::vector<Coords> elements() const;

    Coords identity() const { return Coords(factors_.size(), 0); }
    Coords generator(int i) const;
    Coords add(const Coords& a, const Coords& b) const;
    Coords neg(const Coords& a) const;
    Coords scale(const Coords& a, long k) const;
    Coords reduce(const Coords& a) const;
    bool is_valid(const Coords& a) const;
    int order_of(const Coords& a) const;

    friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.factors_ == b.factors_; }

private:
    std::vector<int> factors_;
    std::size_t order_ = 1;
    int exponent_ = 1;
};

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b);

// <chi, g> as an exponent of zeta_N, N = G.exponent(); characters share G's coordinates.
int pairing(const FinAbGroup& G, const Coords& chi, const Coords& g);
Scalar pairing_value(const FinAbGroup& G, const Coords& chi, const Coords& g);

// Homomorphism given on generators: column j is the image of generator j.
class GroupHom {
public:
    GroupHom() = default;
    GroupHom(FinAbGroup src, FinAbGroup dst, std::vector<std::vector<int>> matrix);

    static GroupHom identity(const FinAbGroup& G);

    const FinAbGroup& source() const { return src_; }
    const FinAbGroup& target() const { return dst_; }
    const std::vector<std::vector<int>>& matrix() const { return m_; }

    Coords apply(const Coords& x) const;
    GroupHom compose(const GroupHom& inner) const;  // this o inner
    bool is_bijective() const;
    GroupHom inverse() const;  // DomainError unless bijective

    friend bool operator==(const GroupHom& a, const GroupHom& b) {
        return a.src_ == b.src_ && a.dst_ == b.dst_ && a.m_ == b.m_;
    }

private:
    FinAbGroup src_, dst_;
    std::vector<std::vector<int>> m_;  // rows: target coordinates
};

// Subgroup stored as the sorted list of its element indices.
class Subgroup {
public:
    Subgroup() = default;
    Subgroup(FinAbGroup ambient, std::vector<std::size_t> members);
    static Subgroup generated_by(const FinAbGroup& ambient, const std::vector<Coords>& gens);

    const FinAbGroup& ambient() const { return ambient_; }
    std::size_t order() const { return members_.size(); }
    bool contains(const Coords& g) const;
    std::vector<Coords> elements() const;
    const std::vector<std::size_t>& indices() const { return members_; }
    // A generating set (greedy, small).
    std::vector<Coords> generators() const;

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.ambient_ == b.ambient_ && a.members_ == b.members_;
    }

private:
    FinAbGroup ambient_;
    std::vector<std::size_t> members_;
    std::vector<bool> mask_;
};

}  // namespace brpic
