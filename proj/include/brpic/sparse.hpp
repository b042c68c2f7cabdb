#pragma once

#include "brpic/cyclo.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace brpic {

// Sparse vector keyed by (possibly packed tensor) basis indices.
using Sparse = std::map<std::uint64_t, Scalar>;

void axpy(Sparse& y, const Scalar& a, const Sparse& x);  // y += a x
void add_term(Sparse& y, std::uint64_t key, const Scalar& c);
Sparse scaled(const Sparse& x, const Scalar& a);
Sparse difference(const Sparse& a, const Sparse& b);
inline Sparse unit_vector(std::uint64_t key) { return Sparse{{key, Scalar(1)}}; }

// Sparse row-reduced basis of a span; rows are normalized at their pivot keys
// and every pivot column is zero in all other rows.
class SparseSpan {
public:
    SparseSpan() = default;
    explicit SparseSpan(const std::vector<Sparse>& vectors);

    std::size_t dim() const { return rows_.size(); }
    const std::vector<Sparse>& rows() const { return rows_; }
    const std::vector<std::uint64_t>& pivots() const { return piv_; }
    bool contains(const Sparse& v) const;
    // Coordinates along rows(); DomainError if v is outside.
    std::vector<Scalar> coords(const Sparse& v) const;

private:
    Sparse reduce(Sparse v) const;
    std::vector<Sparse> rows_;
    std::vector<std::uint64_t> piv_;
    std::map<std::uint64_t, std::size_t> where_;
};

// Span grown one vector at a time, for closure computations.
class IncrementalSpan {
public:
    // Returns false when v already lies in the span.
    bool insert(const Sparse& v);
    bool contains(const Sparse& v) const { return reduce(v).empty(); }
    std::size_t dim() const { return rows_.size(); }

private:
    Sparse reduce(Sparse v) const;
    std::vector<Sparse> rows_;
    std::vector<std::uint64_t> piv_;
};

// Basis of {x : sum_j x_j cols[j] = 0}, each vector keyed by column index.
std::vector<Sparse> sparse_kernel(const std::vector<Sparse>& cols);
std::size_t sparse_rank(const std::vector<Sparse>& vectors);

}  // namespace brpic
