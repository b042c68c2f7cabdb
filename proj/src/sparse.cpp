#include "brpic/sparse.hpp"

#include "brpic/errors.hpp"

#include <algorithm>

namespace brpic {

void add_term(Sparse& y, std::uint64_t key, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = y.try_emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) y.erase(it);
    }
}

void axpy(Sparse& y, const Scalar& a, const Sparse& x) {
    if (a.is_zero()) return;
    for (const auto& [k, v] : x) add_term(y, k, a * v);
}

Sparse scaled(const Sparse& x, const Scalar& a) {
    Sparse y;
    axpy(y, a, x);
    return y;
}

Sparse difference(const Sparse& a, const Sparse& b) {
    Sparse y = a;
    axpy(y, Scalar(-1), b);
    return y;
}

namespace {

// Incremental elimination: each stored row is zero at the pivots of earlier rows.
struct Eliminator {
    std::vector<Sparse> rows;
    std::vector<std::uint64_t> piv;
    std::vector<Sparse> combos;  // only filled when tracking

    Sparse reduce(Sparse v, Sparse* combo) const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto it = v.find(piv[i]);
            if (it == v.end()) continue;
            Scalar f = -it->second;
            axpy(v, f, rows[i]);
            if (combo) axpy(*combo, f, combos[i]);
        }
        return v;
    }

    // Returns false when v reduced to zero.
    bool insert(Sparse v, Sparse* combo) {
        v = reduce(std::move(v), combo);
        if (v.empty()) return false;
        auto p = v.begin()->first;
        Scalar inv = v.begin()->second.inv();
        for (auto& [k, c] : v) c *= inv;
        if (combo) {
            for (auto& [k, c] : *combo) c *= inv;
            combos.push_back(*combo);
        }
        rows.push_back(std::move(v));
        piv.push_back(p);
        return true;
    }
};

}  // namespace

SparseSpan::SparseSpan(const std::vector<Sparse>& vectors) {
    Eliminator e;
    for (const auto& v : vectors) e.insert(v, nullptr);
    // back-substitute so every pivot column is clean, then sort by pivot
    std::vector<std::size_t> order(e.rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = e.rows.size(); i-- > 0;) {
        for (std::size_t j = 0; j < e.rows.size(); ++j) {
            if (j == i) continue;
            auto it = e.rows[j].find(e.piv[i]);
            if (it == e.rows[j].end()) continue;
            Scalar f = -it->second;
            axpy(e.rows[j], f, e.rows[i]);
        }
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return e.piv[a] < e.piv[b]; });
    for (std::size_t i : order) {
        where_[e.piv[i]] = rows_.size();
        rows_.push_back(std::move(e.rows[i]));
        piv_.push_back(e.piv[i]);
    }
}

Sparse SparseSpan::reduce(Sparse v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        auto it = v.find(piv_[i]);
        if (it == v.end()) continue;
        Scalar f = -it->second;
        axpy(v, f, rows_[i]);
    }
    return v;
}

bool SparseSpan::contains(const Sparse& v) const { return reduce(v).empty(); }

std::vector<Scalar> SparseSpan::coords(const Sparse& v) const {
    if (!contains(v)) throw DomainError("vector is not in the span");
    std::vector<Scalar> c(rows_.size());
    for (const auto& [k, x] : v) {
        auto it = where_.find(k);
        if (it != where_.end()) c[it->second] = x;
    }
    return c;
}

Sparse IncrementalSpan::reduce(Sparse v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        auto it = v.find(piv_[i]);
        if (it == v.end()) continue;
        Scalar f = -it->second;
        axpy(v, f, rows_[i]);
    }
    return v;
}

bool IncrementalSpan::insert(const Sparse& v) {
    Sparse r = reduce(v);
    if (r.empty()) return false;
    auto p = r.begin()->first;
    Scalar inv = r.begin()->second.inv();
    for (auto& [k, c] : r) c *= inv;
    rows_.push_back(std::move(r));
    piv_.push_back(p);
    return true;
}

std::vector<Sparse> sparse_kernel(const std::vector<Sparse>& cols) {
    Eliminator e;
    std::vector<Sparse> ker;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        Sparse combo = unit_vector(j);
        Sparse v = e.reduce(cols[j], &combo);
        if (v.empty()) {
            ker.push_back(std::move(combo));
            continue;
        }
        auto p = v.begin()->first;
        Scalar inv = v.begin()->second.inv();
        for (auto& [k, c] : v) c *= inv;
        for (auto& [k, c] : combo) c *= inv;
        e.rows.push_back(std::move(v));
        e.piv.push_back(p);
        e.combos.push_back(std::move(combo));
    }
    return ker;
}

std::size_t sparse_rank(const std::vector<Sparse>& vectors) {
    Eliminator e;
    std::size_t r = 0;
    for (const auto& v : vectors) r += e.insert(v, nullptr);
    return r;
}

}  // namespace brpic
