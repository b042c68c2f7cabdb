#include "brpic/abelian.hpp"

#include "brpic/errors.hpp"

#include <algorithm>
#include <numeric>

namespace brpic {

namespace {
int mod(long a, int n) { return static_cast<int>(((a % n) + n) % n); }
}  // namespace

FinAbGroup::FinAbGroup(std::vector<int> factors) : factors_(std::move(factors)) {
    for (int n : factors_) {
        if (n < 1) throw StructuralError("group factors must be positive");
        order_ *= static_cast<std::size_t>(n);
        exponent_ = std::lcm(exponent_, n);
    }
}

std::size_t FinAbGroup::index(const Coords& g) const {
    std::size_t idx = 0;
    for (int i = rank() - 1; i >= 0; --i) idx = idx * factors_[i] + mod(g[i], factors_[i]);
    return idx;
}

Coords FinAbGroup::element(std::size_t idx) const {
    Coords g(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        g[i] = static_cast<int>(idx % factors_[i]);
        idx /= factors_[i];
    }
    return g;
}

std::vector<Coords> FinAbGroup::elements() const {
    std::vector<Coords> out;
    out.reserve(order_);
    for (std::size_t i = 0; i < order_; ++i) out.push_back(element(i));
    return out;
}

Coords FinAbGroup::generator(int i) const {
    Coords g = identity();
    g[i] = factors_[i] == 1 ? 0 : 1;
    return g;
}

Coords FinAbGroup::add(const Coords& a, const Coords& b) const {
    Coords c(factors_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod(static_cast<long>(a[i]) + b[i], factors_[i]);
    return c;
}

Coords FinAbGroup::neg(const Coords& a) const {
    Coords c(factors_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod(-static_cast<long>(a[i]), factors_[i]);
    return c;
}

Coords FinAbGroup::scale(const Coords& a, long k) const {
    Coords c(factors_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod(k % factors_[i] * a[i], factors_[i]);
    return c;
}

Coords FinAbGroup::reduce(const Coords& a) const {
    if (a.size() != factors_.size()) throw StructuralError("element has wrong rank");
    Coords c(a.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod(a[i], factors_[i]);
    return c;
}

bool FinAbGroup::is_valid(const Coords& a) const {
    if (a.size() != factors_.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < 0 || a[i] >= factors_[i]) return false;
    return true;
}

int FinAbGroup::order_of(const Coords& a) const {
    int o = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int n = factors_[i];
        o = std::lcm(o, n / std::gcd(n, mod(a[i], n)));
    }
    return o;
}

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
    std::vector<int> f = a.factors();
    f.insert(f.end(), b.factors().begin(), b.factors().end());
    return FinAbGroup(std::move(f));
}

int pairing(const FinAbGroup& G, const Coords& chi, const Coords& g) {
    const int N = G.exponent();
    long s = 0;
    for (int i = 0; i < G.rank(); ++i) {
        int n = G.factors()[i];
        s += static_cast<long>(mod(chi[i], n)) * mod(g[i], n) % n * (N / n);
        s %= N;
    }
    return static_cast<int>(s);
}

Scalar pairing_value(const FinAbGroup& G, const Coords& chi, const Coords& g) {
    return Scalar::root_of_unity(G.exponent(), pairing(G, chi, g));
}

GroupHom::GroupHom(FinAbGroup src, FinAbGroup dst, std::vector<std::vector<int>> matrix)
    : src_(std::move(src)), dst_(std::move(dst)), m_(std::move(matrix)) {
    if (static_cast<int>(m_.size()) != dst_.rank()) throw StructuralError("hom matrix has wrong row count");
    for (int i = 0; i < dst_.rank(); ++i) {
        if (static_cast<int>(m_[i].size()) != src_.rank()) throw StructuralError("hom matrix has wrong column count");
        for (int j = 0; j < src_.rank(); ++j) {
            m_[i][j] = mod(m_[i][j], dst_.factors()[i]);
            // generator j has order n_j, so its image must be killed by n_j
            if (static_cast<long>(src_.factors()[j]) * m_[i][j] % dst_.factors()[i] != 0)
                throw StructuralError("matrix does not define a homomorphism");
        }
    }
}

GroupHom GroupHom::identity(const FinAbGroup& G) {
    std::vector<std::vector<int>> m(G.rank(), std::vector<int>(G.rank(), 0));
    for (int i = 0; i < G.rank(); ++i) m[i][i] = G.factors()[i] == 1 ? 0 : 1;
    return GroupHom(G, G, m);
}

Coords GroupHom::apply(const Coords& x) const {
    Coords y(dst_.rank(), 0);
    for (int i = 0; i < dst_.rank(); ++i) {
        long s = 0;
        int n = dst_.factors()[i];
        for (int j = 0; j < src_.rank(); ++j) s = (s + static_cast<long>(m_[i][j]) * mod(x[j], src_.factors()[j])) % n;
        y[i] = static_cast<int>(s);
    }
    return y;
}

GroupHom GroupHom::compose(const GroupHom& inner) const {
    if (!(inner.dst_ == src_)) throw StructuralError("composition of incompatible homs");
    std::vector<std::vector<int>> m(dst_.rank(), std::vector<int>(inner.src_.rank()));
    for (int j = 0; j < inner.src_.rank(); ++j) {
        Coords img = apply(inner.apply(inner.src_.generator(j)));
        for (int i = 0; i < dst_.rank(); ++i) m[i][j] = img[i];
    }
    return GroupHom(inner.src_, dst_, m);
}

bool GroupHom::is_bijective() const {
    if (src_.order() != dst_.order()) return false;
    std::vector<bool> seen(dst_.order(), false);
    for (std::size_t k = 0; k < src_.order(); ++k) {
        std::size_t t = dst_.index(apply(src_.element(k)));
        if (seen[t]) return false;
        seen[t] = true;
    }
    return true;
}

GroupHom GroupHom::inverse() const {
    if (!is_bijective()) throw DomainError("hom is not bijective");
    std::vector<Coords> pre(dst_.order());
    for (std::size_t k = 0; k < src_.order(); ++k) {
        Coords x = src_.element(k);
        pre[dst_.index(apply(x))] = x;
    }
    std::vector<std::vector<int>> m(src_.rank(), std::vector<int>(dst_.rank()));
    for (int j = 0; j < dst_.rank(); ++j) {
        const Coords& x = pre[dst_.index(dst_.generator(j))];
        for (int i = 0; i < src_.rank(); ++i) m[i][j] = x[i];
    }
    return GroupHom(dst_, src_, m);
}

Subgroup::Subgroup(FinAbGroup ambient, std::vector<std::size_t> members)
    : ambient_(std::move(ambient)), members_(std::move(members)), mask_(ambient_.order(), false) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (std::size_t m : members_) {
        if (m >= ambient_.order()) throw StructuralError("subgroup member out of range");
        mask_[m] = true;
    }
    if (members_.empty() || !mask_[0]) throw StructuralError("subgroup must contain the identity");
    for (std::size_t a : members_)
        for (std::size_t b : members_)
            if (!mask_[ambient_.index(ambient_.add(ambient_.element(a), ambient_.element(b)))])
                throw StructuralError("subset is not closed under the group law");
}

Subgroup Subgroup::generated_by(const FinAbGroup& ambient, const std::vector<Coords>& gens) {
    std::vector<bool> in(ambient.order(), false);
    std::vector<std::size_t> members{0};
    in[0] = true;
    for (std::size_t k = 0; k < members.size(); ++k) {
        Coords x = ambient.element(members[k]);
        for (const auto& g : gens) {
            std::size_t t = ambient.index(ambient.add(x, g));
            if (!in[t]) {
                in[t] = true;
                members.push_back(t);
            }
        }
    }
    return Subgroup(ambient, members);
}

bool Subgroup::contains(const Coords& g) const { return mask_[ambient_.index(g)]; }

std::vector<Coords> Subgroup::elements() const {
    std::vector<Coords> out;
    out.reserve(members_.size());
    for (std::size_t m : members_) out.push_back(ambient_.element(m));
    return out;
}

std::vector<Coords> Subgroup::generators() const {
    std::vector<Coords> gens;
    std::size_t covered = 1;
    for (std::size_t m : members_) {
        if (covered == members_.size()) break;
        Coords x = ambient_.element(m);
        auto trial = gens;
        trial.push_back(x);
        std::size_t n = generated_by(ambient_, trial).order();
        if (n > covered) {
            gens = std::move(trial);
            covered = n;
        }
    }
    return gens;
}

}  // namespace brpic
