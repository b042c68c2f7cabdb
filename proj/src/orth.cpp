#include "brpic/orth.hpp"

#include "brpic/errors.hpp"

#include <algorithm>

namespace brpic {

namespace {

Coords concat(const Coords& a, const Coords& b) {
    Coords c = a;
    c.insert(c.end(), b.begin(), b.end());
    return c;
}

Coords head(const Coords& x, int r) { return Coords(x.begin(), x.begin() + r); }
Coords tail(const Coords& x, int r) { return Coords(x.begin() + r, x.end()); }

int mod(long a, int n) { return static_cast<int>(((a % n) + n) % n); }

// b(x, y) = q(x + y) - q(x) - q(y)
int polar_form(const FinAbGroup& G, const Coords& x, const Coords& y) {
    int r = G.rank();
    return mod(static_cast<long>(pairing(G, tail(x, r), head(y, r))) + pairing(G, tail(y, r), head(x, r)), G.exponent());
}

struct Search {
    const FinAbGroup& G;
    FinAbGroup GG;
    std::vector<Coords> gens;
    std::vector<std::vector<Coords>> candidates;

    explicit Search(const FinAbGroup& g) : G(g), GG(direct_sum(g, g)) {
        for (int j = 0; j < GG.rank(); ++j) gens.push_back(GG.generator(j));
        auto all = GG.elements();
        for (int j = 0; j < GG.rank(); ++j) {
            std::vector<Coords> c;
            int nj = GG.factors()[j];
            int qj = quad_form(G, gens[j]);
            for (const auto& y : all)
                if (GG.scale(y, nj) == GG.identity() && quad_form(G, y) == qj) c.push_back(y);
            candidates.push_back(std::move(c));
        }
    }

    void dfs(std::vector<Coords>& images, std::vector<OrthAut>& out) const {
        std::size_t j = images.size();
        if (j == gens.size()) {
            std::vector<std::vector<int>> m(GG.rank(), std::vector<int>(GG.rank()));
            for (int c = 0; c < GG.rank(); ++c)
                for (int r = 0; r < GG.rank(); ++r) m[r][c] = images[c][r];
            GroupHom h(GG, GG, m);
            if (h.is_bijective() && is_orthogonal(G, h)) out.emplace_back(G, m);
            return;
        }
        for (const auto& y : candidates[j]) {
            bool ok = true;
            for (std::size_t i = 0; i < j && ok; ++i)
                ok = polar_form(G, images[i], y) == polar_form(G, gens[i], gens[j]);
            if (!ok) continue;
            images.push_back(y);
            dfs(images, out);
            images.pop_back();
        }
    }
};

}  // namespace

int quad_form(const FinAbGroup& G, const Coords& x) {
    int r = G.rank();
    return pairing(G, tail(x, r), head(x, r));
}

bool is_orthogonal(const FinAbGroup& G, const GroupHom& a) {
    FinAbGroup GG = direct_sum(G, G);
    if (!(a.source() == GG) || !(a.target() == GG)) return false;
    for (std::size_t k = 0; k < GG.order(); ++k) {
        Coords x = GG.element(k);
        if (quad_form(G, a.apply(x)) != quad_form(G, x)) return false;
    }
    return true;
}

OrthAut::OrthAut(const FinAbGroup& G, std::vector<std::vector<int>> matrix) : G_(G) {
    FinAbGroup GG = direct_sum(G, G);
    h_ = GroupHom(GG, GG, std::move(matrix));
    if (!h_.is_bijective()) throw StructuralError("orthogonal map must be an automorphism");
    if (!is_orthogonal(G, h_)) throw StructuralError("map does not preserve <chi, g>");
}

OrthAut OrthAut::identity(const FinAbGroup& G) { return OrthAut(G, GroupHom::identity(direct_sum(G, G))); }

Coords OrthAut::alpha1(const Coords& g, const Coords& chi) const { return head(h_.apply(concat(g, chi)), G_.rank()); }
Coords OrthAut::alpha2(const Coords& g, const Coords& chi) const { return tail(h_.apply(concat(g, chi)), G_.rank()); }

OrthAut OrthAut::operator*(const OrthAut& o) const { return OrthAut(G_, h_.compose(o.h_)); }
OrthAut OrthAut::inverse() const { return OrthAut(G_, h_.inverse()); }
bool OrthAut::is_identity() const { return h_ == GroupHom::identity(h_.source()); }

std::vector<OrthAut> enumerate_orth(const FinAbGroup& G, std::size_t bound, Exec exec) {
    if (G.order() * G.order() > bound) throw CapacityError("|G|^2 exceeds the enumeration bound");
    Search s(G);
    std::vector<OrthAut> out;
    if (s.gens.empty()) {
        out.push_back(OrthAut::identity(G));
        return out;
    }
    const auto& first = s.candidates[0];
    if (exec == Exec::Serial) {
        std::vector<Coords> images;
        s.dfs(images, out);
    } else {
        std::vector<std::vector<OrthAut>> parts(first.size());
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(first.size()); ++i) {
            std::vector<Coords> images{first[i]};
            s.dfs(images, parts[i]);
        }
        for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

TwoCocycle::TwoCocycle(Subgroup F, int N, std::vector<int> exps) : F_(std::move(F)), N_(N), e_(std::move(exps)) {
    std::size_t n = F_.order();
    if (e_.size() != n * n) throw StructuralError("cocycle table has wrong size");
    for (auto& x : e_) x = mod(x, N_);
    pos_.assign(F_.ambient().order(), -1);
    for (std::size_t i = 0; i < n; ++i) pos_[F_.indices()[i]] = static_cast<long>(i);
}

TwoCocycle TwoCocycle::trivial(const Subgroup& F, int N) {
    return TwoCocycle(F, N, std::vector<int>(F.order() * F.order(), 0));
}

std::size_t TwoCocycle::pos(const Coords& f) const {
    long p = pos_[F_.ambient().index(f)];
    if (p < 0) throw DomainError("element outside the cocycle domain");
    return static_cast<std::size_t>(p);
}

int TwoCocycle::exponent(const Coords& f, const Coords& h) const { return e_[pos(f) * F_.order() + pos(h)]; }

Scalar TwoCocycle::value(const Coords& f, const Coords& h) const { return Scalar::root_of_unity(N_, exponent(f, h)); }

bool TwoCocycle::is_normalized() const {
    for (std::size_t i = 0; i < F_.order(); ++i)
        if (e_[i] != 0 || e_[i * F_.order()] != 0) return false;  // identity is position 0
    return true;
}

bool TwoCocycle::is_cocycle(Exec exec) const {
    const auto els = F_.elements();
    const FinAbGroup& A = F_.ambient();
    const long n = static_cast<long>(els.size());
    bool ok = true;
    auto row = [&](long a) {
        for (long b = 0; b < n; ++b) {
            Coords ab = A.add(els[a], els[b]);
            for (long c = 0; c < n; ++c) {
                Coords bc = A.add(els[b], els[c]);
                int lhs = e_[a * n + b] + exponent(ab, els[c]);
                int rhs = e_[b * n + c] + exponent(els[a], bc);
                if ((lhs - rhs) % N_ != 0) return false;
            }
        }
        return true;
    };
    if (exec == Exec::Serial) {
        for (long a = 0; a < n && ok; ++a) ok = row(a);
    } else {
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
        for (long a = 0; a < n; ++a) ok = row(a) && ok;
    }
    return ok;
}

TwistedSubgroup twisted_subgroup(const OrthAut& a) {
    const FinAbGroup& G = a.group();
    FinAbGroup GG = direct_sum(G, G);
    int r = G.rank();
    std::vector<long> first(GG.order(), -1);
    TwistedSubgroup t;
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < GG.order(); ++k) {
        Coords x = GG.element(k);
        Coords g = head(x, r);
        Coords img = concat(a.alpha1(g, tail(x, r)), g);
        std::size_t idx = GG.index(img);
        if (first[idx] < 0) {
            first[idx] = static_cast<long>(k);
            members.push_back(idx);
        }
        if (idx == 0) t.kernel.push_back(x);
    }
    t.U = Subgroup(GG, members);
    for (std::size_t idx : t.U.indices()) t.section.push_back(GG.element(static_cast<std::size_t>(first[idx])));
    return t;
}

TwoCocycle psi_alpha(const OrthAut& a) {
    const FinAbGroup& G = a.group();
    const int N = G.exponent();
    const int r = G.rank();
    FinAbGroup GG = direct_sum(G, G);
    TwistedSubgroup t = twisted_subgroup(a);
    // exponent of psi on representatives x = (g, chi), y = (h, xi)
    auto P = [&](const Coords& x, const Coords& y) {
        Coords x1 = head(x, r), xc = tail(x, r), y1 = head(y, r), yc = tail(y, r);
        return mod(static_cast<long>(pairing(G, xc, y1)) - pairing(G, a.alpha2(x1, xc), a.alpha1(y1, yc)), N);
    };
    // P is biadditive in the representatives, so kernel shifts are the only ambiguity.
    for (const auto& k : t.kernel)
        for (std::size_t i = 0; i < GG.order(); ++i) {
            Coords y = GG.element(i);
            if (P(k, y) != 0 || P(y, k) != 0) throw DomainError("psi ill-defined for this alpha");
        }
    std::size_t n = t.U.order();
    std::vector<int> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e[i * n + j] = P(t.section[i], t.section[j]);
    return TwoCocycle(t.U, N, std::move(e));
}

bool u_pair_in(const TwistedSubgroup& t, const Coords& u) { return t.U.contains(concat(u, u)); }

}  // namespace brpic
