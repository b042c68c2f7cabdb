#include "brpic/cyclo.hpp"

#include "brpic/errors.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>

namespace brpic {

namespace {

constexpr int kMaxConductor = 1 << 12;

std::shared_mutex g_phi_mutex;
std::map<int, std::vector<long>> g_phi_cache;

std::vector<long> compute_cyclotomic(int N) {
    // x^N - 1 divided by Phi_d for every proper divisor d.
    std::vector<long> num(N + 1, 0);
    num[0] = -1;
    num[N] = 1;
    for (int d = 1; d < N; ++d) {
        if (N % d != 0) continue;
        const auto& den = cyclotomic_poly(d);
        int dd = static_cast<int>(den.size()) - 1;
        int dn = static_cast<int>(num.size()) - 1;
        std::vector<long> q(dn - dd + 1, 0);
        for (int k = dn; k >= dd; --k) {
            long c = num[k];  // den is monic
            q[k - dd] = c;
            if (c == 0) continue;
            for (int j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
        }
        num = std::move(q);
    }
    return num;
}

using Poly = std::vector<Rational>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of p modulo the monic integer polynomial m.
void reduce_mod(Poly& p, const std::vector<long>& m) {
    int dm = static_cast<int>(m.size()) - 1;
    for (int k = static_cast<int>(p.size()) - 1; k >= dm; --k) {
        if (p[k] == 0) continue;
        Rational c = p[k];
        for (int j = 0; j <= dm; ++j) p[k - dm + j] -= c * m[j];
    }
    if (static_cast<int>(p.size()) > dm) p.resize(dm);
}

// Euclidean division a = q b + r over Q.
void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    r = a;
    trim(r);
    int db = static_cast<int>(b.size()) - 1;
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
    while (!r.empty() && static_cast<int>(r.size()) - 1 >= db) {
        int k = static_cast<int>(r.size()) - 1 - db;
        Rational c = r.back() / b.back();
        q[k] = c;
        for (int j = 0; j <= db; ++j) r[k + j] -= c * b[j];
        trim(r);
    }
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly p(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) p[i + j] += a[i] * b[j];
    }
    return p;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly p(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) p[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) p[i] -= b[i];
    trim(p);
    return p;
}

int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

}  // namespace

const std::vector<long>& cyclotomic_poly(int N) {
    if (N < 1 || N > kMaxConductor) throw DomainError("conductor out of range");
    {
        std::shared_lock lock(g_phi_mutex);
        auto it = g_phi_cache.find(N);
        if (it != g_phi_cache.end()) return it->second;
    }
    std::vector<long> p = N == 1 ? std::vector<long>{-1, 1} : compute_cyclotomic(N);
    std::unique_lock lock(g_phi_mutex);
    // std::map nodes are stable, so references handed out stay valid.
    return g_phi_cache.emplace(N, std::move(p)).first->second;
}

int euler_phi(int N) { return static_cast<int>(cyclotomic_poly(N).size()) - 1; }

Cyclo::Cyclo() : N_(1), c_{Rational(0)} {}
Cyclo::Cyclo(long v) : N_(1), c_{Rational(v)} {}
Cyclo::Cyclo(const Rational& q) : N_(1), c_{q} {
    if (c_[0].get_den() == 0) throw DivisionByZero("zero denominator");
    c_[0].canonicalize();
}

Cyclo::Cyclo(int N, std::vector<Rational> coeffs) : N_(N), c_(std::move(coeffs)) {
    for (auto& x : c_) {
        if (x.get_den() == 0) throw DivisionByZero("zero denominator");
        x.canonicalize();
    }
    int phi = euler_phi(N);
    if (static_cast<int>(c_.size()) > phi) {
        reduce_mod(c_, cyclotomic_poly(N));
    }
    c_.resize(phi, Rational(0));
    normalize();
}

Cyclo Cyclo::root_of_unity(int N, long e) {
    long k = ((e % N) + N) % N;
    std::vector<Rational> p(k + 1, Rational(0));
    p[k] = 1;
    return Cyclo(N, std::move(p));
}

void Cyclo::normalize() {
    if (N_ == 1) return;
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return;
    Rational r = c_.empty() ? Rational(0) : c_[0];
    N_ = 1;
    c_.assign(1, r);
}

bool Cyclo::is_zero() const { return N_ == 1 && c_[0] == 0; }
bool Cyclo::is_one() const { return N_ == 1 && c_[0] == 1; }
bool Cyclo::is_rational() const { return N_ == 1; }

Rational Cyclo::to_rational() const {
    if (N_ != 1) throw DomainError("not a rational value");
    return c_[0];
}

Cyclo Cyclo::lift(int M) const {
    if (M % N_ != 0) throw DomainError("lift target must be a multiple of the conductor");
    if (M == N_) return *this;
    int step = M / N_;
    std::vector<Rational> p((c_.size() - 1) * step + 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) p[i * step] = c_[i];
    Cyclo out;
    out.N_ = M;
    reduce_mod(p, cyclotomic_poly(M));
    p.resize(euler_phi(M), Rational(0));
    out.c_ = std::move(p);
    return out;  // not normalized: callers combine coefficientwise
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
    if (o.N_ == 1) {
        c_[0] += o.c_[0];
        normalize();
        return *this;
    }
    if (N_ == 1) {
        Rational a = c_[0];
        *this = o;
        c_[0] += a;
        normalize();
        return *this;
    }
    int M = lcm_int(N_, o.N_);
    Cyclo a = lift(M);
    Cyclo b = o.lift(M);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    a.normalize();
    *this = std::move(a);
    return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) { return *this += -o; }

Cyclo& Cyclo::operator*=(const Cyclo& o) {
    if (o.N_ == 1) {
        for (auto& x : c_) x *= o.c_[0];
        normalize();
        return *this;
    }
    if (N_ == 1) {
        Rational a = c_[0];
        *this = o;
        for (auto& x : c_) x *= a;
        normalize();
        return *this;
    }
    int M = lcm_int(N_, o.N_);
    Cyclo a = lift(M);
    Cyclo b = o.lift(M);
    Poly p = poly_mul(a.c_, b.c_);
    reduce_mod(p, cyclotomic_poly(M));
    p.resize(euler_phi(M), Rational(0));
    a.c_ = std::move(p);
    a.normalize();
    *this = std::move(a);
    return *this;
}

Cyclo Cyclo::inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    if (N_ == 1) return Cyclo(Rational(1) / c_[0]);
    // Extended Euclid: s*a + t*Phi = g, with g a nonzero constant.
    std::vector<long> phi_int = cyclotomic_poly(N_);
    Poly m(phi_int.begin(), phi_int.end());
    Poly a = c_;
    trim(a);
    Poly r0 = m, r1 = a, s0, s1{Rational(1)};
    while (!r1.empty() && r1.size() > 1) {
        Poly q, r;
        poly_divmod(r0, r1, q, r);
        Poly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw DivisionByZero("element not invertible");
    Rational g = r1[0];
    for (auto& x : s1) x /= g;
    return Cyclo(N_, s1);
}

Cyclo& Cyclo::operator/=(const Cyclo& o) { return *this *= o.inv(); }

bool operator==(const Cyclo& a, const Cyclo& b) {
    if (a.N_ == b.N_) return a.c_ == b.c_;
    if (a.N_ == 1 || b.N_ == 1) return false;  // normalized: one rational, one not
    int M = lcm_int(a.N_, b.N_);
    Cyclo x = a.lift(M);
    Cyclo y = b.lift(M);
    return x.c_ == y.c_;
}

std::string Cyclo::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const Rational& c = c_[i];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << mag.get_str();
        } else {
            if (mag != 1) os << mag.get_str() << "*";
            os << "z";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    if (N_ != 1) os << "@" << N_;
    return os.str();
}

Cyclo Cyclo::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    int N = 1;
    auto at = s.find('@');
    if (at != std::string::npos) {
        try {
            N = std::stoi(s.substr(at + 1));
        } catch (const std::exception&) {
            throw StructuralError("bad conductor in scalar '" + text + "'");
        }
        s = s.substr(0, at);
    }
    if (N < 1) throw StructuralError("bad conductor in scalar '" + text + "'");
    if (s.empty()) throw StructuralError("empty scalar");
    std::vector<Rational> p(1, Rational(0));
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
        Rational coef(1);
        if (j > i) {
            try {
                coef = Rational(s.substr(i, j - i));
                coef.canonicalize();
            } catch (const std::exception&) {
                throw StructuralError("bad coefficient in scalar '" + text + "'");
            }
            if (coef.get_den() == 0) throw StructuralError("zero denominator in '" + text + "'");
        }
        bool has_coef = j > i;
        i = j;
        long power = 0;
        if (has_coef && i < s.size() && s[i] == '*') {
            ++i;
            if (i >= s.size() || s[i] != 'z') throw StructuralError("bad scalar '" + text + "'");
        }
        bool has_z = i < s.size() && s[i] == 'z';
        if (has_z) {
            ++i;
            power = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t k = i;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                if (k == i) throw StructuralError("bad exponent in scalar '" + text + "'");
                power = std::stol(s.substr(i, k - i));
                i = k;
            }
        }
        if (!has_coef && !has_z) throw StructuralError("bad scalar '" + text + "'");
        if (power > 0 && N == 1) throw StructuralError("z needs a conductor suffix in '" + text + "'");
        if (static_cast<long>(p.size()) <= power) p.resize(power + 1, Rational(0));
        p[power] += sign * coef;
        if (i < s.size() && s[i] != '+' && s[i] != '-')
            throw StructuralError("bad scalar '" + text + "'");
    }
    return Cyclo(N, std::move(p));
}

}  // namespace brpic
