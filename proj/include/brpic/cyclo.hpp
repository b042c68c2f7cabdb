#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace brpic {

using Rational = mpq_class;

// Coefficients of the N-th cyclotomic polynomial, lowest degree first.
const std::vector<long>& cyclotomic_poly(int N);
int euler_phi(int N);

// Element of Q(zeta_N) in the power basis 1, z, ..., z^(phi(N)-1).
class Cyclo {
public:
    Cyclo();
    Cyclo(long v);  // NOLINT(google-explicit-constructor)
    Cyclo(const Rational& q);  // NOLINT(google-explicit-constructor)
    Cyclo(int N, std::vector<Rational> coeffs);

    static Cyclo root_of_unity(int N, long e);

    int conductor() const { return N_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rational to_rational() const;  // DomainError unless rational

    // Same value viewed in Q(zeta_M); M must be a multiple of N.
    Cyclo lift(int M) const;

    Cyclo operator-() const;
    Cyclo& operator+=(const Cyclo& o);
    Cyclo& operator-=(const Cyclo& o);
    Cyclo& operator*=(const Cyclo& o);
    Cyclo& operator/=(const Cyclo& o);
    Cyclo inv() const;  // DivisionByZero on zero

    friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
    friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
    friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
    friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }
    friend bool operator==(const Cyclo& a, const Cyclo& b);
    friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

    // "a0 + a1*z + a2*z^2@N"; bare rationals omit the suffix.
    std::string to_string() const;
    static Cyclo parse(const std::string& s);

private:
    void normalize();
    int N_ = 1;
    std::vector<Rational> c_;
};

using Scalar = Cyclo;

}  // namespace brpic
