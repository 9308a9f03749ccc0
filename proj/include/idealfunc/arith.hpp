#pragma once
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "idealfunc/ideals.hpp"

namespace idealfunc {

// Exact rational with 64-bit parts; arithmetic throws std::overflow_error
// rather than wrapping.
class Rational
{
public:
    Rational(int64_t n = 0) : num_(n), den_(1) {}
    Rational(int64_t n, int64_t d);

    int64_t num() const { return num_; }
    int64_t den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    std::string to_string() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a) { return Rational(0) - a; }
    friend bool operator==(const Rational& a, const Rational& b) = default;

private:
    static Rational reduce(__int128 n, __int128 d);

    int64_t num_;
    int64_t den_;
};

// An integer-valued function on nonzero ideals. Multiplicative functions
// carry a prime-power rule that drives both pointwise evaluation and the
// norm-aggregated sieve.
class ArithmeticFunction
{
public:
    using Rule = std::function<int64_t(const IdealFactorization&)>;
    using PrimePowerRule = std::function<int64_t(const PrimeIdealLabel&, int exponent)>;

    // exponent_only: the rule ignores the prime label
    static ArithmeticFunction multiplicative(std::string name, PrimePowerRule rule, bool exponent_only);
    static ArithmeticFunction general(std::string name, Rule rule, bool multiplicative = false);

    int64_t operator()(const IdealFactorization& a) const;

    const std::string& name() const { return name_; }
    bool is_multiplicative() const { return multiplicative_; }
    bool has_prime_power_rule() const { return static_cast<bool>(prime_power_); }
    int64_t at_prime_power(const PrimeIdealLabel& p, int exponent) const;

    // sum of f over the ideals of norm p^a; requires a prime-power rule
    LocalFactor local_factor() const;

private:
    std::string    name_;
    Rule           rule_;
    PrimePowerRule prime_power_;
    bool           multiplicative_ = false;
    bool           exponent_only_ = false;
};

// order-k Moebius: on P^m, 1 if m < k, -1 if m == k, 0 if m > k
int mu_k(int k, const IdealFactorization& a);
// order-k Liouville: on P^m, 1 if m = 0 mod k+1, -1 if m = 1 mod k+1, else 0
int lambda_k(int k, const IdealFactorization& a);
// indicator of k-free ideals, k >= 2
int q_k(int k, const IdealFactorization& a);
inline int mu_1(const IdealFactorization& a) { return mu_k(1, a); }
inline int delta(const IdealFactorization& a) { return a.is_unit() ? 1 : 0; }
// J_k(A) = N(A)^k prod_{P|A} (1 - N(P)^-k)
int64_t jordan_totient(int k, const IdealFactorization& a);
// sum over divisors D of N(D)^s
double sigma_s(const IdealFactorization& a, double s);
int64_t sigma_integer(const IdealFactorization& a, unsigned s);

namespace functions {
ArithmeticFunction mobius(int k);
ArithmeticFunction liouville(int k);
ArithmeticFunction qfree(int k);
ArithmeticFunction jordan(int k);
ArithmeticFunction delta();
ArithmeticFunction one();
} // namespace functions

// (f*g)(A) = sum_{D|A} f(D) g(A/D)
int64_t dirichlet_convolve(const ArithmeticFunction& f, const ArithmeticFunction& g, const IdealFactorization& a);
// f*g as a function; multiplicative when both factors are
ArithmeticFunction convolution(const ArithmeticFunction& f, const ArithmeticFunction& g);
// f^{-1}(A), solving f * f^{-1} = delta over the divisor lattice of A;
// throws std::domain_error when f(O_F) == 0
Rational dirichlet_inverse(const ArithmeticFunction& f, const IdealFactorization& a);

// G_A(x) = sum_{N(B) <= x} mu_{k-1}(B) mu_{k-1}(A^{k-1} B), k >= 2
int64_t g_A(const FieldSpec& field, int k, const IdealFactorization& a, double x);
// same sum over a caller-supplied prefix of the ideal stream (all ideals of
// norm <= x must be present; extra ones are skipped)
int64_t g_A(std::span<const IdealFactorization> ideals, int k, const IdealFactorization& a, double x);

// c_f(n) for n <= X, c_f(n) = sum of f over ideals of norm n
std::vector<int64_t> norm_coefficients(const FieldSpec& field, const ArithmeticFunction& f, uint64_t X,
                                       unsigned threads = 1);
// Dirichlet convolution of two norm-coefficient arrays (index 0 unused)
std::vector<int64_t> convolve_norm_coefficients(const std::vector<int64_t>& a, const std::vector<int64_t>& b);

} // namespace idealfunc
