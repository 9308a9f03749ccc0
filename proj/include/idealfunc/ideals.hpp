#pragma once
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "idealfunc/field.hpp"

namespace idealfunc {

struct Factor
{
    PrimeIdealLabel prime;
    int             exponent = 1;

    friend bool operator==(const Factor&, const Factor&) = default;
};

// An ideal as its prime-ideal factorization. Factors are kept in canonical
// prime order with positive exponents; the empty factorization is O_F.
class IdealFactorization
{
public:
    IdealFactorization() = default;

    // sorts and merges repeated labels; throws on non-positive exponents or
    // norm overflow
    static IdealFactorization from_factors(std::vector<Factor> factors);
    static IdealFactorization prime(const PrimeIdealLabel& p, int exponent = 1);

    const std::vector<Factor>& factors() const { return factors_; }
    uint64_t norm() const { return norm_; }
    bool is_unit() const { return factors_.empty(); }
    size_t size() const { return factors_.size(); }

    // exponent of p in this ideal (0 if absent)
    int exponent_of(const PrimeIdealLabel& p) const;

    // `p^e[f,i]` terms joined by `*`; O_F renders as `1`
    std::string to_string() const;

    friend bool operator==(const IdealFactorization& a, const IdealFactorization& b)
    {
        return a.factors_ == b.factors_;
    }

private:
    std::vector<Factor> factors_;
    uint64_t            norm_ = 1;
};

// order of enumeration: norm, then rational prime, conjugate index, exponent
bool ideal_order_less(const IdealFactorization& a, const IdealFactorization& b);

IdealFactorization multiply(const IdealFactorization& a, const IdealFactorization& b);
IdealFactorization power(const IdealFactorization& a, int k);
bool divides(const IdealFactorization& d, const IdealFactorization& a);
// exact quotient a/d; throws std::invalid_argument when d does not divide a
IdealFactorization quotient(const IdealFactorization& a, const IdealFactorization& d);
bool coprime(const IdealFactorization& a, const IdealFactorization& b);
// all divisors, lexicographic in the exponent vector of a
std::vector<IdealFactorization> divisors(const IdealFactorization& a);
// divisors d with d^k | a
std::vector<IdealFactorization> power_divisors(const IdealFactorization& a, int k);

// all ideals with norm exactly n, in enumeration order
std::vector<IdealFactorization> ideals_of_norm(const FieldSpec& field, uint64_t n);

// Every ideal with norm <= X exactly once, in nondecreasing norm. Norms are
// factored segment by segment, so memory stays bounded by the segment size.
class IdealStream
{
public:
    IdealStream(FieldSpec field, double X, uint64_t segment = 1u << 14);

    std::optional<IdealFactorization> next();

private:
    void refill();

    FieldSpec                      field_;
    uint64_t                       limit_;
    uint64_t                       segment_;
    uint64_t                       lo_ = 1;
    std::vector<uint64_t>          small_primes_;
    std::deque<IdealFactorization> buffer_;
};

IdealStream enumerate_ideals(const FieldSpec& field, double X);
std::vector<IdealFactorization> collect_ideals(const FieldSpec& field, double X);

// Norm-aggregated local factor of a multiplicative function: the sum of f over
// the ideals of norm p^a, given the residue degrees of the primes above p.
struct LocalFactor
{
    std::function<int64_t(uint64_t p, const std::vector<int>& degrees, int a)> value;
    // when true, value ignores p and results are cached per (class, a)
    bool prime_independent = true;
};

// number of ideals of norm p^a for the given decomposition
int64_t local_ideal_count(const std::vector<int>& degrees, int a);

// Sieve producing c(n) = sum over ideals of norm n of a multiplicative f, for
// n <= limit, one segment at a time.
class CoefficientSieve
{
public:
    CoefficientSieve(FieldSpec field, LocalFactor factor, uint64_t limit);

    uint64_t limit() const { return limit_; }
    const FieldSpec& field() const { return field_; }

    // out[i] = c(lo + i) for lo + i in [lo, hi), 1 <= lo, hi <= limit + 1
    void segment(uint64_t lo, uint64_t hi, std::vector<int64_t>& out) const;

    // c(1..limit) with out[0] unused (0)
    std::vector<int64_t> all(unsigned threads = 1) const;

    static constexpr uint64_t segment_size = 1u << 16;

private:
    int64_t local(uint64_t p, int a) const;

    FieldSpec                         field_;
    LocalFactor                       factor_;
    uint64_t                          limit_;
    std::vector<uint64_t>             small_primes_;
    std::vector<int>                  small_class_;
    std::vector<std::vector<int64_t>> cache_;  // [class][a]
};

// a_F(n), number of ideals of norm n, for n <= X (index 0 unused)
std::vector<int64_t> ideal_norm_counts(const FieldSpec& field, uint64_t X, unsigned threads = 1);

// [X]_F
int64_t ideal_count(const FieldSpec& field, double X, unsigned threads = 1);

// #{C : N(C) <= X, (C, A) = 1}, counted directly
int64_t ideal_count_coprime(const FieldSpec& field, double X, const IdealFactorization& a);

// prefix table of [n]_F for repeated queries
class IdealCounter
{
public:
    IdealCounter(const FieldSpec& field, uint64_t X, unsigned threads = 1);

    uint64_t limit() const { return prefix_.size() - 1; }
    // [x]_F; throws std::out_of_range beyond limit()
    int64_t operator()(double x) const;
    int64_t at(uint64_t n) const;

private:
    std::vector<int64_t> prefix_;
};

} // namespace idealfunc
