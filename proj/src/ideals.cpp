#include "idealfunc/ideals.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "idealfunc/checked.hpp"
#include "idealfunc/parallel.hpp"

namespace idealfunc {

namespace {

bool factor_less(const Factor& a, const Factor& b)
{
    if (a.prime.p != b.prime.p) return a.prime.p < b.prime.p;
    if (a.prime.index != b.prime.index) return a.prime.index < b.prime.index;
    return a.exponent < b.exponent;
}

uint64_t floor_bound(double X)
{
    if (!(X >= 1)) return 0;
    if (X >= 9.2e18) throw std::overflow_error("norm bound too large");
    return static_cast<uint64_t>(std::floor(X));
}

void check_coverage(const FieldSpec& field, uint64_t limit)
{
    if (limit > field.prime_coverage())
        throw std::out_of_range("norm bound " + std::to_string(limit) + " beyond table coverage " +
                                std::to_string(field.prime_coverage()));
}

// exponent vectors x >= 0 with sum degrees[i] * x[i] == a
void local_solutions(const std::vector<int>& degrees, size_t i, int a, std::vector<int>& x,
                     std::vector<std::vector<int>>& out)
{
    if (i == degrees.size()) {
        if (a == 0) out.push_back(x);
        return;
    }
    for (int e = 0; e * degrees[i] <= a; ++e) {
        x[i] = e;
        local_solutions(degrees, i + 1, a - e * degrees[i], x, out);
    }
    x[i] = 0;
}

std::vector<std::vector<int>> local_solutions(const std::vector<int>& degrees, int a)
{
    std::vector<std::vector<int>> out;
    std::vector<int> x(degrees.size(), 0);
    local_solutions(degrees, 0, a, x, out);
    return out;
}

// ideals of norm n given its rational factorization
std::vector<IdealFactorization> ideals_from_rational(const FieldSpec& field,
                                                     const std::vector<std::pair<uint64_t, int>>& pf)
{
    std::vector<std::vector<Factor>> partial{{}};
    for (auto [p, a] : pf) {
        auto labels = primes_above(field, p);
        std::vector<int> degrees;
        for (const auto& l : labels) degrees.push_back(l.f);
        auto sols = local_solutions(degrees, a);
        std::vector<std::vector<Factor>> next;
        next.reserve(partial.size() * sols.size());
        for (const auto& base : partial) {
            for (const auto& x : sols) {
                auto v = base;
                for (size_t i = 0; i < x.size(); ++i) {
                    if (x[i] > 0) v.push_back({labels[i], x[i]});
                }
                next.push_back(std::move(v));
            }
        }
        partial = std::move(next);
    }
    std::vector<IdealFactorization> out;
    out.reserve(partial.size());
    for (auto& v : partial) out.push_back(IdealFactorization::from_factors(std::move(v)));
    std::sort(out.begin(), out.end(), ideal_order_less);
    return out;
}

std::vector<std::pair<uint64_t, int>> factor_rational(uint64_t n)
{
    std::vector<std::pair<uint64_t, int>> pf;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int a = 0;
        while (n % p == 0) {
            n /= p;
            ++a;
        }
        pf.emplace_back(p, a);
    }
    if (n > 1) pf.emplace_back(n, 1);
    return pf;
}

} // namespace

// ---------------------------------------------------------------- IdealFactorization

IdealFactorization IdealFactorization::from_factors(std::vector<Factor> factors)
{
    for (const auto& f : factors) {
        if (f.exponent <= 0) throw std::invalid_argument("ideal factorization: exponents must be positive");
        if (f.prime.norm < 2) throw std::invalid_argument("ideal factorization: prime norm must be >= 2");
    }
    std::sort(factors.begin(), factors.end(),
              [](const Factor& a, const Factor& b) { return canonical_less(a.prime, b.prime); });
    IdealFactorization out;
    for (const auto& f : factors) {
        if (!out.factors_.empty() && out.factors_.back().prime.p == f.prime.p &&
            out.factors_.back().prime.index == f.prime.index) {
            if (!(out.factors_.back().prime == f.prime))
                throw std::invalid_argument("ideal factorization: inconsistent labels for one prime ideal");
            out.factors_.back().exponent += f.exponent;
        } else {
            out.factors_.push_back(f);
        }
    }
    for (const auto& f : out.factors_)
        out.norm_ = checked_mul(out.norm_, checked_pow<uint64_t>(f.prime.norm, f.exponent));
    return out;
}

IdealFactorization IdealFactorization::prime(const PrimeIdealLabel& p, int exponent)
{
    return from_factors({{p, exponent}});
}

int IdealFactorization::exponent_of(const PrimeIdealLabel& p) const
{
    for (const auto& f : factors_) {
        if (f.prime.p == p.p && f.prime.index == p.index) return f.exponent;
    }
    return 0;
}

std::string IdealFactorization::to_string() const
{
    if (factors_.empty()) return "1";
    std::string s;
    for (const auto& f : factors_) {
        if (!s.empty()) s += '*';
        s += std::to_string(f.prime.p) + '^' + std::to_string(f.exponent) + '[' + std::to_string(f.prime.f) + ',' +
             std::to_string(f.prime.index) + ']';
    }
    return s;
}

bool ideal_order_less(const IdealFactorization& a, const IdealFactorization& b)
{
    if (a.norm() != b.norm()) return a.norm() < b.norm();
    return std::lexicographical_compare(a.factors().begin(), a.factors().end(), b.factors().begin(),
                                        b.factors().end(), factor_less);
}

IdealFactorization multiply(const IdealFactorization& a, const IdealFactorization& b)
{
    std::vector<Factor> all = a.factors();
    all.insert(all.end(), b.factors().begin(), b.factors().end());
    return IdealFactorization::from_factors(std::move(all));
}

IdealFactorization power(const IdealFactorization& a, int k)
{
    if (k < 0) throw std::invalid_argument("power: negative exponent");
    if (k == 0) return {};
    std::vector<Factor> f = a.factors();
    for (auto& x : f) {
        int64_t e = int64_t(x.exponent) * k;
        if (e > INT32_MAX) throw std::overflow_error("exponent overflow");
        x.exponent = static_cast<int>(e);
    }
    return IdealFactorization::from_factors(std::move(f));
}

bool divides(const IdealFactorization& d, const IdealFactorization& a)
{
    for (const auto& f : d.factors()) {
        if (a.exponent_of(f.prime) < f.exponent) return false;
    }
    return true;
}

IdealFactorization quotient(const IdealFactorization& a, const IdealFactorization& d)
{
    if (!divides(d, a)) throw std::invalid_argument("quotient: " + d.to_string() + " does not divide " + a.to_string());
    std::vector<Factor> out;
    for (const auto& f : a.factors()) {
        int e = f.exponent - d.exponent_of(f.prime);
        if (e > 0) out.push_back({f.prime, e});
    }
    return IdealFactorization::from_factors(std::move(out));
}

bool coprime(const IdealFactorization& a, const IdealFactorization& b)
{
    for (const auto& f : a.factors()) {
        if (b.exponent_of(f.prime) > 0) return false;
    }
    return true;
}

namespace {

std::vector<IdealFactorization> bounded_divisors(const IdealFactorization& a, const std::vector<int>& bound)
{
    const auto& fs = a.factors();
    std::vector<IdealFactorization> out;
    std::vector<int> e(fs.size(), 0);
    // odometer with the first coordinate most significant
    for (;;) {
        std::vector<Factor> v;
        for (size_t i = 0; i < fs.size(); ++i) {
            if (e[i] > 0) v.push_back({fs[i].prime, e[i]});
        }
        out.push_back(IdealFactorization::from_factors(std::move(v)));
        size_t i = fs.size();
        while (i > 0) {
            --i;
            if (e[i] < bound[i]) {
                ++e[i];
                break;
            }
            e[i] = 0;
            if (i == 0) return out;
        }
        if (fs.empty()) return out;
    }
}

} // namespace

std::vector<IdealFactorization> divisors(const IdealFactorization& a)
{
    std::vector<int> bound;
    for (const auto& f : a.factors()) bound.push_back(f.exponent);
    return bounded_divisors(a, bound);
}

std::vector<IdealFactorization> power_divisors(const IdealFactorization& a, int k)
{
    if (k < 1) throw std::invalid_argument("power_divisors: k must be positive");
    std::vector<int> bound;
    for (const auto& f : a.factors()) bound.push_back(f.exponent / k);
    return bounded_divisors(a, bound);
}

std::vector<IdealFactorization> ideals_of_norm(const FieldSpec& field, uint64_t n)
{
    if (n == 0) return {};
    check_coverage(field, n);
    return ideals_from_rational(field, factor_rational(n));
}

// ---------------------------------------------------------------- IdealStream

IdealStream::IdealStream(FieldSpec field, double X, uint64_t segment)
    : field_(std::move(field)), limit_(floor_bound(X)), segment_(std::max<uint64_t>(segment, 1))
{
    check_coverage(field_, limit_);
    small_primes_ = primes_up_to(integer_root(limit_, 2));
}

void IdealStream::refill()
{
    while (buffer_.empty() && lo_ <= limit_) {
        uint64_t hi = std::min(limit_ + 1, lo_ + segment_);
        size_t len = hi - lo_;
        std::vector<uint64_t> rem(len);
        std::vector<std::vector<std::pair<uint64_t, int>>> pf(len);
        for (size_t i = 0; i < len; ++i) rem[i] = lo_ + i;
        for (uint64_t p : small_primes_) {
            if (p * p > hi - 1) break;
            for (uint64_t m = (lo_ + p - 1) / p * p; m < hi; m += p) {
                size_t i = m - lo_;
                int a = 0;
                while (rem[i] % p == 0) {
                    rem[i] /= p;
                    ++a;
                }
                pf[i].emplace_back(p, a);
            }
        }
        for (size_t i = 0; i < len; ++i) {
            if (rem[i] > 1) pf[i].emplace_back(rem[i], 1);
            for (auto& ideal : ideals_from_rational(field_, pf[i])) buffer_.push_back(std::move(ideal));
        }
        lo_ = hi;
    }
}

std::optional<IdealFactorization> IdealStream::next()
{
    if (buffer_.empty()) refill();
    if (buffer_.empty()) return std::nullopt;
    IdealFactorization out = std::move(buffer_.front());
    buffer_.pop_front();
    return out;
}

IdealStream enumerate_ideals(const FieldSpec& field, double X)
{
    return IdealStream(field, X);
}

std::vector<IdealFactorization> collect_ideals(const FieldSpec& field, double X)
{
    std::vector<IdealFactorization> out;
    IdealStream s(field, X);
    while (auto a = s.next()) out.push_back(std::move(*a));
    return out;
}

// ---------------------------------------------------------------- CoefficientSieve

int64_t local_ideal_count(const std::vector<int>& degrees, int a)
{
    std::vector<int64_t> ways(a + 1, 0);
    ways[0] = 1;
    for (int f : degrees) {
        for (int t = f; t <= a; ++t) ways[t] += ways[t - f];
    }
    return ways[a];
}

CoefficientSieve::CoefficientSieve(FieldSpec field, LocalFactor factor, uint64_t limit)
    : field_(std::move(field)), factor_(std::move(factor)), limit_(limit)
{
    check_coverage(field_, limit_);
    small_primes_ = primes_up_to(integer_root(limit_, 2));
    for (uint64_t p : small_primes_) small_class_.push_back(field_.split_class(p));
    if (factor_.prime_independent) {
        cache_.resize(field_.class_count());
        for (int c = 0; c < field_.class_count(); ++c) {
            for (int a = 0; a < 64; ++a) cache_[c].push_back(factor_.value(0, field_.class_degrees(c), a));
        }
    }
}

int64_t CoefficientSieve::local(uint64_t p, int a) const
{
    if (factor_.prime_independent) return cache_[field_.split_class(p)][a];
    return factor_.value(p, field_.residue_degrees(p), a);
}

void CoefficientSieve::segment(uint64_t lo, uint64_t hi, std::vector<int64_t>& out) const
{
    if (lo < 1 || hi < lo || hi > limit_ + 1) throw std::out_of_range("CoefficientSieve::segment: bad range");
    size_t len = hi - lo;
    out.assign(len, 1);
    std::vector<uint64_t> rem(len);
    for (size_t i = 0; i < len; ++i) rem[i] = lo + i;
    for (size_t j = 0; j < small_primes_.size(); ++j) {
        uint64_t p = small_primes_[j];
        if (p * p > hi - 1) break;
        const int64_t* cached = factor_.prime_independent ? cache_[small_class_[j]].data() : nullptr;
        for (uint64_t m = (lo + p - 1) / p * p; m < hi; m += p) {
            size_t i = m - lo;
            int a = 0;
            while (rem[i] % p == 0) {
                rem[i] /= p;
                ++a;
            }
            if (out[i] == 0) continue;
            int64_t v = cached ? cached[a] : factor_.value(p, field_.class_degrees(small_class_[j]), a);
            out[i] = checked_mul(out[i], v);
        }
    }
    for (size_t i = 0; i < len; ++i) {
        if (rem[i] > 1 && out[i] != 0) out[i] = checked_mul(out[i], local(rem[i], 1));
    }
}

std::vector<int64_t> CoefficientSieve::all(unsigned threads) const
{
    std::vector<int64_t> out(limit_ + 1, 0);
    size_t segments = (limit_ + segment_size - 1) / segment_size;
    parallel_for(segments, threads, [&](size_t s) {
        uint64_t lo = 1 + s * segment_size;
        uint64_t hi = std::min(limit_ + 1, lo + segment_size);
        std::vector<int64_t> buf;
        segment(lo, hi, buf);
        std::copy(buf.begin(), buf.end(), out.begin() + lo);
    });
    return out;
}

namespace {

LocalFactor counting_factor()
{
    return {[](uint64_t, const std::vector<int>& degrees, int a) { return local_ideal_count(degrees, a); }, true};
}

} // namespace

std::vector<int64_t> ideal_norm_counts(const FieldSpec& field, uint64_t X, unsigned threads)
{
    return CoefficientSieve(field, counting_factor(), X).all(threads);
}

int64_t ideal_count(const FieldSpec& field, double X, unsigned threads)
{
    uint64_t limit = floor_bound(X);
    if (limit == 0) return 0;
    CoefficientSieve sieve(field, counting_factor(), limit);
    size_t segments = (limit + CoefficientSieve::segment_size - 1) / CoefficientSieve::segment_size;
    std::vector<int64_t> partial(segments, 0);
    parallel_for(segments, threads, [&](size_t s) {
        uint64_t lo = 1 + s * CoefficientSieve::segment_size;
        uint64_t hi = std::min(limit + 1, lo + CoefficientSieve::segment_size);
        std::vector<int64_t> buf;
        sieve.segment(lo, hi, buf);
        int64_t sum = 0;
        for (int64_t v : buf) sum += v;
        partial[s] = sum;
    });
    int64_t total = 0;
    for (int64_t v : partial) total = checked_add(total, v);
    return total;
}

int64_t ideal_count_coprime(const FieldSpec& field, double X, const IdealFactorization& a)
{
    uint64_t limit = floor_bound(X);
    if (limit == 0) return 0;
    std::map<uint64_t, std::set<int>> excluded;
    for (const auto& f : a.factors()) excluded[f.prime.p].insert(f.prime.index);
    LocalFactor factor{[excluded](uint64_t p, const std::vector<int>& degrees, int e) -> int64_t {
                           auto it = excluded.find(p);
                           if (it == excluded.end()) return local_ideal_count(degrees, e);
                           std::vector<int> allowed;
                           for (size_t i = 0; i < degrees.size(); ++i) {
                               if (!it->second.count(static_cast<int>(i))) allowed.push_back(degrees[i]);
                           }
                           return local_ideal_count(allowed, e);
                       },
                       false};
    CoefficientSieve sieve(field, factor, limit);
    std::vector<int64_t> buf;
    int64_t total = 0;
    for (uint64_t lo = 1; lo <= limit; lo += CoefficientSieve::segment_size) {
        sieve.segment(lo, std::min(limit + 1, lo + CoefficientSieve::segment_size), buf);
        for (int64_t v : buf) total += v;
    }
    return total;
}

// ---------------------------------------------------------------- IdealCounter

IdealCounter::IdealCounter(const FieldSpec& field, uint64_t X, unsigned threads)
{
    prefix_ = X == 0 ? std::vector<int64_t>{0} : ideal_norm_counts(field, X, threads);
    for (size_t n = 1; n < prefix_.size(); ++n) prefix_[n] += prefix_[n - 1];
}

int64_t IdealCounter::at(uint64_t n) const
{
    if (n >= prefix_.size()) throw std::out_of_range("IdealCounter: " + std::to_string(n) + " beyond table");
    return prefix_[n];
}

int64_t IdealCounter::operator()(double x) const
{
    return at(floor_bound(x));
}

} // namespace idealfunc
