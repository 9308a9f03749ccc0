#include "idealfunc/analytic.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "idealfunc/ideals.hpp"
#include "idealfunc/arith.hpp"
#include "idealfunc/parallel.hpp"

namespace idealfunc {

const char* to_string(Method m)
{
    switch (m) {
    case Method::euler_product: return "euler-product";
    case Method::series:        return "series";
    case Method::character_sum: return "character-sum";
    }
    return "?";
}

Method parse_method(const std::string& s)
{
    if (s == "euler-product") return Method::euler_product;
    if (s == "series") return Method::series;
    if (s == "character-sum") return Method::character_sum;
    throw std::invalid_argument("unknown method `" + s + "`");
}

namespace {

// Neumaier compensated sum
struct Accumulator
{
    double sum = 0, comp = 0;
    void add(double x)
    {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

constexpr long double bernoulli_even[] = {
    // B_2 .. B_26
    1.0L / 6,          -1.0L / 30,       1.0L / 42,           -1.0L / 30,     5.0L / 66,
    -691.0L / 2730,    7.0L / 6,         -3617.0L / 510,      43867.0L / 798, -174611.0L / 330,
    854513.0L / 138,   -236364091.0L / 2730, 8553103.0L / 6,
};

void require_s(double s)
{
    if (!(s > 1 + 1e-3)) throw std::domain_error("zeta: s must exceed 1 + 1e-3");
}

AnalyticValue product(const AnalyticValue& a, const AnalyticValue& b, Method m)
{
    double v = a.value * b.value;
    double bound = std::fabs(a.value) * b.tail_bound + std::fabs(b.value) * a.tail_bound +
                   a.tail_bound * b.tail_bound + 2 * DBL_EPSILON * std::fabs(v);
    return {v, bound, m};
}

} // namespace

AnalyticValue hurwitz_zeta(double s, double a)
{
    if (!(s > 1)) throw std::domain_error("hurwitz_zeta: s must exceed 1");
    if (!(a > 0 && a <= 1)) throw std::domain_error("hurwitz_zeta: a must lie in (0, 1]");
    constexpr int N = 40;
    constexpr int M = 12;
    long double sum = 0;
    for (int n = N - 1; n >= 0; --n) sum += std::pow(static_cast<long double>(n) + a, -static_cast<long double>(s));
    const long double x = N + static_cast<long double>(a);
    const long double ls = s;
    sum += std::pow(x, 1 - ls) / (ls - 1) + std::pow(x, -ls) / 2;
    long double rising = ls;             // s (s+1) ... (s+2j-2)
    long double xp = std::pow(x, -ls - 1);  // x^{-s-2j+1}
    long double factorial = 2;           // (2j)!
    long double next = 0;
    for (int j = 1; j <= M + 1; ++j) {
        long double term = bernoulli_even[j - 1] / factorial * rising * xp;
        if (j <= M)
            sum += term;
        else
            next = std::fabs(term);
        rising *= (ls + 2 * j - 1) * (ls + 2 * j);
        xp /= x * x;
        factorial *= (2 * j + 1) * (2 * j + 2);
    }
    double v = static_cast<double>(sum);
    double bound = 2 * static_cast<double>(next) + 4 * DBL_EPSILON * std::fabs(v);
    return {v, bound, Method::series};
}

AnalyticValue riemann_zeta(double s)
{
    return hurwitz_zeta(s, 1.0);
}

bool is_fundamental_discriminant(int64_t D)
{
    if (D == 1) return true;
    int64_t r = ((D % 4) + 4) % 4;
    if (r == 1) return is_squarefree(D);
    if (r != 0) return false;
    int64_t m = D / 4;
    int64_t mr = ((m % 4) + 4) % 4;
    return (mr == 2 || mr == 3) && is_squarefree(m);
}

AnalyticValue dirichlet_L(int64_t D, double s, const EvalOptions&)
{
    if (D == 1 || !is_fundamental_discriminant(D))
        throw std::invalid_argument("dirichlet_L: D=" + std::to_string(D) + " is not a nontrivial fundamental discriminant");
    if (!(s >= 1)) throw std::domain_error("dirichlet_L: s must be >= 1");
    const uint64_t q = static_cast<uint64_t>(D < 0 ? -D : D);
    if (s == 1) {
        long double acc = 0;
        if (D < 0) {
            // L(1) = -pi / |D|^{3/2} sum chi(a) a
            for (uint64_t a = 1; a < q; ++a) acc += kronecker_symbol(D, a) * static_cast<long double>(a);
            long double v = -std::numbers::pi_v<long double> * acc / std::pow(static_cast<long double>(q), 1.5L);
            double vd = static_cast<double>(v);
            return {vd, 8 * DBL_EPSILON * (std::fabs(vd) + 1), Method::character_sum};
        }
        // L(1) = -(1/sqrt D) sum chi(a) log sin(pi a / D)
        for (uint64_t a = 1; a < q; ++a) {
            int c = kronecker_symbol(D, a);
            if (c != 0)
                acc += c * std::log(std::sin(std::numbers::pi_v<long double> * a / static_cast<long double>(q)));
        }
        long double v = -acc / std::sqrt(static_cast<long double>(q));
        double vd = static_cast<double>(v);
        return {vd, 8 * DBL_EPSILON * q * (std::fabs(vd) + 1), Method::character_sum};
    }
    // L(s) = q^-s sum_a chi(a) zeta(s, a/q)
    long double acc = 0;
    double bound = 0;
    for (uint64_t a = 1; a < q; ++a) {
        int c = kronecker_symbol(D, a);
        if (c == 0) continue;
        auto h = hurwitz_zeta(s, static_cast<double>(a) / static_cast<double>(q));
        acc += c * static_cast<long double>(h.value);
        bound += h.tail_bound + 2 * DBL_EPSILON * std::fabs(h.value);
    }
    const long double scale = std::pow(static_cast<long double>(q), -static_cast<long double>(s));
    double v = static_cast<double>(acc * scale);
    return {v, static_cast<double>(bound * scale) + 4 * DBL_EPSILON * std::fabs(v), Method::character_sum};
}

AnalyticValue dirichlet_L_series(int64_t D, double s, uint64_t cutoff)
{
    if (D == 1 || !is_fundamental_discriminant(D))
        throw std::invalid_argument("dirichlet_L_series: D is not a nontrivial fundamental discriminant");
    if (!(s >= 1)) throw std::domain_error("dirichlet_L_series: s must be >= 1");
    const uint64_t q = static_cast<uint64_t>(D < 0 ? -D : D);
    const uint64_t N = std::max<uint64_t>(1, (cutoff + q - 1) / q) * q;
    // max |S(t)| over one period; S(N) = 0 at multiples of q
    int64_t partial = 0, max_partial = 0;
    for (uint64_t a = 1; a <= q; ++a) {
        partial += kronecker_symbol(D, a);
        max_partial = std::max<int64_t>(max_partial, partial < 0 ? -partial : partial);
    }
    std::vector<int> chi(q);
    for (uint64_t a = 0; a < q; ++a) chi[a] = kronecker_symbol(D, a == 0 ? q : a);
    Accumulator acc;
    for (uint64_t n = N; n >= 1; --n) {
        int c = chi[n % q];
        if (c != 0) acc.add(c * std::pow(static_cast<double>(n), -s));
    }
    double v = acc.value();
    double bound = static_cast<double>(max_partial) * std::pow(static_cast<double>(N), -s) +
                   4 * DBL_EPSILON * std::sqrt(static_cast<double>(N));
    return {v, bound, Method::series};
}

AnalyticValue zeta_character_route(const FieldSpec& field, double s)
{
    if (field.is_tabulated()) throw std::invalid_argument("character route needs a rational or quadratic field");
    auto z = riemann_zeta(s);
    if (field.degree() == 1) return {z.value, z.tail_bound, Method::character_sum};
    return product(z, dirichlet_L(field.discriminant(), s), Method::character_sum);
}

AnalyticValue zeta_euler_product(const FieldSpec& field, double s, uint64_t prime_cutoff, double rel_tol)
{
    require_s(s);
    const int d = field.degree();
    uint64_t cutoff = std::max<uint64_t>(prime_cutoff, 2);
    if (rel_tol > 0) {
        // d P0^{1-s} / (s-1) <= tol
        double need = std::pow(d / ((s - 1) * rel_tol), 1 / (s - 1));
        if (need < static_cast<double>(cutoff)) cutoff = std::max<uint64_t>(100, static_cast<uint64_t>(need) + 1);
    }
    cutoff = std::min(cutoff, field.prime_coverage());
    long double log_sum = 0;
    uint64_t count = 0;
    for (uint64_t p : primes_up_to(cutoff)) {
        for (int f : field.residue_degrees(p)) {
            long double n = std::pow(static_cast<long double>(p), f);
            log_sum -= std::log1p(-std::pow(n, -static_cast<long double>(s)));
            ++count;
        }
    }
    double P0 = static_cast<double>(cutoff);
    double eta = d * std::pow(P0, 1 - s) / (s - 1) / (1 - std::pow(P0, -s));
    double v = static_cast<double>(std::exp(log_sum));
    double bound = v * std::expm1(eta) + 4 * DBL_EPSILON * v * static_cast<double>(count + 1);
    return {v, bound, Method::euler_product};
}

AnalyticValue zeta_coefficient_series(const FieldSpec& field, double s, uint64_t cutoff, unsigned threads)
{
    require_s(s);
    cutoff = std::max<uint64_t>(cutoff, 1);
    CoefficientSieve sieve(field, {[](uint64_t, const std::vector<int>& deg, int a) { return local_ideal_count(deg, a); }, true},
                           cutoff);
    const size_t segments = (cutoff + CoefficientSieve::segment_size - 1) / CoefficientSieve::segment_size;
    std::vector<double> partial(segments);
    parallel_for(segments, threads, [&](size_t i) {
        uint64_t lo = 1 + i * CoefficientSieve::segment_size;
        uint64_t hi = std::min(cutoff + 1, lo + CoefficientSieve::segment_size);
        std::vector<int64_t> c;
        sieve.segment(lo, hi, c);
        Accumulator acc;
        for (size_t j = c.size(); j-- > 0;) {
            if (c[j]) acc.add(static_cast<double>(c[j]) * std::pow(static_cast<double>(lo + j), -s));
        }
        partial[i] = acc.value();
    });
    Accumulator total;
    for (size_t i = segments; i-- > 0;) total.add(partial[i]);
    // a_F(n) <= tau_d(n) and sum_{n<=t} tau_d(n) <= t (log t + 1)^{d-1}; the tail is at most
    // s * int_N^inf t^{-s} (log t + 1)^{d-1} dt
    const int m = field.degree() - 1;
    const double alpha = s - 1;
    const double L = std::log(static_cast<double>(cutoff));
    double series = 0, falling = 1;
    for (int j = 0; j <= m; ++j) {
        series += falling * std::pow(L + 1, m - j) / std::pow(alpha, j + 1);
        falling *= (m - j);
    }
    double tail = s * std::exp(-alpha * L) * series;
    double v = total.value();
    return {v, tail + 4 * DBL_EPSILON * v * std::sqrt(static_cast<double>(cutoff)), Method::series};
}

AnalyticValue dedekind_zeta(const FieldSpec& field, double s, const EvalOptions& opts)
{
    require_s(s);
    if (field.is_tabulated()) return zeta_euler_product(field, s, opts.prime_cutoff, opts.rel_tol);
    return zeta_character_route(field, s);
}

AnalyticValue residue_c_F(const FieldSpec& field, const EvalOptions& opts)
{
    if (!field.is_tabulated()) {
        if (field.degree() == 1) return {1.0, 0.0, Method::character_sum};
        return dirichlet_L(field.discriminant(), 1.0, opts);
    }
    // prod_p (1 - 1/p) prod_{P|p} (1 - 1/N(P))^-1 converges conditionally; the
    // bound is the drift over the upper half of the primes, not a proof
    uint64_t cutoff = std::min(opts.prime_cutoff, field.prime_coverage());
    long double log_sum = 0, log_half = 0;
    for (uint64_t p : primes_up_to(cutoff)) {
        long double lp = std::log1p(-1.0L / p);
        for (int f : field.residue_degrees(p)) lp -= std::log1p(-std::pow(static_cast<long double>(p), -f));
        log_sum += lp;
        if (p <= cutoff / 2) log_half = log_sum;
    }
    double v = static_cast<double>(std::exp(log_sum));
    double drift = std::fabs(static_cast<double>(std::exp(log_sum) - std::exp(log_half)));
    return {v, drift, Method::euler_product};
}

double theorem1_euler_factor(uint64_t norm, int k)
{
    if (k < 2) throw std::invalid_argument("theorem1 constant needs k >= 2");
    long double n = static_cast<long double>(norm);
    return static_cast<double>(1 - (n - 1) / (n * (std::pow(n, k) - 1)));
}

AnalyticValue theorem1_constant(const FieldSpec& field, int k, const EvalOptions& opts)
{
    if (k < 2) throw std::invalid_argument("theorem1_constant: k must be >= 2");
    const int d = field.degree();
    uint64_t cutoff = std::max<uint64_t>(opts.prime_cutoff, 2);
    double need = std::pow(d / ((k - 1) * opts.rel_tol), 1.0 / (k - 1));
    if (need < static_cast<double>(cutoff)) cutoff = std::max<uint64_t>(100, static_cast<uint64_t>(need) + 1);
    cutoff = std::min(cutoff, field.prime_coverage());
    long double log_sum = 0;
    uint64_t count = 0;
    for (uint64_t p : primes_up_to(cutoff)) {
        for (int f : field.residue_degrees(p)) {
            long double n = std::pow(static_cast<long double>(p), f);
            long double t = (n - 1) / (n * (std::pow(n, k) - 1));
            log_sum += std::log1p(-t);
            ++count;
        }
    }
    // omitted factors lie in [exp(-eta), 1]
    double P0 = static_cast<double>(cutoff);
    double eta = d * std::pow(P0, 1 - k) / (k - 1) / (1 - std::pow(P0, -k));
    double v = static_cast<double>(std::exp(log_sum));
    double bound = v * -std::expm1(-eta) + 4 * DBL_EPSILON * v * static_cast<double>(count + 1);
    return {v, bound, Method::euler_product};
}

double lambda_generating_partial(const FieldSpec& field, int k, double s, double X, unsigned threads)
{
    if (k < 2) throw std::invalid_argument("lambda_generating_partial: k must be >= 2");
    if (!(s > 1)) throw std::domain_error("lambda_generating_partial: s must exceed 1");
    if (!(X >= 1)) return 0;
    const auto limit = static_cast<uint64_t>(std::floor(X));
    CoefficientSieve sieve(field, functions::liouville(k - 1).local_factor(), limit);
    const size_t segments = (limit + CoefficientSieve::segment_size - 1) / CoefficientSieve::segment_size;
    std::vector<double> partial(segments);
    parallel_for(segments, threads, [&](size_t i) {
        uint64_t lo = 1 + i * CoefficientSieve::segment_size;
        uint64_t hi = std::min(limit + 1, lo + CoefficientSieve::segment_size);
        std::vector<int64_t> c;
        sieve.segment(lo, hi, c);
        Accumulator acc;
        for (size_t j = c.size(); j-- > 0;) {
            if (c[j]) acc.add(static_cast<double>(c[j]) * std::pow(static_cast<double>(lo + j), -s));
        }
        partial[i] = acc.value();
    });
    Accumulator total;
    for (size_t i = segments; i-- > 0;) total.add(partial[i]);
    return total.value();
}

} // namespace idealfunc
