#include "idealfunc/arith.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "idealfunc/checked.hpp"

namespace idealfunc {

// ---------------------------------------------------------------- Rational

namespace {

__int128 gcd128(__int128 a, __int128 b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

Rational::Rational(int64_t n, int64_t d)
{
    *this = reduce(n, d);
}

Rational Rational::reduce(__int128 n, __int128 d)
{
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<int64_t>(n);
    r.den_ = static_cast<int64_t>(d);
    return r;
}

Rational operator+(const Rational& a, const Rational& b)
{
    return Rational::reduce(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_, __int128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b)
{
    return Rational::reduce(__int128(a.num_) * b.den_ - __int128(b.num_) * a.den_, __int128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b)
{
    return Rational::reduce(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b)
{
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return Rational::reduce(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_);
}

std::string Rational::to_string() const
{
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

// ---------------------------------------------------------------- ArithmeticFunction

ArithmeticFunction ArithmeticFunction::multiplicative(std::string name, PrimePowerRule rule, bool exponent_only)
{
    ArithmeticFunction f;
    f.name_ = std::move(name);
    f.prime_power_ = std::move(rule);
    f.multiplicative_ = true;
    f.exponent_only_ = exponent_only;
    return f;
}

ArithmeticFunction ArithmeticFunction::general(std::string name, Rule rule, bool multiplicative)
{
    ArithmeticFunction f;
    f.name_ = std::move(name);
    f.rule_ = std::move(rule);
    f.multiplicative_ = multiplicative;
    return f;
}

int64_t ArithmeticFunction::operator()(const IdealFactorization& a) const
{
    if (rule_) return rule_(a);
    int64_t v = 1;
    for (const auto& f : a.factors()) {
        v = checked_mul(v, prime_power_(f.prime, f.exponent));
        if (v == 0) break;
    }
    return v;
}

int64_t ArithmeticFunction::at_prime_power(const PrimeIdealLabel& p, int exponent) const
{
    if (exponent == 0) return (*this)(IdealFactorization{});
    if (prime_power_) return prime_power_(p, exponent);
    return (*this)(IdealFactorization::prime(p, exponent));
}

LocalFactor ArithmeticFunction::local_factor() const
{
    if (!prime_power_) throw std::logic_error("local_factor: " + name_ + " has no prime-power rule");
    auto rule = prime_power_;
    auto value = [rule](uint64_t p, const std::vector<int>& degrees, int a) -> int64_t {
        std::vector<PrimeIdealLabel> labels;
        for (size_t i = 0; i < degrees.size(); ++i) {
            uint64_t norm = p == 0 ? 0 : checked_pow<uint64_t>(p, degrees[i]);
            labels.push_back({p, degrees[i], static_cast<int>(i), norm});
        }
        // sum over exponent vectors x with sum degrees[i] * x[i] == a
        std::function<int64_t(size_t, int)> go = [&](size_t i, int left) -> int64_t {
            if (i == labels.size()) return left == 0 ? 1 : 0;
            int64_t total = 0;
            for (int e = 0; e * degrees[i] <= left; ++e) {
                int64_t here = e == 0 ? 1 : rule(labels[i], e);
                if (here == 0) continue;
                int64_t rest = go(i + 1, left - e * degrees[i]);
                total = checked_add(total, checked_mul(here, rest));
            }
            return total;
        };
        return go(0, a);
    };
    return {value, exponent_only_};
}

// ---------------------------------------------------------------- order-k functions

namespace {

int mu_local(int k, int m)
{
    return m < k ? 1 : (m == k ? -1 : 0);
}

int lambda_local(int k, int m)
{
    int r = m % (k + 1);
    return r == 0 ? 1 : (r == 1 ? -1 : 0);
}

void require_order(int k, int min)
{
    if (k < min) throw std::invalid_argument("order k must be >= " + std::to_string(min));
}

} // namespace

int mu_k(int k, const IdealFactorization& a)
{
    require_order(k, 1);
    int v = 1;
    for (const auto& f : a.factors()) {
        v *= mu_local(k, f.exponent);
        if (v == 0) return 0;
    }
    return v;
}

int lambda_k(int k, const IdealFactorization& a)
{
    require_order(k, 1);
    int v = 1;
    for (const auto& f : a.factors()) {
        v *= lambda_local(k, f.exponent);
        if (v == 0) return 0;
    }
    return v;
}

int q_k(int k, const IdealFactorization& a)
{
    require_order(k, 2);
    for (const auto& f : a.factors()) {
        if (f.exponent >= k) return 0;
    }
    return 1;
}

int64_t jordan_totient(int k, const IdealFactorization& a)
{
    require_order(k, 1);
    int64_t v = 1;
    for (const auto& f : a.factors()) {
        auto nk = static_cast<int64_t>(checked_pow<uint64_t>(f.prime.norm, k));
        int64_t lower = checked_pow<int64_t>(nk, f.exponent - 1);
        v = checked_mul(v, checked_mul(lower, nk - 1));
    }
    return v;
}

double sigma_s(const IdealFactorization& a, double s)
{
    double v = 1;
    for (const auto& f : a.factors()) {
        double term = 0;
        double base = std::pow(static_cast<double>(f.prime.norm), s);
        double pw = 1;
        for (int e = 0; e <= f.exponent; ++e) {
            term += pw;
            pw *= base;
        }
        v *= term;
    }
    return v;
}

int64_t sigma_integer(const IdealFactorization& a, unsigned s)
{
    int64_t v = 1;
    for (const auto& f : a.factors()) {
        auto base = static_cast<int64_t>(checked_pow<uint64_t>(f.prime.norm, s));
        int64_t term = 0, pw = 1;
        for (int e = 0; e <= f.exponent; ++e) {
            term = checked_add(term, pw);
            if (e < f.exponent) pw = checked_mul(pw, base);
        }
        v = checked_mul(v, term);
    }
    return v;
}

namespace functions {

ArithmeticFunction mobius(int k)
{
    require_order(k, 1);
    return ArithmeticFunction::multiplicative(
        "mobius_" + std::to_string(k), [k](const PrimeIdealLabel&, int e) { return int64_t(mu_local(k, e)); }, true);
}

ArithmeticFunction liouville(int k)
{
    require_order(k, 1);
    return ArithmeticFunction::multiplicative(
        "liouville_" + std::to_string(k), [k](const PrimeIdealLabel&, int e) { return int64_t(lambda_local(k, e)); },
        true);
}

ArithmeticFunction qfree(int k)
{
    require_order(k, 2);
    return ArithmeticFunction::multiplicative(
        "qfree_" + std::to_string(k), [k](const PrimeIdealLabel&, int e) { return int64_t(e < k ? 1 : 0); }, true);
}

ArithmeticFunction jordan(int k)
{
    require_order(k, 1);
    return ArithmeticFunction::multiplicative(
        "jordan_" + std::to_string(k),
        [k](const PrimeIdealLabel& p, int e) {
            auto nk = static_cast<int64_t>(checked_pow<uint64_t>(p.norm, k));
            return checked_mul(checked_pow<int64_t>(nk, e - 1), nk - 1);
        },
        false);
}

ArithmeticFunction delta()
{
    return ArithmeticFunction::multiplicative("delta", [](const PrimeIdealLabel&, int) { return int64_t(0); }, true);
}

ArithmeticFunction one()
{
    return ArithmeticFunction::multiplicative("one", [](const PrimeIdealLabel&, int) { return int64_t(1); }, true);
}

} // namespace functions

// ---------------------------------------------------------------- convolution

int64_t dirichlet_convolve(const ArithmeticFunction& f, const ArithmeticFunction& g, const IdealFactorization& a)
{
    int64_t total = 0;
    for (const auto& d : divisors(a)) total = checked_add(total, checked_mul(f(d), g(quotient(a, d))));
    return total;
}

ArithmeticFunction convolution(const ArithmeticFunction& f, const ArithmeticFunction& g)
{
    bool mult = f.is_multiplicative() && g.is_multiplicative();
    return ArithmeticFunction::general(
        f.name() + "*" + g.name(), [f, g](const IdealFactorization& a) { return dirichlet_convolve(f, g, a); }, mult);
}

Rational dirichlet_inverse(const ArithmeticFunction& f, const IdealFactorization& a)
{
    const int64_t f1 = f(IdealFactorization{});
    if (f1 == 0) throw std::domain_error("dirichlet_inverse: f(O_F) = 0, no inverse");
    // divisors in lexicographic exponent order; every divisor of a divisor
    // precedes it, so one forward pass suffices
    const auto divs = divisors(a);
    const auto& fs = a.factors();
    std::vector<size_t> stride(fs.size(), 1);
    for (size_t i = fs.size(); i-- > 1;) stride[i - 1] = stride[i] * (fs[i].exponent + 1);
    auto index_of = [&](const IdealFactorization& d) {
        size_t idx = 0;
        for (size_t i = 0; i < fs.size(); ++i) idx += stride[i] * d.exponent_of(fs[i].prime);
        return idx;
    };
    std::vector<Rational> inv(divs.size());
    for (size_t i = 0; i < divs.size(); ++i) {
        if (i == 0) {
            inv[0] = Rational(1, f1);
            continue;
        }
        Rational acc = 0;
        for (const auto& e : divisors(divs[i])) {
            if (e.is_unit()) continue;
            acc = acc + Rational(f(e)) * inv[index_of(quotient(divs[i], e))];
        }
        inv[i] = -acc / Rational(f1);
    }
    return inv.back();
}

// ---------------------------------------------------------------- G_A

namespace {

// mu_{k-1}(A^{k-1} B) without materializing the product
int mu_of_power_product(int order, const IdealFactorization& a, int power, const IdealFactorization& b)
{
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    size_t i = 0, j = 0;
    int v = 1;
    while (i < fa.size() || j < fb.size()) {
        int e;
        if (j == fb.size() || (i < fa.size() && canonical_less(fa[i].prime, fb[j].prime))) {
            e = fa[i++].exponent * power;
        } else if (i == fa.size() || canonical_less(fb[j].prime, fa[i].prime)) {
            e = fb[j++].exponent;
        } else {
            e = fa[i++].exponent * power + fb[j++].exponent;
        }
        v *= mu_local(order, e);
        if (v == 0) return 0;
    }
    return v;
}

} // namespace

int64_t g_A(std::span<const IdealFactorization> ideals, int k, const IdealFactorization& a, double x)
{
    require_order(k, 2);
    int64_t total = 0;
    for (const auto& b : ideals) {
        if (static_cast<double>(b.norm()) > x) continue;
        int mb = mu_k(k - 1, b);
        if (mb == 0) continue;
        total += mb * mu_of_power_product(k - 1, a, k - 1, b);
    }
    return total;
}

int64_t g_A(const FieldSpec& field, int k, const IdealFactorization& a, double x)
{
    require_order(k, 2);
    int64_t total = 0;
    IdealStream stream(field, x);
    while (auto b = stream.next()) {
        int mb = mu_k(k - 1, *b);
        if (mb == 0) continue;
        total += mb * mu_of_power_product(k - 1, a, k - 1, *b);
    }
    return total;
}

// ---------------------------------------------------------------- batch coefficients

std::vector<int64_t> norm_coefficients(const FieldSpec& field, const ArithmeticFunction& f, uint64_t X,
                                       unsigned threads)
{
    return CoefficientSieve(field, f.local_factor(), X).all(threads);
}

std::vector<int64_t> convolve_norm_coefficients(const std::vector<int64_t>& a, const std::vector<int64_t>& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("convolve_norm_coefficients: size mismatch");
    std::vector<int64_t> out(a.size(), 0);
    const size_t n = a.size();
    for (size_t d = 1; d < n; ++d) {
        if (a[d] == 0) continue;
        for (size_t m = d, q = 1; m < n; m += d, ++q) out[m] = checked_add(out[m], checked_mul(a[d], b[q]));
    }
    return out;
}

} // namespace idealfunc
