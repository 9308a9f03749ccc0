#include "idealfunc/verify.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "idealfunc/arith.hpp"
#include "idealfunc/ideals.hpp"
#include "idealfunc/summatory.hpp"

namespace idealfunc {

bool SuiteResult::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.failures == 0; });
}

std::string SuiteResult::summary() const
{
    std::ostringstream out;
    for (const auto& c : checks) {
        out << (c.failures == 0 ? "PASS " : "FAIL ") << c.name << " tested=" << c.tested << " failures=" << c.failures;
        if (c.failures) out << " first: " << c.first_failure;
        out << '\n';
    }
    return out.str();
}

namespace {

class Recorder
{
public:
    explicit Recorder(std::string name) { r_.name = std::move(name); }

    template <class Describe>
    void check(bool ok, Describe&& describe)
    {
        ++r_.tested;
        if (!ok && r_.failures++ == 0) r_.first_failure = describe();
    }

    CheckResult done() { return std::move(r_); }

private:
    CheckResult r_;
};

std::string ideal_str(const IdealFactorization& a)
{
    return a.to_string();
}

} // namespace

SuiteResult verify_identities(const FieldSpec& field, uint64_t xmax, int kmax, unsigned)
{
    if (kmax < 2) throw std::invalid_argument("verify: kmax must be >= 2");
    SuiteResult out{"identities", field.designation(), {}};
    const auto ideals = collect_ideals(field, static_cast<double>(xmax));

    {
        Recorder rec("abs_mu_k_as_mu1_sum");
        for (int k = 1; k <= kmax; ++k) {
            for (const auto& a : ideals) {
                int64_t rhs = 0;
                for (const auto& d : power_divisors(a, k + 1)) rhs += mu_1(d);
                rec.check(std::abs(mu_k(k, a)) == rhs, [&] { return "k=" + std::to_string(k) + " A=" + ideal_str(a); });
            }
        }
        out.checks.push_back(rec.done());
    }
    {
        Recorder rec("qk_conv_lambda_is_delta");
        for (int k = 2; k <= kmax; ++k) {
            auto q = functions::qfree(k);
            auto l = functions::liouville(k - 1);
            for (const auto& a : ideals) {
                rec.check(dirichlet_convolve(q, l, a) == delta(a),
                          [&] { return "k=" + std::to_string(k) + " A=" + ideal_str(a); });
            }
        }
        out.checks.push_back(rec.done());
    }
    {
        Recorder rec("mu_k_from_mu_k_minus_1");
        for (int k = 2; k <= kmax; ++k) {
            for (const auto& a : ideals) {
                int64_t rhs = 0;
                for (const auto& d : power_divisors(a, k))
                    rhs += mu_k(k - 1, quotient(a, power(d, k))) * mu_k(k - 1, quotient(a, d));
                rec.check(mu_k(k, a) == rhs, [&] { return "k=" + std::to_string(k) + " A=" + ideal_str(a); });
            }
        }
        out.checks.push_back(rec.done());
    }
    {
        Recorder rec("lambda_k_as_mu1_sum");
        for (int k = 1; k <= kmax; ++k) {
            for (const auto& a : ideals) {
                int64_t rhs = 0;
                for (const auto& d : power_divisors(a, k + 1)) rhs += mu_1(quotient(a, power(d, k + 1)));
                rec.check(lambda_k(k, a) == rhs, [&] { return "k=" + std::to_string(k) + " A=" + ideal_str(a); });
            }
        }
        out.checks.push_back(rec.done());
    }
    {
        Recorder rec("mu_k_of_kth_power");
        for (int k = 1; k <= kmax; ++k) {
            for (const auto& a : ideals) {
                rec.check(mu_k(k, power(a, k)) == mu_1(a),
                          [&] { return "k=" + std::to_string(k) + " A=" + ideal_str(a); });
            }
        }
        out.checks.push_back(rec.done());
    }
    {
        Recorder rec("g_A_coprime_count");
        for (int k = 2; k <= kmax; ++k) {
            for (const auto& a : ideals) {
                const double x = static_cast<double>(std::max<uint64_t>(50, xmax / a.norm()));
                const auto span = std::span<const IdealFactorization>(ideals);
                int64_t g = g_A(span, k, a, x);
                int64_t count = 0;
                for (const auto& b : ideals) {
                    if (static_cast<double>(b.norm()) > x) break;
                    if (coprime(a, b) && q_k(k, b)) ++count;
                }
                rec.check(g == mu_1(a) * count, [&] {
                    return "k=" + std::to_string(k) + " A=" + ideal_str(a) + " x=" + std::to_string(x) +
                           " G=" + std::to_string(g) + " count=" + std::to_string(count);
                });
            }
        }
        out.checks.push_back(rec.done());
    }
    {
        Recorder rec("totient_divisor_sum");
        for (const auto& a : ideals) {
            Rational lhs = 0;
            for (const auto& e : divisors(a)) lhs = lhs + Rational(mu_1(e), static_cast<int64_t>(e.norm()));
            Rational rhs(jordan_totient(1, a), static_cast<int64_t>(a.norm()));
            rec.check(lhs == rhs, [&] { return "A=" + ideal_str(a); });
        }
        out.checks.push_back(rec.done());
    }
    {
        Recorder rec("multiplicativity");
        std::mt19937_64 rng(20240601);
        std::uniform_int_distribution<size_t> pick(0, ideals.size() - 1);
        std::vector<ArithmeticFunction> fs;
        for (int k = 1; k <= kmax; ++k) {
            fs.push_back(functions::mobius(k));
            fs.push_back(functions::liouville(k));
            fs.push_back(functions::jordan(k));
            if (k >= 2) fs.push_back(functions::qfree(k));
        }
        for (int trial = 0; trial < 2000; ++trial) {
            const auto& a = ideals[pick(rng)];
            const auto& b = ideals[pick(rng)];
            if (!coprime(a, b)) continue;
            const auto ab = multiply(a, b);
            for (const auto& f : fs) {
                try {
                    rec.check(f(ab) == f(a) * f(b), [&] { return f.name() + " A=" + ideal_str(a) + " B=" + ideal_str(b); });
                } catch (const std::overflow_error&) {
                    // J_k of a large product exceeds 64 bits; skipped
                }
            }
        }
        out.checks.push_back(rec.done());
    }
    {
        Recorder rec("convolution_multiplicativity");
        std::mt19937_64 rng(7);
        std::vector<const IdealFactorization*> small;
        for (const auto& a : ideals) {
            if (a.norm() <= 100) small.push_back(&a);
        }
        std::uniform_int_distribution<size_t> pick(0, small.size() - 1);
        const std::vector<ArithmeticFunction> conv = {
            convolution(functions::mobius(1), functions::one()),
            convolution(functions::qfree(2), functions::liouville(1)),
            convolution(functions::liouville(2), functions::mobius(2)),
            convolution(functions::jordan(1), functions::one()),
        };
        for (int trial = 0; trial < 500; ++trial) {
            const auto& a = *small[pick(rng)];
            const auto& b = *small[pick(rng)];
            if (!coprime(a, b)) continue;
            const auto ab = multiply(a, b);
            for (const auto& f : conv) {
                rec.check(f(ab) == f(a) * f(b), [&] { return f.name() + " A=" + ideal_str(a) + " B=" + ideal_str(b); });
            }
        }
        out.checks.push_back(rec.done());
    }
    return out;
}

SuiteResult verify_counting(const FieldSpec& field, uint64_t xmax, int kmax, unsigned threads)
{
    if (kmax < 2) throw std::invalid_argument("verify: kmax must be >= 2");
    if (xmax < 1) throw std::invalid_argument("verify: xmax must be >= 1");
    SuiteResult out{"counting", field.designation(), {}};
    const auto ideals = collect_ideals(field, static_cast<double>(xmax));
    const auto counts = ideal_norm_counts(field, xmax, threads);
    IdealCounter counter(field, xmax, threads);

    // ideal stream, tallied by norm
    std::vector<int64_t> stream_counts(xmax + 1, 0);
    for (const auto& a : ideals) ++stream_counts[a.norm()];
    {
        Recorder rec("stream_matches_sieve");
        int64_t running = 0;
        for (uint64_t n = 1; n <= xmax; ++n) {
            running += stream_counts[n];
            rec.check(stream_counts[n] == counts[n] && running == counter.at(n),
                      [&] { return "n=" + std::to_string(n); });
        }
        out.checks.push_back(rec.done());
    }
    if (!field.is_tabulated()) {
        Recorder rec("coefficient_divisor_character_sum");
        for (uint64_t n = 1; n <= xmax; ++n) {
            int64_t sum = 0;
            for (uint64_t m = 1; m * m <= n; ++m) {
                if (n % m) continue;
                sum += kronecker_symbol(field.discriminant(), m);
                if (m * m != n) sum += kronecker_symbol(field.discriminant(), n / m);
            }
            rec.check(sum == counts[n], [&] { return "n=" + std::to_string(n); });
        }
        out.checks.push_back(rec.done());
    }
    {
        Recorder rec("qfree_fast_equals_direct");
        for (int k = 2; k <= kmax; ++k) {
            QfreeFastCounter fast(field, k, xmax, threads);
            // direct: k-free ideals off the stream
            std::vector<int64_t> direct(xmax + 1, 0);
            for (const auto& a : ideals) direct[a.norm()] += q_k(k, a);
            for (uint64_t n = 1; n <= xmax; ++n) direct[n] += direct[n - 1];
            for (uint64_t x = 1; x <= xmax; ++x) {
                rec.check(fast(x) == direct[x], [&] {
                    return "k=" + std::to_string(k) + " x=" + std::to_string(x) + " fast=" + std::to_string(fast(x)) +
                           " direct=" + std::to_string(direct[x]);
                });
            }
        }
        out.checks.push_back(rec.done());
    }
    {
        Recorder rec("qfree_sieve_equals_stream");
        for (int k = 2; k <= kmax; ++k) {
            auto sieve = cumulative_sums(field, functions::qfree(k), xmax, threads);
            std::vector<int64_t> direct(xmax + 1, 0);
            for (const auto& a : ideals) direct[a.norm()] += q_k(k, a);
            for (uint64_t n = 1; n <= xmax; ++n) {
                direct[n] += direct[n - 1];
                rec.check(sieve[n] == direct[n], [&] { return "k=" + std::to_string(k) + " x=" + std::to_string(n); });
            }
        }
        out.checks.push_back(rec.done());
    }
    {
        Recorder rec("qfree_nested_in_k");
        std::vector<std::vector<int64_t>> q;
        for (int k = 2; k <= kmax + 1; ++k) q.push_back(cumulative_sums(field, functions::qfree(k), xmax, threads));
        for (size_t i = 0; i + 1 < q.size(); ++i) {
            for (uint64_t n = 1; n <= xmax; ++n)
                rec.check(q[i][n] <= q[i + 1][n], [&] { return "k=" + std::to_string(i + 2) + " x=" + std::to_string(n); });
        }
        out.checks.push_back(rec.done());
    }
    {
        Recorder rec("sums_bounded_by_ideal_count");
        for (int k = 1; k <= kmax; ++k) {
            auto m = cumulative_sums(field, functions::mobius(k), xmax, threads);
            auto l = cumulative_sums(field, functions::liouville(k), xmax, threads);
            for (uint64_t n = 1; n <= xmax; ++n) {
                rec.check(std::abs(m[n]) <= counter.at(n) && std::abs(l[n]) <= counter.at(n),
                          [&] { return "k=" + std::to_string(k) + " x=" + std::to_string(n); });
            }
        }
        out.checks.push_back(rec.done());
    }
    {
        Recorder rec("coprime_count_mobius_formula");
        const uint64_t xc = std::min<uint64_t>(xmax, 10'000);
        for (const auto& a : ideals) {
            if (a.norm() > 200) break;
            std::vector<int64_t> direct(xc + 1, 0);
            for (const auto& c : ideals) {
                if (c.norm() > xc) break;
                if (coprime(a, c)) ++direct[c.norm()];
            }
            for (uint64_t n = 1; n <= xc; ++n) direct[n] += direct[n - 1];
            const auto divs = divisors(a);
            for (uint64_t x = 1; x <= xc; ++x) {
                int64_t formula = 0;
                for (const auto& e : divs) {
                    int m = mu_1(e);
                    if (m) formula += m * counter.at(x / e.norm());
                }
                rec.check(formula == direct[x], [&] { return "A=" + ideal_str(a) + " x=" + std::to_string(x); });
            }
            rec.check(ideal_count_coprime(field, static_cast<double>(xc), a) == direct[xc],
                      [&] { return "sieve A=" + ideal_str(a); });
        }
        out.checks.push_back(rec.done());
    }
    return out;
}

SuiteResult run_suite(const std::string& suite, const FieldSpec& field, uint64_t xmax, int kmax, unsigned threads)
{
    if (suite == "identities") return verify_identities(field, xmax, kmax, threads);
    if (suite == "counting") return verify_counting(field, xmax, kmax, threads);
    throw std::invalid_argument("unknown suite `" + suite + "` (expected identities or counting)");
}

} // namespace idealfunc
