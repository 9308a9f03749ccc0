#include <doctest.h>

#include <algorithm>
#include <set>

#include "idealfunc/arith.hpp"
#include "idealfunc/ideals.hpp"
#include "oracles.hpp"

using namespace idealfunc;

namespace {

const std::vector<std::string> builtin = {"q", "q:-1", "q:-5", "q:2", "q:5"};

PrimeIdealLabel label(const FieldSpec& f, uint64_t p, int index = 0) { return primes_above(f, p).at(index); }

std::vector<uint64_t> norms_of(const std::vector<IdealFactorization>& list)
{
    std::vector<uint64_t> out;
    for (const auto& a : list) out.push_back(a.norm());
    return out;
}

} // namespace

TEST_CASE("factorization algebra")
{
    auto f = make_quadratic_field(-1);
    const auto P = IdealFactorization::prime(label(f, 5, 0));
    const auto Q = IdealFactorization::prime(label(f, 5, 1));
    const auto R = IdealFactorization::prime(label(f, 3));
    const IdealFactorization O;

    CHECK(O.is_unit());
    CHECK(O.norm() == 1);
    CHECK(O.to_string() == "1");
    CHECK(multiply(O, R) == R);
    CHECK(multiply(power(P, 2), P) == power(P, 3));
    auto PQ_PR = multiply(multiply(P, Q), multiply(P, R));
    CHECK(PQ_PR.exponent_of(P.factors()[0].prime) == 2);
    CHECK(PQ_PR.norm() == 25 * 5 * 9);
    CHECK(PQ_PR.to_string() == "3^1[2,0]*5^2[1,0]*5^1[1,1]");

    CHECK(divides(O, PQ_PR));
    CHECK_FALSE(divides(power(P, 2), P));
    CHECK(divides(multiply(P, Q), multiply(power(P, 2), power(Q, 3))));
    CHECK(quotient(PQ_PR, O) == PQ_PR);
    CHECK(quotient(power(P, 3), P) == power(P, 2));
    CHECK_THROWS_AS(quotient(P, Q), std::invalid_argument);

    CHECK(divisors(O).size() == 1);
    CHECK(divisors(power(P, 2)) == std::vector<IdealFactorization>{O, P, power(P, 2)});
    CHECK(divisors(multiply(power(P, 2), Q)).size() == 6);
    CHECK(coprime(O, P));
    CHECK_FALSE(coprime(P, power(P, 2)));
    CHECK(coprime(P, Q));

    CHECK(power_divisors(multiply(power(P, 5), power(Q, 2)), 2).size() == 3 * 2);
    CHECK(power(P, 0).is_unit());
}

TEST_CASE("factorizations canonicalize and check norms")
{
    auto f = make_rational_field();
    auto two = label(f, 2), three = label(f, 3);
    auto a = IdealFactorization::from_factors({{three, 1}, {two, 2}, {three, 1}});
    CHECK(a.norm() == 36);
    CHECK(a.factors().front().prime == two);
    CHECK(a.exponent_of(three) == 2);
    CHECK_THROWS(IdealFactorization::from_factors({{two, 0}}));
    CHECK_THROWS_AS(IdealFactorization::prime(two, 64), std::overflow_error);
    CHECK_THROWS_AS(power(IdealFactorization::prime(two, 40), 2), std::overflow_error);
}

TEST_CASE("divisor lattice matches brute force over the rationals")
{
    auto q = make_rational_field();
    for (uint64_t n = 1; n <= 600; ++n) {
        auto a = ideals_of_norm(q, n).at(0);
        auto ds = divisors(a);
        std::vector<uint64_t> got = norms_of(ds), want;
        for (uint64_t d = 1; d <= n; ++d)
            if (n % d == 0) want.push_back(d);
        std::sort(got.begin(), got.end());
        CHECK(got == want);
        for (const auto& d : ds) CHECK(multiply(d, quotient(a, d)) == a);
    }
}

TEST_CASE("enumeration examples")
{
    auto q = collect_ideals(make_rational_field(), 10);
    CHECK(norms_of(q) == std::vector<uint64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    CHECK(norms_of(collect_ideals(make_quadratic_field(-1), 10)) ==
          std::vector<uint64_t>{1, 2, 4, 5, 5, 8, 9, 10, 10});
    for (const auto& s : builtin) {
        auto one = collect_ideals(parse_field(s), 1);
        REQUIRE(one.size() == 1);
        CHECK(one[0].is_unit());
        CHECK(collect_ideals(parse_field(s), 0.5).empty());
    }
}

TEST_CASE("Gaussian ideal counts match lattice points")
{
    auto counts = ideal_norm_counts(make_quadratic_field(-1), 3000);
    for (int64_t n = 1; n <= 3000; ++n) CHECK_MESSAGE(counts[n] == oracle::gaussian_ideals_of_norm(n), "n=" << n);
}

TEST_CASE("quadratic ideal counts match square roots of D modulo 4n")
{
    for (int64_t m : {-1, -5, 2, 5, -3}) {
        auto f = make_quadratic_field(m);
        auto counts = ideal_norm_counts(f, 10'000);
        for (int64_t n = 1; n <= 10'000; ++n)
            REQUIRE_MESSAGE(counts[n] == oracle::quadratic_ideals_of_norm(f.discriminant(), n), "m=" << m << " n=" << n);
    }
}

TEST_CASE("ideal counts equal the character divisor sum")
{
    for (int64_t m : {-1, -5, 2, 5}) {
        auto f = make_quadratic_field(m);
        auto counts = ideal_norm_counts(f, 10'000);
        for (uint64_t n = 1; n <= 10'000; ++n) {
            int64_t s = 0;
            for (uint64_t d = 1; d * d <= n; ++d) {
                if (n % d) continue;
                s += kronecker_symbol(f.discriminant(), d);
                if (d * d != n) s += kronecker_symbol(f.discriminant(), n / d);
            }
            REQUIRE(counts[n] == s);
        }
    }
}

TEST_CASE("stream is ordered, complete and consistent with the sieve")
{
    for (const auto& s : builtin) {
        auto f = parse_field(s);
        auto list = collect_ideals(f, 20'000);
        CHECK(static_cast<int64_t>(list.size()) == ideal_count(f, 20'000));
        auto counts = ideal_norm_counts(f, 20'000);
        std::vector<int64_t> seen(20'001, 0);
        for (size_t i = 0; i < list.size(); ++i) {
            uint64_t n = 1;
            for (const auto& fac : list[i].factors()) {
                CHECK(fac.exponent >= 1);
                for (int e = 0; e < fac.exponent; ++e) n *= fac.prime.norm;
            }
            CHECK(n == list[i].norm());
            ++seen[n];
            if (i > 0) CHECK(ideal_order_less(list[i - 1], list[i]));
        }
        CHECK(seen == counts);
    }
}

TEST_CASE("stream output does not depend on the segment size")
{
    for (const auto& s : {"q:-1", "q:5"}) {
        auto f = parse_field(s);
        auto reference = collect_ideals(f, 5000);
        for (uint64_t seg : {1u, 7u, 100u, 4096u}) {
            IdealStream stream(f, 5000, seg);
            std::vector<IdealFactorization> got;
            while (auto a = stream.next()) got.push_back(*a);
            CHECK(got == reference);
        }
    }
}

TEST_CASE("ideals of a given norm")
{
    auto f = make_quadratic_field(-1);
    CHECK(ideals_of_norm(f, 1).size() == 1);
    CHECK(ideals_of_norm(f, 3).empty());
    CHECK(ideals_of_norm(f, 25).size() == 3);
    CHECK(ideals_of_norm(f, 0).empty());
}

TEST_CASE("ideal counting")
{
    CHECK(ideal_count(make_rational_field(), 1000) == 1000);
    CHECK(ideal_count(make_quadratic_field(-1), 10) == 9);
    for (const auto& s : builtin) {
        CHECK(ideal_count(parse_field(s), 0.5) == 0);
        CHECK(ideal_count(parse_field(s), 1) == 1);
    }
    auto f = make_quadratic_field(5);
    CHECK(ideal_count(f, 777'777, 1) == ideal_count(f, 777'777, 3));
    CHECK(ideal_count(f, 10.9) == ideal_count(f, 10));

    IdealCounter counter(f, 1000);
    CHECK(counter(1000) == ideal_count(f, 1000));
    CHECK(counter(0.3) == 0);
    CHECK_THROWS_AS(counter(1001), std::out_of_range);
}

TEST_CASE("coprime counting examples")
{
    auto q = make_rational_field();
    CHECK(ideal_count_coprime(q, 10, IdealFactorization::prime(label(q, 2))) == 5);
    auto gi = make_quadratic_field(-1);
    for (double X : {1.0, 10.0, 1234.0}) CHECK(ideal_count_coprime(gi, X, IdealFactorization()) == ideal_count(gi, X));
    // ideals of norm <= 10 prime to the ramified prime over 2 have norms 1, 5, 5, 9
    const auto P2 = IdealFactorization::prime(label(gi, 2));
    int64_t brute = 0;
    for (const auto& c : collect_ideals(gi, 10)) brute += coprime(c, P2);
    CHECK(brute == 4);
    CHECK(ideal_count_coprime(gi, 10, P2) == 4);
}

TEST_CASE("coprime counting equals brute-force filtering and the divisor formula")
{
    for (const auto& s : builtin) {
        auto f = parse_field(s);
        const double X = 3000;
        auto list = collect_ideals(f, X);
        IdealCounter counter(f, static_cast<uint64_t>(X));
        for (const auto& a : collect_ideals(f, 200)) {
            int64_t brute = 0;
            for (const auto& c : list) brute += coprime(c, a);
            int64_t formula = 0;
            for (const auto& e : divisors(a)) formula += mu_1(e) * counter(X / static_cast<double>(e.norm()));
            CHECK(ideal_count_coprime(f, X, a) == brute);
            CHECK(formula == brute);
        }
    }
}

TEST_CASE("local ideal counts")
{
    for (const auto& degrees : std::vector<std::vector<int>>{{1}, {1, 1}, {2}, {1, 2}, {3}, {1, 1, 1}})
        for (int a = 0; a <= 12; ++a) CHECK(local_ideal_count(degrees, a) == oracle::local_count(degrees, a));
}

TEST_CASE("tabulated cubic field counts")
{
    auto f = make_table_field(PrimeTable::parse(oracle::pure_cubic_table(3000)), "cubic");
    const uint64_t X = 2999;
    auto counts = ideal_norm_counts(f, X);
    // multiplicative expansion from the table's local factors
    for (uint64_t n = 1; n <= X; ++n) {
        uint64_t m = n;
        int64_t expected = 1;
        for (uint64_t p = 2; p <= m; ++p) {
            int a = 0;
            while (m % p == 0) m /= p, ++a;
            if (a) expected *= oracle::local_count(f.residue_degrees(p), a);
        }
        CHECK(counts[n] == expected);
    }
    auto list = collect_ideals(f, X);
    CHECK(static_cast<int64_t>(list.size()) == ideal_count(f, X));
    CHECK_THROWS_AS(ideal_count(f, 10'000), std::out_of_range);
}

TEST_CASE("norm sieve is deterministic across worker counts")
{
    for (const auto& s : builtin) {
        auto f = parse_field(s);
        CoefficientSieve sieve(f, functions::mobius(2).local_factor(), 300'000);
        CHECK(sieve.all(1) == sieve.all(4));
    }
}
