#pragma once
#include <cstdint>
#include <string>

#include "idealfunc/field.hpp"

namespace idealfunc {

enum class Method { euler_product, series, character_sum };

const char* to_string(Method m);
Method parse_method(const std::string& s);

struct EvalOptions
{
    double   rel_tol = 1e-9;
    uint64_t prime_cutoff = 10'000'000;  // upper limit for Euler products
    uint64_t series_cutoff = 1'000'000;  // terms in coefficient series
    unsigned threads = 1;
};

// value with |true - value| <= tail_bound
struct AnalyticValue
{
    double value = 0;
    double tail_bound = 0;
    Method method = Method::series;
};

// Hurwitz zeta(s, a) for real s > 1, 0 < a <= 1, by Euler-Maclaurin
AnalyticValue hurwitz_zeta(double s, double a);
AnalyticValue riemann_zeta(double s);

// zeta_F(s), s > 1 + 1e-3. Uses zeta(s) L(s, chi_D) for d <= 2 and an
// Euler product for tabulated fields.
AnalyticValue dedekind_zeta(const FieldSpec& field, double s, const EvalOptions& opts = {});
// Euler product over rational primes p <= cutoff, all prime ideals above p
AnalyticValue zeta_euler_product(const FieldSpec& field, double s, uint64_t prime_cutoff,
                                 double rel_tol = 0);
// sum_{n <= cutoff} a_F(n) n^-s with a divisor-function tail bound
AnalyticValue zeta_coefficient_series(const FieldSpec& field, double s, uint64_t cutoff, unsigned threads = 1);
// zeta(s) L(s, chi_D), d <= 2 only
AnalyticValue zeta_character_route(const FieldSpec& field, double s);

bool is_fundamental_discriminant(int64_t D);

// L(s, chi_D) for fundamental D != 1, s >= 1, through finite character sums
AnalyticValue dirichlet_L(int64_t D, double s, const EvalOptions& opts = {});
// partial sum to a multiple of |D| >= cutoff; tail bounded by max|S(t)| N^-s
AnalyticValue dirichlet_L_series(int64_t D, double s, uint64_t cutoff);

// residue of zeta_F at s = 1
AnalyticValue residue_c_F(const FieldSpec& field, const EvalOptions& opts = {});

// Euler factor of the M_k main-term constant at a prime ideal of norm N
double theorem1_euler_factor(uint64_t norm, int k);
// sum over A of mu_1(A) J_1(A) / (J_k(A) N(A)), as an Euler product
AnalyticValue theorem1_constant(const FieldSpec& field, int k, const EvalOptions& opts = {});

// sum_{N(A) <= X} lambda_{k-1}(A) / N(A)^s
double lambda_generating_partial(const FieldSpec& field, int k, double s, double X, unsigned threads = 1);

} // namespace idealfunc
