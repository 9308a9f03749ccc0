#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "idealfunc/analytic.hpp"
#include "idealfunc/arith.hpp"
#include "idealfunc/ideals.hpp"

namespace idealfunc {

enum class SumFunction { mobius, liouville, qfree, ideals };

// M, L, Q, or I for [x]_F
char tag(SumFunction fn);
SumFunction parse_sum_function(const std::string& name);
ArithmeticFunction function_for(SumFunction fn, int k);

// Exact partial sums over ideals of norm <= x, through the norm sieve.
int64_t mertens_k(const FieldSpec& field, int k, double x, unsigned threads = 1);
int64_t liouville_sum_k(const FieldSpec& field, int k, double x, unsigned threads = 1);
int64_t qfree_count(const FieldSpec& field, int k, double x, unsigned threads = 1);
int64_t summatory(const FieldSpec& field, SumFunction fn, int k, double x, unsigned threads = 1);

// reference route: evaluate f on every ideal of the enumeration stream
int64_t summatory_by_stream(const FieldSpec& field, const ArithmeticFunction& f, double x);

// S(n) = sum_{N(A) <= n} f(A) for n = 0..X
std::vector<int64_t> cumulative_sums(const FieldSpec& field, const ArithmeticFunction& f, uint64_t X,
                                     unsigned threads = 1);

// S(x) at each grid point in one pass; grid must be strictly increasing
std::vector<int64_t> partial_sums_on_grid(const FieldSpec& field, const ArithmeticFunction& f,
                                          const std::vector<double>& grid, unsigned threads = 1);

// Q_k(x) = sum_{N(D) <= x^(1/k)} mu_1(D) [x / N(D)^k]_F, with the ideal counts
// and the norm-aggregated mu_1 coefficients tabulated once up to X.
class QfreeFastCounter
{
public:
    QfreeFastCounter(const FieldSpec& field, int k, uint64_t X, unsigned threads = 1);

    int64_t operator()(uint64_t x) const;
    uint64_t limit() const { return counter_.limit(); }

private:
    int                  k_;
    IdealCounter         counter_;
    std::vector<int64_t> mobius_;  // c_{mu_1}(n), n <= X^(1/k)
};

int64_t qfree_count_fast(const FieldSpec& field, int k, double x, unsigned threads = 1);

// R(x) = [x]_F - c_F x
double remainder_R(const FieldSpec& field, double x, const EvalOptions& opts = {});

struct Normalization
{
    std::string tag;    // e.g. "x^(1/2)*log(x)"
    double      scale;  // value of the normalizer at x
    double      value;  // remainder / scale
};

struct SummatoryReport
{
    std::string                field;
    char                       fn = 'M';
    int                        k = 1;
    double                     x = 0;
    int64_t                    raw = 0;
    double                     main = 0;
    double                     remainder = 0;
    std::vector<Normalization> normalizations;
};

enum class ReportKind { theorem1, theorem2, theorem3, ideal_count };

SummatoryReport theorem1_report(const FieldSpec& field, int k, double x, const EvalOptions& opts = {});
SummatoryReport theorem2_report(const FieldSpec& field, int k, double x, const EvalOptions& opts = {});
SummatoryReport theorem3_report(const FieldSpec& field, int k, double x, const EvalOptions& opts = {});
// remainder of [x]_F - c_F x normalized by x^((d-1)/(d+1))
SummatoryReport ideal_count_report(const FieldSpec& field, double x, const EvalOptions& opts = {});

// one report per grid point from a single sieve pass
std::vector<SummatoryReport> sweep(ReportKind kind, const FieldSpec& field, int k, const std::vector<double>& grid,
                                   const EvalOptions& opts = {});

// `points` values from a to b, geometrically spaced, rounded to integers,
// duplicates dropped
std::vector<double> geometric_grid(double a, double b, int points);

// the (d, k) case table for Q_k remainders
Normalization theorem3_normalizer(int degree, int k, double x);

extern const char* const report_csv_header;
// one CSV row per normalization
std::string report_csv_rows(const SummatoryReport& r);

} // namespace idealfunc
