#include "idealfunc/summatory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "idealfunc/checked.hpp"
#include "idealfunc/format.hpp"
#include "idealfunc/parallel.hpp"

namespace idealfunc {

char tag(SumFunction fn)
{
    switch (fn) {
    case SumFunction::mobius:    return 'M';
    case SumFunction::liouville: return 'L';
    case SumFunction::qfree:     return 'Q';
    case SumFunction::ideals:    return 'I';
    }
    return '?';
}

SumFunction parse_sum_function(const std::string& name)
{
    if (name == "mobius") return SumFunction::mobius;
    if (name == "liouville") return SumFunction::liouville;
    if (name == "qfree") return SumFunction::qfree;
    if (name == "ideals") return SumFunction::ideals;
    throw std::invalid_argument("unknown function `" + name + "`");
}

ArithmeticFunction function_for(SumFunction fn, int k)
{
    switch (fn) {
    case SumFunction::mobius:    return functions::mobius(k);
    case SumFunction::liouville: return functions::liouville(k);
    case SumFunction::qfree:     return functions::qfree(k);
    case SumFunction::ideals:    return functions::one();
    }
    throw std::invalid_argument("function_for: bad function");
}

namespace {

uint64_t floor_norm(double x)
{
    if (!(x >= 1)) return 0;
    if (x >= 9.2e18) throw std::overflow_error("norm bound too large");
    return static_cast<uint64_t>(std::floor(x));
}

double log_factor(double x)
{
    return x < std::numbers::e ? 1.0 : std::log(x);
}

size_t segment_count(uint64_t limit)
{
    return (limit + CoefficientSieve::segment_size - 1) / CoefficientSieve::segment_size;
}

} // namespace

std::vector<int64_t> partial_sums_on_grid(const FieldSpec& field, const ArithmeticFunction& f,
                                          const std::vector<double>& grid, unsigned threads)
{
    for (size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("grid values must be strictly increasing");
    }
    if (grid.empty()) return {};
    std::vector<uint64_t> bounds;
    for (double x : grid) bounds.push_back(floor_norm(x));
    const uint64_t limit = bounds.back();
    std::vector<int64_t> out(grid.size(), 0);
    if (limit == 0) return out;

    CoefficientSieve sieve(field, f.local_factor(), limit);
    const size_t segments = segment_count(limit);
    // bucket j collects norms in (bounds[j-1], bounds[j]]
    std::vector<std::vector<int64_t>> buckets(segments);
    parallel_for(segments, threads, [&](size_t s) {
        uint64_t lo = 1 + s * CoefficientSieve::segment_size;
        uint64_t hi = std::min(limit + 1, lo + CoefficientSieve::segment_size);
        std::vector<int64_t> c;
        sieve.segment(lo, hi, c);
        auto& b = buckets[s];
        b.assign(grid.size(), 0);
        size_t j = std::lower_bound(bounds.begin(), bounds.end(), lo) - bounds.begin();
        for (size_t i = 0; i < c.size(); ++i) {
            uint64_t n = lo + i;
            while (bounds[j] < n) ++j;
            b[j] = checked_add(b[j], c[i]);
        }
    });
    for (const auto& b : buckets) {
        for (size_t j = 0; j < grid.size(); ++j) out[j] = checked_add(out[j], b[j]);
    }
    for (size_t j = 1; j < out.size(); ++j) out[j] = checked_add(out[j], out[j - 1]);
    return out;
}

int64_t summatory(const FieldSpec& field, SumFunction fn, int k, double x, unsigned threads)
{
    if (fn == SumFunction::qfree && k < 2) throw std::invalid_argument("qfree needs k >= 2");
    return partial_sums_on_grid(field, function_for(fn, k), {x}, threads).front();
}

int64_t mertens_k(const FieldSpec& field, int k, double x, unsigned threads)
{
    return summatory(field, SumFunction::mobius, k, x, threads);
}

int64_t liouville_sum_k(const FieldSpec& field, int k, double x, unsigned threads)
{
    return summatory(field, SumFunction::liouville, k, x, threads);
}

int64_t qfree_count(const FieldSpec& field, int k, double x, unsigned threads)
{
    return summatory(field, SumFunction::qfree, k, x, threads);
}

int64_t summatory_by_stream(const FieldSpec& field, const ArithmeticFunction& f, double x)
{
    int64_t total = 0;
    IdealStream stream(field, x);
    while (auto a = stream.next()) total = checked_add(total, f(*a));
    return total;
}

std::vector<int64_t> cumulative_sums(const FieldSpec& field, const ArithmeticFunction& f, uint64_t X,
                                     unsigned threads)
{
    if (X == 0) return {0};
    auto c = CoefficientSieve(field, f.local_factor(), X).all(threads);
    for (size_t n = 1; n < c.size(); ++n) c[n] = checked_add(c[n], c[n - 1]);
    return c;
}

// ---------------------------------------------------------------- Q_k, fast

QfreeFastCounter::QfreeFastCounter(const FieldSpec& field, int k, uint64_t X, unsigned threads)
    : k_(k), counter_(field, X, threads)
{
    if (k < 2) throw std::invalid_argument("qfree_count_fast: k must be >= 2");
    uint64_t root = integer_root(X, k);
    mobius_ = root == 0 ? std::vector<int64_t>{0} : norm_coefficients(field, functions::mobius(1), root, threads);
}

int64_t QfreeFastCounter::operator()(uint64_t x) const
{
    if (x > limit()) throw std::out_of_range("QfreeFastCounter: x beyond table");
    int64_t total = 0;
    for (uint64_t n = 1; n < mobius_.size(); ++n) {
        uint64_t nk = checked_pow<uint64_t>(n, k_);
        if (nk > x) break;
        if (mobius_[n] != 0) total = checked_add(total, checked_mul(mobius_[n], counter_.at(x / nk)));
    }
    return total;
}

int64_t qfree_count_fast(const FieldSpec& field, int k, double x, unsigned threads)
{
    if (k < 2) throw std::invalid_argument("qfree_count_fast: k must be >= 2");
    uint64_t n = floor_norm(x);
    if (n == 0) return 0;
    // one streaming pass for the needed [n / N(D)^k]_F values instead of a
    // prefix table up to n
    const uint64_t root = integer_root(n, k);
    const auto mobius = norm_coefficients(field, functions::mobius(1), root, threads);
    std::vector<double> grid;
    for (uint64_t d = 1; d <= root; ++d)
        if (mobius[d] != 0) grid.push_back(static_cast<double>(n / checked_pow<uint64_t>(d, k)));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const auto counts = partial_sums_on_grid(field, functions::one(), grid, threads);
    int64_t total = 0;
    for (uint64_t d = 1; d <= root; ++d) {
        if (mobius[d] == 0) continue;
        const double q = static_cast<double>(n / checked_pow<uint64_t>(d, k));
        const auto at = std::lower_bound(grid.begin(), grid.end(), q) - grid.begin();
        total = checked_add(total, checked_mul(mobius[d], counts[at]));
    }
    return total;
}

double remainder_R(const FieldSpec& field, double x, const EvalOptions& opts)
{
    return static_cast<double>(ideal_count(field, x, opts.threads)) - residue_c_F(field, opts).value * x;
}

// ---------------------------------------------------------------- reports

Normalization theorem3_normalizer(int d, int k, double x)
{
    if (d == 1) return {"x^(1/" + std::to_string(k) + ")", std::pow(x, 1.0 / k), 0};
    if (d == 2 && k == 2) return {"x^(1/2)", std::sqrt(x), 0};
    if (d == 2 && k == 3) return {"x^(1/3)*log(x)", std::cbrt(x) * log_factor(x), 0};
    if (d == 3 && k == 2) return {"x^(1/2)*log(x)", std::sqrt(x) * log_factor(x), 0};
    return {"x^(" + std::to_string(d - 1) + "/" + std::to_string(d + 1) + ")",
            std::pow(x, static_cast<double>(d - 1) / (d + 1)), 0};
}

namespace {

// main-term slope and normalizers for one report kind, computed once
struct ReportPlan
{
    ReportKind  kind;
    SumFunction fn;
    int         k;
    int         degree;
    double      slope = 0;

    std::vector<Normalization> normalizers(double x) const
    {
        switch (kind) {
        case ReportKind::theorem1:
            return {{"x^(1/" + std::to_string(k) + ")*log(x)", std::pow(x, 1.0 / k) * log_factor(x), 0}};
        case ReportKind::theorem2:
            return {{"x*exp(-sqrt(log(x)))", x * std::exp(-std::sqrt(std::log(std::max(x, 1.0)))), 0},
                    {"x^0.6", std::pow(x, 0.6), 0}};
        case ReportKind::theorem3:
            return {theorem3_normalizer(degree, k, x)};
        case ReportKind::ideal_count:
            return {{"x^(" + std::to_string(degree - 1) + "/" + std::to_string(degree + 1) + ")",
                     std::pow(x, static_cast<double>(degree - 1) / (degree + 1)), 0}};
        }
        return {};
    }
};

ReportPlan make_plan(ReportKind kind, const FieldSpec& field, int k, const EvalOptions& opts)
{
    ReportPlan plan{kind, SumFunction::mobius, k, field.degree()};
    switch (kind) {
    case ReportKind::theorem1: {
        if (k < 2) throw std::invalid_argument("M_k report needs k >= 2");
        plan.fn = SumFunction::mobius;
        double c = residue_c_F(field, opts).value;
        double z = dedekind_zeta(field, k, opts).value;
        plan.slope = c / z * theorem1_constant(field, k, opts).value;
        break;
    }
    case ReportKind::theorem2:
        if (k < 1) throw std::invalid_argument("L_k report needs k >= 1");
        plan.fn = SumFunction::liouville;
        plan.slope = 0;
        break;
    case ReportKind::theorem3:
        if (k < 2) throw std::invalid_argument("Q_k report needs k >= 2");
        plan.fn = SumFunction::qfree;
        plan.slope = residue_c_F(field, opts).value / dedekind_zeta(field, k, opts).value;
        break;
    case ReportKind::ideal_count:
        plan.fn = SumFunction::ideals;
        plan.slope = residue_c_F(field, opts).value;
        break;
    }
    return plan;
}

SummatoryReport build(const ReportPlan& plan, const FieldSpec& field, double x, int64_t raw)
{
    SummatoryReport r;
    r.field = field.designation();
    r.fn = tag(plan.fn);
    r.k = plan.k;
    r.x = x;
    r.raw = raw;
    r.main = plan.slope * x;
    r.remainder = static_cast<double>(raw) - r.main;
    r.normalizations = plan.normalizers(x);
    // the L_k probes are stated for |L_k(x)|; the other reports keep the sign
    const bool absolute = plan.fn == SumFunction::liouville;
    for (auto& n : r.normalizations) n.value = (absolute ? std::abs(r.remainder) : r.remainder) / n.scale;
    return r;
}

} // namespace

std::vector<SummatoryReport> sweep(ReportKind kind, const FieldSpec& field, int k, const std::vector<double>& grid,
                                   const EvalOptions& opts)
{
    for (double x : grid) {
        if (!(x >= 1)) throw std::invalid_argument("report grid values must be >= 1");
    }
    const ReportPlan plan = make_plan(kind, field, k, opts);
    const auto raw = partial_sums_on_grid(field, function_for(plan.fn, kind == ReportKind::ideal_count ? 1 : k), grid,
                                          opts.threads);
    std::vector<SummatoryReport> out;
    for (size_t i = 0; i < grid.size(); ++i) out.push_back(build(plan, field, grid[i], raw[i]));
    return out;
}

SummatoryReport theorem1_report(const FieldSpec& field, int k, double x, const EvalOptions& opts)
{
    return sweep(ReportKind::theorem1, field, k, {x}, opts).front();
}

SummatoryReport theorem2_report(const FieldSpec& field, int k, double x, const EvalOptions& opts)
{
    return sweep(ReportKind::theorem2, field, k, {x}, opts).front();
}

SummatoryReport theorem3_report(const FieldSpec& field, int k, double x, const EvalOptions& opts)
{
    return sweep(ReportKind::theorem3, field, k, {x}, opts).front();
}

SummatoryReport ideal_count_report(const FieldSpec& field, double x, const EvalOptions& opts)
{
    return sweep(ReportKind::ideal_count, field, 1, {x}, opts).front();
}

std::vector<double> geometric_grid(double a, double b, int points)
{
    if (points < 0) throw std::invalid_argument("grid: negative point count");
    if (points == 0) return {};
    if (!(a >= 1) || !(b >= a)) throw std::invalid_argument("grid: need 1 <= a <= b");
    std::vector<double> out;
    for (int i = 0; i < points; ++i) {
        double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        double x = std::round(a * std::pow(b / a, t));
        if (i == points - 1) x = std::round(b);
        if (out.empty() || x > out.back()) out.push_back(x);
    }
    return out;
}

const char* const report_csv_header = "field,fn,k,x,raw,main,remainder,normalizer,normalized";

std::string report_csv_rows(const SummatoryReport& r)
{
    std::string out;
    for (const auto& n : r.normalizations) {
        out += r.field + ',' + r.fn + ',' + std::to_string(r.k) + ',' + format_number(r.x) + ',' +
               std::to_string(r.raw) + ',' + format_number(r.main) + ',' + format_number(r.remainder) + ',' + n.tag +
               ',' + format_number(n.value) + '\n';
    }
    return out;
}

} // namespace idealfunc
