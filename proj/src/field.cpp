#include "idealfunc/field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace idealfunc {

const char* to_string(SplittingType t)
{
    switch (t) {
    case SplittingType::split:    return "split";
    case SplittingType::inert:    return "inert";
    case SplittingType::ramified: return "ramified";
    case SplittingType::degree1:  return "degree1";
    }
    return "?";
}

bool is_prime(uint64_t n)
{
    if (n < 2) return false;
    for (uint64_t d : {2u, 3u, 5u, 7u}) {
        if (n % d == 0) return n == d;
    }
    for (uint64_t d = 11; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

bool is_squarefree(int64_t m)
{
    if (m == 0) return false;
    uint64_t n = m < 0 ? uint64_t(-(m + 1)) + 1 : uint64_t(m);
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return false;
        }
    }
    return true;
}

std::vector<uint64_t> primes_up_to(uint64_t n)
{
    std::vector<uint64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

uint64_t integer_root(uint64_t n, int k)
{
    if (k <= 0) throw std::invalid_argument("integer_root: k must be positive");
    if (k == 1 || n < 2) return n;
    auto r = static_cast<uint64_t>(std::pow(static_cast<long double>(n), 1.0L / k));
    // r^k <= n, without overflow
    auto fits = [&](uint64_t c) {
        unsigned __int128 v = 1;
        for (int i = 0; i < k; ++i) {
            v *= c;
            if (v > n) return false;
        }
        return true;
    };
    while (r > 0 && !fits(r)) --r;
    while (fits(r + 1)) ++r;
    return r;
}

namespace {

// Jacobi symbol (a/n), n odd positive
int jacobi(int64_t a, uint64_t n)
{
    int64_t r = a % static_cast<int64_t>(n);
    if (r < 0) r += static_cast<int64_t>(n);
    uint64_t x = static_cast<uint64_t>(r);
    int sign = 1;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            uint64_t m8 = n % 8;
            if (m8 == 3 || m8 == 5) sign = -sign;
        }
        std::swap(x, n);
        if (x % 4 == 3 && n % 4 == 3) sign = -sign;
        x %= n;
    }
    return n == 1 ? sign : 0;
}

int kronecker_two(int64_t D)
{
    if (D % 2 == 0) return 0;
    int64_t r = ((D % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
}

} // namespace

int kronecker_symbol(int64_t D, uint64_t n)
{
    if (n == 0) throw std::invalid_argument("kronecker_symbol: n must be positive");
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        result *= kronecker_two(D);
        if (result == 0) return 0;
    }
    if (n == 1) return result;
    return result * jacobi(D, n);
}

// ---------------------------------------------------------------- PrimeTable

PrimeTable::PrimeTable(std::vector<PrimeTableRow> rows) : rows_(std::move(rows))
{
    if (rows_.empty()) throw std::invalid_argument("prime table: no rows");
    std::map<uint64_t, int> weight;
    for (const auto& r : rows_) {
        if (!is_prime(r.p)) throw std::invalid_argument("prime table: " + std::to_string(r.p) + " is not prime");
        if (r.f < 1 || r.e < 1 || r.multiplicity < 1)
            throw std::invalid_argument("prime table: f, e, multiplicity must be positive");
        auto& deg = degrees_[r.p];
        for (int i = 0; i < r.multiplicity; ++i) deg.push_back(r.f);
        weight[r.p] += r.e * r.f * r.multiplicity;
    }
    degree_ = weight.begin()->second;
    for (auto& [p, w] : weight) {
        if (w != degree_)
            throw std::invalid_argument("prime table: sum of e*f at p=" + std::to_string(p) +
                                        " is " + std::to_string(w) + ", expected " + std::to_string(degree_));
    }
    for (auto& [p, deg] : degrees_) std::sort(deg.begin(), deg.end());
    max_prime_ = degrees_.rbegin()->first;
    for (uint64_t p : primes_up_to(max_prime_)) {
        if (!degrees_.count(p))
            throw std::invalid_argument("prime table: missing prime " + std::to_string(p));
    }
}

PrimeTable PrimeTable::parse(const std::string& text)
{
    std::vector<PrimeTableRow> rows;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        PrimeTableRow r{};
        if (!(ls >> r.p)) continue;
        if (!(ls >> r.f >> r.e >> r.multiplicity))
            throw std::invalid_argument("prime table line " + std::to_string(lineno) + ": expected `p f e multiplicity`");
        std::string extra;
        if (ls >> extra)
            throw std::invalid_argument("prime table line " + std::to_string(lineno) + ": trailing input");
        rows.push_back(r);
    }
    return PrimeTable(std::move(rows));
}

PrimeTable PrimeTable::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open prime table " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const std::vector<int>& PrimeTable::residue_degrees(uint64_t p) const
{
    auto it = degrees_.find(p);
    if (it == degrees_.end()) {
        if (p > max_prime_)
            throw std::out_of_range("prime " + std::to_string(p) + " beyond table coverage " + std::to_string(max_prime_));
        throw std::invalid_argument(std::to_string(p) + " is not prime");
    }
    return it->second;
}

// ---------------------------------------------------------------- FieldSpec

namespace {

// class ids for d <= 2
constexpr int class_one = 0;    // {1}: Q, ramified
constexpr int class_split = 1;  // {1,1}
constexpr int class_inert = 2;  // {2}

} // namespace

FieldSpec make_rational_field()
{
    FieldSpec f;
    f.degree_ = 1;
    f.disc_ = 1;
    f.label_ = "Q";
    f.designation_ = "q";
    f.classes_ = {{1}};
    return f;
}

FieldSpec make_quadratic_field(int64_t m)
{
    if (m == 0 || m == 1) throw std::invalid_argument("quadratic field: m must not be 0 or 1");
    if (!is_squarefree(m)) throw std::invalid_argument("quadratic field: m=" + std::to_string(m) + " is not squarefree");
    FieldSpec f;
    f.degree_ = 2;
    f.m_ = m;
    int64_t r = ((m % 4) + 4) % 4;
    f.disc_ = r == 1 ? m : 4 * m;
    f.label_ = "Q(sqrt(" + std::to_string(m) + "))";
    f.designation_ = "q:" + std::to_string(m);
    f.classes_ = {{1}, {1, 1}, {2}};
    return f;
}

FieldSpec make_table_field(PrimeTable table, std::string designation)
{
    FieldSpec f;
    f.degree_ = table.degree();
    f.disc_ = 0;
    f.label_ = "tabulated degree-" + std::to_string(table.degree()) + " field";
    f.designation_ = std::move(designation);
    std::map<std::vector<int>, int> ids;
    for (const auto& row : table.rows()) {
        const auto& deg = table.residue_degrees(row.p);
        auto [it, inserted] = ids.emplace(deg, static_cast<int>(f.classes_.size()));
        if (inserted) f.classes_.push_back(deg);
        f.table_class_[row.p] = it->second;
    }
    f.table_ = std::make_shared<const PrimeTable>(std::move(table));
    return f;
}

FieldSpec parse_field(const std::string& designation)
{
    if (designation == "q") return make_rational_field();
    if (designation.rfind("q:", 0) == 0) {
        const std::string num = designation.substr(2);
        size_t pos = 0;
        long long m = 0;
        try {
            m = std::stoll(num, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad field designation `" + designation + "`");
        }
        if (pos != num.size()) throw std::invalid_argument("bad field designation `" + designation + "`");
        return make_quadratic_field(m);
    }
    if (designation.rfind("table:", 0) == 0)
        return make_table_field(PrimeTable::load(designation.substr(6)), designation);
    throw std::invalid_argument("bad field designation `" + designation + "` (expected q, q:<m> or table:<path>)");
}

int FieldSpec::split_class(uint64_t p) const
{
    if (table_) {
        auto it = table_class_.find(p);
        if (it == table_class_.end()) {
            table_->residue_degrees(p);  // throws with a coverage message
            throw std::invalid_argument(std::to_string(p) + " is not prime");
        }
        return it->second;
    }
    if (degree_ == 1) return class_one;
    switch (kronecker_symbol(disc_, p)) {
    case 1:  return class_split;
    case -1: return class_inert;
    default: return class_one;
    }
}

std::vector<int> FieldSpec::residue_degrees(uint64_t p) const
{
    return classes_[split_class(p)];
}

uint64_t FieldSpec::prime_coverage() const
{
    return table_ ? table_->max_prime() : UINT64_MAX;
}

SplittingType split_prime(const FieldSpec& field, uint64_t p)
{
    if (field.is_tabulated()) throw std::invalid_argument("split_prime: tabulated fields have no splitting type");
    if (field.degree() == 1) return SplittingType::degree1;
    switch (kronecker_symbol(field.discriminant(), p)) {
    case 1:  return SplittingType::split;
    case -1: return SplittingType::inert;
    default: return SplittingType::ramified;
    }
}

std::vector<PrimeIdealLabel> primes_above(const FieldSpec& field, uint64_t p)
{
    std::vector<PrimeIdealLabel> out;
    const auto& degs = field.class_degrees(field.split_class(p));
    for (size_t i = 0; i < degs.size(); ++i) {
        uint64_t norm = 1;
        for (int j = 0; j < degs[i]; ++j) {
            if (__builtin_mul_overflow(norm, p, &norm)) throw std::overflow_error("prime ideal norm overflow");
        }
        out.push_back({p, degs[i], static_cast<int>(i), norm});
    }
    return out;
}

std::vector<PrimeIdealLabel> primes_with_norm_up_to(const FieldSpec& field, double X)
{
    std::vector<PrimeIdealLabel> out;
    if (!(X >= 2)) return out;
    auto bound = static_cast<uint64_t>(std::floor(X));
    if (bound > field.prime_coverage())
        throw std::out_of_range("norm bound " + std::to_string(bound) + " beyond table coverage " +
                                std::to_string(field.prime_coverage()));
    for (uint64_t p : primes_up_to(bound)) {
        for (const auto& label : primes_above(field, p)) {
            if (label.norm <= bound) out.push_back(label);
        }
    }
    std::sort(out.begin(), out.end(), [](const PrimeIdealLabel& a, const PrimeIdealLabel& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        return canonical_less(a, b);
    });
    return out;
}

} // namespace idealfunc
