#pragma once
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace idealfunc {

// A prime ideal identified by the rational prime below it, its residue
// degree and an index among the prime ideals above the same p.
struct PrimeIdealLabel
{
    uint64_t p = 0;
    int      f = 1;      // residue degree
    int      index = 0;  // conjugate index, 0-based, ordered by f
    uint64_t norm = 0;   // p^f

    friend bool operator==(const PrimeIdealLabel&, const PrimeIdealLabel&) = default;
};

// canonical order inside a factorization: rational prime, then index
inline bool canonical_less(const PrimeIdealLabel& a, const PrimeIdealLabel& b)
{
    return a.p != b.p ? a.p < b.p : a.index < b.index;
}

enum class SplittingType { split, inert, ramified, degree1 };

const char* to_string(SplittingType t);

// One row of an external prime-ideal table: `multiplicity` prime ideals of
// residue degree f and ramification index e above p.
struct PrimeTableRow
{
    uint64_t p;
    int      f;
    int      e;
    int      multiplicity;
};

// Externally supplied decomposition data, complete for every prime <= max_prime.
class PrimeTable
{
public:
    explicit PrimeTable(std::vector<PrimeTableRow> rows);

    static PrimeTable parse(const std::string& text);
    static PrimeTable load(const std::string& path);

    int degree() const { return degree_; }
    uint64_t max_prime() const { return max_prime_; }

    // residue degrees of the prime ideals above p, ascending; throws if p is
    // outside the table coverage
    const std::vector<int>& residue_degrees(uint64_t p) const;

    const std::vector<PrimeTableRow>& rows() const { return rows_; }

private:
    std::vector<PrimeTableRow>           rows_;
    std::map<uint64_t, std::vector<int>> degrees_;
    int                                  degree_ = 0;
    uint64_t                             max_prime_ = 0;
};

// A rational or quadratic number field, or a field described by a prime table.
class FieldSpec
{
public:
    int degree() const { return degree_; }
    // squarefree m with F = Q(sqrt m); absent for Q and table fields
    std::optional<int64_t> radicand() const { return m_; }
    // fundamental discriminant for d <= 2 (1 for Q); 0 for table fields
    int64_t discriminant() const { return disc_; }
    const std::string& label() const { return label_; }
    // designation string that parses back to this field
    const std::string& designation() const { return designation_; }

    bool is_tabulated() const { return table_ != nullptr; }
    const PrimeTable* table() const { return table_.get(); }

    // ascending residue degrees of the prime ideals above p (p prime)
    std::vector<int> residue_degrees(uint64_t p) const;

    // Small integer classifying how p decomposes; primes with equal class have
    // equal residue-degree multisets. Classes are dense, starting at 0.
    int split_class(uint64_t p) const;
    // residue degrees for a class id
    const std::vector<int>& class_degrees(int cls) const { return classes_.at(cls); }
    int class_count() const { return static_cast<int>(classes_.size()); }

    // largest rational prime the field can decompose (unbounded for d <= 2)
    uint64_t prime_coverage() const;

    friend FieldSpec make_rational_field();
    friend FieldSpec make_quadratic_field(int64_t m);
    friend FieldSpec make_table_field(PrimeTable table, std::string designation);

private:
    FieldSpec() = default;

    int                               degree_ = 1;
    std::optional<int64_t>            m_;
    int64_t                           disc_ = 1;
    std::string                       label_;
    std::string                       designation_;
    std::shared_ptr<const PrimeTable> table_;
    std::vector<std::vector<int>>     classes_;
    std::map<uint64_t, int>           table_class_;
};

FieldSpec make_rational_field();
// throws std::invalid_argument unless m is squarefree and m not in {0, 1}
FieldSpec make_quadratic_field(int64_t m);
FieldSpec make_table_field(PrimeTable table, std::string designation = "table");

// `q`, `q:<m>` or `table:<path>`; throws std::invalid_argument
FieldSpec parse_field(const std::string& designation);

// Kronecker symbol (D/n) for n >= 1
int kronecker_symbol(int64_t D, uint64_t n);

bool is_squarefree(int64_t m);
bool is_prime(uint64_t n);

// throws for table fields
SplittingType split_prime(const FieldSpec& field, uint64_t p);

// prime ideals above p in canonical order
std::vector<PrimeIdealLabel> primes_above(const FieldSpec& field, uint64_t p);

// all prime ideals of norm <= X sorted by (norm, p, index)
std::vector<PrimeIdealLabel> primes_with_norm_up_to(const FieldSpec& field, double X);

// rational primes <= n
std::vector<uint64_t> primes_up_to(uint64_t n);

// floor(n^(1/k)), exact
uint64_t integer_root(uint64_t n, int k);

} // namespace idealfunc
