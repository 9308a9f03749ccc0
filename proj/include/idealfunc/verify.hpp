#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "idealfunc/field.hpp"

namespace idealfunc {

struct CheckResult
{
    std::string name;
    uint64_t    tested = 0;
    uint64_t    failures = 0;
    std::string first_failure;
};

struct SuiteResult
{
    std::string              suite;
    std::string              field;
    std::vector<CheckResult> checks;

    bool passed() const;
    // one line per check
    std::string summary() const;
};

// exact identities over every ideal of norm <= xmax, orders up to kmax
SuiteResult verify_identities(const FieldSpec& field, uint64_t xmax, int kmax, unsigned threads = 1);
// counting identities: enumeration vs sieve, coefficient identity, the fast
// Q_k formula at every integer x <= xmax, coprime counting
SuiteResult verify_counting(const FieldSpec& field, uint64_t xmax, int kmax, unsigned threads = 1);

// `identities` or `counting`; throws std::invalid_argument otherwise
SuiteResult run_suite(const std::string& suite, const FieldSpec& field, uint64_t xmax, int kmax, unsigned threads = 1);

} // namespace idealfunc
