#pragma once

#include <stdexcept>
#include <string>

namespace dormant {

// Typed mathematical failures.  The CLI maps any math_error to exit code 1
// and reports {"error": code(), "detail": what()}; usage/parse problems are
// not math_errors and exit with code 2.
class math_error : public std::runtime_error {
public:
    math_error(std::string code, const std::string& detail)
        : std::runtime_error(detail), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define DORMANT_DEFINE_ERROR(cls, name)                               \
    class cls : public math_error {                                   \
    public:                                                           \
        explicit cls(const std::string& detail = "")                  \
            : math_error(name, detail.empty() ? name : detail) {}     \
    }

DORMANT_DEFINE_ERROR(integrality_violation, "IntegralityViolation");
DORMANT_DEFINE_ERROR(relation_failure, "RelationFailure");
DORMANT_DEFINE_ERROR(eta_not_divisible, "EtaNotDivisible");
DORMANT_DEFINE_ERROR(no_cyclic_vector, "NoCyclicVector");
DORMANT_DEFINE_ERROR(algorithm_stall, "AlgorithmStall");
DORMANT_DEFINE_ERROR(not_dormant, "NotDormant");
DORMANT_DEFINE_ERROR(not_regular_at_zero, "NotRegularAtZero");
DORMANT_DEFINE_ERROR(not_diagonalizable, "NotDiagonalizable");
DORMANT_DEFINE_ERROR(even_characteristic, "EvenCharacteristic");
DORMANT_DEFINE_ERROR(rank_out_of_range, "RankOutOfRange");
DORMANT_DEFINE_ERROR(descent_rank_deficient, "DescentRankDeficient");
DORMANT_DEFINE_ERROR(parity_error, "ParityError");
DORMANT_DEFINE_ERROR(search_budget_exceeded, "SearchBudgetExceeded");

#undef DORMANT_DEFINE_ERROR

}  // namespace dormant
