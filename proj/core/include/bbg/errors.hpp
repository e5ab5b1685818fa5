#pragma once

#include <stdexcept>
#include <string>

namespace bbg {

// Every failure mode gets its own type so callers can catch precisely;
// all of them are catchable as bbg::Error.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define BBG_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                       \
    public:                                                           \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

// graph_core
BBG_DEFINE_ERROR(ParamInconsistency);
BBG_DEFINE_ERROR(DegreeViolation);
BBG_DEFINE_ERROR(DuplicateEdge);
BBG_DEFINE_ERROR(IndexOutOfRange);

// oracle_enum
BBG_DEFINE_ERROR(InfeasibleMargins);
BBG_DEFINE_ERROR(SizeLimitExceeded);

// switching_ops
BBG_DEFINE_ERROR(AnchorPatternMismatch);
BBG_DEFINE_ERROR(InvalidSwitching);

// coupling_meta
BBG_DEFINE_ERROR(CompletionImpossible);
BBG_DEFINE_ERROR(NoValidSwitching);

// linstat_conc
BBG_DEFINE_ERROR(DomainError);
BBG_DEFINE_ERROR(DimensionMismatch);
BBG_DEFINE_ERROR(DegenerateRegime);
BBG_DEFINE_ERROR(NotUnitVector);
BBG_DEFINE_ERROR(NotMeanZero);

// spectra
BBG_DEFINE_ERROR(ConvergenceFailure);
BBG_DEFINE_ERROR(NonSquareParams);

// discrepancy
BBG_DEFINE_ERROR(EmptySubset);
BBG_DEFINE_ERROR(CapExceeded);

// sampler
BBG_DEFINE_ERROR(RejectionBudgetExceeded);
BBG_DEFINE_ERROR(RegimeRefused);

#undef BBG_DEFINE_ERROR

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& what)
        : Error("ParseError at line " + std::to_string(line) + ", col " +
                std::to_string(column) + ": " + what),
          line(line),
          column(column) {}
    int line;
    int column;
};

}  // namespace bbg
