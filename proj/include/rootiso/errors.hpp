#pragma once

#include <stdexcept>
#include <string>

namespace rootiso {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exponent left the machine-word range. The subdivision algorithms keep
// exponents tiny relative to the word size, so this signals a bug or a
// pathological input, never a condition to recover from silently.
struct ExponentOverflowError : Error {
    ExponentOverflowError() : Error("dyadic exponent out of machine-word range") {}
};

// Division by an enclosure that contains zero. The caller must refine the
// operand first; interval arithmetic cannot produce a meaningful quotient.
struct IntervalDivisionError : Error {
    IntervalDivisionError() : Error("interval division by an enclosure containing 0") {}
};

// Working precision exceeded the configured cap without reaching a decision.
// For the solver this usually means the input is not square-free on the
// region (or an endpoint of a user-supplied region is a root).
struct PrecisionCapError : Error {
    PrecisionCapError(std::string what, bool at_endpoint = false)
        : Error(std::move(what)), endpoint(at_endpoint) {}
    bool endpoint = false;
};

// Input cannot be processed at all (zero leading coefficient up to the
// precision cap, empty polynomial, ...).
struct DegenerateInputError : Error {
    using Error::Error;
};

// An operation that requires exactly representable (dyadic) coefficients
// was handed a bitstream oracle.
struct ExactInputRequiredError : Error {
    using Error::Error;
};

// Verification oracle detected a non-square-free input.
struct NonSquareFreeError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(std::string what, int line_no, int column_no)
        : Error(std::move(what)), line(line_no), column(column_no) {}
    int line = 0;
    int column = 0;
};

}  // namespace rootiso
