#pragma once

#include <stdexcept>
#include <string>

namespace emlab {

// Base for all library errors. Catching emlab::Error catches everything the
// library throws deliberately; anything else escaping is a defect.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input validation: a parameter that must be prime is not.
class NotPrimeError : public Error {
public:
    explicit NotPrimeError(const std::string& msg) : Error(msg) {}
};

// A requested object would exceed a hard size cap.
class TooLargeError : public Error {
public:
    explicit TooLargeError(const std::string& msg) : Error(msg) {}
};

// A parameter is below the smallest value the construction supports.
class TooSmallError : public Error {
public:
    explicit TooSmallError(const std::string& msg) : Error(msg) {}
};

// A GroupAction failed validation (identity, compatibility, or automorphism).
class InvalidActionError : public Error {
public:
    explicit InvalidActionError(const std::string& msg) : Error(msg) {}
};

// A claimed subgroup is not closed / not contained in the parent.
class NotSubgroupError : public Error {
public:
    explicit NotSubgroupError(const std::string& msg) : Error(msg) {}
};

// Two containers that must have equal sizes do not.
class SizeMismatchError : public Error {
public:
    explicit SizeMismatchError(const std::string& msg) : Error(msg) {}
};

// An edge selection refers to edges not present in the graph.
class InvalidSelectionError : public Error {
public:
    explicit InvalidSelectionError(const std::string& msg) : Error(msg) {}
};

// A graph that must be d-regular is not.
class NotRegularError : public Error {
public:
    explicit NotRegularError(const std::string& msg) : Error(msg) {}
};

// Text input could not be parsed; line is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line_no = 0)
        : Error(line_no > 0 ? msg + " (line " + std::to_string(line_no) + ")" : msg),
          line(line_no) {}
    int line;
};

// A matrix exceeds the configured eigensolver size cap.
class SizeCapError : public Error {
public:
    explicit SizeCapError(const std::string& msg) : Error(msg) {}
};

// A scalar argument is outside the function's domain.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// An interval given as [lo, hi] has lo > hi or is otherwise malformed.
class BadIntervalError : public Error {
public:
    explicit BadIntervalError(const std::string& msg) : Error(msg) {}
};

// Root bracketing failed: no sign change on the search interval.
class BracketFailureError : public Error {
public:
    explicit BracketFailureError(const std::string& msg) : Error(msg) {}
};

// A construction's hypothesis was checked and found false.  `name` identifies
// which hypothesis (stable strings, used by callers and tests).
class HypothesisFailure : public Error {
public:
    HypothesisFailure(const std::string& hypothesis, const std::string& msg)
        : Error("hypothesis '" + hypothesis + "' failed: " + msg), name(hypothesis) {}
    std::string name;
};

// A randomized or exhaustive search used up its budget without success.
class SearchExhaustedError : public Error {
public:
    explicit SearchExhaustedError(const std::string& msg) : Error(msg) {}
};

// A rejection-sampling loop hit its retry cap.
class RetryExhaustedError : public Error {
public:
    explicit RetryExhaustedError(const std::string& msg) : Error(msg) {}
};

// An iterative numerical routine failed to converge.
class SolveFailureError : public Error {
public:
    explicit SolveFailureError(const std::string& msg) : Error(msg) {}
};

} // namespace emlab
