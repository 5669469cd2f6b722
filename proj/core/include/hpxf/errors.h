#ifndef HPXF_ERRORS_H
#define HPXF_ERRORS_H

#include <stdexcept>
#include <string>

namespace hpxf {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Raised by the domain parser; carries a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string &msg, int line, int column)
        : Error("parse error at " + std::to_string(line) + ":" +
                std::to_string(column) + ": " + msg),
          line(line), column(column) {}
    int line;
    int column;
};

// A knowledge-history insertion contradicted an existing triple.
// Carries the mechanism that produced the addition and both triples.
class InconsistencyDetected : public Error {
public:
    InconsistencyDetected(const std::string &mechanism,
                          const std::string &existing_triple,
                          const std::string &new_triple)
        : Error("inconsistency detected by " + mechanism + ": " +
                new_triple + " contradicts " + existing_triple),
          mechanism(mechanism), existing(existing_triple),
          added(new_triple) {}
    std::string mechanism;
    std::string existing;
    std::string added;
};

// More than one fluent would be sensed in a single state transition.
class MultipleSensingActions : public Error {
public:
    explicit MultipleSensingActions(const std::string &msg) : Error(msg) {}
};

// Every value of a sensed fluent is already known not to hold.
class AllOutcomesExcluded : public Error {
public:
    explicit AllOutcomesExcluded(const std::string &msg) : Error(msg) {}
};

// Two effect propositions with the same effect pair would be applied
// in the same transition.
class ConcurrentSimilarEPs : public Error {
public:
    explicit ConcurrentSimilarEPs(const std::string &msg) : Error(msg) {}
};

// A sensing split would exceed the configured branch cap.
class BranchCapExceeded : public Error {
public:
    explicit BranchCapExceeded(const std::string &msg) : Error(msg) {}
};

// The compilation closure exceeded the generated-EP cap.
class IterationBudgetExceeded : public Error {
public:
    explicit IterationBudgetExceeded(const std::string &msg) : Error(msg) {}
};

// An action history entry refers to an action unknown to the domain.
class UnknownAction : public Error {
public:
    explicit UnknownAction(const std::string &msg) : Error(msg) {}
};

} // namespace hpxf

#endif
