#pragma once

#include <stdexcept>
#include <string>

namespace amot {

// Exit-code classes used by the command line driver.
enum class ErrorClass { Usage = 1, Validation = 2, CapExhausted = 3, Internal = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
    ErrorClass error_class() const { return cls_; }

private:
    ErrorClass cls_;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error(ErrorClass::Validation, w) {}
};

struct CharacteristicViolation : ValidationError {
    explicit CharacteristicViolation(const std::string& w) : ValidationError("characteristic violation: " + w) {}
};

struct NotTorsion : ValidationError {
    explicit NotTorsion(const std::string& w) : ValidationError("not torsion: " + w) {}
};

struct NotRestricted : ValidationError {
    explicit NotRestricted(const std::string& w) : ValidationError("not restricted: " + w) {}
};

struct DegenerateInseparable : ValidationError {
    explicit DegenerateInseparable(const std::string& w) : ValidationError("degenerate inseparable: " + w) {}
};

struct CapExhausted : Error {
    explicit CapExhausted(const std::string& w) : Error(ErrorClass::CapExhausted, "cap exhausted: " + w) {}
};

struct ParseError : ValidationError {
    ParseError(const std::string& w, int line, int col)
        : ValidationError("parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + w),
          line(line), col(col) {}
    int line, col;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError(msg);
}

inline void internal_check(bool cond, const std::string& msg) {
    if (!cond) throw Error(ErrorClass::Internal, "internal: " + msg);
}

}  // namespace amot
