#pragma once

#include <stdexcept>
#include <string>

namespace flexdp {

enum class Err {
    NotSimple,
    NotSymmetric,
    EmbeddingInconsistent,
    Disconnected,
    OutOfClass,
    NotA5Face,
    BudgetExceeded,
    Stuck,
    NoExtension,
    InvalidSizes,
    Parse,
};

class Error : public std::runtime_error {
public:
    Error(Err kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Err kind() const { return kind_; }

private:
    Err kind_;
};

inline const char* err_name(Err e) {
    switch (e) {
    case Err::NotSimple: return "NotSimple";
    case Err::NotSymmetric: return "NotSymmetric";
    case Err::EmbeddingInconsistent: return "EmbeddingInconsistent";
    case Err::Disconnected: return "Disconnected";
    case Err::OutOfClass: return "OutOfClass";
    case Err::NotA5Face: return "NotA5Face";
    case Err::BudgetExceeded: return "BudgetExceeded";
    case Err::Stuck: return "Stuck";
    case Err::NoExtension: return "NoExtension";
    case Err::InvalidSizes: return "InvalidSizes";
    case Err::Parse: return "Parse";
    }
    return "?";
}

[[noreturn]] inline void fail(Err kind, const std::string& what) {
    throw Error(kind, std::string(err_name(kind)) + ": " + what);
}

} // namespace flexdp
