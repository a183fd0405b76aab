#ifndef PKFOLD_COMMON_HPP
#define PKFOLD_COMMON_HPP

#include <stdexcept>
#include <string>

namespace pkfold {

enum class Errc {
    DegreeViolation,
    CrossingBoundExceeded,
    ArcTooShort,
    StackTooShort,
    ArcNotInStructure,
    InvalidParams,
    MalformedPath,
    NotAMotif,
    NoConvergence,
    EmptyStructure,
    PositionsOccupied,
    FrontierViolation,
    AdjacentStackMerge,
    NotMinimal,
    NotASkeleton,
    LimitExceeded,
    InadmissiblePair,
    InvalidAlphabet,
    CeilingExceeded,
    UnsupportedK,
    ParseError,
    UnknownKey,
    BracketOverflow,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace pkfold

#endif
