#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gfusion
{

enum class Errc
{
    NotHermitian,
    NonFinite,
    ShapeMismatch,
    DimMismatch,
    InvalidSubspace,
    InvalidFamily,
    NotAFrame,
    BlockCountMismatch,
    BlockOutOfSubspace,
    NonPositiveWeight,
    TooFewMembers,
    NotRepresentable,
    HypothesisViolation,
    SemanticsUnsupported,
    GeneratorViolation,
    InvalidParams,
    ConditionNotEstablished,
    IndexOutOfWindow,
    OutOfRange,
    SubgroupTooSmall,
    InvalidRange,
    ParseError,
    UnknownFixture,
    Usage,
};

std::string_view to_string(Errc code);

//! Exception carrying a machine-checkable error kind.
class Error : public std::runtime_error
{
  public:
    Error(Errc code, std::string const& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what)
        , code_(code)
        , detail_(what)
    {
    }

    Errc code() const noexcept { return code_; }
    //! Message without the error-kind prefix.
    std::string const& detail() const noexcept { return detail_; }

  private:
    Errc code_;
    std::string detail_;
};

[[noreturn]] inline void fail(Errc code, std::string const& what)
{
    throw Error(code, what);
}

}  // namespace gfusion
