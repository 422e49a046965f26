#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace pshaut {

// Thin typed index. Keeps objects, morphisms and elements from being mixed up.
template <class Tag>
struct Index {
    static constexpr std::uint32_t invalid_value = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t value = invalid_value;

    constexpr Index() = default;
    constexpr explicit Index(std::uint32_t v) : value(v) {}

    constexpr bool valid() const { return value != invalid_value; }
    constexpr std::size_t idx() const { return value; }

    friend constexpr auto operator<=>(Index, Index) = default;
};

using ObjId = Index<struct ObjTag>;
using MorId = Index<struct MorTag>;
using ElemId = Index<struct ElemTag>;

template <class Id>
constexpr Id make_id(std::size_t i) {
    return Id(static_cast<std::uint32_t>(i));
}

enum class ErrorCode {
    NotComposable,
    NotInWindow,
    AlphabetContainsEmptySymbol,
    WindowOverflow,
    EndpointMismatch,
    PolarityMismatch,
    StarOnInfiniteObjects,
    UnknownLabel,
    CubicalIdentityViolation,
    NotAVassImage,
    FullModeInfinite,
    UnknownName,
    InvalidInput,
};

const char *error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &msg)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace pshaut

template <class Tag>
struct std::hash<pshaut::Index<Tag>> {
    std::size_t operator()(pshaut::Index<Tag> i) const noexcept {
        return std::hash<std::uint32_t>()(i.value);
    }
};
