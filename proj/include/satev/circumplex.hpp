#pragma once

#include <array>
#include <string>
#include <string_view>

#include "satev/errors.hpp"

namespace satev {

// The eight perceptual soundscape attributes, in counterclockwise order
// starting from pleasant at 0 degrees.
enum class Attribute {
    Pleasant,    // 0
    Vibrant,     // 45
    Eventful,    // 90
    Chaotic,     // 135
    Annoying,    // 180
    Monotonous,  // 225
    Uneventful,  // 270
    Calm,        // 315
};

enum class Direction { Clockwise, Counterclockwise };

enum class AxisKind { Main, Derived };

inline constexpr std::array<Attribute, 8> kAllAttributes = {
    Attribute::Pleasant,   Attribute::Vibrant,    Attribute::Eventful,
    Attribute::Chaotic,    Attribute::Annoying,   Attribute::Monotonous,
    Attribute::Uneventful, Attribute::Calm,
};

// Angular position on the circumplex, counterclockwise-positive.
constexpr int angle_deg(Attribute a) noexcept {
    return 45 * static_cast<int>(a);
}

// Inverse of angle_deg; angle must be a multiple of 45 after reduction mod 360.
Attribute attribute_at(int angle_deg);

constexpr AxisKind axis_kind(Attribute a) noexcept {
    return angle_deg(a) % 90 == 0 ? AxisKind::Main : AxisKind::Derived;
}

// The attribute 45 degrees away in the given direction.
Attribute adjacent(Attribute a, Direction d);

// The attribute 180 degrees away. An involution.
Attribute antipodal(Attribute a);

// The attribute 90 degrees away in the given direction. Only defined for
// main-axis attributes; throws DerivedAxisAttribute otherwise.
Attribute orthogonal(Attribute a, Direction d);

// Lowercase English name ("pleasant", ..., "calm"); the wire format for
// attributes in every file schema.
std::string_view attribute_name(Attribute a) noexcept;

// Parses a lowercase English attribute name. Throws ValidationError on
// unknown names.
Attribute parse_attribute(std::string_view name);

} // namespace satev
