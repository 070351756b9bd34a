#include "satev/circumplex.hpp"

namespace satev {

namespace {

constexpr std::array<std::string_view, 8> kNames = {
    "pleasant", "vibrant",    "eventful",   "chaotic",
    "annoying", "monotonous", "uneventful", "calm",
};

Attribute rotated(Attribute a, Direction d, int step_deg) {
    const int sign = d == Direction::Counterclockwise ? 1 : -1;
    return attribute_at(angle_deg(a) + sign * step_deg);
}

} // namespace

Attribute attribute_at(int angle) {
    int reduced = angle % 360;
    if (reduced < 0) reduced += 360;
    if (reduced % 45 != 0)
        throw ValidationError("no attribute at angle " + std::to_string(angle));
    return static_cast<Attribute>(reduced / 45);
}

Attribute adjacent(Attribute a, Direction d) {
    return rotated(a, d, 45);
}

Attribute antipodal(Attribute a) {
    return attribute_at(angle_deg(a) + 180);
}

Attribute orthogonal(Attribute a, Direction d) {
    if (axis_kind(a) != AxisKind::Main)
        throw DerivedAxisAttribute("orthogonal relation is undefined for derived-axis attribute '" +
                                   std::string(attribute_name(a)) + "'");
    return rotated(a, d, 90);
}

std::string_view attribute_name(Attribute a) noexcept {
    return kNames[static_cast<std::size_t>(a)];
}

Attribute parse_attribute(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == name) return static_cast<Attribute>(i);
    throw ValidationError("unknown attribute name '" + std::string(name) + "'");
}

} // namespace satev
