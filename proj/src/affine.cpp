#include "platecell/affine.hpp"

#include <stdexcept>

#include "platecell/errors.hpp"

namespace platecell {

MacroMode MacroMode::parse(const std::string& text) {
    MacroMode m;
    const auto c1 = text.find(':');
    if (c1 == std::string::npos)
        throw ValidationError("mode '" + text + "': expected AB:NU");
    try {
        m.pair = std::stoi(text.substr(0, c1));
        const auto c2 = text.find(':', c1 + 1);
        m.nu = std::stoi(text.substr(c1 + 1, c2 == std::string::npos ? std::string::npos
                                                                     : c2 - c1 - 1));
        if (c2 != std::string::npos) m.magnitude = std::stod(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ValidationError("mode '" + text + "': expected AB:NU");
    }
    if (m.pair == 21) m.pair = 12;
    if (!valid_pair(m.pair))
        throw ValidationError("mode '" + text + "': pair must be 11, 22 or 12");
    if (m.nu != 0 && m.nu != 1)
        throw ValidationError("mode '" + text + "': nu must be 0 or 1");
    return m;
}

std::array<MacroMode, 6> MacroMode::all() {
    return {MacroMode{11, 0}, MacroMode{22, 0}, MacroMode{12, 0},
            MacroMode{11, 1}, MacroMode{22, 1}, MacroMode{12, 1}};
}

Vec3 AffineField::evaluate(const Vec3& y) const {
    const int a = mode_.alpha(), b = mode_.beta();
    Vec3 xi = Vec3::Zero();
    if (mode_.nu == 0) {
        xi[a] += 0.5 * y[b];
        xi[b] += 0.5 * y[a];
    } else {
        xi[a] += 0.5 * y[b] * y.z();
        xi[b] += 0.5 * y[a] * y.z();
        xi[2] -= 0.5 * y[a] * y[b];
    }
    return xi;
}

Vec6 AffineField::strain(const Vec3& y) const {
    Vec6 e = Vec6::Zero();
    const double w = mode_.nu == 1 ? y.z() : 1.0;
    switch (mode_.pair) {
        case 11: e[0] = w; break;
        case 22: e[1] = w; break;
        default: e[5] = w; break;  // engineering gamma_12
    }
    return e;
}

Vec3 AffineField::jump(const Vec3& master, int axis, double period) const {
    Vec3 shifted = master;
    shifted[axis - 1] += period;
    return evaluate(shifted) - evaluate(master);
}

}  // namespace platecell
