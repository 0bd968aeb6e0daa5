#include "fluorsq/model.hpp"

#include "fluorsq/errors.hpp"

#include <cmath>

namespace fluorsq {

SystemParams validate(const SystemParams& raw) {
    const double fields[] = {raw.gamma1, raw.gamma2, raw.gamma3, raw.w12,    raw.delta_a, raw.delta_b,
                             raw.omega1, raw.omega2, raw.omega3, raw.p, raw.theta};
    for (double v : fields) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "parameters must be finite");
    }
    if (raw.gamma3 <= 0.0) throw Error(ErrorCode::BadNormalization, "gamma3 must be positive");
    if (raw.gamma1 < 0.0 || raw.gamma2 < 0.0)
        throw Error(ErrorCode::NegativeRate, "decay rates gamma1, gamma2 must be non-negative");
    if (std::abs(raw.p) > 1.0) throw Error(ErrorCode::InterferenceOutOfRange, "|p| must not exceed 1");

    const double unit = raw.gamma3;
    SystemParams out = raw;
    out.gamma1 /= unit;
    out.gamma2 /= unit;
    out.gamma3 = 1.0;
    out.w12 /= unit;
    out.delta_a /= unit;
    out.delta_b /= unit;
    out.omega1 /= unit;
    out.omega2 /= unit;
    out.omega3 /= unit;
    return out;
}

std::vector<std::string> warnings(const SystemParams& params) {
    std::vector<std::string> out;
    if (params.gamma1 == 0.0 && params.gamma2 == 0.0)
        out.emplace_back("gamma1 = gamma2 = 0: upper decays are off and interference terms vanish");
    else if (params.p != 0.0 && (params.gamma1 == 0.0 || params.gamma2 == 0.0))
        out.emplace_back("one upper decay rate is zero: the interference parameter has no effect");
    return out;
}

} // namespace fluorsq
