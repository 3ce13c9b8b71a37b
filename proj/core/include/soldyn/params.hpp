#pragma once

#include "soldyn/errors.hpp"

namespace soldyn {

struct PhysicalParams {
    double mass = 1.0;
    double epsilon = 1.0;  // shared with NonlinearitySpec

    static PhysicalParams make(double mass, double epsilon) {
        if (!(mass > 0.0)) fail(Error::Kind::parameter, "mass must be positive");
        if (!(epsilon > 0.0)) fail(Error::Kind::parameter, "epsilon must be positive");
        return {mass, epsilon};
    }
};

}  // namespace soldyn
