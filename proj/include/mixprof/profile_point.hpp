#pragma once

#include <cmath>

namespace mixprof {

// One row of a mixing profile table. main_term/error_term are stored in the
// half-normalised convention so the sandwich reads
// |exact_tv - main_term| <= error_term whenever all three come from the same
// approximation lemma.
struct ProfilePoint {
    double c = 0.0;
    long t = 0;
    double exact_tv = 0.0;
    double main_term = 0.0;
    double error_term = 0.0;
    double limit_value = 0.0;

    double gap() const { return std::fabs(exact_tv - limit_value); }
};

}  // namespace mixprof
