#pragma once

#include <string>
#include <vector>

#include "sirfb/model.hpp"

namespace sirfb {

enum class Classification { SPREADING, VANISHING, UNDECIDED };

const char* to_string(Classification c);

/// One time-series record of a run.
struct Frame {
    double t;
    double h;
    double dhdt;
    double sup_S;
    double sup_I;
    double sup_R;
    double mass_I;            ///< int_0^h r^{n-1} I dr, trapezoid on mapped nodes
    double balance_residual;  ///< discrete defect of the integral identity
};

/// Full field snapshot, saved when profile output is requested.
struct ProfileFrame {
    double t;
    double h;
    std::vector<double> S_phys;
    std::vector<double> v_comp;
    std::vector<double> w_comp;
};

/// In-process sink for frames emitted while a run progresses.
struct FrameSink {
    virtual ~FrameSink() = default;
    virtual void on_frame(const Frame&) {}
    virtual void on_profile(const ProfileFrame&) {}
};

struct RunOutcome {
    std::vector<Frame> series;
    std::vector<ProfileFrame> profiles; ///< empty unless profiles requested
    Classification classification = Classification::UNDECIDED;
    ThresholdReport thresholds{};
    bool ok = true;
    std::string error;        ///< message with failing time when !ok
};

} // namespace sirfb
