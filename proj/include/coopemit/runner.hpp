// runner.hpp: executes a RunConfig and writes its artifacts.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "coopemit/run_config.hpp"

namespace coopemit {

struct RunOptions {
    unsigned workers{0};         // 0 selects the hardware concurrency
    std::ostream* log{nullptr};  // one line per finished point; null for silence
};

// Peak and burst statistics of one evolution from the fully excited state.
struct SweepPoint {
    double value{0.0};           // swept variable
    double k0{0.0};
    int n_qubits{0};
    double lambda1_nm{0.0};
    double peak_R_tot{0.0};
    double peak_abs_delta{0.0};
    double peak_delta_time{0.0};
    // dR_tot/dtau at tau = 0 in gamma0^2: sum_{a != b} |Gamma_ab|^2 - N.
    double initial_slope{0.0};
    // max R_tot - N e^{-tau} over the trajectory (independent-emitter envelope).
    double max_excess_over_envelope{0.0};
    bool burst{false};           // R_tot rises above its initial value N
    double closure_error{0.0};   // |integral R_tot + remaining excitation - N|
    double max_trace_drift{0.0};
    double max_hermiticity_residual{0.0};
    std::string directory;
};

struct SweepSummary {
    std::string variable;
    std::vector<SweepPoint> points;     // in the order of the configured values
    double argmax_abs_delta{0.0};       // swept value with the largest peak |delta_1N|
    // Smallest swept value without a burst that follows a value with one
    // (ascending order); NaN when the flag never switches off.
    double burst_vanishes_at{0.0};
    double burst_last_present{0.0};
};

SweepPoint analyse_point(const EvolveResult& r, const CouplingMatrices& m);

// Writes artifacts under c.output and returns the sweep summary (empty for other modes).
SweepSummary run(const RunConfig& c, const RunOptions& opt = {});

} // namespace coopemit
