#include "doctest.h"

#include <cmath>

#include "coopemit/collective_modes.hpp"
#include "coopemit/errors.hpp"
#include "coopemit/evolve.hpp"
#include "coopemit/two_qubit.hpp"

using namespace coopemit;

namespace {

// The five reduced variables read off the full engine's trajectory.
struct FullReference {
    std::vector<TwoQubitState> states;
    Eigen::MatrixXd rates;
};

FullReference full_engine(const TwoQubitParams& p, double t_end, double dt_out) {
    const CouplingMatrices m = p.couplings();
    EvolveOptions o;
    o.t_end = t_end;
    o.dt_out = dt_out;
    o.rtol = 1e-12;
    o.atol = 1e-14;
    const EvolveResult r = evolve(fully_excited_state(2), m, o);
    const CollectiveModes modes = diagonalize_decoherence(m);
    FullReference out;
    out.rates = r.trajectory.rates;
    for (std::size_t s = 0; s < r.trajectory.samples(); ++s) {
        const Eigen::MatrixXcd& rho1 = r.trajectory.single_excitation[s];
        const ManifoldState ms = project_single_excitation(rho1, modes);
        TwoQubitState st;
        st.rho_EE = r.trajectory.populations(static_cast<Eigen::Index>(s), 0) - rho1(0, 0).real();
        st.rho_11 = ms.rho(0, 0).real();
        st.rho_22 = ms.rho(1, 1).real();
        st.re_rho_21 = ms.rho(1, 0).real();
        st.rho_GG = 1.0 - st.rho_EE - rho1.trace().real();
        out.states.push_back(st);
    }
    return out;
}

TwoQubitTrajectory solve(const TwoQubitParams& p, double t_end = 20.0, double dt_out = 0.05) {
    return solve_two_qubit(p, t_end, dt_out, {}, 1e-12, 1e-14);
}

} // namespace

TEST_CASE("fully excited population decays at twice gamma0") {
    const TwoQubitTrajectory t = solve({1.0, 0.3, 0.5, 0.0}, 5.0, 0.05);
    for (std::size_t s = 0; s < t.samples(); ++s)
        CHECK(t.states[s].rho_EE == doctest::Approx(std::exp(-2.0 * t.times[s])).epsilon(1e-9));
}

TEST_CASE("no antisymmetric coupling means no coherence and equal rates") {
    const TwoQubitTrajectory t = solve({1.0, 0.5, 0.0, 0.0});
    for (std::size_t s = 0; s < t.samples(); ++s) CHECK(t.states[s].re_rho_21 == 0.0);
    CHECK(t.deltaR12.cwiseAbs().maxCoeff() < 1e-12);

    // A non-zero initial coherence decays at (Gamma_1 + Gamma_2) / 2.
    TwoQubitState init{0.0, 0.5, 0.5, 0.0, 0.3};
    const TwoQubitTrajectory u = solve_two_qubit({1.0, 0.5, 0.0, 0.0}, 4.0, 0.1, init, 1e-12, 1e-14);
    for (std::size_t s = 0; s < u.samples(); ++s)
        CHECK(u.states[s].re_rho_21 == doctest::Approx(0.3 * std::exp(-u.times[s])).epsilon(1e-9));
}

TEST_CASE("population derivatives sum to zero") {
    const TwoQubitParams p{1.0, 0.3, 1.2, 0.0};
    const TwoQubitState s{0.2, 0.3, 0.1, 0.4, 0.05};
    const TwoQubitState d = reduced_rhs(s, p);
    CHECK(std::abs(d.rho_EE + d.rho_11 + d.rho_22 + d.rho_GG) < 1e-16);
    const TwoQubitTrajectory t = solve(p);
    for (const TwoQubitState& st : t.states)
        CHECK(std::abs(st.rho_EE + st.rho_11 + st.rho_22 + st.rho_GG - 1.0) < 1e-12);
}

TEST_CASE("reduced model matches the full engine") {
    for (double ja : {0.0, 0.06, 0.3, 1.2}) {
        const TwoQubitParams p{1.0, 0.3, ja, 0.0};
        const TwoQubitTrajectory t = solve(p);
        const FullReference f = full_engine(p, 20.0, 0.05);
        REQUIRE(f.states.size() == t.samples());
        double worst = 0.0;
        for (std::size_t s = 0; s < t.samples(); ++s) {
            const Eigen::VectorXd d = t.states[s].to_vector() - f.states[s].to_vector();
            const auto i = static_cast<Eigen::Index>(s);
            worst = std::max({worst, d.cwiseAbs().maxCoeff(), std::abs(t.R1(i) - f.rates(i, 0)),
                              std::abs(t.R2(i) - f.rates(i, 1))});
        }
        INFO("Ja = " << ja);
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("reversing Ja reverses the rate difference") {
    const TwoQubitTrajectory a = solve({1.0, 0.3, 0.3, 0.0});
    const TwoQubitTrajectory b = solve({1.0, 0.3, -0.3, 0.0});
    CHECK((a.deltaR12 + b.deltaR12).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(a.deltaR12.cwiseAbs().maxCoeff() > 0.01);
    // Js drops out of the closure.
    const TwoQubitTrajectory c = solve({1.0, 0.3, 0.3, 0.7});
    CHECK((a.R1 - c.R1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("emission-curve shapes") {
    SUBCASE("symmetric coupling: early enhancement, late suppression") {
        const TwoQubitTrajectory t = solve({1.0, 0.5, 0.0, 0.0});
        const Eigen::VectorXd tot = t.R1 + t.R2;
        const auto at = [&](double tau) { return static_cast<Eigen::Index>(std::lround(tau / 0.05)); };
        CHECK(tot(at(0.5)) > 2.0 * std::exp(-0.5));
        // Suppressed once the bright mode has emptied; the dark mode's slow tail
        // overtakes 2 e^{-tau} again later.
        CHECK(tot(at(3.0)) < 2.0 * std::exp(-3.0));
        CHECK(tot(at(12.0)) > 2.0 * std::exp(-12.0));
        CHECK((t.R1 - t.R2).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("cascade: left qubit alone, right qubit bursts then lingers") {
        const TwoQubitTrajectory t = solve({1.0, 1.0, 1.0, 0.0});
        double left = 0.0;
        for (std::size_t s = 0; s < t.samples(); ++s)
            left = std::max(left, std::abs(t.R1(static_cast<Eigen::Index>(s)) - std::exp(-t.times[s])));
        CHECK(left < 1e-8);
        Eigen::Index peak;
        CHECK(t.R2.maxCoeff(&peak) > 1.0);
        bool below = false;
        for (Eigen::Index i = peak; i < t.R2.size(); ++i) below = below || t.R2(i) < std::exp(-t.times[static_cast<std::size_t>(i)]);
        CHECK(below);
    }
    SUBCASE("strong antisymmetric coupling: out-of-phase oscillation") {
        const TwoQubitTrajectory t = solve({1.0, 0.3, 1.2, 0.0}, 10.0, 0.01);
        int crossings = 0, opposite = 0, counted = 0;
        double prev = 0.0;
        for (std::size_t s = 1; s < t.samples(); ++s) {
            const auto i = static_cast<Eigen::Index>(s);
            const double env = std::exp(-t.times[s]);
            const double d1 = t.R1(i) - env, d2 = t.R2(i) - env;
            if (prev != 0.0 && d1 * prev < 0.0) ++crossings;
            prev = d1;
            if (std::abs(d1) > 1e-3 && std::abs(d2) > 1e-3) {
                ++counted;
                if (d1 * d2 < 0.0) ++opposite;
            }
        }
        CHECK(crossings >= 3);
        CHECK(opposite > 0.9 * counted);
    }
}

TEST_CASE("state helpers and errors") {
    const TwoQubitState e = state_from_density(fully_excited_state(2));
    CHECK(e.rho_EE == 1.0);
    CHECK(e.rho_11 == 0.0);
    CHECK(TwoQubitState::from_vector(e.to_vector()).rho_EE == 1.0);
    CHECK_THROWS_AS(state_from_density(fully_excited_state(3)), ValidationError);
    CHECK_THROWS_AS((TwoQubitState{0.5, 0.0, 0.0, 0.0, 0.0}.check()), ValidationError);
    CHECK_THROWS_AS((TwoQubitState{0.0, 0.5, 0.5, 0.0, 0.6}.check()), ValidationError);
    CHECK_THROWS_AS(solve_two_qubit({1.0, 0.3, 0.0, 0.0}, 1.0, 0.1, {0.0, 0.5, 0.5, 0.0, 0.6}), ValidationError);
    CHECK_THROWS_AS(solve_two_qubit({0.0, 0.3, 0.0, 0.0}, 1.0, 0.1), ValidationError);
    CHECK_THROWS_AS(solve_two_qubit({1.0, 1.5, 0.0, 0.0}, 1.0, 0.1), ValidationError);
}
