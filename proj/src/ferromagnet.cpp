#include "coopemit/ferromagnet.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include "coopemit/bessel.hpp"
#include "coopemit/errors.hpp"

namespace coopemit {

namespace {

constexpr double kPlanck = 6.62607015e-34;  // J s

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ValidationError(std::string("ferromagnet: ") + name + " must be positive");
}

} // namespace

void FerroBathParams::validate() const {
    require_positive(exchange_hz, "exchange");
    require_positive(lattice_nm, "lattice constant");
    require_positive(thickness_nm, "thickness");
    require_positive(spin_density, "spin density");
    require_positive(stiffness, "spin stiffness");
    if (!std::isfinite(dmi_hz) || !std::isfinite(gap_hz))
        throw ValidationError("ferromagnet: DMI and gap must be finite");
}

double gap_at_field_hz(double gap0_hz, double gfilm_mhz_per_g, double field_g) {
    return gap0_hz + gfilm_mhz_per_g * 1e6 * field_g;
}

FerroBathParams FerroMaterial::bath() const {
    FerroBathParams p;
    const double a_m = a_nm * 1e-9;
    p.exchange_hz = rho_s / (a_m * a_m);
    p.dmi_hz = k0 * p.exchange_hz;
    p.gap_hz = gap_at_field_hz(gap0_GHz * 1e9, gfilm_MHz_per_G, B0_G);
    p.lattice_nm = a_nm;
    p.spin_density = s;
    p.stiffness = rho_s;
    p.thickness_nm = t_F_nm;
    p.gtilde_mhz_per_g = gtilde_MHz_per_G;
    p.gfilm_mhz_per_g = gfilm_MHz_per_G;
    p.field_g = B0_G;
    p.validate();
    return p;
}

QubitArray FerroMaterial::array() const {
    return QubitArray(N, a_q_nm, Delta0_GHz - gtilde_MHz_per_G * B0_G * 1e-3);
}

nlohmann::json material_to_json(const FerroMaterial& m) {
    return {{"rho_s", m.rho_s},         {"a_nm", m.a_nm},
            {"t_F_nm", m.t_F_nm},       {"s", m.s},
            {"Delta0_GHz", m.Delta0_GHz}, {"gap0_GHz", m.gap0_GHz},
            {"B0_G", m.B0_G},           {"k0", m.k0},
            {"a_q_nm", m.a_q_nm},       {"N", m.N},
            {"gtilde_MHz_per_G", m.gtilde_MHz_per_G}, {"gfilm_MHz_per_G", m.gfilm_MHz_per_G}};
}

FerroMaterial material_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ValidationError("material: document must be an object");
    FerroMaterial m;
    auto number = [&](const std::string& key, double& field) {
        if (!doc.contains(key)) return;
        if (!doc.at(key).is_number()) throw ValidationError("material: '" + key + "' must be a number");
        field = doc.at(key).get<double>();
    };
    static const std::set<std::string> allowed{
        "rho_s", "a_nm", "t_F_nm", "s", "Delta0_GHz", "gap0_GHz", "B0_G", "k0",
        "a_q_nm", "N", "gtilde_MHz_per_G", "gfilm_MHz_per_G"};
    for (const auto& item : doc.items())
        if (!allowed.count(item.key())) throw ValidationError("material: unknown key '" + item.key() + "'");
    number("rho_s", m.rho_s);
    number("a_nm", m.a_nm);
    number("t_F_nm", m.t_F_nm);
    number("s", m.s);
    number("Delta0_GHz", m.Delta0_GHz);
    number("gap0_GHz", m.gap0_GHz);
    number("B0_G", m.B0_G);
    number("k0", m.k0);
    number("a_q_nm", m.a_q_nm);
    number("gtilde_MHz_per_G", m.gtilde_MHz_per_G);
    number("gfilm_MHz_per_G", m.gfilm_MHz_per_G);
    if (doc.contains("N")) {
        if (!doc.at("N").is_number_integer()) throw ValidationError("material: 'N' must be an integer");
        m.N = doc.at("N").get<int>();
    }
    if (m.N < 1) throw ValidationError("material: 'N' must be >= 1");
    require_positive(m.a_q_nm, "a_q_nm");
    return m;
}

double dispersion(double kx, double ky, const FerroBathParams& p) {
    return p.exchange_hz * (kx * kx + ky * ky) - 2.0 * p.dmi_hz * kx + p.gap_hz;
}

CharacteristicScales characteristic_scales(const FerroBathParams& p, double omega_qi_hz) {
    p.validate();
    CharacteristicScales sc;
    sc.k0 = p.k0();
    const double k0_abs = std::abs(sc.k0);
    const double k1_sq = k0_abs * k0_abs + (omega_qi_hz - p.gap_hz) / p.exchange_hz;
    if (!(k1_sq > 0.0)) throw std::domain_error("qubit below magnon band edge");
    sc.k1 = std::sqrt(k1_sq);
    sc.lambda0_nm = k0_abs == 0.0 ? std::numeric_limits<double>::infinity() : p.lattice_nm / k0_abs;
    sc.lambda1_nm = p.lattice_nm / sc.k1;
    sc.asymmetry = 2.0 * k0_abs * sc.k1 / (k0_abs * k0_abs + k1_sq);

    // lambda0^2 / (lambda0^2 + lambda1^2) = k1^2 / (k0^2 + k1^2), finite as k0 -> 0.
    const double ratio = k1_sq / (k0_abs * k0_abs + k1_sq);
    const double lambda1_m = sc.lambda1_nm * 1e-9;
    const double gg = p.gtilde_mhz_per_g * 1e6 * p.gfilm_mhz_per_g * 1e6;
    const double pi = std::numbers::pi;
    sc.gamma0_hz = 2.0 * pi * pi * kPlanck * kPlanck * gg * gg * (p.thickness_nm * 1e-9) *
                   p.spin_density * ratio / (p.stiffness * lambda1_m * lambda1_m);
    return sc;
}

CouplingMatrices coupling_matrices(const QubitArray& arr, const FerroBathParams& p) {
    if (!(arr.spacing_nm > 0.0)) throw ValidationError("coincident qubit positions");
    const CharacteristicScales sc = characteristic_scales(p, arr.omega_qi_ghz * 1e9);
    const int n = arr.n_qubits;
    const double k0_abs = std::abs(sc.k0);

    CouplingMatrices m;
    m.gamma0 = 1.0;
    m.Gamma = Eigen::MatrixXcd::Zero(n, n);
    m.J = Eigen::MatrixXcd::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        m.Gamma(a, a) = 1.0;
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            const double x = arr.position(a) - arr.position(b);
            const double u = std::abs(x) / sc.lambda1_nm;
            const double sgn = x > 0.0 ? 1.0 : -1.0;
            const double phase = x * k0_abs / p.lattice_nm;
            const cplx carrier = sc.k0 == 0.0 ? cplx(1.0, 0.0) : std::polar(1.0, phase);
            m.Gamma(a, b) = carrier * cplx(bessel_j0(u), sc.asymmetry * sgn * bessel_j1(u));
            m.J(a, b) = carrier * cplx(bessel_y0(u), sc.asymmetry * sgn * bessel_y1(u));
        }
    }
    return sc.k0 < 0.0 ? mirrored(m) : m;
}

} // namespace coopemit
