// ferromagnet.hpp: couplings mediated by a thin non-centrosymmetric ferromagnet.
//
// Magnon dispersion  w(k) = J k^2 - 2 D k_x + Delta  (k dimensionless, in units of
// the inverse film lattice constant). Qubits resonant with the band see on-shell
// wave numbers |k - k0 x| = k1 with k0 = D/J and k1^2 = k0^2 + (w_qi - Delta)/J.
// In the thin-film limit the couplings take closed Bessel forms; output matrices
// are normalized to the local rate (Gamma_aa = 1).

#pragma once

#include "json.hpp"

#include "coopemit/coupling_model.hpp"

namespace coopemit {

struct FerroBathParams {
    double exchange_hz{0.0};        // J, symmetric exchange
    double dmi_hz{0.0};             // D, anti-symmetric exchange (sign selects direction)
    double gap_hz{0.0};             // Delta at the operating field
    double lattice_nm{1.2};         // film lattice constant a
    double spin_density{1.2e-10};   // s  [G^2 cm s]
    double stiffness{7.7e-6};       // rho_s  [Hz m^2]
    double thickness_nm{20.0};      // t_F
    double gtilde_mhz_per_g{2.8};   // qubit gyromagnetic ratio
    double gfilm_mhz_per_g{2.8};    // film gyromagnetic ratio
    double field_g{400.0};          // B0

    double k0() const { return dmi_hz / exchange_hz; }
    void validate() const;
};

struct CharacteristicScales {
    double k0{0.0};          // signed D/J
    double k1{0.0};
    double lambda0_nm{0.0};  // a/|k0|; +infinity when k0 == 0
    double lambda1_nm{0.0};
    double asymmetry{0.0};   // 2 lambda0 lambda1 / (lambda0^2 + lambda1^2) = 2|k0|k1/(k0^2+k1^2)
    double gamma0_hz{0.0};   // closed-form local rate; unit convention is ambiguous, label only
};

// Material-parameter file. Defaults reproduce a YIG-like film under an NV array.
struct FerroMaterial {
    double rho_s{7.7e-6};          // Hz m^2
    double a_nm{1.2};
    double t_F_nm{20.0};
    double s{1.2e-10};             // G^2 cm s
    double Delta0_GHz{2.87};       // NV zero-field splitting
    double gap0_GHz{0.55};         // magnon gap at zero field
    double B0_G{400.0};
    double k0{0.3};
    double a_q_nm{20.0};
    int N{9};
    double gtilde_MHz_per_G{2.8};
    double gfilm_MHz_per_G{2.8};

    FerroBathParams bath() const;
    QubitArray array() const;          // omega_qi = Delta0 - gtilde * B0
};

nlohmann::json material_to_json(const FerroMaterial& m);
FerroMaterial material_from_json(const nlohmann::json& doc);  // unknown keys rejected

// Field-dependent magnon gap: Delta(B0) = Delta(0) + gfilm * B0. A modeling choice.
double gap_at_field_hz(double gap0_hz, double gfilm_mhz_per_g, double field_g);

double dispersion(double kx, double ky, const FerroBathParams& p);

// Throws std::domain_error when the qubit sits below the band edge (k1^2 <= 0).
CharacteristicScales characteristic_scales(const FerroBathParams& p, double omega_qi_hz);

// Normalized couplings (gamma0 = 1). For D < 0 the array is mirrored.
CouplingMatrices coupling_matrices(const QubitArray& arr, const FerroBathParams& p);

} // namespace coopemit
