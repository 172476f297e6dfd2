#pragma once

#include <string>

#include "json.hpp"

#include "coopemit/coupling_model.hpp"

namespace coopemit {

// {"n": N, "gamma0": g, "J_re": [[..]], "J_im": [[..]], "G_re": [[..]], "G_im": [[..]]}
// Row-major nested arrays. Throws ValidationError on schema violations.
nlohmann::json couplings_to_json(const CouplingMatrices& m);
CouplingMatrices couplings_from_json(const nlohmann::json& doc);

CouplingMatrices load_couplings(const std::string& path);
void save_couplings(const CouplingMatrices& m, const std::string& path);

} // namespace coopemit
