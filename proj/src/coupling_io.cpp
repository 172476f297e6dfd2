#include "coopemit/coupling_io.hpp"

#include <fstream>
#include <set>

#include "coopemit/errors.hpp"

namespace coopemit {

namespace {

using nlohmann::json;

json rows_of(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

Eigen::MatrixXd matrix_of(const json& doc, const char* key, int n) {
    if (!doc.contains(key)) throw ValidationError(std::string("couplings: missing key '") + key + "'");
    const json& rows = doc.at(key);
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw ValidationError(std::string("couplings: '") + key + "' must have n rows");
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ValidationError(std::string("couplings: row ") + std::to_string(i + 1) +
                                  " of '" + key + "' must have n entries");
        for (int j = 0; j < n; ++j) {
            const json& v = row[static_cast<std::size_t>(j)];
            if (!v.is_number())
                throw ValidationError(std::string("couplings: non-numeric entry in '") + key + "'");
            m(i, j) = v.get<double>();
        }
    }
    return m;
}

} // namespace

json couplings_to_json(const CouplingMatrices& m) {
    json doc;
    doc["n"] = m.size();
    doc["gamma0"] = m.gamma0;
    doc["J_re"] = rows_of(m.J.real());
    doc["J_im"] = rows_of(m.J.imag());
    doc["G_re"] = rows_of(m.Gamma.real());
    doc["G_im"] = rows_of(m.Gamma.imag());
    return doc;
}

CouplingMatrices couplings_from_json(const json& doc) {
    if (!doc.is_object()) throw ValidationError("couplings: document must be an object");
    static const std::set<std::string> allowed{"n", "gamma0", "J_re", "J_im", "G_re", "G_im"};
    for (const auto& item : doc.items())
        if (!allowed.count(item.key()))
            throw ValidationError("couplings: unknown key '" + item.key() + "'");
    if (!doc.contains("n") || !doc.at("n").is_number_integer())
        throw ValidationError("couplings: 'n' must be an integer");
    const int n = doc.at("n").get<int>();
    if (n < 1) throw ValidationError("couplings: 'n' must be >= 1");
    if (!doc.contains("gamma0") || !doc.at("gamma0").is_number())
        throw ValidationError("couplings: 'gamma0' must be a number");

    CouplingMatrices m;
    m.gamma0 = doc.at("gamma0").get<double>();
    m.J = matrix_of(doc, "J_re", n).cast<cplx>() + cplx(0, 1) * matrix_of(doc, "J_im", n).cast<cplx>();
    m.Gamma = matrix_of(doc, "G_re", n).cast<cplx>() + cplx(0, 1) * matrix_of(doc, "G_im", n).cast<cplx>();
    return m;
}

CouplingMatrices load_couplings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open couplings file '" + path + "'");
    return couplings_from_json(json::parse(in));
}

void save_couplings(const CouplingMatrices& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << couplings_to_json(m).dump(2) << '\n';
}

} // namespace coopemit
