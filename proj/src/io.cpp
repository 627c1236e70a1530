#include "crg/io.hpp"

#include <fstream>
#include <stdexcept>

namespace crg {

Json to_json(const Cyclotomic& x) {
    Json coeffs = Json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back({c.get_num().get_str(), c.get_den().get_str()});
    return {{"conductor", x.conductor()}, {"coeffs", coeffs}};
}

Cyclotomic cyclotomic_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("conductor") || !j.contains("coeffs"))
        throw std::invalid_argument("cyclotomic number needs conductor and coeffs");
    const long n = j.at("conductor").get<long>();
    if (n < 1) throw std::invalid_argument("conductor must be positive");
    std::vector<Rational> coeffs;
    for (const auto& pair : j.at("coeffs")) {
        if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("coefficient must be a [p, q] pair");
        const Integer p(pair[0].get<std::string>());
        const Integer q(pair[1].get<std::string>());
        if (q == 0) throw std::invalid_argument("zero denominator");
        Rational r(p, q);
        r.canonicalize();
        coeffs.push_back(r);
    }
    return Cyclotomic::from_coeffs(n, coeffs);
}

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (const auto& x : m.row(r)) row.push_back(to_json(x));
        rows.push_back(row);
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
    std::vector<Vector> rows;
    for (const auto& row : j) {
        if (!row.is_array()) throw std::invalid_argument("matrix row must be an array");
        Vector v;
        for (const auto& x : row) v.push_back(cyclotomic_from_json(x));
        rows.push_back(std::move(v));
    }
    return Matrix::from_rows(rows);
}

GroupSpec group_spec_from_json(const Json& j) {
    GroupSpec spec;
    try {
        spec.name = j.value("name", std::string("custom"));
        spec.dimension = j.at("dimension").get<std::size_t>();
        spec.conductor = j.value("conductor", 1L);
        for (const auto& g : j.at("generators")) {
            Matrix m = matrix_from_json(g);
            if (m.rows() != spec.dimension || m.cols() != spec.dimension)
                throw std::invalid_argument("generator does not match the stated dimension");
            spec.generators.push_back(std::move(m));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed group spec: ") + e.what());
    }
    if (spec.generators.empty()) throw std::invalid_argument("group spec has no generators");
    return spec;
}

Json to_json(const GroupSpec& spec) {
    Json gens = Json::array();
    for (const auto& g : spec.generators) gens.push_back(to_json(g));
    return {{"name", spec.name}, {"conductor", spec.conductor}, {"dimension", spec.dimension}, {"generators", gens}};
}

GroupSpec load_group_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("cannot parse " + path + ": " + e.what());
    }
    return group_spec_from_json(j);
}

}  // namespace crg
