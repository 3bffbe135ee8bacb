#include "qtherm/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qtherm {

namespace {

struct JsonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double cell(const nlohmann::json& rows, int i, int j, const std::string& path) {
    const auto& v = rows.at(i).at(j);
    if (!v.is_number())
        throw JsonError(path + "[" + std::to_string(i) + "][" + std::to_string(j) +
                        "]: expected number");
    return v.get<double>();
}

}  // namespace

Matrix matrix_from_json(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("re"))
        throw std::runtime_error(path + ": expected object with \"dim\" and \"re\"");
    const int dim = j.at("dim").get<int>();
    if (dim <= 0) throw std::runtime_error(path + ".dim: must be positive");
    const auto& re = j.at("re");
    const bool has_im = j.contains("im");
    if (!re.is_array() || static_cast<int>(re.size()) != dim)
        throw std::runtime_error(path + ".re: expected " + std::to_string(dim) + " rows");
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        if (static_cast<int>(re.at(i).size()) != dim)
            throw std::runtime_error(path + ".re[" + std::to_string(i) + "]: expected " +
                                     std::to_string(dim) + " columns");
        for (int k = 0; k < dim; ++k) {
            const double rr = cell(re, i, k, path + ".re");
            const double ii = has_im ? cell(j.at("im"), i, k, path + ".im") : 0.0;
            m(i, k) = Complex(rr, ii);
        }
    }
    return m;
}

nlohmann::json matrix_to_json(const Matrix& m) {
    const int dim = static_cast<int>(m.rows());
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (int i = 0; i < dim; ++i) {
        nlohmann::json rrow = nlohmann::json::array(), irow = nlohmann::json::array();
        for (int k = 0; k < dim; ++k) {
            rrow.push_back(m(i, k).real());
            irow.push_back(m(i, k).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return {{"dim", dim}, {"re", std::move(re)}, {"im", std::move(im)}};
}

CompositeModel model_from_json(const nlohmann::json& j) {
    for (const char* key : {"dimS", "dimR", "H_S", "H_R", "V"})
        if (!j.contains(key)) throw std::runtime_error(std::string("model.") + key + ": missing");
    const int dimS = j.at("dimS").get<int>();
    const int dimR = j.at("dimR").get<int>();
    return CompositeModel(dimS, dimR, HermitianOperator(matrix_from_json(j.at("H_S"), "model.H_S")),
                          HermitianOperator(matrix_from_json(j.at("H_R"), "model.H_R")),
                          HermitianOperator(matrix_from_json(j.at("V"), "model.V")));
}

CompositeModel model_from_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw std::runtime_error("model file not readable: " + filename);
    nlohmann::json j;
    in >> j;
    return model_from_json(j);
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace qtherm
