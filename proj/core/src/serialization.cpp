#include <hiso/serialization.hpp>

#include <hiso/errors.hpp>

#include <cmath>
#include <fstream>

namespace hiso {

Json jet_to_json(const JetSeries& s, double eps_zero) {
    Json j;
    j["num_vars"] = s.num_vars();
    j["order"] = s.order();
    Json coeffs = Json::array();
    for (const auto& [idx, c] : s.coeffs()) {
        if (std::abs(c) < eps_zero) continue;
        Json entry;
        entry["index"] = idx.exponents();
        entry["re"] = c.real();
        entry["im"] = c.imag();
        coeffs.push_back(std::move(entry));
    }
    j["coeffs"] = std::move(coeffs);
    return j;
}

JetSeries jet_from_json(const Json& j) {
    try {
        JetSeries s(j.at("num_vars").get<int>(), j.at("order").get<int>());
        for (const auto& entry : j.at("coeffs")) {
            const MultiIndex idx(entry.at("index").get<std::vector<int>>());
            s.set_coeff(idx, Complex{entry.at("re").get<double>(), entry.at("im").get<double>()});
        }
        return s;
    } catch (const Json::exception& e) {
        throw io_error(std::string("jet_from_json: ") + e.what());
    }
}

Json map_to_json(const IsometryMap& f, double eps_zero) {
    Json j;
    j["source"] = f.source.to_string();
    j["target"] = f.target.to_string();
    j["k"] = f.k;
    Json weights;
    weights["source"] = f.source.weights();
    weights["target"] = f.target.weights();
    j["weights"] = std::move(weights);
    Json jets = Json::array();
    for (const auto& s : f.jets) jets.push_back(jet_to_json(s, eps_zero));
    j["jets"] = std::move(jets);
    if (!f.closed_form.empty()) j["closed_form"] = f.closed_form;
    return j;
}

IsometryMap map_from_json(const Json& j) {
    try {
        IsometryMap f;
        f.source = DomainSpec::parse(j.at("source").get<std::string>());
        f.target = DomainSpec::parse(j.at("target").get<std::string>());
        f.k = j.at("k").get<double>();
        if (j.contains("weights")) {
            const auto& w = j.at("weights");
            if (w.contains("source"))
                f.source = f.source.with_weights(w.at("source").get<std::vector<double>>());
            if (w.contains("target"))
                f.target = f.target.with_weights(w.at("target").get<std::vector<double>>());
        }
        for (const auto& s : j.at("jets")) f.jets.push_back(jet_from_json(s));
        if (j.contains("closed_form")) f.closed_form = j.at("closed_form").get<std::string>();
        return f;
    } catch (const Json::exception& e) {
        throw io_error(std::string("map_from_json: ") + e.what());
    }
}

Json matrix_to_json(const MatrixXcd& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            Json e;
            e["re"] = m(i, j).real();
            e["im"] = m(i, j).imag();
            row.push_back(std::move(e));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

MatrixXcd matrix_from_json(const Json& j) {
    try {
        if (!j.is_array() || j.empty()) throw io_error("matrix_from_json: expected non-empty array");
        const auto rows = static_cast<Eigen::Index>(j.size());
        const auto cols = static_cast<Eigen::Index>(j.at(0).size());
        MatrixXcd m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i) {
            const auto& row = j.at(static_cast<std::size_t>(i));
            if (static_cast<Eigen::Index>(row.size()) != cols)
                throw io_error("matrix_from_json: ragged rows");
            for (Eigen::Index c = 0; c < cols; ++c) {
                const auto& e = row.at(static_cast<std::size_t>(c));
                if (e.is_number()) {
                    m(i, c) = Complex{e.get<double>(), 0.0};
                } else if (e.is_array() && e.size() == 2) {
                    m(i, c) = Complex{e.at(0).get<double>(), e.at(1).get<double>()};
                } else {
                    m(i, c) = Complex{e.at("re").get<double>(), e.at("im").get<double>()};
                }
            }
        }
        return m;
    } catch (const Json::exception& e) {
        throw io_error(std::string("matrix_from_json: ") + e.what());
    }
}

Json certificate_to_json(const Certificate& c) {
    Json j;
    j["check"] = c.check;
    j["status"] = to_string(c.status);
    j["max_residual"] = c.max_residual;
    Json metrics;
    for (const auto& [k, v] : c.metrics) metrics[k] = v;
    j["metrics"] = std::move(metrics);
    Json tols;
    for (const auto& [k, v] : c.tolerances) tols[k] = v;
    j["tolerances"] = std::move(tols);
    if (!c.notes.empty()) j["notes"] = c.notes;
    if (c.witness_basis || !c.witness_indices.empty()) {
        Json witness;
        if (c.witness_basis) witness["basis"] = matrix_to_json(*c.witness_basis);
        if (!c.witness_indices.empty()) {
            Json idx = Json::array();
            for (const auto& i : c.witness_indices) idx.push_back(i.exponents());
            witness["indices"] = std::move(idx);
        }
        j["witness"] = std::move(witness);
    }
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw io_error("cannot parse " + path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write file: " + path);
    out << dump_json(j);
    if (!out) throw io_error("write failed: " + path);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

} // namespace hiso
