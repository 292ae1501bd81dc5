#include "cdce/result_io.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace cdce {

using nlohmann::json;

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw ConfigurationError("unknown output format '" + name + "' (expected csv or json)");
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream os;
    os << kCsvHeader << '\n';
    os << std::setprecision(10);
    for (const auto& r : rows) {
        os << r.estimator << ',' << r.snr_db << ',' << r.trials << ',' << r.nmse_db << ','
           << r.stderr_db << '\n';
    }
    return os.str();
}

std::string rows_to_json(const std::vector<ResultRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"estimator", r.estimator},
                       {"snr_db", r.snr_db},
                       {"trials", r.trials},
                       {"nmse_db", r.nmse_db},
                       {"stderr_db", r.stderr_db}});
    }
    return json{{"results", arr}}.dump(2) + "\n";
}

std::vector<ResultRow> rows_from_json(const std::string& text) {
    std::vector<ResultRow> rows;
    try {
        const json doc = json::parse(text);
        for (const auto& r : doc.at("results")) {
            rows.push_back({r.at("estimator").get<std::string>(), r.at("snr_db").get<double>(),
                            r.at("trials").get<int>(), r.at("nmse_db").get<double>(),
                            r.at("stderr_db").get<double>()});
        }
    } catch (const json::exception& e) {
        throw ConfigurationError(std::string("results JSON: ") + e.what());
    }
    return rows;
}

std::string grid_to_json(const CMatrix& m) {
    std::vector<double> re(static_cast<std::size_t>(m.size()));
    std::vector<double> im(re.size());
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        re[static_cast<std::size_t>(i)] = m.data()[i].real();
        im[static_cast<std::size_t>(i)] = m.data()[i].imag();
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}}.dump() + "\n";
}

CMatrix grid_from_json(const std::string& text) {
    try {
        const json doc = json::parse(text);
        const auto rows = doc.at("rows").get<Eigen::Index>();
        const auto cols = doc.at("cols").get<Eigen::Index>();
        const auto re = doc.at("re").get<std::vector<double>>();
        const auto im = doc.at("im").get<std::vector<double>>();
        if (static_cast<Eigen::Index>(re.size()) != rows * cols || re.size() != im.size()) {
            throw DimensionError("grid JSON: entry count does not match rows x cols");
        }
        CMatrix m(rows, cols);
        for (Eigen::Index i = 0; i < m.size(); ++i) {
            m.data()[i] = {re[static_cast<std::size_t>(i)], im[static_cast<std::size_t>(i)]};
        }
        return m;
    } catch (const json::exception& e) {
        throw ConfigurationError(std::string("grid JSON: ") + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing: " + std::strerror(errno));
    out << content;
    out.flush();
    if (!out) throw Error("write to '" + path + "' failed");
}

void emit(const std::vector<ResultRow>& rows, OutputFormat format, const std::string& path) {
    write_text_file(path, format == OutputFormat::csv ? rows_to_csv(rows) : rows_to_json(rows));
}

}  // namespace cdce
