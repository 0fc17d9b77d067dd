#include "sepfda/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "sepfda/errors.hpp"

namespace sepfda {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& field, const std::string& context) {
    double v = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end)
        throw InvalidInputError(context + ": cannot parse number '" + field + "'");
    return v;
}

long parse_long(const std::string& field, const std::string& context) {
    long v = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end)
        throw InvalidInputError(context + ": cannot parse integer '" + field + "'");
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

} // namespace

DiscreteCurves read_curves_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line))
        throw InvalidInputError(path + ": empty file");
    if (strip_cr(line) != "sample_id,coordinate,time,value")
        throw InvalidInputError(path + ":1: header must be exactly "
                                "'sample_id,coordinate,time,value'");

    struct Point {
        double time;
        double value;
    };
    std::vector<std::string> order;
    std::map<std::string, std::map<int, std::vector<Point>>> rows;

    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::string context = path + ":" + std::to_string(line_no);
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 4)
            throw InvalidInputError(context + ": expected 4 fields, got " +
                                    std::to_string(fields.size()));
        const std::string& id = fields[0];
        const long coord = parse_long(fields[1], context);
        if (coord < 1)
            throw InvalidInputError(context + ": coordinate must be a 1-based integer");
        const double time = parse_double(fields[2], context);
        const double value = parse_double(fields[3], context);
        if (!std::isfinite(time) || !std::isfinite(value))
            throw InvalidInputError(context + ": non-finite entry");
        if (rows.find(id) == rows.end()) order.push_back(id);
        rows[id][static_cast<int>(coord)].push_back(Point{time, value});
    }
    if (order.empty()) throw InvalidInputError(path + ": no data rows");

    // reference grid from the first sample
    auto& first = rows[order.front()];
    const int p = static_cast<int>(first.size());
    int expected = 1;
    for (const auto& [coord, pts] : first) {
        if (coord != expected)
            throw InvalidInputError(path + ": coordinates of sample '" + order.front() +
                                    "' are not contiguous from 1");
        ++expected;
        (void)pts;
    }

    auto sorted_times = [&](std::vector<Point>& pts, const std::string& id, int coord) {
        std::stable_sort(pts.begin(), pts.end(),
                         [](const Point& a, const Point& b) { return a.time < b.time; });
        for (std::size_t l = 0; l + 1 < pts.size(); ++l)
            if (!(pts[l].time < pts[l + 1].time))
                throw InvalidInputError(path + ": duplicate time " + format_double(pts[l].time) +
                                        " in sample '" + id + "' coordinate " +
                                        std::to_string(coord));
    };
    for (auto& [coord, pts] : first) sorted_times(pts, order.front(), coord);
    const std::size_t q = first.begin()->second.size();
    std::vector<double> grid_points(q);
    for (std::size_t l = 0; l < q; ++l) grid_points[l] = first.begin()->second[l].time;

    DiscreteCurves curves;
    curves.grid.points = grid_points;
    curves.grid.domain = Interval{grid_points.front(), grid_points.back()};
    curves.ids = order;
    curves.samples.reserve(order.size());

    for (const std::string& id : order) {
        auto& coords = rows[id];
        if (static_cast<int>(coords.size()) != p)
            throw InvalidInputError(path + ": sample '" + id + "' has " +
                                    std::to_string(coords.size()) + " coordinates, expected " +
                                    std::to_string(p));
        Matrix x(p, q);
        int j = 0;
        for (auto& [coord, pts] : coords) {
            if (coord != j + 1)
                throw InvalidInputError(path + ": sample '" + id +
                                        "' coordinates are not contiguous from 1");
            sorted_times(pts, id, coord);
            if (pts.size() != q)
                throw InvalidInputError(path + ": sample '" + id + "' coordinate " +
                                        std::to_string(coord) + " has " +
                                        std::to_string(pts.size()) + " points, expected " +
                                        std::to_string(q));
            for (std::size_t l = 0; l < q; ++l) {
                if (pts[l].time != grid_points[l])
                    throw InvalidInputError(path + ": sample '" + id +
                                            "' does not share the common time grid at t = " +
                                            format_double(pts[l].time));
                x(j, l) = pts[l].value;
            }
            ++j;
        }
        curves.samples.push_back(std::move(x));
    }
    curves.grid.validate();
    return curves;
}

void write_curves_csv(const DiscreteCurves& curves, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("cannot write '" + path + "'");
    out << "sample_id,coordinate,time,value\n";
    for (int i = 0; i < curves.n(); ++i) {
        for (int j = 0; j < curves.p(); ++j) {
            for (int l = 0; l < curves.q(); ++l) {
                out << curves.ids[i] << ',' << (j + 1) << ',' << format_double(curves.grid.points[l])
                    << ',' << format_double(curves.samples[i](j, l)) << '\n';
            }
        }
    }
}

void write_labels_csv(const DiscreteCurves& curves, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("cannot write '" + path + "'");
    out << "sample_id,is_outlier\n";
    for (int i = 0; i < curves.n(); ++i) {
        const bool flag = !curves.labels.empty() && curves.labels[i];
        out << curves.ids[i] << ',' << (flag ? 1 : 0) << '\n';
    }
}

std::vector<std::pair<std::string, bool>> read_labels_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "sample_id,is_outlier")
        throw InvalidInputError(path + ":1: header must be exactly 'sample_id,is_outlier'");
    std::vector<std::pair<std::string, bool>> out;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 2)
            throw InvalidInputError(path + ":" + std::to_string(line_no) + ": expected 2 fields");
        const long v = parse_long(fields[1], path + ":" + std::to_string(line_no));
        if (v != 0 && v != 1)
            throw InvalidInputError(path + ":" + std::to_string(line_no) +
                                    ": is_outlier must be 0 or 1");
        out.emplace_back(fields[0], v == 1);
    }
    return out;
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw InvalidInputError("json matrix: expected a non-empty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j.front().size();
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols)
            throw InvalidInputError("json matrix: ragged rows");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
    }
    return m;
}

std::string FitDocument::mode() const {
    return config_echo.value("mode", std::string("smoothed"));
}

Interval FitDocument::domain() const {
    if (!config_echo.contains("domain"))
        throw InvalidInputError("fit document: missing domain in config_echo");
    return Interval{config_echo["domain"][0].get<double>(), config_echo["domain"][1].get<double>()};
}

BasisSystem FitDocument::basis() const {
    if (mode() != "smoothed")
        throw InvalidInputError("fit document: raw-mode fit has no basis");
    return make_basis(domain(), config_echo["m"].get<int>(), config_echo["degree"].get<int>());
}

void write_fit_json(const FitDocument& doc, const std::string& path) {
    Json j;
    Json mean = Json::array();
    for (Eigen::Index i = 0; i < doc.fit.mean.rows(); ++i)
        for (Eigen::Index k = 0; k < doc.fit.mean.cols(); ++k) mean.push_back(doc.fit.mean(i, k));
    j["mean_coefficients"] = std::move(mean);
    j["mean_shape"] = {doc.fit.mean.rows(), doc.fit.mean.cols()};
    j["sigma_row"] = matrix_to_json(doc.fit.sigma_row);
    j["sigma_col"] = matrix_to_json(doc.fit.sigma_col);
    j["scale_convention"] = doc.fit.scale_convention;
    if (doc.fit.h_subset)
        j["h_subset"] = *doc.fit.h_subset;
    else
        j["h_subset"] = nullptr;
    Json distances = Json::object();
    if (doc.fit.distances) {
        for (std::size_t i = 0; i < doc.sample_ids.size(); ++i)
            distances[doc.sample_ids[i]] = (*doc.fit.distances)[i];
    }
    j["distances"] = std::move(distances);
    j["cutoff"] = doc.cutoff;
    Json flags = Json::object();
    for (std::size_t i = 0; i < doc.sample_ids.size(); ++i)
        flags[doc.sample_ids[i]] = i < doc.flags.size() ? doc.flags[i] : false;
    j["flags"] = std::move(flags);
    j["config_echo"] = doc.config_echo;

    std::ofstream out(path);
    if (!out) throw InvalidInputError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

FitDocument read_fit_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InvalidInputError(path + ": invalid json: " + e.what());
    }

    FitDocument doc;
    const auto shape = j.at("mean_shape");
    const int m = shape[0].get<int>();
    const int p = shape[1].get<int>();
    const auto& mean = j.at("mean_coefficients");
    if (static_cast<int>(mean.size()) != m * p)
        throw InvalidInputError(path + ": mean_coefficients length does not match mean_shape");
    doc.fit.mean.resize(m, p);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < p; ++k) doc.fit.mean(i, k) = mean[i * p + k].get<double>();
    doc.fit.sigma_row = matrix_from_json(j.at("sigma_row"));
    doc.fit.sigma_col = matrix_from_json(j.at("sigma_col"));
    doc.fit.scale_convention = j.value("scale_convention", std::string("trace_row_equals_p"));
    if (j.contains("h_subset") && !j["h_subset"].is_null())
        doc.fit.h_subset = j["h_subset"].get<std::vector<int>>();
    std::vector<double> distances;
    for (const auto& [id, value] : j.at("distances").items()) {
        doc.sample_ids.push_back(id);
        distances.push_back(value.get<double>());
    }
    if (!distances.empty()) doc.fit.distances = std::move(distances);
    doc.cutoff = j.value("cutoff", 0.0);
    if (j.contains("flags")) {
        for (const std::string& id : doc.sample_ids)
            doc.flags.push_back(j["flags"].value(id, false));
    }
    doc.config_echo = j.value("config_echo", Json::object());
    return doc;
}

void write_truth_json(const TruthDocument& truth, const std::string& path) {
    Json j;
    j["mean"] = truth.mean_name;
    j["sigma_row"] = matrix_to_json(truth.sigma_row);
    Json kernel;
    if (truth.kernel.kind == KernelSpec::Kind::ornstein_uhlenbeck) {
        kernel["kind"] = "ou";
        kernel["variance"] = truth.kernel.ou_variance;
        kernel["range"] = truth.kernel.ou_range;
    } else {
        kernel["kind"] = "matern";
        kernel["sigma"] = truth.kernel.matern_sigma;
        kernel["tau"] = truth.kernel.matern_tau;
        kernel["nu"] = truth.kernel.matern_nu;
    }
    j["kernel"] = std::move(kernel);
    std::ofstream out(path);
    if (!out) throw InvalidInputError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

TruthDocument read_truth_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InvalidInputError(path + ": invalid json: " + e.what());
    }
    TruthDocument truth;
    truth.mean_name = j.value("mean", std::string("bump"));
    truth.sigma_row = matrix_from_json(j.at("sigma_row"));
    const auto& kernel = j.at("kernel");
    const std::string kind = kernel.at("kind").get<std::string>();
    if (kind == "ou") {
        truth.kernel = KernelSpec::ou(kernel.at("variance").get<double>(),
                                      kernel.at("range").get<double>());
    } else if (kind == "matern") {
        truth.kernel = KernelSpec::matern(kernel.at("sigma").get<double>(),
                                          kernel.at("tau").get<double>(),
                                          kernel.at("nu").get<double>());
    } else {
        throw InvalidInputError(path + ": unknown kernel kind '" + kind + "'");
    }
    return truth;
}

double mean_by_name(const std::string& name, double t) {
    if (name == "bump") return mean_bump(t);
    if (name == "linear") return mean_linear(t);
    if (name == "zero") return 0.0;
    throw InvalidInputError("unknown mean function '" + name + "'");
}

} // namespace sepfda
